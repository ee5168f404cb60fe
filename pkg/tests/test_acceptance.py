"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import json

import pytest

from thetacoh.acceptance import CRITERIA, run_criterion
from thetacoh.cli import run


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    failed = [c.to_json() for c in result.claims if c.asserted and c.status == "fail"]
    assert result.checked > 0
    assert not failed, json.dumps(failed[:5], indent=1, sort_keys=True)


def test_manifest_replays_every_criterion(tmp_path, capsys):
    target = tmp_path / "manifest.json"
    assert run(["--manifest", str(target)]) == 0
    data = json.loads(target.read_text())
    assert len(data["sha256"]) == 64
    assert [c["number"] for c in data["results"]["criteria"]] == sorted(CRITERIA)
    assert data["results"]["all_passed"] is True
