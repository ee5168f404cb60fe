import json
import os

import pytest

from thetacoh.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_surjectivity_u2(capsys):
    code, out, _ = call(capsys, "surjectivity", "--family", "u", "--rank", "2", "-m", "2",
                        "--max-degree", "4", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert all(r["surjective"] for r in data["result"]["degrees"])
    assert data["claims"] and all(c["status"] == "pass" for c in data["claims"])


def test_witness_command(capsys):
    code, out, _ = call(capsys, "witness-so-even", "--rank", "4", "-m", "3")
    assert code == 0
    data = json.loads(out)
    assert data["result"]["in_image"] is False and data["result"]["degree"] == 6


def test_coker_command_notes_discrepancy(capsys):
    code, out, _ = call(capsys, "coker", "--family", "sp", "--rank", "2", "-m", "2", "--degree", "2")
    assert code == 0
    data = json.loads(out)
    (row,) = data["result"]["rows"]
    assert row["kernel_dim"] == 0
    assert data["result"]["notes"]
    assert {c["source"] for c in data["claims"]} == {"rank", "enumeration", "printed-formula"}


def test_surjectivity_type_d_rank_four(capsys):
    code, out, _ = call(capsys, "surjectivity", "--family", "so-even", "--rank", "4", "-m", "3",
                        "--max-degree", "6")
    assert code == 0
    claims = json.loads(out)["claims"]
    assert claims[-1]["name"] == "d=6 surjective is False" and claims[-1]["status"] == "pass"
    assert all(c["status"] == "out-of-range" for c in claims[:-1])


@pytest.mark.parametrize("argv", [
    ["surjectivity", "--family", "u", "--rank", "2", "-m", "2", "--max-degree", "4"],
    ["theta", "--family", "sp", "--rank", "2", "-m", "2"],
    ["coker", "--family", "u", "--rank", "3", "-m", "2", "--show-matrix"],
    ["invariants", "--family", "so-even", "--rank", "2", "-m", "1", "--model", "free", "--show-basis"],
])
def test_output_is_deterministic(capsys, argv):
    first = call(capsys, *argv)
    second = call(capsys, *argv, "--jobs", "2")
    assert first == second


def test_formats(capsys, tmp_path):
    code, out, _ = call(capsys, "molien", "--family", "sp", "--rank", "1", "-m", "0", "--max-degree", "4",
                        "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "degree,molien,nullspace"
    assert [line.split(",")[1] for line in out.splitlines()[1:]] == ["1", "0", "0", "0", "1"]
    code, out, _ = call(capsys, "generators", "--family", "u", "--rank", "2", "-m", "2", "--format", "pretty")
    assert code == 0 and "[PASS]" in out
    target = tmp_path / "v.json"
    code, out, _ = call(capsys, "verify-generation", "--family", "u", "--rank", "2", "-m", "2",
                        "--max-degree", "3", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["command"] == "verify-generation"


@pytest.mark.parametrize("argv", [
    ["surjectivity", "--family", "g2", "--rank", "2", "-m", "1"],
    ["surjectivity", "--family", "u", "--rank", "2"],
    ["surjectivity", "--family", "u", "--rank", "0", "-m", "1"],
    ["witness-so-even", "--rank", "3", "-m", "3"],
    ["coker", "--family", "so-even", "--rank", "3", "-m", "2", "--degree", "2"],
    ["verify-generation", "--family", "so-even", "--rank", "3", "-m", "2"],
    ["frobnicate"],
    [],
    ["--bogus"],
])
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_budget_error(capsys):
    code, _, err = call(capsys, "surjectivity", "--family", "u", "--rank", "4", "-m", "3",
                        "--max-degree", "6", "--degree-budget", "50")
    assert code == 3 and "budget" in err


def test_group_budget_error(capsys):
    code, _, _ = call(capsys, "molien", "--family", "sp", "--rank", "3", "-m", "1", "--group-budget", "10")
    assert code == 3


def test_failed_claim_exit_code(capsys, monkeypatch):
    import thetacoh.cli as cli
    real = cli.check_surjectivity

    def broken(*args, **kw):
        rep = real(*args, **kw)
        rep["degrees"][0]["surjective"] = False
        return rep

    monkeypatch.setattr(cli, "check_surjectivity", broken)
    code, _, err = call(capsys, "surjectivity", "--family", "u", "--rank", "2", "-m", "1", "--max-degree", "2")
    assert code == 1 and "claim failed" in err


@pytest.fixture(autouse=True)
def _restore_budgets():
    # the CLI writes budget flags into the environment; keep tests isolated
    keys = ("THETACOH_DEGREE_BUDGET", "THETACOH_GROUP_BUDGET")
    saved = {k: os.environ.get(k) for k in keys}
    yield
    for k, v in saved.items():
        if v is None:
            os.environ.pop(k, None)
        else:
            os.environ[k] = v
