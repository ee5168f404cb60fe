"""Command-line front end.

Every command builds a JSON payload ``{"command", "params", "result",
"claims"[, "table"]}``.  JSON output is canonical (sorted keys, fixed
indentation) so identical inputs give identical bytes.  CSV prints the
``table`` rows (or the claims when a command has no table); ``pretty`` is a
plain-text rendering of the same payload.

Exit codes: 0 ok, 1 an asserted claim failed, 2 usage or validation error,
3 a resource budget was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial

from . import __version__
from .acceptance import Claim, _claim, run_all
from .coker import coker_closed_form, coker_dim, theta_indec_map
from .generators import (
    UnsupportedFamily,
    build_S,
    low_dimension_bound,
    map_labels,
    realize,
    verify_generation,
)
from .invariants import invariant_basis, reynolds_span_dimension
from .rings import coinvariant_model, free_model
from .theta import check_surjectivity, so_even_witness, theta_closed, theta_images
from .weyl import BudgetExceeded, Family, is_invariant, molien_dims

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

COMMANDS = ("invariants", "generators", "verify-generation", "theta", "surjectivity",
            "witness-so-even", "coker", "molien")


class UsageError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    family: Family | None
    n: int | None
    m: int | None
    max_degree: int | None
    degree: int | None
    fmt: str
    output: str | None
    jobs: int
    model: str
    check: bool

    def params(self) -> dict:
        return {"family": None if self.family is None else self.family.cli_name,
                "group": None if self.family is None else str(self.family),
                "n": self.n, "m": self.m, "max_degree": self.max_degree, "degree": self.degree,
                "model": self.model if self.command == "invariants" else None}


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thetacoh",
                                description="Exact invariant-theory checks for spaces of commuting elements.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--manifest", metavar="PATH",
                   help="run every acceptance check and write a results file to PATH")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent pieces")
    sub = p.add_subparsers(dest="command")

    def common(sp, family=True, degree=False, max_degree=False):
        if family:
            sp.add_argument("--family", required=True, choices=["u", "su", "sp", "so-odd", "so-even"])
        sp.add_argument("--rank", type=int, required=True, help="the rank n")
        sp.add_argument("-m", type=int, required=True, help="number of commuting elements")
        if max_degree:
            sp.add_argument("--max-degree", type=int, default=None)
        if degree:
            sp.add_argument("--degree", type=int, default=None)
        sp.add_argument("--format", choices=["json", "csv", "pretty"], default="json")
        sp.add_argument("--output", default=None, help="write to this file instead of stdout")
        sp.add_argument("--jobs", dest="sub_jobs", metavar="N", type=int, default=None, help="worker processes")
        sp.add_argument("--group-budget", type=int, default=None)
        sp.add_argument("--degree-budget", type=int, default=None)

    sp = sub.add_parser("invariants", help="invariant dimensions and bases")
    common(sp, max_degree=True)
    sp.add_argument("--model", choices=["free", "coinvariant"], default="coinvariant")
    sp.add_argument("--show-basis", action="store_true")
    sp = sub.add_parser("generators", help="the label sets S(m, G) and S")
    common(sp)
    sp = sub.add_parser("verify-generation", help="generation, minimality and freeness of S(m, G)")
    common(sp, max_degree=True)
    sp = sub.add_parser("theta", help="theta images of the free generators")
    common(sp, degree=True)
    sp = sub.add_parser("surjectivity", help="degreewise surjectivity of theta")
    common(sp, max_degree=True)
    sp = sub.add_parser("witness-so-even", help="the SO(2n) non-surjectivity witness")
    common(sp, family=False)
    sp = sub.add_parser("coker", help="cokernel dimensions on rational homotopy")
    common(sp, degree=True, max_degree=True)
    sp.add_argument("--show-matrix", action="store_true")
    sp = sub.add_parser("molien", help="Molien series of the free model")
    common(sp, max_degree=True)
    sp.add_argument("--no-check", action="store_true", help="skip the nullspace comparison")
    return p


def _config(args, top_jobs: int) -> JobConfig:
    n, m = args.rank, args.m
    if n < 1:
        raise UsageError("--rank must be at least 1")
    if m < 0:
        raise UsageError("-m must be non-negative")
    if args.command == "witness-so-even":
        family = Family("SO_even", n) if n >= 2 else None
        if n < 4 or m < 3:
            raise UsageError("the witness needs --rank >= 4 and -m >= 3")
    else:
        try:
            family = Family.parse(args.family, n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.command not in ("invariants", "molien", "generators") and m < 1:
        raise UsageError("-m must be at least 1 for this command")
    if getattr(args, "max_degree", None) is not None and args.max_degree < 0:
        raise UsageError("--max-degree must be non-negative")
    if getattr(args, "degree", None) is not None and args.degree < 1:
        raise UsageError("--degree must be positive")
    if args.group_budget is not None:
        os.environ["THETACOH_GROUP_BUDGET"] = str(args.group_budget)
    if args.degree_budget is not None:
        os.environ["THETACOH_DEGREE_BUDGET"] = str(args.degree_budget)
    jobs = args.sub_jobs if args.sub_jobs is not None else top_jobs
    if jobs < 1:
        raise UsageError("--jobs must be at least 1")
    return JobConfig(args.command, family, n, m, getattr(args, "max_degree", None),
                     getattr(args, "degree", None), args.format, args.output, jobs,
                     getattr(args, "model", "coinvariant"), not getattr(args, "no_check", False))


def _max_degree(cfg: JobConfig, default: int) -> int:
    return default if cfg.max_degree is None else cfg.max_degree


# -- commands ---------------------------------------------------------------

def cmd_invariants(cfg: JobConfig, args) -> dict:
    family, n, m = cfg.family, cfg.n, cfg.m
    top = _max_degree(cfg, 6)
    model = free_model(n, m) if cfg.model == "free" else coinvariant_model(family, m)
    molien = molien_dims(family, m, top) if cfg.model == "free" else None
    rows, claims = [], []
    for d in range(top + 1):
        basis = invariant_basis(model, family, d)
        row = {"degree": d, "invariant_dim": len(basis)}
        if molien is not None:
            row["molien"] = molien[d]
            claims.append(_claim(f"d={d} nullspace = Molien", len(basis) == molien[d], "rank",
                                 nullspace=len(basis), molien=molien[d]))
        if cfg.check:
            r = reynolds_span_dimension(model, family, d)
            row["reynolds_span"] = r
            claims.append(_claim(f"d={d} nullspace = Reynolds span", len(basis) == r, "rank",
                                 nullspace=len(basis), reynolds=r))
        if args.show_basis:
            row["basis"] = [str(v) for v in basis]
        rows.append(row)
    table = [{k: v for k, v in r.items() if k != "basis"} for r in rows]
    return {"result": {"model": model.description, "degrees": rows}, "claims": claims, "table": table}


def cmd_generators(cfg: JobConfig, args) -> dict:
    family, m = cfg.family, cfg.m
    shape = coinvariant_model(family, m).shape if m else None
    claims = []
    try:
        hom = build_S(family, m)
    except UnsupportedFamily as exc:
        hom, note = None, str(exc)
    else:
        note = None
        for lb in hom:
            g = realize(lb, shape)
            claims.append(_claim(f"{lb} is invariant of degree {lb.degree}",
                                 is_invariant(g, family) and g.is_homogeneous(lb.degree), "enumeration"))
    top = map_labels(family, m)
    table = [dict(side="hom", **lb.to_json()) for lb in hom or []]
    table += [dict(side="map", **lb.to_json()) for lb in top]
    for row in table:
        row["I"] = " ".join(map(str, row["I"]))
    result = {"S_hom": None if hom is None else [lb.to_json() for lb in hom],
              "S_map": [lb.to_json() for lb in top], "note": note}
    return {"result": result, "claims": claims, "table": table}


def cmd_verify_generation(cfg: JobConfig, args) -> dict:
    family, m = cfg.family, cfg.m
    try:
        bound = low_dimension_bound(family, m)
    except UnsupportedFamily as exc:
        raise UsageError(str(exc)) from None
    report = verify_generation(family, m, _max_degree(cfg, 6))
    claims = []
    for row in report["degrees"]:
        d = row["degree"]
        claims.append(_claim(f"d={d} generation", row["generation"], "rank",
                             invariant_dim=row["invariant_dim"], subalgebra_dim=row["subalgebra_dim"]))
        claims.append(_claim(f"d={d} minimality", row["minimal"], "rank"))
        if d <= bound:
            claims.append(_claim(f"d={d} freeness", row["freeness"], "enumeration",
                                 invariant_dim=row["invariant_dim"], free_dim=row["free_dim"]))
        else:
            claims.append(Claim(f"d={d} freeness", "out-of-range", "enumeration",
                                {"invariant_dim": row["invariant_dim"], "free_dim": row["free_dim"]},
                                asserted=False))
    if bound < 1:
        report["note"] = f"d(m, G) = {bound} < 1, so no degree is in the freeness range"
    return {"result": report, "claims": claims, "table": report["degrees"]}


def cmd_theta(cfg: JobConfig, args) -> dict:
    family, m = cfg.family, cfg.m
    model = coinvariant_model(family, m)
    images = theta_images(family, m, model, cfg.degree)
    if cfg.degree is not None:
        images = [im for im in images if im.label.degree == cfg.degree]
    claims, rows = [], []
    for im in images:
        if family.tag != "SO_even":
            closed = theta_closed(im.label, family, m, model)
            claims.append(_claim(f"{im.label} closed form = expansion", closed == im.image,
                                 "enumeration", closed=str(closed), expansion=str(im.image)))
        rows.append({"label": str(im.label), "degree": im.label.degree, "image": str(im.image)})
    return {"result": {"model": model.description, "images": [im.to_json() for im in images]},
            "claims": claims, "table": rows}


def _expected_surjective(family: Family, m: int, d: int):
    """True/False when a known result predicts the answer, None otherwise."""
    if family.tag != "SO_even":
        return True
    if family.n <= 3:
        return True
    if m >= 3 and d == 2 * (family.n - 4) + 6:
        return False
    return None


def cmd_surjectivity(cfg: JobConfig, args) -> dict:
    family, m = cfg.family, cfg.m
    report = check_surjectivity(family, m, _max_degree(cfg, 6))
    claims = []
    for row in report["degrees"]:
        d = row["degree"]
        expected = _expected_surjective(family, m, d)
        vals = {"invariant_dim": row["invariant_dim"], "image_dim": row["image_dim"],
                "surjective": row["surjective"]}
        if expected is None:
            claims.append(Claim(f"d={d} surjectivity", "out-of-range", "rank", vals, asserted=False))
        else:
            claims.append(_claim(f"d={d} surjective is {expected}", row["surjective"] == expected,
                                 "rank", **vals))
    return {"result": report, "claims": claims, "table": report["degrees"]}


def cmd_witness(cfg: JobConfig, args) -> dict:
    n, m = cfg.n, cfg.m
    w = so_even_witness(n, m)
    expected = str(2 ** (n - 1) * factorial(n - 4))
    claims = [
        _claim("coefficient of the witness monomial", w["coefficient"] == expected, "enumeration",
               coefficient=w["coefficient"], expected=expected),
        _claim("nonzero", w["nonzero"], "rank"),
        _claim("indecomposable", w["indecomposable"], "rank",
               certificate=w["certificate"]["against_decomposables"]),
        _claim("not in image + decomposables", not w["in_image"], "rank",
               certificate=w["certificate"]["against_image"]),
    ]
    table = [{k: v for k, v in w.items() if k != "certificate"}]
    return {"result": w, "claims": claims, "table": table}


def _coker_row(family_tag: str, n: int, m: int, i: int, show_matrix: bool) -> dict:
    family = Family(family_tag, n)
    r = coker_dim(family, m, i).to_json()
    other = "half_Sp" if family_tag in ("Sp", "SO_odd") else "proof_U"
    r["half_formula_value"] = coker_closed_form(family, m, i, other) if other == "half_Sp" else None
    if show_matrix:
        imap = theta_indec_map(family, m, i)
        r["matrix"] = imap.matrix.to_json()
        r["columns"] = [str(lb) for lb in imap.columns]
    return r


def cmd_coker(cfg: JobConfig, args) -> dict:
    family, m = cfg.family, cfg.m
    if family.tag == "SO_even":
        raise UsageError("coker covers u, su, sp and so-odd")
    if cfg.degree is not None:
        degrees = [cfg.degree]
    else:
        degrees = list(range(1, _max_degree(cfg, 2 * family.n + 3) + 1))
    tasks = [(family.tag, family.n, m, i, args.show_matrix) for i in degrees]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_coker_row, *zip(*tasks)))
    else:
        rows = [_coker_row(*t) for t in tasks]
    claims = []
    type_a = family.tag in ("U", "SU")
    for r in rows:
        i = r["i"]
        if type_a:
            claims.append(_claim(f"i={i} kernel = sum C(m, 2k-i)", r["kernel_dim"] == r["proof_formula_value"],
                                 "rank", kernel_dim=r["kernel_dim"], formula=r["proof_formula_value"]))
        elif r["validity"]:
            claims.append(_claim(f"i={i} kernel = enumeration difference", r["kernel_dim"] == r["enum_diff"],
                                 "rank", kernel_dim=r["kernel_dim"], enum_diff=r["enum_diff"]))
        else:
            claims.append(Claim(f"i={i} kernel = enumeration difference", "out-of-range", "rank",
                                {"kernel_dim": r["kernel_dim"], "enum_diff": r["enum_diff"]}, asserted=False))
        claims.append(_claim(f"i={i} kernel = enumeration difference (label count)",
                             r["enum_diff"] == r["kernel_dim"], "enumeration", asserted=False,
                             enum_diff=r["enum_diff"]))
        claims.append(_claim(f"i={i} statement formula", r["printed_formula_value"] == r["kernel_dim"],
                             "printed-formula", asserted=False, formula=r["printed_formula_value"],
                             kernel_dim=r["kernel_dim"]))
        if not type_a:
            claims.append(_claim(f"i={i} proof formula (lower limit i/3)",
                                 r["proof_formula_value"] == r["kernel_dim"], "printed-formula",
                                 asserted=False, formula=r["proof_formula_value"], kernel_dim=r["kernel_dim"]))
    notes = []
    if any(c.source == "printed-formula" and c.status == "fail" for c in claims):
        notes.append("a printed closed form disagrees with the rank computation; "
                     "the rank computation is authoritative")
    table = [{k: v for k, v in r.items() if k not in ("matrix", "columns")} for r in rows]
    return {"result": {"rows": rows, "notes": notes}, "claims": claims, "table": table}


def cmd_molien(cfg: JobConfig, args) -> dict:
    family, m = cfg.family, cfg.m
    top = _max_degree(cfg, 8)
    series = molien_dims(family, m, top)
    claims, table = [], []
    model = free_model(cfg.n, m) if cfg.check else None
    for d, c in enumerate(series):
        row = {"degree": d, "molien": c}
        if cfg.check:
            k = len(invariant_basis(model, family, d))
            row["nullspace"] = k
            claims.append(_claim(f"d={d} Molien = nullspace", k == c, "rank", molien=c, nullspace=k))
        table.append(row)
    return {"result": {"series": series}, "claims": claims, "table": table}


HANDLERS = {
    "invariants": cmd_invariants,
    "generators": cmd_generators,
    "verify-generation": cmd_verify_generation,
    "theta": cmd_theta,
    "surjectivity": cmd_surjectivity,
    "witness-so-even": cmd_witness,
    "coker": cmd_coker,
    "molien": cmd_molien,
}


# -- output -----------------------------------------------------------------

def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def to_csv(payload: dict) -> str:
    rows = payload.get("table")
    if not rows:
        rows = [{"name": c["name"], "status": c["status"], "source": c["source"],
                 "asserted": c["asserted"]} for c in payload["claims"]]
    buf = io.StringIO()
    if rows:
        fields = list(rows[0])
        for r in rows[1:]:
            fields += [k for k in r if k not in fields]
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(r.get(k)) for k in fields})
    return buf.getvalue()


def to_pretty(payload: dict) -> str:
    out = [f"{payload['command']}  " + " ".join(f"{k}={v}" for k, v in sorted(payload["params"].items())
                                                if v is not None)]
    for row in payload.get("table") or []:
        out.append("  " + "  ".join(f"{k}={_cell(v)}" for k, v in row.items()))
    out.append("claims:")
    for c in payload["claims"]:
        tag = c["status"].upper() + ("" if c["asserted"] else " (recorded)")
        out.append(f"  [{tag}] {c['name']}  <{c['source']}>")
    return "\n".join(out) + "\n"


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return canonical_json(payload)
    if fmt == "csv":
        return to_csv(payload)
    return to_pretty(payload)


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _failures(claims) -> list:
    return [c for c in claims if c["asserted"] and c["status"] == "fail"]


def write_manifest(path: str, jobs: int) -> int:
    results = run_all(jobs)
    body = {"package": "thetacoh", "version": __version__,
            "criteria": [r.to_json() for r in results],
            "all_passed": all(r.passed for r in results)}
    digest = hashlib.sha256(canonical_json(body).encode()).hexdigest()
    _emit(canonical_json({"results": body, "sha256": digest}), path)
    for r in results:
        print(r.line(), file=sys.stderr)
    return EXIT_OK if body["all_passed"] else EXIT_CLAIM


def run(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.manifest:
            if args.command:
                raise UsageError("--manifest runs on its own, without a command")
            if args.jobs < 1:
                raise UsageError("--jobs must be at least 1")
            return write_manifest(args.manifest, args.jobs)
        if not args.command:
            parser.print_usage(sys.stderr)
            print("thetacoh: error: a command is required", file=sys.stderr)
            return EXIT_USAGE
        cfg = _config(args, args.jobs)
        body = HANDLERS[cfg.command](cfg, args)
    except UsageError as exc:
        print(f"thetacoh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedFamily, ValueError) as exc:
        print(f"thetacoh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"thetacoh: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    claims = [c.to_json() for c in body["claims"]]
    payload = {"command": cfg.command, "params": cfg.params(), "result": body["result"],
               "claims": claims, "table": body.get("table")}
    _emit(render(payload, cfg.fmt), cfg.output)
    failed = _failures(claims)
    if failed:
        for c in failed:
            print(f"claim failed: {c['name']}: {json.dumps(c['values'], sort_keys=True)}", file=sys.stderr)
        return EXIT_CLAIM
    return EXIT_OK


def main():
    sys.exit(run())
