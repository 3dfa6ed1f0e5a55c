"""Command-line front end.

    rees-kit analyze --vars x,y,z,w --ideal "x^2,y^2,z^2,w^2,x*y+x*z+x*w+y*z" --reduction-first 4
    rees-kit family --name mono --params 3,3,3,1,1,1
    rees-kit verify --suite quick
    rees-kit sweep --name binary --range n=3..6

Exit codes: 0 success, 1 bad input, 2 a stage error or a failed
expectation, 3 a tampered expectations file.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from importlib import resources
from typing import Any

from . import __version__
from .arith import GREVLEX, LEX, CoefficientField, ParseError, Ring, parse_list
from .families import (
    FamilyError,
    FamilySpec,
    binary_ideal,
    binary_linear_syzygy_matrix,
    find_quadric_red3,
    link_ideal,
    mono_rees_candidate,
    mono_rees_ring,
    monomial_aci,
    monomial_aci_4,
    northcott_ideal,
    northcott_reference_data,
    quaternary_example,
)
from .groebner import Budget, Ideal
from .rees import AnalyzeOptions, ReesReport, analyze, rees_ideal, verify_rees_candidate

SCHEMA = "rees-kit/report-v1"
EXIT_OK, EXIT_INPUT, EXIT_STAGE, EXIT_TAMPERED = 0, 1, 2, 3

ORDERS = {"grevlex": GREVLEX, "lex": LEX}


@dataclass
class RunConfig:
    characteristic: int = 32003
    order: str = "grevlex"
    budget: int = 2_000_000
    timeout: float | None = None
    sdeg_bound: int = 20
    red_bound: int = 64
    format: str = "json"
    seed: int = 0
    power_backend: str = "auto"
    direct_check_upto: int = 4
    with_sdeg: bool = True

    def __post_init__(self):
        CoefficientField(self.characteristic)  # validates 0 or an odd prime < 2^31
        if self.order not in ORDERS:
            raise ValueError(f"unknown order {self.order!r}")
        if self.format not in ("json", "csv", "text"):
            raise ValueError(f"unknown format {self.format!r}")

    @property
    def field(self) -> CoefficientField:
        return CoefficientField(self.characteristic)

    def options(self) -> AnalyzeOptions:
        return AnalyzeOptions(
            red_bound=self.red_bound,
            sdeg_bound=self.sdeg_bound,
            budget=Budget(self.budget, self.timeout),
            power_backend=self.power_backend,
            direct_check_upto=self.direct_check_upto,
            with_sdeg=self.with_sdeg,
        )


# -- families --------------------------------------------------------------

def _ints(params) -> list[int]:
    if isinstance(params, str):
        params = [p for p in params.split(",") if p.strip()]
    return [int(p) for p in params]


def build_family(spec: FamilySpec, cfg: RunConfig) -> tuple[list, list, dict]:
    """(I generators, J generators, extra report fields) for a family instance."""
    fld = cfg.field
    p = _ints(spec.params)
    extra: dict[str, Any] = {}
    if spec.name == "mono":
        if len(p) != 6:
            raise FamilyError("mono takes a,b,c,alpha,beta,gamma")
        m = monomial_aci(*p, field=fld)
        z = m.ring.gens()[2]
        extra["q_condition"] = m.q_condition
        return m.Q + [z ** p[2]], m.Q, extra
    if spec.name == "mono4":
        m = monomial_aci_4(p[0] if p else 4, field=fld)
        x4 = m.ring.gens()[3]
        return m.Q + [x4 ** (p[0] if p else 4)], m.Q, extra
    if spec.name == "binary":
        n = p[0] if p else 3
        M = binary_linear_syzygy_matrix(n, seed=cfg.seed, field=fld)
        I, J = binary_ideal(M, seed=cfg.seed)
        extra["matrix"] = [[str(e) for e in row] for row in M]
        return I, J, extra
    if spec.name == "quadric":
        M, I, J, r, k = find_quadric_red3(seed=cfg.seed, field=fld)
        extra["matrix"] = [[str(e) for e in row] for row in M]
        extra["search_attempt"] = k
        return I, J, extra
    if spec.name == "quaternary":
        J, a = quaternary_example(spec.tag or "hf141", field=fld)
        return J + [a], J, extra
    if spec.name == "northcott":
        V, A = northcott_reference_data(field=fld)
        ents, det = northcott_ideal(V, A)
        return ents + [det], ents, extra
    if spec.name == "link":
        R = Ring(["x", "y", "z"], fld)
        x, y, z = R.gens()
        e = p or [2, 2, 2]
        J = [x ** e[0], y ** e[1], z ** e[2]]
        I = link_ideal(Ideal(J, R), Ideal([x, y, z], R))
        from .groebner import minimal_generators

        return minimal_generators(I), J, extra
    raise FamilyError(f"unknown family {spec.name!r}")


def mono_candidate_check(n: int, cfg: RunConfig) -> dict:
    B, gens, tn = mono_rees_ring(n, cfg.field)
    cand = Ideal(mono_rees_candidate(n, cfg.field), B, Budget(cfg.budget, cfg.timeout))
    pres = rees_ideal(gens, tn, budget=cand.budget)
    fwd, rev = verify_rees_candidate(cand, gens, pres, tn)
    return {"candidate_in_L": fwd, "L_in_candidate": rev, "equal": fwd and rev}


# -- serialization ---------------------------------------------------------

CSV_FIELDS = [
    "label", "characteristic", "colength_I", "colength_J", "length_I_J", "red", "f_sequence", "f_sum",
    "e0", "e1", "huckaba_acm", "reltype", "sdeg", "edeg", "birational", "nu_T",
    "deg_sym", "deg_rees", "deg_T", "complete", "errors", "seconds",
]


def envelope(rep: ReesReport, cfg: RunConfig, timings: bool = False, **extra) -> dict:
    out = {
        "schema": SCHEMA,
        "version": __version__,
        "config": asdict(cfg),
        "report": rep.to_dict(timings=timings),
    }
    out.update(extra)
    return out


def csv_row(label: str, d: dict | None, error: str | None = None, seconds: float | None = None) -> dict:
    """Flat projection of a report dict onto CSV_FIELDS."""
    row = {k: "" for k in CSV_FIELDS}
    row["label"] = label
    if d is not None:
        for k in CSV_FIELDS:
            if k in d and d[k] is not None:
                v = d[k]
                if isinstance(v, list):
                    v = " ".join(map(str, v))
                elif isinstance(v, dict):
                    v = "; ".join(f"{a}: {b}" for a, b in sorted(v.items()))
                row[k] = v
    if error:
        row["errors"] = error
        row["complete"] = False
    if seconds is not None:
        row["seconds"] = f"{seconds:.2f}"
    return row


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    rep = doc["report"]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerow(csv_row(doc.get("label", ""), rep))
        return buf.getvalue()
    lines = [f"{SCHEMA} (rees-kit {doc['version']}, characteristic {doc['config']['characteristic']})"]
    for k, v in rep.items():
        if v is None or v == {} or v == []:
            continue
        lines.append(f"{k}: {v}")
    for k in sorted(doc):
        if k not in ("schema", "version", "config", "report"):
            lines.append(f"{k}: {doc[k]}")
    return "\n".join(lines) + "\n"


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------

def cmd_analyze(args, cfg: RunConfig) -> int:
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    try:
        R = Ring(names, cfg.field, ORDERS[cfg.order])
        I = parse_list(R, args.ideal)
        if args.reduction:
            J = parse_list(R, args.reduction)
        elif args.reduction_first is not None:
            J = I[: args.reduction_first]
        else:
            J = I[: R.nvars]
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep = analyze(I, J, cfg.options())
    _emit(render(envelope(rep, cfg, args.timings), cfg.format), args.output)
    return EXIT_OK if rep.complete else EXIT_STAGE


def cmd_family(args, cfg: RunConfig) -> int:
    spec = FamilySpec(args.name, tuple(_ints(args.params or "")), args.tag)
    try:
        I, J, extra = build_family(spec, cfg)
    except (FamilyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep = analyze(I, J, cfg.options())
    p = list(spec.params)
    if spec.name == "mono" and len(set(p[:3])) == 1 and p[3:] == [1, 1, 1] and p[0] >= 3:
        try:
            extra["rees_candidate"] = mono_candidate_check(p[0], cfg)
        except Exception as exc:
            extra["rees_candidate"] = {"error": f"{type(exc).__name__}: {exc}"}
            rep.complete = False
    doc = envelope(rep, cfg, args.timings, family=spec.to_dict(), **extra)
    _emit(render(doc, cfg.format), args.output)
    return EXIT_OK if rep.complete else EXIT_STAGE


# verification suites -------------------------------------------------------

def load_expectations(path: str | None = None) -> dict:
    if path:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(resources.files("rees_kit").joinpath("expectations.json").read_text(encoding="utf-8"))


def expectations_digest(cases: list) -> str:
    blob = json.dumps(cases, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _lookup(rep: dict, extra: dict, key: str):
    if key in rep:
        return rep[key]
    if key in extra:
        return extra[key]
    if key.startswith("rees_candidate."):
        return extra.get("rees_candidate", {}).get(key.split(".", 1)[1])
    if key.startswith("formula_checks."):
        return rep.get("formula_checks", {}).get(key.split(".", 1)[1])
    raise KeyError(key)


def run_case(case: dict, cfg: RunConfig) -> list[tuple[str, str, Any, Any, bool]]:
    """[(key, kind, expected, got, ok)] for one expectation case."""
    spec = FamilySpec(case["family"], tuple(case.get("params", ())), case.get("tag"))
    c = RunConfig(**{**asdict(cfg), **case.get("config", {})})
    I, J, extra = build_family(spec, c)
    rep = analyze(I, J, c.options())
    if case.get("candidate"):
        extra["rees_candidate"] = mono_candidate_check(case["candidate"], c)
    d = rep.to_dict(timings=False)
    out = []
    for key, want in case["expect"].items():
        kind = case.get("kinds", {}).get(key, case.get("kind", "CITED"))
        try:
            got = _lookup(d, extra, key)
        except KeyError:
            got = None
        if isinstance(want, list) and isinstance(got, tuple):
            got = list(got)
        out.append((key, kind, want, got, got == want))
    if not rep.complete:
        out.append(("complete", "CITED", True, False, False))
    return out


def cmd_verify(args, cfg: RunConfig) -> int:
    data = load_expectations(args.expectations)
    cases = data.get("cases", [])
    if data.get("sha256") != expectations_digest(cases):
        print("error: expectations file does not match its recorded digest", file=sys.stderr)
        return EXIT_TAMPERED
    chosen = [c for c in cases if args.suite in c.get("suites", [])]
    failed = 0
    print(f"{'case':<22} {'check':<28} {'kind':<8} {'expected':<24} {'got':<24} result")
    for case in chosen:
        t0 = time.monotonic()
        try:
            rows = run_case(case, cfg)
        except Exception as exc:
            rows = [("run", "CITED", "ok", f"{type(exc).__name__}: {exc}", False)]
        dt = time.monotonic() - t0
        for key, kind, want, got, ok in rows:
            if ok:
                verdict = "pass"
            elif kind != "CITED":
                verdict = "warn"  # only cited values decide the exit code
            else:
                verdict = "FAIL"
                failed += 1
            print(f"{case['id']:<22} {key:<28} {kind:<8} {str(want):<24} {str(got):<24} {verdict}")
        if args.timings:
            print(f"{case['id']:<22} {'seconds':<28} {'':<8} {'':<24} {dt:<24.2f}")
    print(f"{len(chosen)} cases, {failed} failed")
    return EXIT_STAGE if failed else EXIT_OK


# sweeps ---------------------------------------------------------------------

def _parse_range(text: str) -> list[dict]:
    """'a=4..6,b=4..6,alpha=1' -> cartesian product in parameter order."""
    import itertools

    keys, values = [], []
    for part in [p for p in text.split(",") if p.strip()]:
        k, v = part.split("=")
        if ".." in v:
            lo, hi = v.split("..")
            vals = list(range(int(lo), int(hi) + 1))
        else:
            vals = [int(x) for x in v.split("|")]
        keys.append(k.strip())
        values.append(vals)
    if not keys:
        return []
    return [dict(zip(keys, combo)) for combo in itertools.product(*values)]


SWEEP_PARAMS = {
    "mono": ["a", "b", "c", "alpha", "beta", "gamma"],
    "mono4": ["n"],
    "binary": ["n"],
}


def _sweep_row(job):
    name, point, cfg_dict = job
    cfg = RunConfig(**cfg_dict)
    order = SWEEP_PARAMS[name]
    defaults = {"alpha": 1, "beta": 1, "gamma": 1}
    params = tuple(point.get(k, defaults.get(k)) for k in order)
    label = " ".join(f"{k}={v}" for k, v in zip(order, params))
    t0 = time.monotonic()
    try:
        I, J, _ = build_family(FamilySpec(name, params), cfg)
        rep = analyze(I, J, cfg.options())
        return csv_row(label, rep.to_dict(timings=False), None, time.monotonic() - t0)
    except Exception as exc:
        return csv_row(label, None, f"{type(exc).__name__}: {exc}", time.monotonic() - t0)


def cmd_sweep(args, cfg: RunConfig) -> int:
    if args.name not in SWEEP_PARAMS:
        print(f"error: sweep supports {sorted(SWEEP_PARAMS)}", file=sys.stderr)
        return EXIT_INPUT
    try:
        points = _parse_range(args.range)
    except ValueError as exc:
        print(f"error: bad range: {exc}", file=sys.stderr)
        return EXIT_INPUT
    jobs = [(args.name, p, asdict(cfg)) for p in points]
    width = max(1, int(os.environ.get("REES_KIT_THREADS", "1")))
    if width > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(width) as pool:
            rows = list(pool.map(_sweep_row, jobs))  # map keeps parameter order
    else:
        rows = [_sweep_row(j) for j in jobs]
    buf = io.StringIO()
    w = csv.DictWriter(buf, CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        if not args.timings:
            row["seconds"] = ""
        w.writerow(row)
    _emit(buf.getvalue(), args.output)
    return EXIT_OK if all(r["complete"] in (True, "True") for r in rows) else EXIT_STAGE


# -- entry point -----------------------------------------------------------

def _config_args(p: argparse.ArgumentParser):
    p.add_argument("--char", type=int, default=32003, help="field characteristic (0 = rationals)")
    p.add_argument("--order", default="grevlex", choices=sorted(ORDERS))
    p.add_argument("--budget", type=int, default=2_000_000, help="reduction steps per Gröbner basis")
    p.add_argument("--timeout", type=float, default=None, help="seconds per Gröbner basis")
    p.add_argument("--sdeg-bound", type=int, default=20)
    p.add_argument("--red-bound", type=int, default=64)
    p.add_argument("--format", default="json", choices=["json", "csv", "text"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--power-backend", default="auto", choices=["auto", "rees", "direct"])
    p.add_argument("--direct-check-upto", type=int, default=4)
    p.add_argument("--no-sdeg", action="store_true")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identical output)")
    p.add_argument("--output", "-o", default=None)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rees-kit", description="Rees algebras of almost complete intersections")
    ap.add_argument("--version", action="version", version=f"rees-kit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze an ideal with a designated reduction")
    a.add_argument("--vars", required=True)
    a.add_argument("--ideal", required=True, help="comma-separated generators, explicit '*'")
    g = a.add_mutually_exclusive_group()
    g.add_argument("--reduction", help="generators of J")
    g.add_argument("--reduction-first", type=int, help="J = first k generators of I")
    _config_args(a)

    f = sub.add_parser("family", help="analyze a named family instance")
    f.add_argument("--name", required=True, choices=["mono", "mono4", "binary", "quadric", "quaternary", "northcott", "link"])
    f.add_argument("--params", default="")
    f.add_argument("--tag", default=None)
    _config_args(f)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", default="quick", choices=["quick", "reference", "slow"])
    v.add_argument("--expectations", default=None, help="expectations JSON (default: bundled)")
    _config_args(v)

    s = sub.add_parser("sweep", help="CSV sweep over a family")
    s.add_argument("--name", required=True)
    s.add_argument("--range", default="", help="e.g. a=4..6,b=4..6,c=4..6 or n=3..6")
    _config_args(s)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = RunConfig(
            characteristic=args.char,
            order=args.order,
            budget=args.budget,
            timeout=args.timeout,
            sdeg_bound=args.sdeg_bound,
            red_bound=args.red_bound,
            format=args.format,
            seed=args.seed,
            power_backend=args.power_backend,
            direct_check_upto=args.direct_check_upto,
            with_sdeg=not args.no_sdeg,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    random.seed(cfg.seed)
    handler = {"analyze": cmd_analyze, "family": cmd_family, "verify": cmd_verify, "sweep": cmd_sweep}[args.command]
    return handler(args, cfg)


if __name__ == "__main__":
    sys.exit(main())
