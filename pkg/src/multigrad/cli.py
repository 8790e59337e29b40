"""Command-line interface.

Exit codes: 0 success with all checks passing, 1 a mathematical check
failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import formats
from .betti import betti_table, check_cor41, check_thm42, strand_report
from .cache import DimCache
from .corpus import CorpusParams, auto_top, run_corpus
from .linalg import FieldSpec
from .monomials import box, lcm, residue_field
from .polyseq import KoszulInstance, full_certificate, validate
from .tor import check_tor_bounds, tor_dims, trimmed

DEFAULT_FIELD = "gf:32003"


class UsageError(Exception):
    pass


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("MULTIGRAD_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"MULTIGRAD_THREADS={env!r} is not an integer") from None
    return os.cpu_count() or 1


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return formats.parse_job(text)
    except formats.ParseError as e:
        raise UsageError(f"{path}: {e}") from None


def _field(args, from_file: FieldSpec | None) -> FieldSpec:
    if args.field is not None:
        try:
            return FieldSpec.parse(args.field)
        except ValueError as e:
            raise UsageError(str(e)) from None
    return from_file or FieldSpec.parse(DEFAULT_FIELD)


def _cache(args):
    return DimCache(args.cache) if args.cache else None


def _emit_json(args, obj) -> None:
    if args.json:
        Path(args.json).write_text(formats.dumps(obj))


def _degree(text, n):
    try:
        return formats.parse_degree(text, n)
    except formats.ParseError as e:
        raise UsageError(str(e)) from None


def cmd_betti(args) -> int:
    M, ff = _load(args.input)
    field = _field(args, ff)
    table = betti_table(M, field, _cache(args))
    sr = strand_report(table)
    print(formats.betti_text(table), end="")
    print()
    print(formats.strand_report_text(sr), end="")
    _emit_json(args, formats.betti_dict(table, sr))
    return 0


def cmd_tor(args) -> int:
    M, ff = _load(args.m)
    N, _ = _load(args.n)
    if M.names != N.names:
        raise UsageError("the two modules must use the same variables")
    field = _field(args, ff)
    cache = _cache(args)
    if args.degree:
        degrees = [_degree(d, M.n) for d in args.degree]
    else:
        if args.box:
            upper = _degree(args.box, M.n)
        else:
            gens = [g for X in (M, N) for s in X.summands for g in s.ideal.gens]
            upper = tuple(x + 2 for x in lcm(gens, M.n))
        degrees = box(tuple(u - 1 for u in upper))
    rows = []
    for a in degrees:
        dims = trimmed(tor_dims(M, N, a, field, cache))
        if any(dims):
            rows.append({"degree": list(a), "dims": dims})
            print(f"{list(a)}: " + " ".join(f"Tor_{i}={d}" for i, d in enumerate(dims) if d))
    if not rows:
        print("Tor vanishes at every requested degree")
    _emit_json(args, {"schema": "multigrad.tor/1", "field": str(field), "m": formats.module_dict(M),
                      "n": formats.module_dict(N), "degrees_scanned": len(degrees), "nonzero": rows})
    return 0


def cmd_witness(args) -> int:
    M, ff = _load(args.input)
    field = _field(args, ff)
    table = betti_table(M, field, _cache(args))
    if args.auto_top or args.p is None:
        p, a = auto_top(table)
    else:
        if args.degree is None:
            raise UsageError("--p needs --degree (or use --auto-top)")
        p, a = args.p, _degree(args.degree, M.n)
    inst = KoszulInstance(M, field)
    H = inst.group(tuple(range(M.n)), p, a)
    if H.dim == 0:
        raise UsageError(f"H_{p}([n])_{list(a)} is zero; nothing to certify")
    cert = full_certificate(inst, p, a, H.unit_class(0))
    report = validate(inst, cert)
    print(formats.certificate_text(cert, M.names, report), end="")
    _emit_json(args, formats.certificate_dict(inst, cert, report))
    return 0 if report.ok else 1


def cmd_check(args) -> int:
    M, ff = _load(args.input)
    field = _field(args, ff)
    cache = _cache(args)
    table = betti_table(M, field, cache)
    cor = [check_cor41(table, i, a) for (i, a) in sorted(table.entries)]
    thm = [check_thm42(table, k) for k in range(table.projdim + 1)]
    if args.with_module:
        N, _ = _load(args.with_module)
        if N.names != M.names:
            raise UsageError("the two modules must use the same variables")
    else:
        N = residue_field(M.n, M.names)
    if args.box:
        upper = _degree(args.box, M.n)
    else:
        gens = [g for X in (M, N) for s in X.summands for g in s.ideal.gens]
        upper = tuple(x + 1 for x in lcm(gens, M.n))
    pts = box(tuple(u - 1 for u in upper))
    dims = {}

    def dims_at(b):
        if b not in dims:
            dims[b] = tor_dims(M, N, b, field, cache)
        return dims[b]

    tor = [check_tor_bounds(M, N, p, b, field, dims_at) for b in pts for p, d in enumerate(dims_at(b)) if d]
    ok = all(r.ok for r in cor) and all(r.ok for r in thm) and all(r.ok for r in tor)
    print(f"cor41: {sum(r.ok for r in cor)}/{len(cor)} pass")
    for r in thm:
        state = "hypothesis fails" if not r.hypothesis else ("pass" if r.ok else "FAIL")
        print(f"thm42 k={r.extra['k']}: {state}")
    print(f"tor bounds: {sum(r.ok for r in tor)}/{len(tor)} pass over {len(pts)} degrees")
    print("all checks pass" if ok else "CHECK FAILED")
    _emit_json(args, {"schema": "multigrad.check/1", "field": str(field), "module": formats.module_dict(M),
                      "cor41": [formats.bound_report_dict(r) for r in cor],
                      "thm42": [formats.bound_report_dict(r) for r in thm],
                      "tor_bounds": {"n": formats.module_dict(N),
                                     "reports": [formats.tor_bound_dict(r) for r in tor]},
                      "ok": ok})
    return 0 if ok else 1


def cmd_corpus(args) -> int:
    try:
        params = CorpusParams(seed=args.seed, count=args.count, n_vars=args.n_vars, max_gens=args.max_gens,
                              max_exp=args.max_exp, fields=tuple(args.fields.split(",")), fuzz=args.fuzz,
                              pairs=args.pairs, pair_box=args.pair_box, start=args.start, corrupt=args.corrupt)
    except ValueError as e:
        raise UsageError(str(e)) from None
    report = run_corpus(params, _threads(args), args.cache)
    s = report["summary"]
    print(f"ideals: {s['ideals_passed']}/{s['ideals']} pass; pairs: {s['pairs_passed']}/{s['pairs']} pass")
    for key in ("cor41_checked", "certificates", "exactness_samples", "koszul_taylor_degrees",
                "tor_bounds_checked", "symmetry_degrees"):
        if key in s:
            print(f"  {key}: {s[key]}")
    if s["field_disagreements"]:
        print(f"  Betti tables differ between fields at indices {s['field_disagreements']}")
    for f in report["failures"]:
        where = f"--start {f['index']} --count 1" if "index" in f else f"pair {f['pair']}"
        print(f"FAIL {f['check']}: reproduce with corpus --seed {f['seed']} {where}")
    _emit_json(args, report)
    return 0 if report["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help=f"gf:P or qq (default {DEFAULT_FIELD}, or the input file's field)")
    common.add_argument("--json", metavar="PATH", help="also write a canonical JSON report")
    common.add_argument("--cache", metavar="DIR", help="persist homology dimensions in DIR")
    common.add_argument("--threads", type=int, help="worker cap (default: $MULTIGRAD_THREADS or all cores)")

    ap = argparse.ArgumentParser(prog="multigrad", description="Multigraded Betti and Tor tables of monomial modules.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", parents=[common], help="Betti table and strand report")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("tor", parents=[common], help="Tor dimensions over a box or at given degrees")
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--box", help="exclusive upper corner, e.g. 3,3")
    p.add_argument("--degree", action="append", help="a multidegree, e.g. 1,0 (repeatable)")
    p.set_defaults(func=cmd_tor)

    p = sub.add_parser("witness", parents=[common], help="witness certificate for a nonzero Betti number")
    p.add_argument("--input", required=True)
    p.add_argument("--auto-top", action="store_true", help="max p, lex-largest degree")
    p.add_argument("--p", type=int)
    p.add_argument("--degree")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("check", parents=[common], help="run every bound check on one module")
    p.add_argument("--input", required=True)
    p.add_argument("--with", dest="with_module", metavar="FILE", help="second module N for Tor bounds (default K)")
    p.add_argument("--box", help="exclusive upper corner of the Tor scan")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("corpus", parents=[common], help="seeded randomized harness")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--n-vars", type=int, default=3)
    p.add_argument("--max-gens", type=int, default=6)
    p.add_argument("--max-exp", type=int, default=3)
    p.add_argument("--fields", default="gf:2,gf:32003")
    p.add_argument("--fuzz", type=int, default=5, help="five-term sequence samples per ideal and field")
    p.add_argument("--pairs", type=int, default=10)
    p.add_argument("--pair-box", type=int, default=2)
    p.add_argument("--corrupt", type=int, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_corpus)
    return ap


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command())
