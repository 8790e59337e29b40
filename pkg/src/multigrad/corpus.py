"""Seeded randomized harness running every bound and oracle check over a stream of ideals."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache

from .betti import BettiTable, betti_table, check_cor41, koszul_dims
from .cache import DimCache
from .koszul import StrandCache
from .linalg import FieldSpec
from .monomials import ModulePresentation, box, candidate_degrees, k_polynomial, lcm, quotient, residue_field
from .polyseq import KoszulInstance, check_fundamental_sequence, full_certificate, validate
from .tor import check_tor_bounds, tor_dims, trimmed

MAX_VARS, MAX_GENS, MAX_EXP = 5, 8, 4


@dataclass(frozen=True)
class CorpusParams:
    seed: int = 1
    count: int = 100
    n_vars: int = 3
    max_gens: int = 6
    max_exp: int = 3
    fields: tuple[str, ...] = ("gf:2", "gf:32003")
    fuzz: int = 5
    pairs: int = 10
    pair_box: int = 2
    start: int = 0
    corrupt: int | None = None  # ideal index whose Betti bounds get raised by one (harness self-test)

    def __post_init__(self):
        if not 1 <= self.n_vars <= MAX_VARS:
            raise ValueError(f"n_vars must be in 1..{MAX_VARS}")
        if not 1 <= self.max_gens <= MAX_GENS:
            raise ValueError(f"max_gens must be in 1..{MAX_GENS}")
        if not 1 <= self.max_exp <= MAX_EXP:
            raise ValueError(f"max_exp must be in 1..{MAX_EXP}")
        if self.count < 0 or self.fuzz < 0 or self.pairs < 0 or self.pair_box < 0:
            raise ValueError("counts must be nonnegative")
        for f in self.fields:
            FieldSpec.parse(f)

    def field_specs(self) -> list[FieldSpec]:
        return [FieldSpec.parse(f) for f in self.fields]


def generate_ideal(params: CorpusParams, index: int) -> ModulePresentation:
    """Ideal number ``index`` of the stream; depends only on (seed, index, bounds)."""
    rng = random.Random(f"ideal:{params.seed}:{index}")
    n = params.n_vars
    gens = []
    for _ in range(rng.randint(1, params.max_gens)):
        g = (0,) * n
        while not any(g):
            g = tuple(rng.randint(0, params.max_exp) for _ in range(n))
        gens.append(g)
    return quotient(gens, n)


def auto_top(table: BettiTable) -> tuple[int, tuple[int, ...]]:
    """(p, a) with p maximal and a lex-largest among nonzero entries."""
    p = table.projdim
    return p, max(table.degrees(p))


def _fuzz(inst: KoszulInstance, params: CorpusParams, index: int, upper) -> dict:
    rng = random.Random(f"fuzz:{params.seed}:{index}")
    n = inst.n
    samples = violations = vanishing = 0
    first = None
    for _ in range(params.fuzz):
        F = tuple(k for k in range(n) if rng.random() < 0.5)
        if len(F) == n:
            F = F[:-1]
        s = rng.choice([k for k in range(n) if k not in F])
        i = rng.randint(0, len(F) + 1)
        a = tuple(rng.randint(0, u + 1) for u in upper)
        sample = check_fundamental_sequence(inst, F, i, a, s)
        samples += 1
        ok = sample.exact
        # vanishing above |F| and H_i(∅) = 0 for i > 0
        for j in (len(F) + 1, len(F) + 2):
            vanishing += 1
            ok &= inst.group(F, j, a).dim == 0
        vanishing += 1
        ok &= inst.group((), 1 + rng.randint(0, 1), a).dim == 0
        if not ok:
            violations += 1
            if first is None:
                first = {"F": list(F), "i": i, "a": list(a), "s": s, "dims": list(sample.dims),
                         "ranks": list(sample.ranks)}
    return {"samples": samples, "vanishing_checks": vanishing, "violations": violations, "first": first}


def _run_field(M: ModulePresentation, field: FieldSpec, params: CorpusParams, index: int,
               cache: DimCache | None) -> tuple[dict, BettiTable, list[str]]:
    failures = []
    table = betti_table(M, field, cache)
    bump = 1 if params.corrupt == index else 0
    reports = [check_cor41(table, i, a, bump) for (i, a) in sorted(table.entries)]
    bad = [r for r in reports if not r.ok]
    if bad:
        failures.append("cor41")
    cor = {"checked": len(reports), "failed": len(bad),
           "first_failure": None if not bad else {"p": bad[0].extra["p"], "a": bad[0].extra["a"]}}

    p, a = auto_top(table)
    inst = KoszulInstance(M, field, StrandCache())
    seed_class = inst.group(tuple(range(M.n)), p, a).unit_class(0)
    cert = full_certificate(inst, p, a, seed_class)
    val = validate(inst, cert)
    if not val.ok:
        failures.append("certificate")
    certificate = {"p": p, "degree": list(a), "counts": cert.counts, "bounds": cert.bounds,
                   "valid": val.ok, "first_violation": val.first_violation, "checks": val.checks}

    hilbert = table.alternating_sum() == k_polynomial(M)
    if not hilbert:
        failures.append("hilbert")
    K = residue_field(M.n, M.names)
    kt_bad = [list(b) for b in candidate_degrees(M)
              if trimmed(koszul_dims(M, b, field, cache)) != trimmed(tor_dims(M, K, b, field, cache))]
    if kt_bad:
        failures.append("koszul_taylor")

    upper = lcm((g for s in M.summands for g in s.ideal.gens), M.n)
    fuzz = _fuzz(inst, params, index, upper)
    if fuzz["violations"]:
        failures.append("exactness")
    result = {"totals": table.totals(), "cor41": cor, "certificate": certificate, "hilbert": hilbert,
              "koszul_taylor": {"degrees": len(candidate_degrees(M)), "mismatches": kt_bad},
              "fuzz": fuzz, "ok": not failures}
    return result, table, failures


def run_ideal(params: CorpusParams, index: int, cache_dir: str | None = None) -> dict:
    cache = DimCache(cache_dir) if cache_dir else None
    M = generate_ideal(params, index)
    out = {"index": index, "gens": [list(g) for g in M.summands[0].ideal.gens], "fields": {}, "failures": []}
    tables = []
    for field in params.field_specs():
        res, table, fails = _run_field(M, field, params, index, cache)
        out["fields"][str(field)] = res
        out["failures"].extend(f"{field}:{c}" for c in fails)
        tables.append(table.entries)
    out["fields_agree"] = all(t == tables[0] for t in tables)
    out["ok"] = not out["failures"]
    return out


def run_pair(params: CorpusParams, k: int, cache_dir: str | None = None) -> dict:
    """Tor bounds and symmetry for ideals (start+k, start+k+1) over the box [0, pair_box]^n."""
    cache = DimCache(cache_dir) if cache_dir else None
    i1 = params.start + k
    i2 = params.start + (k + 1) % max(params.count, 1)
    M, N = generate_ideal(params, i1), generate_ideal(params, i2)
    out = {"pair": [i1, i2], "fields": {}, "failures": []}
    degrees = box((params.pair_box,) * params.n_vars)
    for field in params.field_specs():
        dims = lru_cache(maxsize=None)(lambda b, f=field: tor_dims(M, N, b, f, cache))
        sym_bad = [list(b) for b in degrees if trimmed(dims(b)) != trimmed(tor_dims(N, M, b, field, cache))]
        checked = failed = 0
        first = None
        for b in degrees:
            for p, d in enumerate(dims(b)):
                if d:
                    rep = check_tor_bounds(M, N, p, b, field, dims)
                    checked += 1
                    if not rep.ok:
                        failed += 1
                        first = first or {"p": p, "a": list(b), "counts": rep.counts}
        if sym_bad:
            out["failures"].append(f"{field}:symmetry")
        if failed:
            out["failures"].append(f"{field}:tor_bounds")
        out["fields"][str(field)] = {"degrees": len(degrees), "symmetry_mismatches": sym_bad,
                                     "bounds_checked": checked, "bounds_failed": failed, "first_failure": first}
    out["ok"] = not out["failures"]
    return out


def _ideal_job(args):
    return run_ideal(*args)


def _pair_job(args):
    return run_pair(*args)


def run_corpus(params: CorpusParams, threads: int = 1, cache_dir: str | None = None) -> dict:
    """Aggregate report; identical for any ``threads`` and with or without a cache."""
    indices = range(params.start, params.start + params.count)
    npairs = min(params.pairs, params.count)
    ideal_jobs = [(params, k, cache_dir) for k in indices]
    pair_jobs = [(params, k, cache_dir) for k in range(npairs)]
    if threads > 1 and params.count > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            ideals = list(ex.map(_ideal_job, ideal_jobs))
            pairs = list(ex.map(_pair_job, pair_jobs))
    else:
        ideals = [_ideal_job(j) for j in ideal_jobs]
        pairs = [_pair_job(j) for j in pair_jobs]

    failures = [{"seed": params.seed, "index": r["index"], "check": c} for r in ideals for c in r["failures"]]
    failures += [{"seed": params.seed, "pair": r["pair"], "check": c} for r in pairs for c in r["failures"]]
    totals: dict[str, int] = {}
    for r in ideals:
        for fres in r["fields"].values():
            totals["cor41_checked"] = totals.get("cor41_checked", 0) + fres["cor41"]["checked"]
            totals["certificates"] = totals.get("certificates", 0) + 1
            totals["exactness_samples"] = totals.get("exactness_samples", 0) + fres["fuzz"]["samples"]
            totals["vanishing_checks"] = totals.get("vanishing_checks", 0) + fres["fuzz"]["vanishing_checks"]
            totals["koszul_taylor_degrees"] = totals.get("koszul_taylor_degrees", 0) + fres["koszul_taylor"]["degrees"]
    for r in pairs:
        for fres in r["fields"].values():
            totals["tor_bounds_checked"] = totals.get("tor_bounds_checked", 0) + fres["bounds_checked"]
            totals["symmetry_degrees"] = totals.get("symmetry_degrees", 0) + fres["degrees"]
    params_dict = asdict(params)
    params_dict["fields"] = list(params.fields)
    return {"schema": "multigrad.corpus/1", "params": params_dict, "ideals": ideals, "pairs": pairs,
            "summary": {"ideals": len(ideals), "ideals_passed": sum(r["ok"] for r in ideals),
                        "pairs": len(pairs), "pairs_passed": sum(r["ok"] for r in pairs),
                        "field_disagreements": [r["index"] for r in ideals if not r["fields_agree"]],
                        **totals},
            "failures": failures, "ok": not failures}
