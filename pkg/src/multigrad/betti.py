"""Multigraded Betti tables and the statistics read off them: Z-graded
aggregation, regularity, the invariants d_k, linear strands, and the bound
checks on total and strand Betti numbers.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Mapping

from .homology import homology_dims
from .koszul import strand_complex
from .linalg import FieldSpec
from .monomials import ModulePresentation, Multidegree, candidate_degrees, leq, total


@dataclass(frozen=True)
class BettiTable:
    module: ModulePresentation
    field: FieldSpec
    entries: Mapping[tuple[int, Multidegree], int]  # only nonzero dims

    def __getitem__(self, key: tuple[int, Multidegree]) -> int:
        return self.entries.get((key[0], tuple(key[1])), 0)

    @property
    def n(self) -> int:
        return self.module.n

    def items(self):
        return sorted(self.entries.items())

    def totals(self) -> list[int]:
        out = [0] * (self.projdim + 1)
        for (i, _), d in self.entries.items():
            out[i] += d
        return out

    @property
    def projdim(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    def degrees(self, i: int) -> list[Multidegree]:
        return sorted(a for (j, a) in self.entries if j == i)

    def alternating_sum(self) -> dict[Multidegree, int]:
        acc: dict[Multidegree, int] = defaultdict(int)
        for (i, a), d in self.entries.items():
            acc[a] += -d if i % 2 else d
        return {a: c for a, c in sorted(acc.items()) if c}


def koszul_dims(M: ModulePresentation, a: Multidegree, field: FieldSpec, cache=None) -> list[int]:
    """``dim H_i([n], M)_a = β_{i,a}(M)`` for i = 0..n."""
    F = tuple(range(M.n))
    key = None
    if cache is not None:
        key = ("koszul", M.digest, F, tuple(a), str(field))
        hit = cache.get(key)
        if hit is not None:
            return hit
    dims = homology_dims(strand_complex(M, F, a, field))
    if cache is not None:
        cache.put(key, dims)
    return dims


def betti_table(M: ModulePresentation, field: FieldSpec = FieldSpec(), cache=None) -> BettiTable:
    entries = {}
    for a in candidate_degrees(M):
        for i, d in enumerate(koszul_dims(M, a, field, cache)):
            if d:
                entries[(i, a)] = d
    return BettiTable(M, field, entries)


def z_graded(table: BettiTable) -> dict[tuple[int, int], int]:
    """``β_{i,j} = Σ_{|a| = j} β_{i,a}``."""
    out: dict[tuple[int, int], int] = defaultdict(int)
    for (i, a), d in table.entries.items():
        out[(i, total(a))] += d
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class StrandReport:
    projdim: int
    reg: int
    d: dict[int, int]  # k = 0..n
    degenerate: tuple[int, ...]  # k > projdim, where d_k falls back to reg
    lin: dict[int, tuple[int, ...]]  # k -> (β_k^{k,lin}, ..., β_projdim^{k,lin})

    def monotone(self) -> bool:
        ds = [self.d[k] for k in sorted(self.d)]
        return all(x <= y for x, y in zip(ds, ds[1:])) and all(x <= self.reg for x in ds)


def strand_report(table: BettiTable) -> StrandReport:
    graded = z_graded(table)
    if not graded:
        raise ValueError("zero module has no strand report")
    pd = table.projdim
    reg = max(j - i for i, j in graded)
    d = {}
    for k in range(table.n + 1):
        d[k] = min([j - i for i, j in graded if i == k] + [reg])
    lin = {k: tuple(graded.get((i, i + d[k]), 0) for i in range(k, pd + 1)) for k in range(pd + 1)}
    return StrandReport(pd, reg, d, tuple(k for k in d if k > pd), lin)


@dataclass
class BoundReport:
    name: str
    hypothesis: bool
    rows: list[dict] = dc_field(default_factory=list)
    extra: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """No checked row failed; vacuously true when the hypothesis fails."""
        return all(r["pass"] for r in self.rows)


def check_cor41(table: BettiTable, p: int, a: Multidegree, bump: int = 0) -> BoundReport:
    """Degree-constrained Betti counts below a nonzero β_{p,a}.

    Per i: the number of degrees b ⪯ a with |b| <= |a| - p + i and β_{i,b} ≠ 0,
    and the sum of those β_{i,b}, both against C(p, i); then β_i >= C(p, i)
    and Σ_{i<=p} β_i >= 2^p. ``bump`` raises every bound (harness self-test).
    """
    a = tuple(a)
    rep = BoundReport("cor41", table[(p, a)] != 0, extra={"p": p, "a": list(a)})
    if not rep.hypothesis:
        return rep
    totals = table.totals()
    for i in range(p + 1):
        limit = total(a) - p + i
        hits = [(b, dim) for (j, b), dim in table.entries.items() if j == i and leq(b, a) and total(b) <= limit]
        bound = comb(p, i) + bump
        count, s = len(hits), sum(dim for _, dim in hits)
        beta_i = totals[i] if i < len(totals) else 0
        rep.rows.append({"i": i, "count": count, "sum": s, "bound": bound, "beta": beta_i,
                         "pass": count >= bound and s >= bound and beta_i >= bound})
    total_sum = sum(totals[:p + 1])
    rep.extra.update(total=total_sum, total_bound=2 ** p)
    rep.rows.append({"i": "total", "count": total_sum, "sum": total_sum, "bound": 2 ** p, "beta": total_sum,
                     "pass": total_sum >= 2 ** p})
    return rep


def cor41_scan(table: BettiTable, bump: int = 0) -> list[BoundReport]:
    return [check_cor41(table, i, a, bump) for (i, a) in sorted(table.entries)]


def is_linear_after_zero(table: BettiTable, report: StrandReport) -> bool:
    """All entries with i >= 1 on the single strand j - i = d_1."""
    graded = z_graded(table)
    pos = [(i, j) for i, j in graded if i >= 1]
    return bool(pos) and all(j - i == report.d[1] for i, j in pos)


def check_thm42(table: BettiTable, k: int) -> BoundReport:
    """Linear-strand bound β_i^{k,lin} >= C(p, i), i = k..p, for the largest p with β_p^{k,lin} ≠ 0."""
    sr = strand_report(table)
    strand = sr.lin.get(k, ())
    nonzero = [k + t for t, v in enumerate(strand) if v]
    rep = BoundReport("thm42", bool(nonzero), extra={"k": k, "d_k": sr.d.get(k)})
    if nonzero:
        p = max(nonzero)
        rep.extra["p"] = p
        for i in range(k, p + 1):
            v = strand[i - k]
            rep.rows.append({"i": i, "value": v, "bound": comb(p, i), "pass": v >= comb(p, i)})
    linear = sr.projdim >= 1 and is_linear_after_zero(table, sr)
    hk = {"applicable": linear}
    if linear:
        totals = table.totals()
        hk_rows = [{"i": i, "value": totals[i], "bound": comb(sr.projdim, i), "pass": totals[i] >= comb(sr.projdim, i)}
                   for i in range(sr.projdim + 1)]
        hk["rows"] = hk_rows
        rep.rows.extend({**r, "check": "herzog-kuhl"} for r in hk_rows)
    rep.extra["herzog_kuhl"] = hk
    return rep
