"""Tor^S(M, N)_a from the Taylor resolution of M tensored with N, one degree at a time."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Sequence

from .linalg import DenseMatrix, FieldSpec, rank
from .monomials import ModulePresentation, Monomial, Multidegree, add, box, is_nonneg, lcm, leq, sub, total


@dataclass(frozen=True, order=True)
class TaylorBasisElement:
    summand: int  # summand of M
    sigma: tuple[int, ...]  # indices into that summand's generators
    carrier_summand: int  # summand of N
    carrier: Monomial


@dataclass(frozen=True)
class TaylorStrand:
    a: Multidegree
    field: FieldSpec
    bases: tuple[tuple[TaylorBasisElement, ...], ...]
    differentials: tuple[DenseMatrix, ...]

    def size(self, i: int) -> int:
        return len(self.bases[i]) if 0 <= i < len(self.bases) else 0

    def differential(self, i: int) -> DenseMatrix:
        if 0 < i < len(self.differentials):
            return self.differentials[i]
        return DenseMatrix.zeros(self.field, self.size(i - 1), self.size(i))


def _length(M: ModulePresentation) -> int:
    return max(len(s.ideal.gens) for s in M.summands) + 1


def taylor_strand(M: ModulePresentation, N: ModulePresentation, a: Multidegree, field: FieldSpec) -> TaylorStrand:
    if M.n != N.n:
        raise ValueError("modules over different numbers of variables")
    a = tuple(a)
    n = M.n
    length = _length(M)
    bases: list[list[TaylorBasisElement]] = [[] for _ in range(length)]
    lcms: dict = {}
    for j, s in enumerate(M.summands):
        gens = s.ideal.gens
        rest = sub(a, s.shift)
        if not is_nonneg(rest):
            continue
        for k in range(len(gens) + 1):
            for sigma in combinations(range(len(gens)), k):
                L = lcm((gens[g] for g in sigma), n)
                lcms[(j, sigma)] = L
                if not leq(L, rest):
                    continue
                deg = sub(rest, L)
                for kk, t in enumerate(N.summands):
                    u = sub(deg, t.shift)
                    if is_nonneg(u) and not t.ideal.contains(u):
                        bases[k].append(TaylorBasisElement(j, sigma, kk, u))
    bases = [sorted(b) for b in bases]

    one, minus = field(1), field(-1)
    diffs = [DenseMatrix.zeros(field, 0, len(bases[0]))]
    for i in range(1, length):
        rows_index = {e: r for r, e in enumerate(bases[i - 1])}
        nr, nc = len(bases[i - 1]), len(bases[i])
        entries = [field(0)] * (nr * nc)
        for col, e in enumerate(bases[i]):
            L = lcms[(e.summand, e.sigma)]
            ideal = N.summands[e.carrier_summand].ideal
            for pos in range(len(e.sigma)):
                face = e.sigma[:pos] + e.sigma[pos + 1:]
                Lf = lcms.get((e.summand, face))
                if Lf is None:
                    Lf = lcm((M.summands[e.summand].ideal.gens[g] for g in face), n)
                u = add(e.carrier, sub(L, Lf))
                if ideal.contains(u):
                    continue
                target = TaylorBasisElement(e.summand, face, e.carrier_summand, u)
                entries[rows_index[target] * nc + col] = minus if pos % 2 else one
        diffs.append(DenseMatrix(field, nr, nc, tuple(entries)))
    return TaylorStrand(a, field, tuple(tuple(b) for b in bases), tuple(diffs))


def tor_dims(M: ModulePresentation, N: ModulePresentation, a: Multidegree, field: FieldSpec,
             cache=None) -> list[int]:
    """``dim Tor_i(M, N)_a`` for i = 0 .. (max generator count of M)."""
    a = tuple(a)
    length = _length(M)
    if not is_nonneg(a):
        return [0] * length
    key = None
    if cache is not None:
        key = ("tor", M.digest, N.digest, a, str(field))
        hit = cache.get(key)
        if hit is not None:
            return hit
    T = taylor_strand(M, N, a, field)
    ranks = [rank(T.differential(i)) for i in range(length + 1)]
    dims = [T.size(i) - ranks[i] - ranks[i + 1] for i in range(length)]
    if cache is not None:
        cache.put(key, dims)
    return dims


def trimmed(dims: Sequence[int]) -> list[int]:
    out = list(dims)
    while out and out[-1] == 0:
        out.pop()
    return out


@dataclass
class TorBoundReport:
    p: int
    a: Multidegree
    hypothesis: bool
    counts: list[int] = dc_field(default_factory=list)
    bounds: list[int] = dc_field(default_factory=list)
    degrees: list[list[Multidegree]] = dc_field(default_factory=list)

    @property
    def passed(self) -> list[bool]:
        return [c >= b for c, b in zip(self.counts, self.bounds)]

    @property
    def ok(self) -> bool:
        return all(self.passed)


def check_tor_bounds(M: ModulePresentation, N: ModulePresentation, p: int, a: Multidegree, field: FieldSpec,
                     dims: Callable[[Multidegree], list[int]] | None = None) -> TorBoundReport:
    """Count degrees b ⪯ a with |b| <= |a| - p + i and Tor_i(M, N)_b ≠ 0, for each i <= p."""
    a = tuple(a)
    if dims is None:
        dims = lru_cache(maxsize=None)(lambda b: tor_dims(M, N, b, field))

    def at(b, i):
        d = dims(b)
        return d[i] if i < len(d) else 0

    rep = TorBoundReport(p, a, at(a, p) != 0)
    if not rep.hypothesis:
        return rep
    pts = box(a)
    for i in range(p + 1):
        limit = total(a) - p + i
        hits = [b for b in pts if total(b) <= limit and at(b, i)]
        rep.counts.append(len(hits))
        rep.bounds.append(comb(p, i))
        rep.degrees.append(hits)
    return rep
