"""Multidegrees, monomial ideals and direct sums of shifted monomial quotients.

Multidegrees and monomials are plain integer tuples; a monomial is a
multidegree with nonnegative entries. Variables are 0-based indices.
"""

from __future__ import annotations

import hashlib
import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Multidegree = tuple[int, ...]
Monomial = tuple[int, ...]


def unit(n: int, i: int) -> Multidegree:
    return tuple(int(k == i) for k in range(n))


def zero(n: int) -> Multidegree:
    return (0,) * n


def total(a: Sequence[int]) -> int:
    return sum(a)


def add(a: Sequence[int], b: Sequence[int]) -> Multidegree:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Multidegree:
    return tuple(x - y for x, y in zip(a, b))


def leq(b: Sequence[int], a: Sequence[int]) -> bool:
    """Componentwise order ``b ⪯ a``."""
    return all(x <= y for x, y in zip(b, a))


def is_nonneg(a: Sequence[int]) -> bool:
    return all(x >= 0 for x in a)


def support(a: Sequence[int]) -> frozenset[int]:
    return frozenset(k for k, x in enumerate(a) if x)


def divides(m: Monomial, u: Monomial) -> bool:
    return leq(m, u)


def lcm(monomials: Iterable[Monomial], n: int) -> Monomial:
    out = [0] * n
    for m in monomials:
        for k, e in enumerate(m):
            if e > out[k]:
                out[k] = e
    return tuple(out)


def box(upper: Sequence[int]) -> list[Multidegree]:
    """All ``b`` with ``0 ⪯ b ⪯ upper``, in lex order."""
    pts: list[Multidegree] = [()]
    for u in upper:
        pts = [p + (e,) for p in pts for e in range(u + 1)]
    return pts


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal with a minimal, lex-sorted generating set."""

    n: int
    gens: tuple[Monomial, ...] = ()

    def __post_init__(self):
        for g in self.gens:
            if len(g) != self.n or not is_nonneg(g):
                raise ValueError(f"bad generator {g} for {self.n} variables")

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.gens)

    __contains__ = contains

    @property
    def is_unit(self) -> bool:
        return zero(self.n) in self.gens


def minimalize(gens: Iterable[Sequence[int]], n: int | None = None) -> MonomialIdeal:
    gens = sorted({tuple(g) for g in gens})
    if n is None:
        if not gens:
            raise ValueError("number of variables needed for the zero ideal")
        n = len(gens[0])
    keep = [g for g in gens if not any(h != g and divides(h, g) for h in gens)]
    return MonomialIdeal(n, tuple(keep))


def contains(I: MonomialIdeal, m: Monomial) -> bool:
    return I.contains(m)


def lcm_lattice_degrees(I: MonomialIdeal) -> set[Multidegree]:
    """lcm of every subset of the generators, the empty subset included."""
    out = {zero(I.n)}
    for k in range(1, len(I.gens) + 1):
        for sigma in combinations(I.gens, k):
            out.add(lcm(sigma, I.n))
    return out


@dataclass(frozen=True)
class Summand:
    shift: Multidegree
    ideal: MonomialIdeal


def default_names(n: int) -> tuple[str, ...]:
    if n <= 3:
        return ("x", "y", "z")[:n]
    return tuple(f"x{k + 1}" for k in range(n))


@dataclass(frozen=True)
class ModulePresentation:
    """``⊕_j S/I_j(-a_j)`` with every shift ``a_j`` in N^n."""

    summands: tuple[Summand, ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.summands:
            raise ValueError("a module needs at least one summand")
        n = self.summands[0].ideal.n
        if not self.names:
            object.__setattr__(self, "names", default_names(n))
        if len(self.names) != n:
            raise ValueError("variable names do not match the number of variables")
        for s in self.summands:
            if s.ideal.n != n or len(s.shift) != n:
                raise ValueError("summands over different numbers of variables")
            if not is_nonneg(s.shift):
                raise ValueError(f"shift {s.shift} is not in N^n; normalize first")

    @property
    def n(self) -> int:
        return len(self.names)

    @cached_property
    def digest(self) -> str:
        payload = json.dumps([[list(s.shift), [list(g) for g in s.ideal.gens]] for s in self.summands]
                             + [list(self.names)])
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def __hash__(self):
        return hash(self.digest)


def quotient(gens: Iterable[Sequence[int]], n: int | None = None, names: Sequence[str] = ()) -> ModulePresentation:
    """``S/I`` with zero shift."""
    if n is None and names:
        n = len(names)
    I = minimalize(gens, n)
    return ModulePresentation((Summand(zero(I.n), I),), tuple(names))


def residue_field(n: int, names: Sequence[str] = ()) -> ModulePresentation:
    """``K = S/(X_1, ..., X_n)``."""
    return quotient([unit(n, k) for k in range(n)], n, names)


def free_module(n: int, names: Sequence[str] = ()) -> ModulePresentation:
    return quotient([], n, names)


def normalized(summands: Sequence[tuple[Sequence[int], MonomialIdeal]], names: Sequence[str] = ()) -> ModulePresentation:
    """Translate all shifts by their componentwise minimum so they land in N^n."""
    n = summands[0][1].n
    low = [min(s[0][k] for s in summands) for k in range(n)]
    return ModulePresentation(tuple(Summand(sub(shift, low), I) for shift, I in summands), tuple(names))


def module_degree_basis(M: ModulePresentation, a: Multidegree) -> list[tuple[int, Monomial]]:
    """Basis of ``M_a`` as (summand index, monomial) pairs, ascending summand."""
    out = []
    for j, s in enumerate(M.summands):
        m = sub(a, s.shift)
        if is_nonneg(m) and not s.ideal.contains(m):
            out.append((j, m))
    return out


def k_polynomial(M: ModulePresentation) -> dict[Multidegree, int]:
    """Numerator of the multigraded Hilbert series of M over ``∏(1 - t_i)``."""
    terms: dict[Multidegree, int] = defaultdict(int)
    for s in M.summands:
        gens = s.ideal.gens
        for k in range(len(gens) + 1):
            sign = -1 if k % 2 else 1
            for sigma in combinations(gens, k):
                terms[add(s.shift, lcm(sigma, M.n))] += sign
    return {a: c for a, c in sorted(terms.items()) if c}


def candidate_degrees(M: ModulePresentation) -> list[Multidegree]:
    """Degrees where a Betti number of M can be nonzero (shifted lcm lattices)."""
    out = set()
    for s in M.summands:
        out.update(add(s.shift, d) for d in lcm_lattice_degrees(s.ideal))
    return sorted(out)


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"
