"""Constructive lower bounds from a family of graded groups H_i(F)_a linked by
five-term exact sequences

    H_i(F)_{a-ε_s} --∂--> H_i(F)_a --ι--> H_i(F∪s)_a --π--> H_{i-1}(F)_{a-ε_s} --∂--> H_{i-1}(F)_a

``push`` moves a nonzero class from F into F ∪ {s} at the cost of lowering
its s-degree; ``extract`` runs the witness recursion that produces, from one
nonzero class in H_p(F)_a, at least C(p-r, i) nonzero classes in H_{p-i}(F)
at pairwise distinct degrees below a.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence

from .homology import (ExactnessError, HomologyClass, HomologyGroup, apply_map, homology_group,
                       induced_map, lift_through_del, lift_through_iota)
from .koszul import StrandCache, StrandComplex, VariableSet, fundamental_chain_maps, strand_complex
from .linalg import FieldSpec, rank, solve
from .monomials import ModulePresentation, Multidegree, add, is_nonneg, leq, sub, support, total, unit


class PreconditionError(ValueError):
    pass


def _without(F: Sequence[int], s: int) -> VariableSet:
    return tuple(g for g in F if g != s)


def _with(F: Sequence[int], s: int) -> VariableSet:
    return tuple(sorted(set(F) | {s}))


class PolyseqInstance(ABC):
    """Abstract provider of the groups and the three maps.

    Subclasses supply groups and homology-level matrices; the class-level
    operations below fall back to linear algebra on those matrices.
    """

    n: int

    @abstractmethod
    def group(self, F: Sequence[int], i: int, a: Multidegree) -> HomologyGroup: ...

    @abstractmethod
    def iota_matrix(self, F, i, a, s):
        """H_i(F)_a -> H_i(F ∪ s)_a."""

    @abstractmethod
    def pi_matrix(self, F, i, a, s):
        """H_i(F ∪ s)_a -> H_{i-1}(F)_{a-ε_s}."""

    @abstractmethod
    def delta_matrix(self, F, i, a, s):
        """H_i(F)_{a-ε_s} -> H_i(F)_a."""

    def apply_iota(self, y: HomologyClass, s: int) -> HomologyClass:
        F, i, a = y.key
        m = self.iota_matrix(F, i, a, s)
        return self.group(_with(F, s), i, a).class_from_coordinates(m.apply(y.coordinates))

    def apply_pi(self, y: HomologyClass, s: int) -> HomologyClass:
        """π_s on a class of H_i(F)_a with ``s in F``; lands in H_{i-1}(F ∖ s)_{a-ε_s}."""
        F, i, a = y.key
        F0 = _without(F, s)
        m = self.pi_matrix(F0, i, a, s)
        return self.group(F0, i - 1, sub(a, unit(self.n, s))).class_from_coordinates(m.apply(y.coordinates))

    def apply_delta(self, y: HomologyClass, s: int) -> HomologyClass:
        """∂_s on a class of H_i(F)_a with ``s not in F``; lands in H_i(F)_{a+ε_s}."""
        F, i, a = y.key
        up = add(a, unit(self.n, s))
        m = self.delta_matrix(F, i, up, s)
        return self.group(F, i, up).class_from_coordinates(m.apply(y.coordinates))

    def lift_iota(self, y: HomologyClass, s: int) -> HomologyClass:
        """A preimage of ``y`` in H_p(F ∖ s)_a under ι_s; requires π_s(y) = 0."""
        if not self.apply_pi(y, s).is_zero:
            raise PreconditionError(f"π_{s}(y) ≠ 0; no ι-preimage")
        F, i, a = y.key
        F0 = _without(F, s)
        x = solve(self.iota_matrix(F0, i, a, s), y.coordinates)
        if x is None:
            raise ExactnessError("ι-lift system inconsistent")
        return self.group(F0, i, a).class_from_coordinates(x)

    def lift_delta(self, y: HomologyClass, s: int) -> HomologyClass:
        """A preimage of ``y`` in H_i(F)_{a-ε_s} under ∂_s; requires ι_s(y) = 0."""
        if not self.apply_iota(y, s).is_zero:
            raise PreconditionError(f"ι_{s}(y) ≠ 0; no ∂-preimage")
        F, i, a = y.key
        x = solve(self.delta_matrix(F, i, a, s), y.coordinates)
        if x is None:
            raise ExactnessError("∂-lift system inconsistent")
        return self.group(F, i, sub(a, unit(self.n, s))).class_from_coordinates(x)

    def verify_class(self, y: HomologyClass) -> bool:
        """Whether ``y`` is a nonzero class; subclasses recompute from scratch."""
        return not y.is_zero


class KoszulInstance(PolyseqInstance):
    """H_i(F)_a = i-th Koszul homology of M on the variables in F, degree a."""

    def __init__(self, M: ModulePresentation, field: FieldSpec, strands: StrandCache | None = None):
        self.M = M
        self.field = field
        self.n = M.n
        self.strands = strands if strands is not None else StrandCache()
        self._groups: dict = {}
        self._maps: dict = {}

    def strand(self, F: Sequence[int], a: Multidegree) -> StrandComplex:
        return self.strands.get(self.M, F, a, self.field)

    def group(self, F, i, a) -> HomologyGroup:
        key = (tuple(sorted(F)), i, tuple(a))
        g = self._groups.get(key)
        if g is None:
            g = self._groups.setdefault(key, homology_group(self.strand(key[0], key[2]), i))
        return g

    def chain_maps(self, F, s, a):
        key = (tuple(sorted(F)), s, tuple(a))
        hit = self._maps.get(key)
        if hit is None:
            hit = self._maps.setdefault(key, fundamental_chain_maps(self.M, key[0], s, key[2], self.field,
                                                                     self.strands))
        return hit

    def iota_matrix(self, F, i, a, s):
        iota, _, _ = self.chain_maps(F, s, a)
        return induced_map(self.group(F, i, a), self.group(_with(F, s), i, a), iota)

    def pi_matrix(self, F, i, a, s):
        _, pi, _ = self.chain_maps(F, s, a)
        return induced_map(self.group(_with(F, s), i, a), self.group(F, i - 1, sub(a, unit(self.n, s))), pi)

    def delta_matrix(self, F, i, a, s):
        _, _, delta = self.chain_maps(F, s, a)
        return induced_map(self.group(F, i, sub(a, unit(self.n, s))), self.group(F, i, a), delta)

    # chain-level overrides

    def apply_iota(self, y, s):
        F, i, a = y.key
        iota, _, _ = self.chain_maps(F, s, a)
        return apply_map(iota, y, self.group(F, i, a), self.group(_with(F, s), i, a))

    def apply_pi(self, y, s):
        F, i, a = y.key
        F0 = _without(F, s)
        _, pi, _ = self.chain_maps(F0, s, a)
        return apply_map(pi, y, self.group(F, i, a), self.group(F0, i - 1, sub(a, unit(self.n, s))))

    def apply_delta(self, y, s):
        F, i, a = y.key
        up = add(a, unit(self.n, s))
        _, _, delta = self.chain_maps(F, s, up)
        return apply_map(delta, y, self.group(F, i, a), self.group(F, i, up))

    def lift_iota(self, y, s):
        if not self.apply_pi(y, s).is_zero:
            raise PreconditionError(f"π_{s}(y) ≠ 0; no ι-preimage")
        F, i, a = y.key
        F0 = _without(F, s)
        iota, _, _ = self.chain_maps(F0, s, a)
        return lift_through_iota(y, iota, self.group(F0, i, a), self.group(F, i, a))

    def lift_delta(self, y, s):
        if not self.apply_iota(y, s).is_zero:
            raise PreconditionError(f"ι_{s}(y) ≠ 0; no ∂-preimage")
        F, i, a = y.key
        _, _, delta = self.chain_maps(F, s, a)
        return lift_through_del(y, delta, self.group(F, i, sub(a, unit(self.n, s))), self.group(F, i, a))

    def chain_terms(self, y: HomologyClass) -> dict:
        F, i, a = y.key
        return {e: c for e, c in zip(self.strand(F, a).basis(i), y.representative) if c}

    def verify_class(self, y: HomologyClass) -> bool:
        """Rebuild the strand and its homology from scratch and test ``y`` there."""
        F, i, a = y.key
        fresh = strand_complex(self.M, F, a, self.field)
        try:
            z = fresh.chain_from_terms(i, self.chain_terms(y))
        except KeyError:
            return False
        g = homology_group(fresh, i)
        if not g.is_cycle(z):
            return False
        return not g.class_of_cycle(z).is_zero


def push(inst: PolyseqInstance, s: int, y: HomologyClass) -> tuple[int, HomologyClass]:
    """Nonzero ``y_s`` in H_i(F ∪ s)_{a - b·ε_s}; returns ``(b, y_s)``."""
    F, i, a = y.key
    if s in F:
        raise ValueError(f"variable {s} already in {F}")
    if y.is_zero:
        raise ValueError("cannot push the zero class")
    if i > len(F):
        raise ValueError("homological degree exceeds |F|")
    steps = 0
    while True:
        z = inst.apply_iota(y, s)
        if not z.is_zero:
            return steps, z
        if y.degree[s] <= 0:
            raise ExactnessError(f"push through {s} descended below N^n")
        y = inst.lift_delta(y, s)
        if y.is_zero:
            raise ExactnessError("∂-lift of a nonzero class is zero")
        steps += 1


@dataclass(frozen=True)
class Witness:
    I: VariableSet
    b: Multidegree
    cls: HomologyClass

    @property
    def degree(self) -> Multidegree:
        return self.cls.degree

    @property
    def hdeg(self) -> int:
        return self.cls.hdeg


@dataclass(frozen=True)
class WitnessCertificate:
    F: VariableSet
    excluded: VariableSet
    p: int
    a: Multidegree
    seed: HomologyClass
    levels: tuple[tuple[Witness, ...], ...]  # index i = 0..p-r

    @property
    def counts(self) -> list[int]:
        return [len(lv) for lv in self.levels]

    @property
    def bounds(self) -> list[int]:
        r = len(self.excluded)
        return [comb(self.p - r, i) for i in range(len(self.levels))]


def _push_back(inst, s, w: Witness, a) -> Witness:
    _, z = push(inst, s, w.cls)
    return Witness(tuple(sorted(w.I + (s,))), sub(a, z.degree), z)


def extract(inst: PolyseqInstance, F: Sequence[int], excluded: Sequence[int], p: int, a: Multidegree,
            y: HomologyClass, i: int, trace: list | None = None) -> list[Witness]:
    """Witnesses y_I in H_{p-i}(F)_{a-b_I}, at least C(p-r, i) of them.

    ``trace``, if given, collects one record per branching node with the
    per-branch witness counts.
    """
    F = tuple(sorted(F))
    excluded = tuple(sorted(excluded))
    r = len(excluded)
    if not set(excluded) <= set(F):
        raise ValueError("excluded variables must lie in F")
    if not 0 <= r <= p <= len(F):
        raise ValueError(f"need 0 <= r <= p <= |F|, got r={r}, p={p}, |F|={len(F)}")
    if not 0 <= i <= p - r:
        raise ValueError(f"i={i} outside 0..{p - r}")
    if y.key != (F, p, tuple(a)):
        raise ValueError("seed class does not live in H_p(F)_a")
    if y.is_zero:
        raise ValueError("seed class is zero")
    return _extract(inst, F, excluded, p, tuple(a), y, i, trace)


def _extract(inst, F, excluded, p, a, y, i, trace):
    admissible = [s for s in F if s not in excluded]
    pis = {}
    for s in admissible:
        z = inst.apply_pi(y, s)
        if z.is_zero:
            lifted = inst.lift_iota(y, s)
            if lifted.is_zero:
                raise ExactnessError("ι-lift of a nonzero class is zero")
            below = _extract(inst, _without(F, s), excluded, p, a, lifted, i, trace)
            return [_push_back(inst, s, w, a) for w in below]
        pis[s] = z

    if i == 0:
        return [Witness((), (0,) * inst.n, y)]
    r = len(excluded)
    chosen = admissible[:p - r]
    out: list[Witness] = []
    branches = []
    for j, s in enumerate(chosen):
        excl = tuple(sorted(excluded + tuple(chosen[:j])))
        if i - 1 > (p - 1) - len(excl):
            branches.append(0)
            continue
        below = _extract(inst, _without(F, s), excl, p - 1, sub(a, unit(inst.n, s)), pis[s], i - 1, trace)
        pushed = [_push_back(inst, s, w, a) for w in below]
        branches.append(len(pushed))
        out.extend(pushed)
    if trace is not None:
        trace.append({"F": F, "excluded": excluded, "p": p, "i": i, "branches": branches,
                      "total": len(out), "bound": comb(p - r, i)})
    return out


def full_certificate(inst: PolyseqInstance, p: int, a: Multidegree, y: HomologyClass) -> WitnessCertificate:
    F = tuple(range(inst.n))
    levels = tuple(tuple(extract(inst, F, (), p, a, y, i)) for i in range(p + 1))
    return WitnessCertificate(F, (), p, tuple(a), y, levels)


@dataclass
class ValidationReport:
    ok: bool = True
    first_violation: str | None = None
    checks: int = 0
    notes: list[str] = dc_field(default_factory=list)

    def require(self, cond: bool, message: str):
        self.checks += 1
        if not cond and self.ok:
            self.ok = False
            self.first_violation = message


def validate(inst: PolyseqInstance, cert: WitnessCertificate) -> ValidationReport:
    """Recheck every claim of a certificate independently of how it was built."""
    rep = ValidationReport()
    F, excl, p, a = cert.F, cert.excluded, cert.p, cert.a
    allowed = set(F) - set(excl)
    r = len(excl)
    rep.require(cert.seed.key == (F, p, a), "seed: class not in H_p(F)_a")
    rep.require(inst.verify_class(cert.seed), "seed: class is zero")
    rep.require(len(cert.levels) == p - r + 1, f"levels: expected {p - r + 1}, got {len(cert.levels)}")
    for i, level in enumerate(cert.levels):
        seen = set()
        for w in level:
            tag = f"i={i} degree={list(w.degree)}"
            rep.require(w.cls.F == F, f"{tag}: class not over F")
            rep.require(w.hdeg == p - i, f"{tag}: homological degree {w.hdeg} != {p - i}")
            rep.require(tuple(w.b) == sub(a, w.degree), f"{tag}: b_I does not equal a - deg")
            rep.require(is_nonneg(w.b), f"{tag}: support/positivity: b_I not in N^n")
            rep.require(is_nonneg(w.degree), f"{tag}: support/positivity: degree outside N^n")
            rep.require(total(w.b) >= i, f"{tag}: |b_I| = {total(w.b)} < {i}")
            rep.require(support(w.b) <= allowed, f"{tag}: support/positivity: supp(b_I) not in F minus excluded")
            rep.require(set(w.I) <= allowed, f"{tag}: index set not in F minus excluded")
            rep.require(leq(w.degree, a) and total(w.degree) <= total(a) - i, f"{tag}: degree bound |b| <= |a| - i")
            rep.require(inst.verify_class(w.cls), f"{tag}: class is zero on recomputation")
            rep.require(w.degree not in seen, f"{tag}: distinctness: degree repeated")
            seen.add(w.degree)
        rep.require(len(level) >= comb(p - r, i), f"i={i}: count {len(level)} < C({p - r},{i})")
    return rep


@dataclass(frozen=True)
class ExactnessSample:
    F: VariableSet
    i: int
    a: Multidegree
    s: int
    dims: tuple[int, ...]  # H_i(F)_{a-ε_s}, H_i(F)_a, H_i(F∪s)_a, H_{i-1}(F)_{a-ε_s}, H_{i-1}(F)_a
    ranks: tuple[int, ...]  # ∂, ι, π, ∂
    composites_zero: bool

    @property
    def exact(self) -> bool:
        d, r = self.dims, self.ranks
        return (self.composites_zero
                and r[0] == d[1] - r[1]
                and r[1] == d[2] - r[2]
                and r[2] == d[3] - r[3])


def check_fundamental_sequence(inst: PolyseqInstance, F: Sequence[int], i: int, a: Multidegree,
                               s: int) -> ExactnessSample:
    """Rank test of exactness at the three middle spots of the five-term sequence at (F, i, a, s)."""
    F = tuple(sorted(F))
    a = tuple(a)
    low = sub(a, unit(inst.n, s))
    d1 = inst.delta_matrix(F, i, a, s)
    io = inst.iota_matrix(F, i, a, s)
    pi = inst.pi_matrix(F, i, a, s)
    d2 = inst.delta_matrix(F, i - 1, a, s)
    comps = [io @ d1, pi @ io, d2 @ pi]
    dims = (inst.group(F, i, low).dim, inst.group(F, i, a).dim, inst.group(_with(F, s), i, a).dim,
            inst.group(F, i - 1, low).dim, inst.group(F, i - 1, a).dim)
    return ExactnessSample(F, i, a, s, dims, tuple(rank(m) for m in (d1, io, pi, d2)),
                           all(c.is_zero() for c in comps))
