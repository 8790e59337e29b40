"""Homology of strands with explicit cycle representatives.

Representatives are picked from the pivot structure of ``[boundaries | cycles]``
so every group, and every class built from it, is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .koszul import ChainMap, StrandComplex
from .linalg import DenseMatrix, combine, column_space_basis, nullspace, rank, rref, solve


class ExactnessError(RuntimeError):
    """A system that exactness guarantees to be solvable had no solution."""


@dataclass(frozen=True)
class HomologyClass:
    key: tuple  # (F, i, a)
    coordinates: tuple
    representative: tuple

    @property
    def is_zero(self) -> bool:
        return not any(self.coordinates)

    @property
    def F(self):
        return self.key[0]

    @property
    def hdeg(self) -> int:
        return self.key[1]

    @property
    def degree(self):
        return self.key[2]


@dataclass(frozen=True)
class HomologyGroup:
    strand: StrandComplex
    i: int
    cycles: tuple[tuple, ...]
    representatives: tuple[tuple, ...]
    boundary_basis: tuple[tuple, ...] = dc_field(repr=False)
    _system: DenseMatrix = dc_field(repr=False, default=None)

    @property
    def key(self) -> tuple:
        return self.strand.F, self.i, self.strand.a

    @property
    def dim(self) -> int:
        return len(self.representatives)

    @property
    def chain_length(self) -> int:
        return self.strand.size(self.i)

    def is_cycle(self, z: Sequence) -> bool:
        return len(z) == self.chain_length and not any(self.strand.differential(self.i).apply(z))

    def class_of_cycle(self, z: Sequence) -> HomologyClass:
        """Coordinates of ``z`` modulo boundaries in the representative basis."""
        f = self.strand.field
        z = tuple(f(x) for x in z)
        if not self.is_cycle(z):
            raise ValueError(f"chain is not a cycle in H_{self.i}{self.strand.key}")
        if self.dim == 0:
            return HomologyClass(self.key, (), z)
        x = solve(self._system, z)
        if x is None:
            raise ExactnessError("cycle outside span of boundaries and representatives")
        return HomologyClass(self.key, tuple(x[len(self.boundary_basis):]), z)

    def class_from_coordinates(self, coords: Sequence) -> HomologyClass:
        f = self.strand.field
        coords = tuple(f(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError("coordinate vector has wrong length")
        return HomologyClass(self.key, coords, combine(f, self.representatives, coords, self.chain_length))

    def unit_class(self, k: int) -> HomologyClass:
        return self.class_from_coordinates([int(r == k) for r in range(self.dim)])

    def zero_class(self) -> HomologyClass:
        return self.class_from_coordinates([0] * self.dim)


def homology_group(strand: StrandComplex, i: int) -> HomologyGroup:
    f = strand.field
    size = strand.size(i)
    cycles = tuple(nullspace(strand.differential(i))) if size else ()
    boundaries = column_space_basis(f, strand.differential(i + 1).columns(), size)
    reps: list[tuple] = []
    system = None
    if cycles:
        stacked = list(boundaries) + list(cycles)
        _, pivots, _ = rref(DenseMatrix.from_columns(f, stacked, size))
        nb = len(boundaries)
        reps = [stacked[c] for c in pivots if c >= nb]
        if reps:
            system = DenseMatrix.from_columns(f, list(boundaries) + reps, size)
    return HomologyGroup(strand, i, cycles, tuple(reps), tuple(boundaries), system)


def homology_dims(strand: StrandComplex) -> list[int]:
    """``dim H_i`` for every position, via ranks only."""
    ranks = [rank(strand.differential(i)) for i in range(len(strand.bases) + 1)]
    return [strand.size(i) - ranks[i] - ranks[i + 1] for i in range(len(strand.bases))]


def _check_map(src: HomologyGroup, tgt: HomologyGroup, f: ChainMap):
    if f.source != src.strand.key or f.target != tgt.strand.key or tgt.i != src.i + f.shift:
        raise ValueError("chain map does not connect these groups")


def apply_map(f: ChainMap, y: HomologyClass, src: HomologyGroup, tgt: HomologyGroup) -> HomologyClass:
    _check_map(src, tgt, f)
    if y.key != src.key:
        raise ValueError("class does not belong to the source group")
    if src.i < 0 or src.i >= len(f.matrices):
        return tgt.zero_class()
    return tgt.class_of_cycle(f.apply(src.i, y.representative))


def induced_map(src: HomologyGroup, tgt: HomologyGroup, f: ChainMap) -> DenseMatrix:
    """Matrix of the map ``H(f)`` in the representative bases (tgt.dim x src.dim)."""
    _check_map(src, tgt, f)
    cols = []
    for k in range(src.dim):
        cols.append(apply_map(f, src.unit_class(k), src, tgt).coordinates)
    return DenseMatrix.from_columns(src.strand.field, cols, tgt.dim)


def _lift(image_of_cycles: list[tuple], boundary_columns: list[tuple], target: tuple, nrows: int, field):
    columns = image_of_cycles + boundary_columns
    if not columns:
        return None if any(target) else ()
    x = solve(DenseMatrix.from_columns(field, columns, nrows), target)
    return None if x is None else x[:len(image_of_cycles)]


def lift_through_iota(y: HomologyClass, iota: ChainMap, small: HomologyGroup, big: HomologyGroup) -> HomologyClass:
    """A class ``y'`` in H_p(F)_a with ``ι(y') = y``, for ``y`` in H_p(F ∪ {s})_a.

    Solves ``ι(z) + d(w) = rep(y)`` with ``z`` a cycle of the smaller strand.
    The caller guarantees ``π(y) = 0``.
    """
    _check_map(small, big, iota)
    f = small.strand.field
    p = small.i
    images = [iota.apply(p, z) for z in small.cycles]
    bounds = big.strand.differential(p + 1).columns()
    c = _lift(images, bounds, y.representative, big.chain_length, f)
    if c is None:
        raise ExactnessError(f"no ι-preimage for class in H_{p}{big.strand.key}")
    lifted = small.class_of_cycle(combine(f, small.cycles, c, small.chain_length))
    if apply_map(iota, lifted, small, big).coordinates != y.coordinates:
        raise ExactnessError("ι-lift does not map back onto the class")
    return lifted


def lift_through_del(y: HomologyClass, delta: ChainMap, low: HomologyGroup, group: HomologyGroup) -> HomologyClass:
    """A class ``y'`` in H_i(F)_{a-ε_s} with ``X_s · y' = y``, for ``y`` in H_i(F)_a.

    Solves ``X_s z' + d(w) = rep(y)`` over cycles ``z'`` of the lower strand.
    The caller guarantees ``ι(y) = 0``.
    """
    _check_map(low, group, delta)
    f = group.strand.field
    i = group.i
    images = [delta.apply(i, z) for z in low.cycles]
    bounds = group.strand.differential(i + 1).columns()
    c = _lift(images, bounds, y.representative, group.chain_length, f)
    if c is None:
        raise ExactnessError(f"no ∂-preimage for class in H_{i}{group.strand.key}")
    lifted = low.class_of_cycle(combine(f, low.cycles, c, low.chain_length))
    if apply_map(delta, lifted, low, group).coordinates != y.coordinates:
        raise ExactnessError("∂-lift does not map back onto the class")
    return lifted
