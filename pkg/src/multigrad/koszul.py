"""Multidegree strands of the Koszul complex K(F; M) and the three chain maps
relating K(F; M) and K(F ∪ {s}; M).

Basis elements of K(F; M)_a in position i are ``e_G ⊗ m`` with ``G ⊆ F``,
``|G| = i`` and ``m`` a standard monomial of one summand, of total degree
``ε_G + a_j + deg m = a``. Signs: ``sign(g, G) = (-1)^#{g' in G : g' < g}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .linalg import DenseMatrix, FieldSpec
from .monomials import ModulePresentation, Monomial, Multidegree, add, is_nonneg, sub, unit

VariableSet = tuple[int, ...]


@dataclass(frozen=True, order=True)
class StrandBasisElement:
    G: VariableSet
    summand: int
    monomial: Monomial


def _sign(g: int, G: Sequence[int]) -> int:
    return -1 if sum(1 for h in G if h < g) % 2 else 1


@dataclass(frozen=True)
class StrandComplex:
    F: VariableSet
    a: Multidegree
    field: FieldSpec
    bases: tuple[tuple[StrandBasisElement, ...], ...]  # position 0..|F|
    differentials: tuple[DenseMatrix, ...]  # d_i : position i -> position i-1

    @property
    def key(self) -> tuple[VariableSet, Multidegree]:
        return self.F, self.a

    def basis(self, i: int) -> tuple[StrandBasisElement, ...]:
        return self.bases[i] if 0 <= i < len(self.bases) else ()

    def size(self, i: int) -> int:
        return len(self.basis(i))

    def differential(self, i: int) -> DenseMatrix:
        if 0 <= i < len(self.differentials):
            return self.differentials[i]
        return DenseMatrix.zeros(self.field, self.size(i - 1), self.size(i))

    @cached_property
    def _index(self) -> list[dict[StrandBasisElement, int]]:
        return [{e: k for k, e in enumerate(b)} for b in self.bases]

    def index(self, i: int) -> dict[StrandBasisElement, int]:
        return self._index[i] if 0 <= i < len(self.bases) else {}

    def chain_from_terms(self, i: int, terms: dict[StrandBasisElement, object]) -> tuple:
        """Column vector in position ``i`` from a basis-element -> coefficient map.

        Raises ``KeyError`` if some element is not in the basis.
        """
        idx = self.index(i)
        v = [self.field(0)] * self.size(i)
        for e, c in terms.items():
            v[idx[e]] = self.field(c)
        return tuple(v)


def strand_complex(M: ModulePresentation, F: Sequence[int], a: Multidegree, field: FieldSpec) -> StrandComplex:
    """The finite complex K(F; M)_a."""
    F = tuple(sorted(F))
    n = M.n
    if any(not 0 <= f < n for f in F):
        raise ValueError(f"variable set {F} not inside [0, {n})")
    a = tuple(a)
    bases = []
    for i in range(len(F) + 1):
        elems = []
        for G in combinations(F, i):
            eG = add(a, tuple(-int(k in G) for k in range(n)))
            for j, s in enumerate(M.summands):
                m = sub(eG, s.shift)
                if is_nonneg(m) and not s.ideal.contains(m):
                    elems.append(StrandBasisElement(G, j, m))
        bases.append(tuple(elems))

    one, minus = field(1), field(-1)
    diffs = [DenseMatrix.zeros(field, 0, len(bases[0]))]
    for i in range(1, len(bases)):
        rows_index = {e: k for k, e in enumerate(bases[i - 1])}
        nr, nc = len(bases[i - 1]), len(bases[i])
        entries = [field(0)] * (nr * nc)
        for col, e in enumerate(bases[i]):
            ideal = M.summands[e.summand].ideal
            for pos, g in enumerate(e.G):
                m = add(e.monomial, unit(n, g))
                if ideal.contains(m):
                    continue
                target = StrandBasisElement(e.G[:pos] + e.G[pos + 1:], e.summand, m)
                entries[rows_index[target] * nc + col] = minus if pos % 2 else one
        diffs.append(DenseMatrix(field, nr, nc, tuple(entries)))
    return StrandComplex(F, a, field, tuple(bases), tuple(diffs))


@dataclass(frozen=True)
class ChainMap:
    """A map of strands raising homological position by ``shift``.

    ``sign`` records the commutation rule ``d_tgt ∘ f = sign · f ∘ d_src``.
    """

    source: tuple[VariableSet, Multidegree]
    target: tuple[VariableSet, Multidegree]
    shift: int
    sign: int
    matrices: tuple[DenseMatrix, ...]  # indexed by source position

    def at(self, i: int) -> DenseMatrix:
        return self.matrices[i]

    def apply(self, i: int, chain: Sequence) -> tuple:
        if 0 <= i < len(self.matrices):
            return self.matrices[i].apply(chain)
        return ()


def _basis_map(field: FieldSpec, src: StrandComplex, tgt: StrandComplex, shift: int, image) -> tuple[DenseMatrix, ...]:
    mats = []
    for i in range(len(src.bases)):
        tb = tgt.index(i + shift)
        nr, nc = tgt.size(i + shift), src.size(i)
        entries = [field(0)] * (nr * nc)
        for col, e in enumerate(src.basis(i)):
            hit = image(e)
            if hit is None:
                continue
            t, c = hit
            entries[tb[t] * nc + col] = field(c)
        mats.append(DenseMatrix(field, nr, nc, tuple(entries)))
    return tuple(mats)


def iota_map(small: StrandComplex, big: StrandComplex) -> ChainMap:
    """Basis inclusion K(F; M)_a -> K(F ∪ {s}; M)_a."""
    return ChainMap(small.key, big.key, 0, 1, _basis_map(small.field, small, big, 0, lambda e: (e, 1)))


def pi_map(big: StrandComplex, low: StrandComplex, s: int) -> ChainMap:
    """e_s-component projection K(F ∪ {s}; M)_a -> K(F; M)_{a - ε_s}, one position down."""
    def image(e: StrandBasisElement):
        if s not in e.G:
            return None
        return StrandBasisElement(tuple(g for g in e.G if g != s), e.summand, e.monomial), _sign(s, e.G)

    return ChainMap(big.key, low.key, -1, -1, _basis_map(big.field, big, low, -1, image))


def delta_map(M: ModulePresentation, low: StrandComplex, small: StrandComplex, s: int) -> ChainMap:
    """Multiplication by X_s on carriers, K(F; M)_{a - ε_s} -> K(F; M)_a."""
    es = unit(M.n, s)

    def image(e: StrandBasisElement):
        m = add(e.monomial, es)
        if M.summands[e.summand].ideal.contains(m):
            return None
        return StrandBasisElement(e.G, e.summand, m), 1

    return ChainMap(low.key, small.key, 0, 1, _basis_map(low.field, low, small, 0, image))


class StrandCache:
    """Insert-only memo of strands keyed by (module digest, F, a, field).

    ``dict.setdefault`` keeps concurrent insert-or-get of one key idempotent.
    """

    def __init__(self):
        self._strands: dict = {}

    def __len__(self):
        return len(self._strands)

    def get(self, M: ModulePresentation, F: Sequence[int], a: Multidegree, field: FieldSpec) -> StrandComplex:
        key = (M.digest, tuple(sorted(F)), tuple(a), field)
        hit = self._strands.get(key)
        if hit is None:
            hit = self._strands.setdefault(key, strand_complex(M, F, a, field))
        return hit


def fundamental_chain_maps(M: ModulePresentation, F: Sequence[int], s: int, a: Multidegree, field: FieldSpec,
                           cache: StrandCache | None = None) -> tuple[ChainMap, ChainMap, ChainMap]:
    """``(ι, π, ∂)`` at (F, s, a).

    ι: K(F)_a -> K(F∪s)_a,  π: K(F∪s)_a -> K(F)_{a-ε_s} (shift -1),
    ∂: K(F)_{a-ε_s} -> K(F)_a.
    """
    F = tuple(sorted(F))
    if s in F:
        raise ValueError(f"variable {s} already in {F}")
    if not 0 <= s < M.n:
        raise ValueError(f"variable {s} out of range")
    build = cache.get if cache is not None else strand_complex
    big_F = tuple(sorted(F + (s,)))
    low_a = sub(a, unit(M.n, s))
    small = build(M, F, a, field)
    big = build(M, big_F, a, field)
    low = build(M, F, low_a, field)
    return iota_map(small, big), pi_map(big, low, s), delta_map(M, low, small, s)
