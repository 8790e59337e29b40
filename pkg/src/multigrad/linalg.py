"""Exact dense linear algebra over GF(p) or the rationals.

Scalars are plain Python ints reduced mod p, or ``fractions.Fraction`` for
the rationals. Matrices are small (a few hundred columns at most), so rows
are kept as Python lists and reduced in place.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = int | Fraction
Vector = tuple


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(p) (``characteristic=p``) or Q (``characteristic=0``)."""

    characteristic: int = 32003

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is not prime")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``gf:P``, ``qq`` (or ``q``/``rationals``)."""
        t = text.strip().lower()
        if t in ("qq", "q", "rationals"):
            return cls(0)
        if t.startswith("gf:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise ValueError(f"bad field spec {text!r}") from None
            return cls(p)
        raise ValueError(f"bad field spec {text!r}; expected gf:P or qq")

    def __str__(self) -> str:
        return "qq" if self.characteristic == 0 else f"gf:{self.characteristic}"

    def __call__(self, x) -> Scalar:
        if self.characteristic:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.characteristic) % self.characteristic
            return int(x) % self.characteristic
        return Fraction(x)

    def inv(self, x: Scalar) -> Scalar:
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(x, -1, self.characteristic)
        return 1 / Fraction(x)

    def encode(self, x: Scalar):
        """JSON-friendly canonical form: an int, or ``"num/den"`` for non-integral rationals."""
        if self.characteristic:
            return int(x)
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def decode(self, value) -> Scalar:
        if isinstance(value, str):
            return self(Fraction(value))
        return self(value)


@dataclass(frozen=True)
class DenseMatrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple  # row-major, length rows * cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length does not match shape")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> "DenseMatrix":
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(field(x) for x in r)
        return cls(field, len(rows), cols, tuple(flat))

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], nrows: int) -> "DenseMatrix":
        columns = list(columns)
        for c in columns:
            if len(c) != nrows:
                raise ValueError("column length does not match row count")
        return cls.from_rows(field, [[c[r] for c in columns] for r in range(nrows)], len(columns))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "DenseMatrix":
        return cls(field, rows, cols, (field(0),) * (rows * cols))

    @classmethod
    def identity(cls, field: FieldSpec, size: int) -> "DenseMatrix":
        return cls.from_rows(field, [[int(r == c) for c in range(size)] for r in range(size)], size)

    def __getitem__(self, rc: tuple[int, int]) -> Scalar:
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> Vector:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def column(self, c: int) -> Vector:
        return self.entries[c::self.cols] if self.cols else ()

    def to_rows(self) -> list[list]:
        return [list(self.row(r)) for r in range(self.rows)]

    def columns(self) -> list[Vector]:
        return [self.column(c) for c in range(self.cols)]

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self.field, self.cols, self.rows,
                           tuple(x for c in range(self.cols) for x in self.column(c)))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def apply(self, v: Sequence) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        p = self.field.characteristic
        nz = [(c, x) for c, x in enumerate(v) if x]
        out = []
        for r in range(self.rows):
            base = r * self.cols
            s = sum(self.entries[base + c] * x for c, x in nz)
            out.append(s % p if p else Fraction(s))
        return tuple(out)

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = [self.apply(other.column(c)) for c in range(other.cols)]
        return DenseMatrix.from_columns(self.field, cols, self.rows)

    def hstack(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return DenseMatrix.from_rows(self.field, [list(self.row(r)) + list(other.row(r)) for r in range(self.rows)],
                                     self.cols + other.cols)


def _reduce_rows(field: FieldSpec, rows: list[list], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row-echelon form; return pivot columns."""
    p = field.characteristic
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((k for k in range(r, nrows) if rows[k][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        if p:
            prow = [x * inv % p for x in rows[r]]
        else:
            prow = [x * inv for x in rows[r]]
        rows[r] = prow
        for k in range(nrows):
            f = rows[k][c]
            if k != r and f:
                if p:
                    rows[k] = [(x - f * y) % p for x, y in zip(rows[k], prow)]
                else:
                    rows[k] = [x - f * y for x, y in zip(rows[k], prow)]
        pivots.append(c)
        r += 1
    return pivots


def rref(A: DenseMatrix) -> tuple[int, list[int], DenseMatrix]:
    """Reduced row-echelon form with first-nonzero pivoting, columns left to right.

    Returns ``(rank, pivot_columns, reduced)``.
    """
    rows = A.to_rows()
    pivots = _reduce_rows(A.field, rows, A.cols)
    return len(pivots), pivots, DenseMatrix.from_rows(A.field, rows, A.cols)


def rank(A: DenseMatrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    rows = A.to_rows()
    return len(_reduce_rows(A.field, rows, A.cols))


def solve(A: DenseMatrix, b: Sequence) -> Vector | None:
    """Some ``x`` with ``A x = b``, free variables set to zero; ``None`` if inconsistent."""
    if len(b) != A.rows:
        raise ValueError(f"right-hand side of length {len(b)} for {A.rows} rows")
    f = A.field
    rows = [list(A.row(r)) + [f(b[r])] for r in range(A.rows)]
    pivots = _reduce_rows(f, rows, A.cols + 1)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [f(0)] * A.cols
    for k, c in enumerate(pivots):
        x[c] = rows[k][A.cols]
    return tuple(x)


def nullspace(A: DenseMatrix) -> list[Vector]:
    """Basis of ``{x : A x = 0}``, one vector per free column of the rref."""
    f = A.field
    rows = A.to_rows()
    pivots = _reduce_rows(f, rows, A.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(A.cols):
        if free in pivot_set:
            continue
        v = [f(0)] * A.cols
        v[free] = f(1)
        for k, c in enumerate(pivots):
            if rows[k][free]:
                v[c] = f(-rows[k][free])
        basis.append(tuple(v))
    return basis


def column_space_basis(field: FieldSpec, columns: Iterable[Sequence], nrows: int) -> list[Vector]:
    """The subset of ``columns`` at rref pivot positions (a basis of their span)."""
    columns = [tuple(c) for c in columns]
    if not columns or nrows == 0:
        return []
    _, pivots, _ = rref(DenseMatrix.from_columns(field, columns, nrows))
    return [columns[c] for c in pivots]


def combine(field: FieldSpec, columns: Sequence[Sequence], coeffs: Sequence, length: int) -> Vector:
    """``sum(coeffs[k] * columns[k])`` as a vector of the given length."""
    p = field.characteristic
    out = [0] * length
    for col, c in zip(columns, coeffs):
        if c:
            for r, x in enumerate(col):
                if x:
                    out[r] += c * x
    return tuple(x % p if p else Fraction(x) for x in out)
