from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from multigrad.linalg import DenseMatrix, FieldSpec, nullspace, rank, rref, solve

from conftest import GF, GF2, QQ


def M(field, rows, cols=None):
    return DenseMatrix.from_rows(field, rows, cols)


def test_rref_identity_and_zero():
    assert rref(DenseMatrix.identity(GF, 2))[:2] == (2, [0, 1])
    assert rref(M(GF, [[0, 0], [0, 0]]))[:2] == (0, [])


def test_rref_equal_rows_gf2():
    r, piv, R = rref(M(GF2, [[1, 1], [1, 1]]))
    assert (r, piv) == (1, [0])
    assert R.to_rows() == [[1, 1], [0, 0]]


def test_solve_examples():
    F7 = FieldSpec(7)
    assert solve(DenseMatrix.identity(F7, 2), (3, 4)) == (3, 4)
    assert solve(M(GF, [[0]]), (1,)) is None
    assert solve(M(FieldSpec(5), [[2]]), (1,)) == (3,)


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve(DenseMatrix.identity(GF, 2), (1,))


def test_solve_free_variables_zero():
    # x0 + x1 = 1: pivot on x0, free x1 set to zero
    assert solve(M(QQ, [[1, 1]]), (1,)) == (1, 0)


def test_nullspace_examples():
    (v,) = nullspace(M(QQ, [[1, 1]]))
    assert v[0] == -v[1] != 0
    assert nullspace(DenseMatrix.identity(QQ, 3)) == []
    assert len(nullspace(M(QQ, [[0, 0]]))) == 2


def test_non_prime_field_rejected():
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec.parse("gf:1")


def test_field_parse_roundtrip():
    for text in ("gf:2", "gf:32003", "qq"):
        assert str(FieldSpec.parse(text)) == text


def test_rational_encoding():
    assert QQ.encode(Fraction(3, 6)) == "1/2"
    assert QQ.encode(Fraction(4, 2)) == 2
    assert QQ.decode("1/2") == Fraction(1, 2)


matrices = st.integers(0, 5).flatmap(
    lambda r: st.integers(0, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)
        .map(lambda rows: (rows, c))))


@given(matrices, st.sampled_from([GF2, GF, QQ]))
def test_rank_of_transpose(mc, f):
    rows, c = mc
    A = M(f, rows, c)
    assert rank(A) == rank(A.transpose())


@given(matrices, st.sampled_from([GF2, GF, QQ]))
def test_rank_nullity(mc, f):
    rows, c = mc
    A = M(f, rows, c)
    basis = nullspace(A)
    assert rank(A) + len(basis) == A.cols
    for v in basis:
        assert not any(A.apply(v))


@given(matrices, st.sampled_from([GF2, GF, QQ]), st.data())
def test_solve_is_exact(mc, f, data):
    rows, c = mc
    A = M(f, rows, c)
    b = data.draw(st.lists(st.integers(-3, 3), min_size=A.rows, max_size=A.rows))
    x = solve(A, b)
    if x is not None:
        assert A.apply(x) == tuple(f(v) for v in b)
    else:
        # inconsistent: appending b raises the rank
        aug = M(f, [list(r) + [v] for r, v in zip(rows, b)], c + 1)
        assert rank(aug) == rank(A) + 1


@given(matrices)
def test_rank_rationals_vs_large_prime(mc):
    rows, c = mc
    # small integer entries: no unlucky-prime collision possible at this size
    assert rank(M(QQ, rows, c)) == rank(M(GF, rows, c))


def test_matmul_and_hstack():
    A = M(QQ, [[1, 2], [3, 4]])
    I = DenseMatrix.identity(QQ, 2)
    assert (A @ I) == A
    assert A.hstack(I).to_rows() == [[1, 2, 1, 0], [3, 4, 0, 1]]
