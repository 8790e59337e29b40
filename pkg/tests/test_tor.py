from hypothesis import given, strategies as st

from multigrad.betti import koszul_dims
from multigrad.linalg import rank
from multigrad.monomials import box, candidate_degrees, quotient, residue_field
from multigrad.tor import check_tor_bounds, taylor_strand, tor_dims, trimmed

from conftest import EX_A, EX_B, GF, GF2, QQ, modules, quotients

SX = quotient([(1, 0)])
SY = quotient([(0, 1)])
K2 = residue_field(2)


def test_taylor_infinite_tor_example():
    T = taylor_strand(SX, SX, (1, 3), GF)
    assert T.size(1) == 1 and T.size(0) == 0
    assert [b.carrier for b in T.bases[1]] == [(0, 3)]
    assert tor_dims(SX, SX, (1, 3), GF)[1] == 1


def test_nonzerodivisor_gives_no_tor():
    assert tor_dims(SX, SY, (1, 1), GF) == [0, 0]


def test_residue_field_pair():
    assert tor_dims(K2, K2, (1, 1), GF) == [0, 0, 1]


def test_infinite_tor_at_first_degree():
    assert tor_dims(SX, SX, (1, 0), GF)[1] == 1


def test_negative_degree_is_zero():
    assert not any(tor_dims(EX_A, EX_B, (-1, 2), GF))


@given(modules(), modules(max_summands=1), st.data())
def test_taylor_differential_squares_to_zero(M, N, data):
    if N.n != M.n:
        return
    a = data.draw(st.tuples(*[st.integers(0, 3)] * M.n))
    T = taylor_strand(M, N, a, GF)
    for i in range(2, len(T.bases)):
        assert (T.differential(i - 1) @ T.differential(i)).is_zero()


@given(modules(), st.sampled_from([GF2, GF, QQ]))
def test_taylor_with_residue_field_matches_koszul(M, f):
    Kn = residue_field(M.n)
    for a in candidate_degrees(M):
        assert trimmed(tor_dims(M, Kn, a, f)) == trimmed(koszul_dims(M, a, f))


@given(quotients(max_n=3, max_gens=4), quotients(max_n=3, max_gens=4), st.data())
def test_symmetry(M, N, data):
    if M.n != N.n:
        return
    a = data.draw(st.tuples(*[st.integers(0, 3)] * M.n))
    assert trimmed(tor_dims(M, N, a, GF)) == trimmed(tor_dims(N, M, a, GF))


@given(modules(), st.data())
def test_euler_characteristic(M, data):
    a = data.draw(st.tuples(*[st.integers(0, 3)] * M.n))
    N = residue_field(M.n)
    T = taylor_strand(M, N, a, GF)
    dims = tor_dims(M, N, a, GF)
    sizes = [T.size(i) for i in range(len(dims))]
    assert sum((-1) ** i * d for i, d in enumerate(dims)) == sum((-1) ** i * s for i, s in enumerate(sizes))
    for i in range(1, len(sizes)):
        assert rank(T.differential(i)) <= min(sizes[i], sizes[i - 1])


def test_bounds_residue_field():
    rep = check_tor_bounds(K2, K2, 2, (1, 1), GF)
    assert rep.hypothesis and rep.counts == [1, 2, 1] and rep.bounds == [1, 2, 1] and rep.ok


def test_bounds_infinite_tor():
    rep = check_tor_bounds(SX, SX, 1, (1, 0), GF)
    assert rep.hypothesis and rep.ok
    assert rep.counts[0] == 1 and rep.degrees[0] == [(0, 0)]


def test_bounds_p_zero():
    rep = check_tor_bounds(EX_A, EX_B, 0, (0, 0), GF)
    assert rep.hypothesis and rep.counts == [1] and rep.ok


def test_bounds_hypothesis_failure_reported():
    rep = check_tor_bounds(SX, SY, 1, (1, 1), GF)
    assert not rep.hypothesis and rep.counts == [] and rep.ok


@given(quotients(max_n=2, max_gens=3, max_exp=2), quotients(max_n=2, max_gens=3, max_exp=2), st.sampled_from([GF2, GF]))
def test_bounds_hold_over_box(M, N, f):
    if M.n != N.n:
        return
    for a in box((2,) * M.n):
        dims = tor_dims(M, N, a, f)
        for p, d in enumerate(dims):
            if d:
                assert check_tor_bounds(M, N, p, a, f).ok
