from dataclasses import replace
from math import comb

import pytest
from hypothesis import given, strategies as st

from multigrad.betti import betti_table
from multigrad.homology import HomologyClass, homology_dims
from multigrad.koszul import strand_complex
from multigrad.monomials import box, is_nonneg, leq, quotient, residue_field, sub
from multigrad.polyseq import (KoszulInstance, Witness, check_fundamental_sequence, extract, full_certificate,
                               push, validate)

from conftest import EX_A, EX_B, GF, GF2, modules, quotients


def nonzero_h(M, F, i, upper, field=GF):
    """Oracle: scan the box and list every degree where H_i(F)_b is nonzero."""
    return {b for b in box(upper) if homology_dims(strand_complex(M, F, b, field))[i] if i <= len(F)}


def seed(inst, p, a):
    return inst.group(tuple(range(inst.n)), p, a).unit_class(0)


def test_push_hand_example():
    inst = KoszulInstance(quotient([(2,)]), GF)
    y = inst.group((), 0, (1,)).unit_class(0)
    b, ys = push(inst, 0, y)
    assert b == 1
    assert ys.key == ((0,), 0, (0,)) and not ys.is_zero


@pytest.mark.parametrize("n", [1, 2, 3])
def test_push_minimal_degree_is_immediate(n):
    inst = KoszulInstance(residue_field(n), GF)
    y = inst.group((), 0, (0,) * n).unit_class(0)
    b, ys = push(inst, 0, y)
    assert b == 0 and ys.key == ((0,), 0, (0,) * n)


def test_push_argument_errors():
    inst = KoszulInstance(EX_A, GF)
    y = inst.group((0,), 0, (0, 0)).unit_class(0)
    with pytest.raises(ValueError):
        push(inst, 0, y)
    with pytest.raises(ValueError):
        push(inst, 1, inst.group((0,), 0, (0, 0)).zero_class())


@given(modules(), st.data())
def test_push_randomized(M, data):
    inst = KoszulInstance(M, GF)
    s = data.draw(st.integers(0, M.n - 1))
    F = tuple(k for k in range(M.n) if k != s and data.draw(st.booleans()))
    a = data.draw(st.tuples(*[st.integers(0, 3)] * M.n))
    i = data.draw(st.integers(0, len(F)))
    g = inst.group(F, i, a)
    for k in range(g.dim):
        b, ys = push(inst, s, g.unit_class(k))
        expected = tuple(x - b * (t == s) for t, x in enumerate(a))
        assert ys.key == (tuple(sorted(F + (s,))), i, expected)
        assert inst.verify_class(ys)


def test_extract_residue_field_two_vars():
    inst = KoszulInstance(residue_field(2), GF)
    ws = extract(inst, (0, 1), (), 2, (1, 1), seed(inst, 2, (1, 1)), 1)
    oracle = nonzero_h(residue_field(2), (0, 1), 1, (1, 1))
    assert oracle == {(1, 0), (0, 1)}
    assert {w.degree for w in ws} == oracle
    assert all(w.hdeg == 1 for w in ws)


def test_extract_i_zero_returns_seed():
    inst = KoszulInstance(EX_A, GF)
    y = seed(inst, 2, (2, 1))
    (w,) = extract(inst, (0, 1), (), 2, (2, 1), y, 0)
    assert w.cls == y and w.I == () and w.b == (0, 0)


def test_extract_example_a():
    inst = KoszulInstance(EX_A, GF)
    ws = extract(inst, (0, 1), (), 2, (2, 1), seed(inst, 2, (2, 1)), 1)
    oracle = nonzero_h(EX_A, (0, 1), 1, (2, 1))
    assert oracle == {(2, 0), (1, 1)}
    assert len(ws) == 2 and {w.degree for w in ws} <= oracle


def test_extract_preconditions():
    inst = KoszulInstance(EX_A, GF)
    y = seed(inst, 2, (2, 1))
    with pytest.raises(ValueError):
        extract(inst, (0, 1), (), 2, (2, 1), y, 3)
    with pytest.raises(ValueError):
        extract(inst, (0, 1), (0, 1, 1), 2, (2, 1), y, 0)
    with pytest.raises(ValueError):
        extract(inst, (0, 1), (), 2, (2, 1), inst.group((0, 1), 2, (2, 1)).zero_class(), 0)
    with pytest.raises(ValueError):
        extract(inst, (0, 1), (), 1, (2, 1), y, 0)


def test_full_certificate_residue_field_three_vars():
    inst = KoszulInstance(residue_field(3), GF)
    cert = full_certificate(inst, 3, (1, 1, 1), seed(inst, 3, (1, 1, 1)))
    assert cert.counts == [1, 3, 3, 1]
    for i, lv in enumerate(cert.levels):
        assert {w.degree for w in lv} == {d for d in box((1, 1, 1)) if sum(d) == 3 - i}
    assert validate(inst, cert).ok


def test_full_certificate_example_a_matches_table():
    inst = KoszulInstance(EX_A, GF)
    cert = full_certificate(inst, 2, (2, 1), seed(inst, 2, (2, 1)))
    assert cert.counts == [1, 2, 1]
    table = betti_table(EX_A, GF)
    assert [sum(1 for (i, _) in table.entries if i == k) for k in range(3)] == [1, 2, 1]
    for lv in cert.levels:
        for w in lv:
            assert table[(w.hdeg, w.degree)] > 0
    assert validate(inst, cert).ok


def test_full_certificate_p_zero():
    inst = KoszulInstance(EX_A, GF)
    cert = full_certificate(inst, 0, (0, 0), seed(inst, 0, (0, 0)))
    assert cert.counts == [1]
    assert validate(inst, cert).ok


def _example_cert():
    inst = KoszulInstance(EX_B, GF)
    return inst, full_certificate(inst, 2, (2, 1), seed(inst, 2, (2, 1)))


def test_validate_detects_duplicate_degree():
    inst, cert = _example_cert()
    lv = cert.levels[1]
    tampered = replace(cert, levels=(cert.levels[0], (lv[0], lv[0]) + lv[2:], cert.levels[2]))
    rep = validate(inst, tampered)
    assert not rep.ok and "distinctness" in rep.first_violation


def test_validate_detects_degree_outside_box():
    inst, cert = _example_cert()
    w = cert.levels[1][0]
    bad_deg = (-1,) + w.degree[1:]
    bad = Witness(w.I, sub(cert.a, bad_deg), HomologyClass((w.cls.F, w.hdeg, bad_deg), (), ()))
    tampered = replace(cert, levels=(cert.levels[0], (bad,) + cert.levels[1][1:], cert.levels[2]))
    rep = validate(inst, tampered)
    assert not rep.ok and "support/positivity" in rep.first_violation


def test_validate_detects_zero_class():
    inst, cert = _example_cert()
    w = cert.levels[2][0]
    zero = inst.group(w.cls.F, w.hdeg, w.degree).zero_class()
    tampered = replace(cert, levels=cert.levels[:2] + ((replace(w, cls=zero),),))
    rep = validate(inst, tampered)
    assert not rep.ok and "zero" in rep.first_violation


def test_validate_detects_short_level():
    inst, cert = _example_cert()
    tampered = replace(cert, levels=(cert.levels[0], cert.levels[1][:1], cert.levels[2]))
    assert "count" in validate(inst, tampered).first_violation


@given(quotients(max_n=3, max_gens=4), st.sampled_from([GF2, GF]))
def test_counting_and_pascal_over_all_betti_degrees(M, f):
    table = betti_table(M, f)
    inst = KoszulInstance(M, f)
    F = tuple(range(M.n))
    for (p, a) in sorted(table.entries):
        y = seed(inst, p, a)
        for i in range(p + 1):
            trace = []
            ws = extract(inst, F, (), p, a, y, i, trace)
            assert len(ws) >= comb(p, i)
            assert len({w.degree for w in ws}) == len(ws)
            for w in ws:
                assert is_nonneg(w.b) and leq(w.degree, a) and sum(w.b) >= i
            for node in trace:
                assert sum(node["branches"]) == node["total"] >= node["bound"]


@given(modules(), st.data())
def test_five_term_sequence_exact(M, data):
    inst = KoszulInstance(M, GF)
    s = data.draw(st.integers(0, M.n - 1))
    F = tuple(k for k in range(M.n) if k != s and data.draw(st.booleans()))
    a = data.draw(st.tuples(*[st.integers(0, 3)] * M.n))
    i = data.draw(st.integers(0, len(F) + 2))
    sample = check_fundamental_sequence(inst, F, i, a, s)
    assert sample.exact
    assert inst.group((), 1, a).dim == 0
