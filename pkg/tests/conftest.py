from hypothesis import settings, strategies as st

from multigrad.linalg import FieldSpec
from multigrad.monomials import MonomialIdeal, ModulePresentation, Summand, minimalize, quotient

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

GF2 = FieldSpec(2)
GF = FieldSpec(32003)
QQ = FieldSpec(0)
FIELDS = [GF2, GF, QQ]

EX_A = quotient([(2, 0), (1, 1)])               # S/(x^2, xy)
EX_B = quotient([(2, 0), (1, 1), (0, 2)])       # S/(x^2, xy, y^2)


@st.composite
def exponent_vectors(draw, n, max_exp=3):
    v = draw(st.tuples(*[st.integers(0, max_exp)] * n))
    if not any(v):
        v = (1,) + v[1:]
    return v


@st.composite
def quotients(draw, max_n=3, max_gens=5, max_exp=3):
    n = draw(st.integers(1, max_n))
    gens = draw(st.lists(exponent_vectors(n, max_exp), min_size=0, max_size=max_gens))
    return quotient(gens, n)


@st.composite
def modules(draw, max_n=3, max_gens=4, max_exp=2, max_summands=2):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_summands))
    summands = []
    for _ in range(k):
        gens = draw(st.lists(exponent_vectors(n, max_exp), min_size=0, max_size=max_gens))
        shift = draw(st.tuples(*[st.integers(0, 1)] * n))
        summands.append(Summand(shift, minimalize(gens, n)))
    return ModulePresentation(tuple(summands))
