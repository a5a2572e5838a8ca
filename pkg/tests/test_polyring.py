import pytest
from hypothesis import given, strategies as st

from serremult.errors import ArityMismatch, RingMismatch
from serremult.exactnum import GF
from serremult.polyring import (
    GREVLEX, LEX, Monomial, compare, poly_arith, polynomial_ring, quotient_ring, reduce_mod,
)

S = polynomial_ring(["x", "y", "z"])
U = polynomial_ring(["x", "y", "z", "u", "v", "w"])
A = quotient_ring(U, ["u*x + v*y + w*z"])


def test_arith_examples():
    a, b = S.parse("x + y"), S.parse("x - y")
    assert poly_arith(a, b, "add") == S.parse("2*x")
    assert poly_arith(a, b, "mul") == S.parse("x^2 - y^2")
    S2 = polynomial_ring(["x", "y"], GF(2))
    assert S2.parse("x + y") ** 2 == S2.parse("x^2 + y^2")


def test_ring_mismatch():
    T = polynomial_ring(["a", "b"])
    with pytest.raises(RingMismatch):
        poly_arith(S.parse("x"), T.parse("a"), "add")


def test_reduce_mod_examples():
    assert reduce_mod(U.parse("u*x + v*y + w*z"), A).is_zero()
    assert reduce_mod(U.parse("x"), A) == U.parse("x")
    assert reduce_mod(U.parse("u*x^2"), A) == U.parse("-v*x*y - w*x*z")
    assert reduce_mod(S.parse("x*y + 3"), quotient_ring(S)) == S.parse("x*y + 3")


def test_compare_examples():
    assert compare((2, 1, 0), (1, 1, 1), GREVLEX) == 1
    assert compare((1, 0), (0, 9), LEX) == 1
    assert compare((1, 2, 3), (1, 2, 3), GREVLEX) == 0
    assert compare(Monomial.of((1, 2)), Monomial.of((1, 2)), LEX) == 0
    with pytest.raises(ArityMismatch):
        compare((1, 0), (1, 0, 0))


def test_signed_factors():
    assert S.parse("x + -2*y") == S.parse("x - 2*y")
    assert S.parse("x*-y") == S.parse("-x*y")
    assert S.parse("-x^2") == S.parse("-(x^2)")


def test_formatting_round_trip():
    f = S.parse("3*x^2*y - 1/2*z + 7")
    assert S.parse(str(f)) == f


exps = st.tuples(*[st.integers(0, 4)] * 3)
orders = st.sampled_from([GREVLEX, LEX])


@given(exps, exps, exps, orders)
def test_order_is_multiplicative(u, v, w, order):
    c = compare(u, v, order)
    uw = tuple(a + b for a, b in zip(u, w))
    vw = tuple(a + b for a, b in zip(v, w))
    assert compare(uw, vw, order) == c
    assert compare(v, u, order) == -c


terms = st.dictionaries(exps, st.integers(-5, 5).filter(bool), max_size=5)


def _poly(R, d):
    return R.parse(" + ".join(f"({c})*x^{e[0]}*y^{e[1]}*z^{e[2]}" for e, c in d.items()) or "0")


@given(terms, terms, terms)
def test_ring_axioms(a, b, c):
    a, b, c = _poly(S, a), _poly(S, b), _poly(S, c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert (a - a).is_zero()


@given(terms, terms)
def test_reduce_mod_idempotent_and_linear(a, b):
    Q = quotient_ring(S, ["x*y - z^2", "x^3"])
    fa, fb = _poly(S, a), _poly(S, b)
    ra = Q.reduce(fa)
    assert Q.reduce(ra) == ra
    assert Q.reduce(fa + fb) == ra + Q.reduce(fb)
    assert Q.reduce(fa * 3) == ra * 3


@given(st.integers(0, 4), st.integers(0, 4))
def test_homogeneous_stays_homogeneous(d1, d2):
    f = S.parse(f"x^{d1} + y^{d1} + z^{d1}")
    g = S.parse(f"x^{d2}*y - z^{d2 + 1}")
    assert (f * g).is_homogeneous()
    assert (f * g).degree() == d1 + d2 + 1
    assert A.reduce(U.parse(f"u^{d1}*x^{d2 + 1}")).is_homogeneous()
