import random

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from serremult.errors import ResourceLimitExceeded
from serremult.groebner import (
    Limits, ModuleOrder, ModuleVector, buchberger, normal_form, reduce_vector, s_vector, syzygies,
)
from serremult.polyring import polynomial_ring, quotient_ring

S = polynomial_ring(["x", "y", "z"])
U = polynomial_ring(["x", "y", "z", "u", "v", "w"])
A = quotient_ring(U, ["u*x + v*y + w*z"])


def vec(R, *polys, shifts=()):
    return ModuleVector(tuple(R.parse(p) for p in polys), shifts)


def ideal_gb(R, gens, ring=None):
    G = buchberger([vec(R, g) for g in gens], ring or R)
    return {str(g.components[0]) for g in G.generators}


def test_buchberger_examples():
    R = polynomial_ring(["x", "y"])
    assert ideal_gb(R, ["x", "y"]) == {"x", "y"}
    L = polynomial_ring(["x", "y", "z"], order="lex")
    assert L.parse("y^3 - z^2") in {g.components[0] for g in
                                      buchberger([vec(L, "x^2 - y"), vec(L, "x^3 - z")], L).generators}
    assert ideal_gb(U, ["u*x + v*y + w*z"]) == {str(U.parse("u*x + v*y + w*z"))}


def test_normal_form_examples():
    R = polynomial_ring(["x", "y"])
    G = buchberger([vec(R, "x")], R)
    assert normal_form(vec(R, "x^2"), G).is_zero()
    G = buchberger([vec(R, "x^2 - y")], R)
    assert normal_form(vec(R, "x^2 + y"), G) == vec(R, "2*y")
    G = buchberger([vec(R, "0")], R)
    assert normal_form(vec(R, "x + y"), G) == vec(R, "x + y")


def test_syzygy_examples():
    R = polynomial_ring(["x", "y"])
    syz = syzygies([vec(R, "x"), vec(R, "y")], R)
    assert len(syz) == 1
    s = syz[0].components
    assert s[0] * R.parse("x") + s[1] * R.parse("y") == R.zero()
    assert {str(s[0]), str(s[1])} in ({"y", "-x"}, {"-y", "x"})
    assert syzygies([vec(R, "x^2 + y^2")], R) == []


def test_syzygies_over_hypersurface():
    gens = [vec(U, "u"), vec(U, "v"), vec(U, "w")]
    syz = syzygies(gens, A)
    assert len(syz) == 4
    for s in syz:
        total = sum((c * g.components[0] for c, g in zip(s.components, gens)), U.zero())
        assert A.reduce(total).is_zero()
    assert sorted(max(c.degree() for c in s.components if c) for s in syz) == [1, 1, 1, 1]


def test_step_cap_raises():
    gens = [vec(S, "x^3 - y*z^2"), vec(S, "y^3 - x*z^2"), vec(S, "z^3 - x^2*y")]
    with pytest.raises(ResourceLimitExceeded):
        buchberger(gens, S, Limits(3))


def _monic(expr, gens):
    p = sp.Poly(expr, *gens)
    return sp.Poly(p / p.LC(order="grevlex"), *gens)


def _random_ideal(rng, nvars=3):
    names = ["x", "y", "z"][:nvars]
    out = []
    for _ in range(rng.randint(2, 3)):
        d = rng.randint(1, 3)
        terms = []
        for _ in range(rng.randint(1, 3)):
            e = [0] * nvars
            for _ in range(d):
                e[rng.randrange(nvars)] += 1
            terms.append(f"{rng.randint(-3, 3) or 1}*" + "*".join(f"{n}^{a}" for n, a in zip(names, e)))
        out.append(" + ".join(terms))
    return out


@pytest.mark.parametrize("seed", range(8))
def test_reduced_basis_matches_sympy(seed):
    rng = random.Random(seed)
    gens = _random_ideal(rng)
    ours = buchberger([vec(S, g) for g in gens], S)
    x, y, z = sp.symbols("x y z")
    ref = sp.groebner([sp.sympify(g.replace("^", "**")) for g in gens], x, y, z, order="grevlex")
    ref_polys = {_monic(g, (x, y, z)) for g in ref.exprs}
    our_polys = {_monic(sp.sympify(str(g.components[0]).replace("^", "**")), (x, y, z))
                 for g in ours.generators if not g.is_zero()}
    assert our_polys == ref_polys


def _assert_spairs_vanish(G):
    order = G.order
    elems = [g.to_dict() for g in G.generators]
    finder = G._finder()
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            s = s_vector(elems[i], elems[j], order, G.ring.field)
            if s is None:
                continue
            assert reduce_vector(s, finder, order, G.ring.field) == {}


@pytest.mark.parametrize("seed", range(6))
def test_spairs_reduce_to_zero(seed):
    rng = random.Random(100 + seed)
    _assert_spairs_vanish(buchberger([vec(S, g) for g in _random_ideal(rng)], S))


def test_spairs_reduce_to_zero_for_modules():
    gens = [vec(S, "x", "y"), vec(S, "y^2", "z^2"), vec(S, "x*z", "0")]
    G = buchberger(gens, S)
    _assert_spairs_vanish(G)
    for g in gens:
        assert G.contains(g)


exps = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
                min_size=1, max_size=3)


@settings(max_examples=25, deadline=None)
@given(exps, exps, st.integers(-3, 3))
def test_membership_certificates(a_terms, b_terms, c):
    f = " + ".join(f"x^{a}*y^{b}*z^{e}" for a, b, e in a_terms)
    g = " + ".join(f"x^{a}*y^{b}*z^{e}" for a, b, e in b_terms)
    G = buchberger([vec(S, "x^2 - y*z"), vec(S, "y^2 - x*z")], S)
    member = S.parse(f"({f})*(x^2 - y*z) + ({g})*(y^2 - x*z)")
    assert G.contains(ModuleVector((member,)))
    r = normal_form(ModuleVector((member + S.parse(f"{c}*x*y*z^5 + x"),)), G)
    assert not r.is_zero()
    lts = G.leading_terms()
    for t, _ in r.components[0].terms():
        assert not any(all(a >= b for a, b in zip(t.exponents, lt[1])) for lt in lts)


@pytest.mark.parametrize("gens", [["x", "y", "z"], ["x^2", "x*y", "y^2"], ["x*y", "y*z", "z*x"]])
def test_double_syzygy_composes_to_zero(gens):
    first = syzygies([vec(S, g) for g in gens], S)
    second = syzygies(first, S)
    for s in second:
        comp = [sum((c * f.components[r] for c, f in zip(s.components, first)), S.zero())
                for r in range(len(gens))]
        assert all(p.is_zero() for p in comp)
    for f in first:
        assert sum((c * S.parse(g) for c, g in zip(f.components, gens)), S.zero()).is_zero()
