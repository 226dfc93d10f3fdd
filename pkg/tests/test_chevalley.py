from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import g_of
from liewide import linalg
from liewide.chevalley import bracket, centralizer_in_g, generated_subalgebra
from liewide.sl2 import centralizer_nilradical, principal_triple


def test_sl2_relations():
    g = g_of("A1")
    e, f, h = g.e(0), g.f(0), g.h(0)
    assert g.dim == 3
    assert bracket(g, e, f) == h
    assert bracket(g, h, e) == e * 2
    assert bracket(g, h, f) == f * -2


def test_a2_and_g2_constants():
    g = g_of("A2")
    assert g.dim == 8
    assert abs(g.structure_constant((1, 0), (0, 1))) == 1
    g2 = g_of("G2")
    assert g2.dim == 14
    assert max(abs(n) for n in g2.N.values()) == 3


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "B3", "C3", "A2+A1", "F4"])
def test_chain_property_and_coroots(name):
    g = g_of(name)
    rs = g.rs
    for (a, b), n in g.N.items():
        ra, rb = rs.all_roots[a], rs.all_roots[b]
        p = 0
        while rs.is_root(tuple(y - (p + 1) * x for x, y in zip(ra, rb))):
            p += 1
        assert abs(n) == p + 1
        na, nb = rs.negate_index(a), rs.negate_index(b)
        assert g.N[(na, nb)] == -n
        assert g.N[(b, a)] == -n
    for r in rs.positive_roots:
        neg = tuple(-c for c in r)
        assert bracket(g, g.e(r), g.e(neg)) == g.coroot(r)


def test_bracket_example_and_errors():
    g = g_of("A2")
    assert bracket(g, g.e(0) + g.e(1), g.f(0)) == g.h(0)
    x = g.e(0) + g.h(1) * 3
    assert bracket(g, x, x).is_zero()
    with pytest.raises(ValueError):
        bracket(g, g.e(0), g_of("A1").e(0))


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3", "B3", "C3"])
def test_jacobi_exhaustive(name):
    g = g_of(name)
    ads = [g.ad_sparse(x) for x in g.basis()]
    for a in range(g.dim):
        for b in range(a + 1, g.dim):
            br = g.bracket(g.basis_element(a), g.basis_element(b))
            assert linalg.sp_equal(g.ad_sparse(br), linalg.sp_commutator(ads[a], ads[b]))


@pytest.mark.parametrize("name", ["E6", "B5", "D5"])
def test_jacobi_sampled(name):
    g = g_of(name)
    rng = random.Random(1)
    for _ in range(300):
        x, y, z = (g.basis_element(rng.randrange(g.dim)) for _ in range(3))
        s = (bracket(g, x, bracket(g, y, z)) + bracket(g, y, bracket(g, z, x))
             + bracket(g, z, bracket(g, x, y)))
        assert s.is_zero()


def _elements(g):
    coeff = st.integers(-2, 2)
    return st.lists(coeff, min_size=g.dim, max_size=g.dim).map(g.element)


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_killing_invariance_and_centralizer_bound(data):
    g = g_of("B2")
    x, y, z = (data.draw(_elements(g)) for _ in range(3))
    assert g.killing(bracket(g, x, y), z) == g.killing(x, bracket(g, y, z))
    assert len(centralizer_in_g(g, x)) >= g.rank


def test_centralizer_examples():
    g = g_of("A1")
    assert len(centralizer_in_g(g, g.zero())) == 3
    assert len(centralizer_in_g(g, g.e(0))) == 1
    a2 = g_of("A2")
    assert len(centralizer_in_g(a2, a2.e((1, 1)))) == 4


def test_generated_subalgebra_examples():
    g = g_of("A1")
    assert len(generated_subalgebra(g, [g.e(0)])) == 1
    a2 = g_of("A2")
    assert len(generated_subalgebra(a2, [a2.e(0), a2.f(0), a2.e(1), a2.f(1)])) == 8
    t = principal_triple(a2)
    assert len(generated_subalgebra(a2, [t.f] + centralizer_nilradical(a2, t).basis())) == 8
    with pytest.raises(ValueError):
        generated_subalgebra(a2, [])


@given(st.lists(st.integers(0, 13), min_size=1, max_size=3), st.integers(0, 13))
@settings(max_examples=30, deadline=None)
def test_generated_subalgebra_monotone(idx, extra):
    g = g_of("G2")
    small = generated_subalgebra(g, [g.basis_element(i) for i in idx])
    big = generated_subalgebra(g, [g.basis_element(i) for i in idx + [extra]])
    assert len(big) >= len(small)
    ech = linalg.Echelon(g.dim)
    for b in big:
        ech.add(b.vector())
    assert all(ech.contains(s.vector()) for s in small)


def test_lie_element_canonical_form():
    g = g_of("A2")
    x = g.e(0) + g.e(0) * -1
    assert x.is_zero() and x.coeffs == {}
    assert repr(g.e(0) * 2 + g.h(1)) == "2*e[1,0] + 1*h2"
