from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rs_of
from liewide.rootsys import build_root_system, parse_type, pi_height, simple_types

COUNTS = {"A1": 2, "A2": 6, "B2": 8, "C2": 8, "G2": 12, "A3": 12, "B3": 18, "C3": 18, "D4": 24,
          "F4": 48, "E6": 72, "E7": 126, "E8": 240, "A2+A1": 8, "B4": 32, "D5": 40}


@pytest.mark.parametrize("name,count", sorted(COUNTS.items()))
def test_root_counts(name, count):
    assert len(rs_of(name).all_roots) == count


def test_examples():
    a1 = rs_of("A1")
    assert set(a1.all_roots) == {(1,), (-1,)}
    g2 = rs_of("G2")
    assert [list(r) for r in g2.cartan] == [[2, -1], [-3, 2]]
    s = rs_of("A2+A1")
    assert s.rank == 3 and s.index_of_connection == 6
    assert parse_type("A2+A1") == [("A", 2), ("A", 1)]


@pytest.mark.parametrize("bad", ["E9", "D3", "B1", "G3", "Q2", ""])
def test_invalid_types_rejected(bad):
    with pytest.raises(ValueError):
        build_root_system(bad)


@pytest.mark.parametrize("letter,n", simple_types(8))
def test_structure_invariants(letter, n):
    rs = rs_of(f"{letter}{n}")
    # sign homogeneity and reflection closure
    for r in rs.all_roots:
        assert any(r) and (all(c >= 0 for c in r) or all(c <= 0 for c in r))
    for i in range(rs.rank):
        for r in rs.all_roots:
            assert rs.is_root(rs.simple_reflection(r, i))
    # cartan from sym, inverse, positivity
    for i in range(n):
        for j in range(n):
            assert rs.cartan[i][j] == 2 * rs.sym[i][j] / rs.sym[j][j]
    prod = [[sum(rs.cartan[i][k] * rs.inverse_cartan[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert prod == [[int(i == j) for j in range(n)] for i in range(n)]
    assert all(x > 0 for row in rs.inverse_cartan for x in row)
    f = rs.index_of_connection
    assert all((f * c).denominator == 1 for w in rs.fund_weights for c in w.root_coords)


def test_reflection_closure_all_pairs_small():
    for name in ["B3", "G2", "C3", "F4"]:
        rs = rs_of(name)
        for b in rs.all_roots:
            for g in rs.all_roots:
                assert rs.is_root(rs.reflect(b, g))


def test_pi_height_examples():
    a2 = rs_of("A2")
    assert pi_height(a2, {0}, (1, 1)) == 1
    assert pi_height(a2, {0}, a2.weight([1, 0])) == Fraction(2, 3)
    assert pi_height(a2, {0, 1}, (1, 1)) == 2


@given(st.sampled_from(["A2", "B3", "G2", "C3", "A2+A1", "D4", "F4"]), st.data())
@settings(max_examples=100, deadline=None)
def test_pi_height_two_formulas(name, data):
    rs = rs_of(name)
    fund = data.draw(st.lists(st.integers(-4, 4), min_size=rs.rank, max_size=rs.rank))
    subset = data.draw(st.sets(st.integers(0, rs.rank - 1)))
    w = rs.weight(fund)
    assert rs.pi_height(subset, w) == rs.pi_height_by_coweights(subset, w)


def test_bipartition_examples():
    assert rs_of("A3").dynkin_bipartition() == (frozenset({0, 2}), frozenset({1}))
    assert rs_of("A1").dynkin_bipartition() == (frozenset({0}), frozenset())
    assert rs_of("D4").dynkin_bipartition() == (frozenset({0, 2, 3}), frozenset({1}))


@pytest.mark.parametrize("letter,n", simple_types(8))
def test_bipartition_parts_orthogonal(letter, n):
    rs = rs_of(f"{letter}{n}")
    for part in rs.dynkin_bipartition():
        assert all(rs.are_orthogonal(i, j) for i in part for j in part if i != j)


@given(st.sampled_from(["A3", "B2", "G2", "C3"]), st.data())
@settings(max_examples=50, deadline=None)
def test_weight_roundtrip_and_dominant_conjugate(name, data):
    rs = rs_of(name)
    fund = data.draw(st.lists(st.integers(-3, 3), min_size=rs.rank, max_size=rs.rank))
    w = rs.weight(fund)
    assert rs.weight_from_root(w.root_coords) == w
    d = rs.dominant_conjugate(w.root_coords)
    assert rs.weight_from_root(d).is_dominant()
    assert rs.inner(d, d) == rs.inner(w.root_coords, w.root_coords)


def test_rho_coweight_is_sum_of_fundamental_coweights():
    for name in ["A2", "B2", "G2", "C3"]:
        rs = rs_of(name)
        total = [sum(rs.fund_coweight(i).root_coords[j] for i in range(rs.rank)) for j in range(rs.rank)]
        assert list(rs.rho_coweight().root_coords) == total


def test_json_roundtrip_fields():
    data = rs_of("B2").to_json()
    assert data["type"] == "B2" and len(data["roots"]) == 8
