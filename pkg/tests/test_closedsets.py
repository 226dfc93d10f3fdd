from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rs_of
from liewide import closedsets as cs

R = cs.RootSubset


def subset(rs, roots):
    return R.from_roots(rs, roots)


def test_closure_examples():
    a2 = rs_of("A2")
    assert set(cs.closure(subset(a2, [(1, 0), (0, 1)])).roots) == {(1, 0), (0, 1), (1, 1)}
    s = subset(a2, [(1, 1), (-1, -1)])
    assert cs.closure(s) == s
    g2 = rs_of("G2")
    assert set(cs.closure(subset(g2, [(1, 0), (0, 1)])).roots) == set(g2.positive_roots)


@given(st.sampled_from(["A2", "B2", "G2", "A3", "B3"]), st.data())
@settings(max_examples=60, deadline=None)
def test_closure_is_a_closure_operator(name, data):
    rs = rs_of(name)
    n = len(rs.all_roots)
    a = R.from_indices(rs, data.draw(st.sets(st.integers(0, n - 1))))
    b = a | R.from_indices(rs, data.draw(st.sets(st.integers(0, n - 1))))
    ca, cb = cs.closure(a), cs.closure(b)
    assert cs.closure(ca) == ca
    assert set(a.indices) <= set(ca.indices)
    assert set(ca.indices) <= set(cb.indices)
    assert ca.is_closed()


def test_criterion_examples():
    a2 = rs_of("A2")
    assert cs.is_wide_criterion(subset(a2, [(1, 0), (0, -1)])).wide
    v = cs.is_wide_criterion(subset(a2, [(1, 1)]))
    assert not v.wide and set(v.witness.roots) == {(1, 1), (-1, -1)}
    b2 = rs_of("B2")
    assert cs.is_wide_criterion(subset(b2, [(1, 1), (1, 2)])).wide


def test_criterion_rejects_bad_input():
    a2 = rs_of("A2")
    with pytest.raises(ValueError, match="root"):
        cs.is_wide_criterion(subset(a2, [(1, 0), (0, 1)]))
    with pytest.raises(ValueError):
        cs.is_wide_criterion(subset(a2, [(1, 0), (-1, 0)]))


def test_family_constructors():
    a2 = rs_of("A2")
    assert set(cs.parabolic_nilradical_set(a2, {0}).roots) == {(1, 0), (1, 1)}
    assert set(cs.parabolic_nilradical_set(a2, {0, 1}).roots) == set(a2.positive_roots)
    a3 = rs_of("A3")
    assert len(cs.parabolic_nilradical_set(a3, {0})) == 3
    p = cs.pi_partition_set(a2, {0})
    assert set(p.roots) == {(1, 0), (0, -1)} and p.is_abelian()
    assert set(cs.pi_partition_set(a2, {0, 1}).roots) == set(a2.positive_roots)
    big = cs.pi_partition_set(a3, {0, 1})
    assert len(big) > 3 and not big.is_abelian()
    assert set(cs.derived_uplus_set(a2).roots) == {(1, 1)}
    assert set(cs.derived_uplus_set(a3).roots) == {(1, 1, 0), (0, 1, 1), (1, 1, 1)}
    assert cs.is_wide_criterion(cs.derived_uplus_set(a3)).wide
    assert len(cs.derived_uplus_set(rs_of("A1"))) == 0
    assert not cs.is_wide_criterion(cs.derived_uplus_set(rs_of("A1"))).wide


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3", "B3", "C3", "A4", "D4", "A2+A1", "A1+A1"])
def test_family_invariants(name):
    rs = rs_of(name)
    n = rs.rank
    for k in range(n + 1):
        for sub in itertools.combinations(range(n), k):
            nil = cs.parabolic_nilradical_set(rs, sub)
            assert nil.is_closed() and nil.is_asymmetric()
            meets_all = all(any(rs.component_of[i] == c for i in sub) for c in range(len(rs.components)))
            if meets_all:
                assert cs.is_wide_criterion(nil).wide
            part = cs.pi_partition_set(rs, sub)
            other = cs.pi_partition_set(rs, set(range(n)) - set(sub))
            assert part.is_asymmetric() and len(part) >= n and len(part) == len(other)


@pytest.mark.parametrize("name,wide", [("A1", False), ("A2", False), ("B2", True), ("G2", True),
                                       ("A3", True), ("B3", True), ("C3", True), ("A2+A1", False),
                                       ("B2+B2", True), ("A3+A1", False)])
def test_derived_wide_iff_no_small_components(name, wide):
    assert cs.is_wide_criterion(cs.derived_uplus_set(rs_of(name))).wide is wide


def test_cone_examples():
    a2 = rs_of("A2")
    chamber = cs.cone_of(cs.positive_set(a2))
    assert chamber.strictly_convex
    assert chamber.contains(a2.fund_weights[0]) and not chamber.contains(a2.weight([1, -1]))
    half = cs.cone_of(subset(a2, [(1, 1)]))
    assert not half.strictly_convex
    assert half.contains(a2.weight([1, -1])) and not half.contains(a2.weight([-1, 0]))
    a3 = rs_of("A3")
    c = cs.cone_of(cs.derived_uplus_set(a3))
    assert c.strictly_convex
    for i in range(3):
        w = a3.fund_weights[i]
        assert c.contains(w)
        assert c.contains(a3.weight_from_root([x - int(j == i) for j, x in enumerate(w.root_coords)]))


def test_census_examples():
    a1 = rs_of("A1")
    recs = list(cs.enumerate_census(a1))
    assert [r.subset.roots for r in recs] == [[], [(1,)], [(-1,)]]
    assert [r.verdict.wide for r in recs] == [False, True, True]
    a2 = rs_of("A2")
    recs = list(cs.enumerate_census(a2))
    for sub in [{0}, {1}]:
        p = cs.pi_partition_set(a2, sub)
        rec = next(r for r in recs if r.subset == p)
        assert rec.size == 2 and rec.abelian
    for r in cs.enumerate_census(rs_of("B2")):
        if r.verdict.wide and r.size == 2:
            assert r.abelian


@pytest.mark.parametrize("name,total,wide", [("A1", 3, 2), ("A2", 19, 12), ("B2", 37, 24), ("G2", 121, 84),
                                             ("A3", 219, 146)])
def test_census_counts(name, total, wide):
    recs = list(cs.enumerate_census(rs_of(name)))
    assert len(recs) == total and sum(r.verdict.wide for r in recs) == wide
    assert [r.subset.sort_key() for r in recs] == sorted(r.subset.sort_key() for r in recs)


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "C3"])
def test_census_rank_bound(name):
    rs = rs_of(name)
    for r in cs.enumerate_census(rs):
        assert r.subset.is_closed() and r.subset.is_asymmetric()
        if r.verdict.wide:
            assert r.size >= rs.rank
            if r.size == rs.rank:
                assert r.abelian


def test_census_guard_and_dedupe():
    with pytest.raises(ValueError, match="24"):
        list(cs.enumerate_census(rs_of("B4")))
    assert len(list(cs.enumerate_census(rs_of("A2"), dedupe_weyl=True))) == 5
    assert len(list(cs.enumerate_census(rs_of("G2"), max_results=7))) == 7


def test_census_record_json():
    rec = next(iter(cs.enumerate_census(rs_of("A1"))))
    assert set(rec.to_json()) == {"roots", "closed", "wide", "size", "abelian", "family_tags"}
