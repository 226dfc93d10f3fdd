from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from liewide import linalg

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rref_matches_sympy(rows):
    red, piv = linalg.rref(rows)
    sm, spiv = sympy.Matrix(rows).rref()
    assert list(spiv) == piv
    for i, row in enumerate(red):
        assert [Fraction(str(x)) for x in sm.row(i)] == row


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_nullspace_is_canonical_kernel(rows):
    n = len(rows[0])
    ker = linalg.nullspace(rows, n)
    assert len(ker) == n - linalg.rank(rows)
    free = linalg.free_columns(rows, n)
    for v, f in zip(ker, free):
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
        assert [v[j] for j in free] == [int(j == f) for j in free]


@given(matrices(), st.lists(small, min_size=5, max_size=5))
@settings(max_examples=60, deadline=None)
def test_solve(rows, x):
    n = len(rows[0])
    x = x[:n]
    rhs = [sum(a * b for a, b in zip(r, x)) for r in rows]
    sol = linalg.solve(rows, rhs, n)
    assert sol is not None
    assert [sum(a * b for a, b in zip(r, sol)) for r in rows] == rhs


def test_solve_inconsistent():
    assert linalg.solve([[1, 1], [2, 2]], [1, 3], 2) is None


def test_inverse_and_identity():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert linalg.matmul(a, linalg.inverse(a)) == linalg.identity(2)


@given(matrices(4, 4))
@settings(max_examples=40, deadline=None)
def test_echelon_tracks_rank(rows):
    e = linalg.Echelon(len(rows[0]))
    added = sum(e.add(r) for r in rows)
    assert added == linalg.rank(rows) == len(e)
    assert all(e.contains(r) for r in rows)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))))
@settings(max_examples=40, deadline=None)
def test_sparse_ops_agree_with_dense(pair):
    a, b = pair
    n = len(a)
    sa, sb = linalg.sp_from_dense(a), linalg.sp_from_dense(b)
    assert linalg.sp_to_dense(linalg.sp_mul(sa, sb), n) == linalg.matmul(a, b)
    comm = linalg.sp_commutator(sa, sb)
    dense = [[x - y for x, y in zip(r, s)] for r, s in zip(linalg.matmul(a, b), linalg.matmul(b, a))]
    assert linalg.sp_to_dense(comm, n) == dense
    assert linalg.sp_trace(sa) == sum(a[i][i] for i in range(n))
    assert linalg.sp_equal(linalg.sp_from_fmpq(linalg.sp_to_fmpq(sa, n)), sa)
    assert all(x for _, _, x in linalg.sp_entries(sa))
