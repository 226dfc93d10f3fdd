"""Exact rational linear algebra.

Dense elimination is delegated to FLINT (``fmpq_mat``); everything that crosses
the package boundary is plain Python ``Fraction``.  Sparse matrices are stored
as ``{row: {col: value}}`` dictionaries with no zero entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import flint

Vector = List[Fraction]
SpMat = Dict[int, Dict[int, Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)


def _q(x) -> "flint.fmpq | int":
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator
        return flint.fmpq(x.numerator, x.denominator)
    return x


def _frac(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def to_fmpq(rows: Sequence[Sequence], ncols: Optional[int] = None) -> flint.fmpq_mat:
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if nrows else 0
    flat = [_q(x) for row in rows for x in row]
    return flint.fmpq_mat(nrows, ncols, flat)


def from_fmpq(m: flint.fmpq_mat) -> List[List[Fraction]]:
    n, c = m.nrows(), m.ncols()
    flat = [_frac(x) for x in m.entries()]
    return [flat[i * c:(i + 1) * c] for i in range(n)]


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return [], []
    r, rank = to_fmpq(rows, ncols).rref()
    flat = r.entries()
    out: List[List[Fraction]] = []
    pivots: List[int] = []
    for i in range(rank):
        row = [_frac(x) for x in flat[i * ncols:(i + 1) * ncols]]
        pivots.append(next(j for j, x in enumerate(row) if x))
        out.append(row)
    return out, pivots


def rank(rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    if ncols == 0:
        return 0
    return to_fmpq(rows, ncols).rank()


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[Vector]:
    """Canonical kernel basis: one vector per free column, equal to 1 there and
    0 on every other free column."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    pivset = set(pivots)
    basis: List[Vector] = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def free_columns(rows: Sequence[Sequence], ncols: int) -> List[int]:
    _, pivots = rref(rows, ncols) if rows else ([], [])
    pivset = set(pivots)
    return [j for j in range(ncols) if j not in pivset]


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: Optional[int] = None) -> Optional[Vector]:
    """A particular solution of ``rows * x = rhs`` (free variables set to 0), or None."""
    if ncols is None:
        ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[List[Fraction]]:
    return from_fmpq(to_fmpq(a) * to_fmpq(b))


def identity(n: int) -> List[List[Fraction]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def inverse(a: Sequence[Sequence]) -> List[List[Fraction]]:
    return from_fmpq(to_fmpq(a).inv())


class Echelon:
    """Incrementally maintained reduced basis of a subspace of Q^n."""

    def __init__(self, n: int):
        self.n = n
        self.rows: Dict[int, Vector] = {}  # pivot column -> row with 1 at pivot
        self.original: List[Vector] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        w = list(v)
        for p, row in self.rows.items():
            c = w[p]
            if c:
                for j, x in enumerate(row):
                    if x:
                        w[j] -= c * x
        return w

    def add(self, v: Sequence[Fraction]) -> bool:
        """Add v to the span; returns True if the dimension grew."""
        w = self.reduce(v)
        p = next((j for j, x in enumerate(w) if x), None)
        if p is None:
            return False
        c = w[p]
        w = [x / c for x in w]
        for q, row in self.rows.items():
            d = row[p]
            if d:
                self.rows[q] = [a - d * b for a, b in zip(row, w)]
        self.rows[p] = w
        self.original.append(list(v))
        return True

    def contains(self, v: Sequence[Fraction]) -> bool:
        return not any(self.reduce(v))

    def basis(self) -> List[Vector]:
        return [self.rows[p] for p in sorted(self.rows)]


# --- sparse matrices -------------------------------------------------------

def sp_from_dense(rows: Sequence[Sequence]) -> SpMat:
    out: SpMat = {}
    for i, row in enumerate(rows):
        r = {j: Fraction(x) for j, x in enumerate(row) if x}
        if r:
            out[i] = r
    return out


def sp_to_dense(a: SpMat, n: int, m: Optional[int] = None) -> List[List[Fraction]]:
    m = n if m is None else m
    out = [[ZERO] * m for _ in range(n)]
    for i, row in a.items():
        for j, x in row.items():
            out[i][j] = x
    return out


def sp_to_fmpq(a: SpMat, n: int) -> flint.fmpq_mat:
    m = flint.fmpq_mat(n, n)
    for i, row in a.items():
        for j, x in row.items():
            m[i, j] = _q(x)
    return m


def sp_from_fmpq(m: flint.fmpq_mat) -> SpMat:
    return sp_from_dense(from_fmpq(m))


def sp_identity(n: int) -> SpMat:
    return {i: {i: ONE} for i in range(n)}


def sp_mul(a: SpMat, b: SpMat) -> SpMat:
    out: SpMat = {}
    for i, row in a.items():
        acc: Dict[int, Fraction] = {}
        for k, x in row.items():
            brow = b.get(k)
            if not brow:
                continue
            for j, y in brow.items():
                acc[j] = acc.get(j, ZERO) + x * y
        acc = {j: v for j, v in acc.items() if v}
        if acc:
            out[i] = acc
    return out


def sp_lincomb(terms: Iterable[Tuple[Fraction, SpMat]]) -> SpMat:
    out: Dict[int, Dict[int, Fraction]] = {}
    for c, a in terms:
        if not c:
            continue
        for i, row in a.items():
            orow = out.setdefault(i, {})
            for j, x in row.items():
                orow[j] = orow.get(j, ZERO) + c * x
    res: SpMat = {}
    for i, row in out.items():
        row = {j: v for j, v in row.items() if v}
        if row:
            res[i] = row
    return res


def sp_commutator(a: SpMat, b: SpMat) -> SpMat:
    return sp_lincomb([(ONE, sp_mul(a, b)), (-ONE, sp_mul(b, a))])


def sp_scale(c: Fraction, a: SpMat) -> SpMat:
    return sp_lincomb([(c, a)])


def sp_matvec(a: SpMat, v: Dict[int, Fraction]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for i, row in a.items():
        s = ZERO
        for j, x in row.items():
            y = v.get(j)
            if y:
                s += x * y
        if s:
            out[i] = s
    return out


def sp_trace(a: SpMat) -> Fraction:
    return sum((row.get(i, ZERO) for i, row in a.items()), ZERO)


def sp_equal(a: SpMat, b: SpMat) -> bool:
    return not sp_lincomb([(ONE, a), (-ONE, b)])


def sp_is_zero(a: SpMat) -> bool:
    return not a


def sp_entries(a: SpMat) -> Iterable[Tuple[int, int, Fraction]]:
    for i, row in a.items():
        for j, x in row.items():
            yield i, j, x
