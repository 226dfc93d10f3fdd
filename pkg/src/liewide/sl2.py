"""sl2-triples through nilpotent elements and the gradings they induce."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import flint

from . import linalg
from .chevalley import ChevalleyAlgebra, LieElement, generated_subalgebra


@dataclass
class GradedSubspace:
    """Direct sum of pieces indexed by rational degrees."""

    pieces: Dict[Fraction, list] = field(default_factory=dict)

    def dims(self) -> Dict[Fraction, int]:
        return {d: len(v) for d, v in sorted(self.pieces.items()) if v}

    def degrees(self) -> List[Fraction]:
        return sorted(d for d, v in self.pieces.items() if v)

    def dim(self, degree=None) -> int:
        if degree is None:
            return sum(len(v) for v in self.pieces.values())
        return len(self.pieces.get(Fraction(degree), []))

    def positive_part(self) -> "GradedSubspace":
        return GradedSubspace({d: v for d, v in self.pieces.items() if d > 0 and v})

    def basis(self) -> list:
        return [x for d in sorted(self.pieces) for x in self.pieces[d]]


@dataclass(frozen=True)
class Sl2Triple:
    e: LieElement
    h: LieElement
    f: LieElement

    def relations_hold(self) -> bool:
        g = self.e.algebra
        return (g.bracket(self.h, self.e) == 2 * self.e
                and g.bracket(self.h, self.f) == -2 * self.f
                and g.bracket(self.e, self.f) == self.h)


def _matvec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> List[Fraction]:
    return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in m]


def is_nilpotent(g: ChevalleyAlgebra, x: LieElement) -> bool:
    return g.is_ad_nilpotent(x)


def jacobson_morozov(g: ChevalleyAlgebra, e: LieElement) -> Sl2Triple:
    """Complete a nonzero nilpotent e to an sl2-triple.

    h is taken as [e, z] with ad(e)^2 z = -2e, preferring h in the Cartan
    subalgebra when such a solution exists; f is then the unique solution of
    [e, f] = h, [h, f] = -2f.
    """
    if e.algebra is not g:
        raise ValueError("element from a different algebra")
    if e.is_zero():
        raise ValueError("e must be nonzero")
    if not is_nilpotent(g, e):
        raise ValueError("e is not ad-nilpotent")
    n = g.dim
    ad_e = g.ad_matrix(e)
    ad_e2 = linalg.matmul(ad_e, ad_e)
    rhs = [-2 * x for x in e.vector()]
    z = linalg.solve(ad_e2 + [ad_e[k] for k in range(g.n_roots)], rhs + [Fraction(0)] * g.n_roots, n)
    if z is None:
        z = linalg.solve(ad_e2, rhs, n)
    if z is None:
        raise ArithmeticError("no h in [e, g] with [h, e] = 2e")
    h = g.element(_matvec(ad_e, z))
    ad_h = g.ad_matrix(h)
    rows = [list(r) for r in ad_e] + [[a + (2 if i == j else 0) for j, a in enumerate(r)] for i, r in enumerate(ad_h)]
    fv = linalg.solve(rows, h.vector() + [Fraction(0)] * n, n)
    if fv is None:
        raise ArithmeticError("no f completing the triple")
    t = Sl2Triple(e, h, g.element(fv))
    assert t.relations_hold()
    return t


def _eigenvalues(m: Sequence[Sequence[Fraction]]) -> List[Fraction]:
    poly = linalg.to_fmpq(m).charpoly()
    roots = sorted(Fraction(int(r.p), int(r.q)) for r, _ in poly.roots())
    return roots


def h_grading(g: ChevalleyAlgebra, h: LieElement) -> GradedSubspace:
    """Eigenspace decomposition of ad h; raises if ad h is not split semisimple."""
    ad_h = g.ad_matrix(h)
    pieces: Dict[Fraction, List[LieElement]] = {}
    diagonal = all(k >= g.n_roots for k in h.coeffs)
    if diagonal:
        for k in range(g.dim):
            pieces.setdefault(ad_h[k][k], []).append(g.basis_element(k))
    else:
        for lam in _eigenvalues(ad_h):
            shifted = [[a - (lam if i == j else 0) for j, a in enumerate(r)] for i, r in enumerate(ad_h)]
            pieces[lam] = [g.element(v) for v in linalg.nullspace(shifted, g.dim)]
    if sum(len(v) for v in pieces.values()) != g.dim:
        raise ArithmeticError("ad h is not diagonalizable over Q")
    return GradedSubspace(dict(sorted(pieces.items())))


def graded_centralizer(g: ChevalleyAlgebra, t: Sl2Triple) -> GradedSubspace:
    """g^e split along the h-grading: g^e(i) = ker(ad e) on g_h(i)."""
    grading = h_grading(g, t.h)
    ad_e = g.ad_matrix(t.e)
    out: Dict[Fraction, List[LieElement]] = {}
    for deg, basis in grading.pieces.items():
        cols = [_matvec(ad_e, b.vector()) for b in basis]
        rows = [[cols[c][r] for c in range(len(basis))] for r in range(g.dim)]
        ker = linalg.nullspace(rows, len(basis))
        if ker:
            out[deg] = [sum((b * c for b, c in zip(basis, v) if c), g.zero()) for v in ker]
    return GradedSubspace(out)


def centralizer_nilradical(g: ChevalleyAlgebra, t: Sl2Triple) -> GradedSubspace:
    return graded_centralizer(g, t).positive_part()


def principal_nilpotent(g: ChevalleyAlgebra) -> LieElement:
    return sum((g.e(i) for i in range(g.rank)), g.zero())


def principal_triple(g: ChevalleyAlgebra) -> Sl2Triple:
    return jacobson_morozov(g, principal_nilpotent(g))


def minimal_nilpotent(g: ChevalleyAlgebra) -> LieElement:
    """Sum of highest-root vectors, one per simple component."""
    return sum((g.e(theta) for theta in g.rs.highest_roots), g.zero())


def two_dim_wide_pair(g: ChevalleyAlgebra) -> Tuple[LieElement, LieElement]:
    """A commuting pair (e, e~) with e principal such that e, h, f, e~ generate g.

    e~ is the first h-eigenvector of g^e, by increasing degree and basis
    order, that works; failing that, sums within one eigenspace are tried.
    """
    if not g.rs.is_simple or g.rank < 2:
        raise ValueError("two_dim_wide_pair needs a simple algebra of rank >= 2")
    t = principal_triple(g)
    zc = graded_centralizer(g, t)
    ech_e = linalg.Echelon(g.dim)
    ech_e.add(t.e.vector())

    def works(x: LieElement) -> bool:
        if ech_e.contains(x.vector()):
            return False
        return len(generated_subalgebra(g, [t.e, t.h, t.f, x])) == g.dim

    for deg in zc.degrees():
        for x in zc.pieces[deg]:
            if works(x):
                return t.e, x
    for deg in zc.degrees():
        piece = zc.pieces[deg]
        for i in range(len(piece)):
            for j in range(i + 1, len(piece)):
                x = piece[i] + piece[j]
                if works(x):
                    return t.e, x
        if len(piece) > 2:
            x = sum(piece, g.zero())
            if works(x):
                return t.e, x
    raise RuntimeError(f"no eigenvector of g^e generates {g.rs.name} together with the principal sl2")
