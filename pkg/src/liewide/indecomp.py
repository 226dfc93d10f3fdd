"""The centralizer algebra A = (End V)^h and indecomposability verdicts.

A is solved blockwise: the weight basis of V is graded by the finest Cartan
grading for which every generator is homogeneous, and a matrix unit E_rc has
degree key(r) - key(c).  Each block of the solution space gets the canonical
kernel basis of ``linalg.nullspace``, so the coordinate of an element of A
along a basis vector is simply its entry at that vector's free position.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import flint

from . import linalg
from .chevalley import LieElement
from .closedsets import RootSubset, closure, cone_of
from .linalg import SpMat
from .repmod import IrrModule, Subspace, grading_keys

Pos = Tuple[int, int]


def _flat(a: SpMat) -> Dict[Pos, Fraction]:
    return {(r, c): v for r, c, v in linalg.sp_entries(a)}


@dataclass
class CentralizerAlgebra:
    module: IrrModule
    gens: List[LieElement]
    gen_mats: List[SpMat]
    basis: List[SpMat]
    positions: List[Pos]            # free position of each basis element
    keys: List[Tuple[Fraction, ...]]
    weights: List[Optional[Tuple[Fraction, ...]]]
    _table: Dict[Tuple[int, int], List[Fraction]] = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def module_dim(self) -> int:
        return self.module.dim

    def coords(self, x: SpMat) -> List[Fraction]:
        return [x.get(r, {}).get(c, Fraction(0)) for r, c in self.positions]

    def element(self, coords: Sequence[Fraction]) -> SpMat:
        return linalg.sp_lincomb(zip(coords, self.basis))

    def contains(self, x: SpMat) -> bool:
        return linalg.sp_equal(self.element(self.coords(x)), x)

    @property
    def identity_coords(self) -> List[Fraction]:
        return self.coords(linalg.sp_identity(self.module.dim))

    def product_coords(self, a: int, b: int) -> List[Fraction]:
        """Coordinates of basis[a] * basis[b]; the product is checked to lie in A."""
        key = (a, b)
        if key not in self._table:
            p = linalg.sp_mul(self.basis[a], self.basis[b])
            c = self.coords(p)
            if not linalg.sp_equal(self.element(c), p):
                raise ArithmeticError(f"product of basis elements {a}, {b} leaves the algebra")
            self._table[key] = c
        return self._table[key]

    def mult_table(self) -> Dict[Tuple[int, int], List[Fraction]]:
        for a in range(self.dim):
            for b in range(self.dim):
                self.product_coords(a, b)
        return dict(self._table)

    def commutes_with_generators(self, x: SpMat) -> bool:
        return all(not linalg.sp_commutator(g, x) for g in self.gen_mats)


def _element_weight(m: IrrModule, x: SpMat) -> Optional[Tuple[Fraction, ...]]:
    wts = m.basis_root_coords
    found = None
    for r, c, _ in linalg.sp_entries(x):
        w = tuple(a - b for a, b in zip(wts[r], wts[c]))
        if found is None:
            found = w
        elif w != found:
            return None
    return found


def centralizer_algebra(m: IrrModule, gens: Sequence[LieElement]) -> CentralizerAlgebra:
    """Exact solution space of [rho(x), a] = 0 for all x in gens."""
    gens = list(gens)
    mats = [m.act(x) for x in gens]
    keys = grading_keys(m, mats)
    n = m.dim
    cols = []
    rows = []
    for x in mats:
        bycol: Dict[int, List[Tuple[int, Fraction]]] = {}
        for r, c, v in linalg.sp_entries(x):
            bycol.setdefault(c, []).append((r, v))
        cols.append(bycol)
        rows.append(x)
    blocks: Dict[Tuple[Fraction, ...], List[Pos]] = {}
    for r in range(n):
        kr = keys[r]
        for c in range(n):
            blocks.setdefault(tuple(a - b for a, b in zip(kr, keys[c])), []).append((r, c))
    basis: List[SpMat] = []
    positions: List[Pos] = []
    bkeys: List[Tuple[Fraction, ...]] = []
    for key in sorted(blocks):
        unknowns = blocks[key]
        eqs: Dict[tuple, Dict[int, Fraction]] = {}
        for u, (r, c) in enumerate(unknowns):
            for xi in range(len(mats)):
                for r2, v in cols[xi].get(r, ()):
                    row = eqs.setdefault((xi, r2, c), {})
                    row[u] = row.get(u, Fraction(0)) + v
                for c2, v in rows[xi].get(c, {}).items():
                    row = eqs.setdefault((xi, r, c2), {})
                    row[u] = row.get(u, Fraction(0)) - v
        dense = [[row.get(u, Fraction(0)) for u in range(len(unknowns))]
                 for _, row in sorted(eqs.items()) if any(row.values())]
        for vec in linalg.nullspace(dense, len(unknowns)):
            mat: SpMat = {}
            for u, v in enumerate(vec):
                if v:
                    r, c = unknowns[u]
                    mat.setdefault(r, {})[c] = v
            basis.append(mat)
            bkeys.append(key)
        for f in linalg.free_columns(dense, len(unknowns)):
            positions.append(unknowns[f])
    weights = [_element_weight(m, b) for b in basis]
    return CentralizerAlgebra(m, gens, mats, basis, positions, bkeys, weights)


# --- radical ---------------------------------------------------------------------

def _trace_product(a: Dict[Pos, Fraction], b: Dict[Pos, Fraction]) -> Fraction:
    if len(a) > len(b):
        a, b = b, a
    s = Fraction(0)
    for (r, c), v in a.items():
        w = b.get((c, r))
        if w:
            s += v * w
    return s


def _gram(A: CentralizerAlgebra) -> List[List[Fraction]]:
    flats = [_flat(b) for b in A.basis]
    d = A.dim
    negkey: Dict[Tuple[Fraction, ...], List[int]] = {}
    for i, k in enumerate(A.keys):
        negkey.setdefault(k, []).append(i)
    gram = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        partners = negkey.get(tuple(-x for x in A.keys[i]), [])
        for j in partners:
            if j < i:
                continue
            t = _trace_product(flats[i], flats[j])
            gram[i][j] = gram[j][i] = t
    return gram


def _regular_gram(A: CentralizerAlgebra) -> List[List[Fraction]]:
    d = A.dim
    left = []
    for a in range(d):
        # columns of L_a are the coordinates of basis[a] * basis[b]
        cols = [A.product_coords(a, b) for b in range(d)]
        left.append([[cols[b][r] for b in range(d)] for r in range(d)])
    fm = [linalg.to_fmpq(L, d) for L in left]
    gram = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            prod = fm[i] * fm[j]
            t = sum((linalg._frac(prod[k, k]) for k in range(d)), Fraction(0))
            gram[i][j] = gram[j][i] = t
    return gram


def radical(A: CentralizerAlgebra, method: str = "trace") -> Subspace:
    """Jacobson radical in coordinates of A.

    ``trace`` uses the form tr_V(xy) of the defining matrices, ``regular`` the
    form tr(L_x L_y) of the left-regular representation; in characteristic 0
    both kernels equal the radical.
    """
    if method == "trace":
        gram = _gram(A)
    elif method == "regular":
        gram = _regular_gram(A)
    else:
        raise ValueError(f"unknown radical method {method!r}")
    return Subspace.from_vectors(A.dim, linalg.nullspace(gram, A.dim))


def quotient_is_commutative(A: CentralizerAlgebra, rad: Subspace) -> bool:
    ech = linalg.Echelon(A.dim)
    for v in rad.basis:
        ech.add(v)
    reps = [i for i in range(A.dim) if ech.add([Fraction(int(j == i)) for j in range(A.dim)])]
    for x in range(len(reps)):
        for y in range(x + 1, len(reps)):
            a, b = reps[x], reps[y]
            diff = [p - q for p, q in zip(A.product_coords(a, b), A.product_coords(b, a))]
            if any(diff) and not rad.contains(diff):
                return False
    return True


# --- idempotents ------------------------------------------------------------------

def _poly_at(p: flint.fmpq_poly, x: flint.fmpq_mat) -> flint.fmpq_mat:
    n = x.nrows()
    coeffs = p.coeffs()
    out = flint.fmpq_mat(n, n)
    ident = flint.fmpq_mat(n, n, [int(i == j) for i in range(n) for j in range(n)])
    for c in reversed(coeffs):
        out = out * x + ident * c
    return out


def split_idempotent(x: SpMat, n: int) -> Optional[SpMat]:
    """Nontrivial idempotent polynomial in x from the primary decomposition of
    its minimal polynomial over Q, or None when that polynomial is a power of
    one irreducible."""
    xm = linalg.sp_to_fmpq(x, n)
    mp = xm.minpoly()
    _, factors = mp.factor()
    if len(factors) < 2:
        return None
    f, e = factors[0]
    q = f ** e
    r = mp // q
    g, u, v = q.xgcd(r)
    # u q + v r = g, a nonzero constant; (v r / g)(x) is the projector onto ker q(x)
    e = ((v * r) % mp) * (1 / flint.fmpq(g.coeffs()[0]))
    return linalg.sp_from_fmpq(_poly_at(e, xm))


def _candidates(A: CentralizerAlgebra, seed: int, n_random: int):
    d = A.dim
    zero = tuple(Fraction(0) for _ in (A.keys[0] if A.keys else ()))
    graded0 = [i for i in range(d) if A.keys[i] == zero]
    rest = [i for i in range(d) if A.keys[i] != zero]
    for i in graded0 + rest:
        yield A.basis[i]
    for a in range(len(graded0)):
        for b in range(a + 1, len(graded0)):
            yield linalg.sp_lincomb([(1, A.basis[graded0[a]]), (1, A.basis[graded0[b]])])
    rng = random.Random(seed)
    pool = graded0 or list(range(d))
    for _ in range(n_random):
        yield linalg.sp_lincomb([(Fraction(rng.randint(-3, 3)), A.basis[i]) for i in pool])


def find_idempotent(A: CentralizerAlgebra, seed: int = 0, n_random: int = 50) -> Optional[SpMat]:
    n = A.module.dim
    ident = linalg.sp_identity(n)
    for x in _candidates(A, seed, n_random):
        if not x or linalg.sp_equal(x, linalg.sp_scale(x.get(0, {}).get(0, Fraction(0)), ident)):
            continue
        p = split_idempotent(x, n)
        if p is not None:
            return p
    return None


def is_valid_projector(A: CentralizerAlgebra, p: SpMat) -> bool:
    n = A.module.dim
    r = linalg.sp_trace(p)
    return (linalg.sp_equal(linalg.sp_mul(p, p), p) and 0 < r < n
            and A.commutes_with_generators(p))


def witness_projector(m: IrrModule, witness: RootSubset) -> SpMat:
    """Coordinate projection of a module onto its weight spaces with weights in
    witness + {0}; for the adjoint module and a symmetric closed witness this is
    the projection onto the reductive subalgebra it spans."""
    keep = set(tuple(Fraction(x) for x in r) for r in witness.roots)
    zero = tuple(Fraction(0) for _ in range(m.rs.rank))
    keep.add(zero)
    return {i: {i: Fraction(1)} for i, w in enumerate(m.basis_root_coords) if w in keep}


# --- verdicts -----------------------------------------------------------------------

INDECOMPOSABLE = "indecomposable"
DECOMPOSABLE = "decomposable"
UNDETERMINED = "undetermined_over_base_field"


@dataclass
class Verdict:
    decision: str
    certificate_kind: str
    data: dict

    def to_json(self) -> dict:
        return {"decision": self.decision, "certificate_kind": self.certificate_kind, "data": self.data}


def _matrix_json(p: SpMat, n: int) -> List[List[str]]:
    return [[str(x) for x in row] for row in linalg.sp_to_dense(p, n)]


def verdict_of_algebra(A: CentralizerAlgebra, seed: int = 0) -> Verdict:
    rad = radical(A)
    semis = A.dim - rad.dim
    if semis == 1:
        return Verdict(INDECOMPOSABLE, "local_algebra",
                       {"algebra_dim": A.dim, "radical_dim": rad.dim})
    p = find_idempotent(A, seed)
    n = A.module.dim
    if p is not None:
        assert is_valid_projector(A, p)
        r = int(linalg.sp_trace(p))
        return Verdict(DECOMPOSABLE, "idempotent",
                       {"algebra_dim": A.dim, "radical_dim": rad.dim,
                        "piece_dims": sorted([r, n - r], reverse=True),
                        "projector": _matrix_json(p, n)})
    return Verdict(UNDETERMINED, "semisimple_quotient",
                   {"algebra_dim": A.dim, "radical_dim": rad.dim,
                    "quotient_commutative": quotient_is_commutative(A, rad)})


def verdict(m: IrrModule, gens: Sequence[LieElement], seed: int = 0) -> Verdict:
    return verdict_of_algebra(centralizer_algebra(m, gens), seed)


# --- grading certificates -----------------------------------------------------------

@dataclass
class GradingCertificate:
    kind: str
    ok: bool
    grade_dims: Dict[str, int]
    grade0_dim: int
    reasons: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"kind": self.kind, "ok": self.ok, "grade_dims": self.grade_dims,
                "grade0_dim": self.grade0_dim, "reasons": self.reasons}


def _check_products(A: CentralizerAlgebra, grade_of, pieces: Dict, limit: int) -> Optional[str]:
    """grade(ab) = grade(a) + grade(b) on homogeneous basis pairs; returns a
    failure message or None."""
    items = [(g, b) for g, bs in pieces.items() for b in bs]
    count = 0
    for ga, a in items:
        for gb, b in items:
            p = linalg.sp_mul(a, b)
            if not p:
                continue
            count += 1
            if count > limit:
                return None
            gp = grade_of(p)
            if gp is not None and gp != ga + gb:
                return f"product of grades {ga} and {gb} has grade {gp}"
            if gp is None:
                return f"product of grades {ga} and {gb} is not homogeneous"
    return None


def _h_certificate(A: CentralizerAlgebra, h: LieElement, product_limit: int) -> GradingCertificate:
    g = h.algebra
    for x in A.gens:
        br = g.bracket(h, x)
        k = next(iter(x.coeffs), None)
        c = br.coeffs.get(k, Fraction(0)) / x.coeffs[k] if k is not None else Fraction(0)
        if br != x * c:
            raise ValueError(f"grading element does not normalize the generator {x!r}")
    m = A.module
    H = m.act(h)
    diag = all(set(row) <= {r} for r, row in H.items())
    hv = [H.get(i, {}).get(i, Fraction(0)) for i in range(m.dim)]

    def grade_of(x: SpMat) -> Optional[Fraction]:
        if diag:
            found = None
            for r, c, _ in linalg.sp_entries(x):
                d = hv[r] - hv[c]
                if found is None:
                    found = d
                elif d != found:
                    return None
            return found
        comm = linalg.sp_commutator(H, x)
        r, c, v = next(iter(linalg.sp_entries(x)))
        lam = comm.get(r, {}).get(c, Fraction(0)) / v
        return lam if linalg.sp_equal(comm, linalg.sp_scale(lam, x)) else None

    pieces: Dict[Fraction, List[SpMat]] = {}
    grades = [grade_of(b) for b in A.basis]
    if all(gr is not None for gr in grades):
        for gr, b in zip(grades, A.basis):
            pieces.setdefault(gr, []).append(b)
    else:
        d = A.dim
        cols = [A.coords(linalg.sp_commutator(H, b)) for b in A.basis]
        mat = [[cols[j][i] for j in range(d)] for i in range(d)]
        for root, _ in linalg.to_fmpq(mat, d).charpoly().roots():
            lam = linalg._frac(root)
            shifted = [[x - (lam if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(mat)]
            pieces[lam] = [A.element(v) for v in linalg.nullspace(shifted, d)]
        if sum(len(v) for v in pieces.values()) != d:
            return GradingCertificate("h", False, {}, 0, ["ad rho(h) is not diagonalizable over Q on A"])
    return _finish("h", A, pieces, grade_of, product_limit,
                   positive=lambda gr: gr >= 0, zero=Fraction(0))


def _torus_certificate(A: CentralizerAlgebra, gamma: RootSubset, product_limit: int) -> GradingCertificate:
    for x, w in zip(A.gens, A.gen_mats):
        if len(x.coeffs) != 1 or next(iter(x.coeffs)) >= x.algebra.n_roots:
            raise ValueError(f"generator {x!r} is not a root vector; the torus does not grade it")
    cone = cone_of(gamma)
    pieces: Dict[Tuple[Fraction, ...], List[SpMat]] = {}
    for w, b in zip(A.weights, A.basis):
        if w is None:
            return GradingCertificate("torus", False, {}, 0, ["basis element is not a weight vector"])
        pieces.setdefault(w, []).append(b)

    def grade_of(x: SpMat):
        return _element_weight(A.module, x)

    reasons = []
    if not cone.strictly_convex:
        reasons.append("cone is not strictly convex")
    zero = tuple(Fraction(0) for _ in range(A.module.rs.rank))
    cert = _finish("torus", A, pieces, grade_of, product_limit,
                   positive=lambda w: cone.contains(w), zero=zero,
                   add=lambda a, b: tuple(x + y for x, y in zip(a, b)))
    cert.reasons = reasons + cert.reasons
    cert.ok = cert.ok and not reasons
    return cert


def _finish(kind, A, pieces, grade_of, product_limit, positive, zero, add=None) -> GradingCertificate:
    reasons = []
    if add is None:
        msg = _check_products(A, grade_of, pieces, product_limit)
    else:
        msg = _check_products_vec(A, grade_of, pieces, product_limit, add)
    if msg:
        reasons.append(msg)
    bad = [gr for gr in pieces if not positive(gr)]
    if bad:
        reasons.append(f"grade {_gstr(bad[0])} lies outside the positive region")
    d0 = len(pieces.get(zero, []))
    if d0 != 1 or not _is_scalar(pieces[zero][0], A.module.dim):
        reasons.append(f"grade-0 piece has dimension {d0}, not the scalars")
    dims = {_gstr(gr): len(v) for gr, v in sorted(pieces.items())}
    return GradingCertificate(kind, not reasons, dims, d0, reasons)


def _is_scalar(x: SpMat, n: int) -> bool:
    c = x.get(0, {}).get(0)
    return bool(c) and linalg.sp_equal(x, linalg.sp_scale(c, linalg.sp_identity(n)))


def _check_products_vec(A, grade_of, pieces, limit, add) -> Optional[str]:
    items = [(g, b) for g, bs in pieces.items() for b in bs]
    count = 0
    for ga, a in items:
        for gb, b in items:
            p = linalg.sp_mul(a, b)
            if not p:
                continue
            count += 1
            if count > limit:
                return None
            gp = grade_of(p)
            if gp != add(ga, gb):
                return f"product of grades {_gstr(ga)} and {_gstr(gb)} has grade {_gstr(gp)}"
    return None


def _gstr(gr) -> str:
    if isinstance(gr, tuple):
        return "(" + ",".join(str(x) for x in gr) + ")"
    return str(gr)


def grading_certificate(A: CentralizerAlgebra, grading: Union[LieElement, RootSubset, None] = None,
                        product_limit: int = 200_000) -> GradingCertificate:
    """Certify that A has no nontrivial idempotent via a grading.

    With a Cartan-type element h the grading is by eigenvalues of ad rho(h);
    with a root subset (or None, meaning the closure of the generators' roots)
    it is the multigrading by the maximal torus, whose weights must sit in the
    strictly convex cone of that subset.  In both cases the grade-0 piece must
    be the scalars.
    """
    if isinstance(grading, LieElement):
        return _h_certificate(A, grading, product_limit)
    if grading is None:
        rs = A.module.rs
        for x in A.gens:
            if len(x.coeffs) != 1 or next(iter(x.coeffs)) >= x.algebra.n_roots:
                raise ValueError(f"generator {x!r} is not a root vector; the torus does not grade it")
        grading = closure(RootSubset.from_indices(rs, [next(iter(x.coeffs)) for x in A.gens]))
    return _torus_certificate(A, grading, product_limit)
