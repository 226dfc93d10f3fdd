"""Finite-dimensional simple modules R(lambda).

Weyl's dimension formula and Freudenthal's multiplicity recursion work on the
root system alone; ``build_irrep`` produces explicit exact matrices on a weight
basis by lowering from a highest-weight vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import linalg
from .chevalley import ChevalleyAlgebra, LieElement
from .linalg import SpMat
from .lowering import lower
from .rootsys import RootSystem, Weight
from .sl2 import GradedSubspace

DEFAULT_DIM_CAP = 3000

WeightLike = Union[Weight, Sequence[int]]


def _as_weight(rs: RootSystem, lam: WeightLike) -> Weight:
    return lam if isinstance(lam, Weight) else rs.weight(lam)


def _check_dominant(lam: Weight) -> None:
    if not lam.is_integral() or not lam.is_dominant():
        raise ValueError(f"highest weight must be dominant integral, got {list(map(str, lam.fund_coords))}")


def weyl_dim(rs: RootSystem, lam: WeightLike) -> int:
    lam = _as_weight(rs, lam)
    _check_dominant(lam)
    rho = rs.rho.root_coords
    shifted = [a + b for a, b in zip(lam.root_coords, rho)]
    num = Fraction(1)
    for g in rs.positive_roots:
        num *= rs.inner(shifted, g) / rs.inner(rho, g)
    assert num.denominator == 1
    return int(num)


class _FundData:
    """Integer data for weights in fundamental coordinates."""

    def __init__(self, rs: RootSystem):
        n = rs.rank
        self.rs = rs
        self.alpha = [tuple(int(rs.cartan[i][k]) for k in range(n)) for i in range(n)]
        self.half_norm = [int(rs.sym[j][j] / 2) for j in range(n)]
        self.pos = [tuple(int(c) for c in g) for g in rs.positive_roots]
        self.pos_fund = [tuple(sum(c * self.alpha[j][k] for j, c in enumerate(g) if c) for k in range(n))
                         for g in self.pos]
        self._dom: Dict[tuple, tuple] = {}

    def pair(self, m: tuple, g: tuple) -> int:
        """(mu, gamma) for mu in fundamental and gamma in simple-root coordinates."""
        return sum(c * m[j] * self.half_norm[j] for j, c in enumerate(g) if c)

    def reflect(self, m: tuple, i: int) -> tuple:
        c = m[i]
        return tuple(x - c * a for x, a in zip(m, self.alpha[i]))

    def dominant(self, m: tuple) -> tuple:
        hit = self._dom.get(m)
        if hit is not None:
            return hit
        x = m
        while True:
            i = next((i for i, c in enumerate(x) if c < 0), None)
            if i is None:
                break
            x = self.reflect(x, i)
        self._dom[m] = x
        return x

    def norm(self, m: tuple) -> Fraction:
        b = self.rs.weight(m).root_coords
        return self.rs.inner(b, b)

    def orbit(self, m: tuple) -> List[tuple]:
        seen = {m}
        queue = [m]
        while queue:
            x = queue.pop()
            for i in range(len(x)):
                if x[i]:
                    y = self.reflect(x, i)
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return list(seen)


def _dominant_below(fd: _FundData, lam: tuple) -> List[Tuple[int, tuple]]:
    """Dominant weights of R(lambda) with their depth (height of lambda - mu)."""
    seen = {lam: 0}
    queue = [lam]
    while queue:
        mu = queue.pop()
        d = seen[mu]
        for g, gf in zip(fd.pos, fd.pos_fund):
            nu = tuple(a - b for a, b in zip(mu, gf))
            if nu not in seen and all(x >= 0 for x in nu):
                seen[nu] = d + sum(g)
                queue.append(nu)
    return sorted(((d, mu) for mu, d in seen.items()), key=lambda t: (t[0], tuple(-x for x in t[1])))


def _freudenthal_fund(rs: RootSystem, lam: Weight) -> Tuple[_FundData, Dict[tuple, int]]:
    _check_dominant(lam)
    fd = _FundData(rs)
    top = tuple(int(x) for x in lam.fund_coords)
    rho = tuple([1] * rs.rank)
    norm_top = fd.norm(tuple(a + 1 for a in top))
    mult: Dict[tuple, int] = {}
    for _, mu in _dominant_below(fd, top):
        if mu == top:
            mult[mu] = 1
            continue
        s = 0
        for g, gf in zip(fd.pos, fd.pos_fund):
            nu = mu
            while True:
                nu = tuple(a + b for a, b in zip(nu, gf))
                m = mult.get(fd.dominant(nu), 0)
                if not m:
                    break
                s += m * fd.pair(nu, g)
        denom = norm_top - fd.norm(tuple(a + b for a, b in zip(mu, rho)))
        val = 2 * s / denom
        assert val.denominator == 1 and val > 0
        mult[mu] = int(val)
    return fd, mult


def freudenthal_dominant(rs: RootSystem, lam: WeightLike) -> Dict[Tuple[Fraction, ...], int]:
    """Multiplicities of the dominant weights (keys are simple-root coordinates)."""
    _, mult = _freudenthal_fund(rs, _as_weight(rs, lam))
    return {rs.weight(mu).root_coords: m for mu, m in mult.items()}


def freudenthal(rs: RootSystem, lam: WeightLike) -> Dict[Weight, int]:
    """All weight multiplicities of R(lambda)."""
    fd, mult = _freudenthal_fund(rs, _as_weight(rs, lam))
    out: Dict[Weight, int] = {}
    for mu, m in mult.items():
        for nu in fd.orbit(mu):
            out[rs.weight(nu)] = m
    return out


def character_dim(rs: RootSystem, lam: WeightLike) -> int:
    """Sum of all multiplicities, counted orbit by orbit."""
    fd, mult = _freudenthal_fund(rs, _as_weight(rs, lam))
    return sum(m * len(fd.orbit(mu)) for mu, m in mult.items())


@dataclass
class Subspace:
    """Subspace of Q^n with a reduced row echelon basis."""

    ambient_dim: int
    basis: List[List[Fraction]]
    pivots: List[int] = field(default_factory=list)

    @classmethod
    def from_vectors(cls, n: int, vectors: Sequence[Sequence[Fraction]]) -> "Subspace":
        if not vectors:
            return cls(n, [], [])
        red, piv = linalg.rref([list(v) for v in vectors], n)
        return cls(n, red, piv)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, v: Sequence[Fraction]) -> List[Fraction]:
        return [v[p] for p in self.pivots]

    def contains(self, v: Sequence[Fraction]) -> bool:
        c = self.coords(v)
        rebuilt = [sum((x * row[j] for x, row in zip(c, self.basis) if x), Fraction(0)) for j in range(self.ambient_dim)]
        return rebuilt == list(v)


class IrrModule:
    """R(lambda) with exact matrices on a weight basis."""

    def __init__(self, g: ChevalleyAlgebra, lam: Weight, dim_cap: int = DEFAULT_DIM_CAP):
        rs = g.rs
        _check_dominant(lam)
        need = weyl_dim(rs, lam)
        if need > dim_cap:
            raise ValueError(f"R({[int(x) for x in lam.fund_coords]}) has dimension {need} > dim_cap={dim_cap}")
        self.g = g
        self.rs = rs
        self.highest = lam
        low = lower(rs, [int(x) for x in lam.fund_coords])
        self.dim = low.dim
        top = lam.root_coords
        self.basis_root_coords: List[Tuple[Fraction, ...]] = [
            tuple(a - k for a, k in zip(top, key)) for key in low.basis_keys]
        self.weight_basis: List[Tuple[Weight, range]] = [
            (rs.weight_from_root(tuple(a - k for a, k in zip(top, key))),
             range(low.offsets[key], low.offsets[key] + low.dims[key]))
            for key in low.keys]
        self.E, self.F, self.H = low.E, low.F, low.H
        self._root_ops: Dict[int, SpMat] = {}
        for i in range(rs.rank):
            self._root_ops[rs.root_index[rs.simple_roots[i]]] = self.E[i]
            self._root_ops[rs.negate_index(rs.root_index[rs.simple_roots[i]])] = self.F[i]

    def __repr__(self) -> str:
        return f"IrrModule({self.rs.name}, {[int(x) for x in self.highest.fund_coords]}, dim={self.dim})"

    @property
    def gen_matrices(self) -> Dict[str, List[SpMat]]:
        return {"e": self.E, "f": self.F, "h": self.H}

    def multiplicities(self) -> Dict[Weight, int]:
        return {w: len(r) for w, r in self.weight_basis}

    def root_operator(self, k: int) -> SpMat:
        """rho(e_gamma) for the root with index k, via (gamma - a) + a with a the
        first simple root (of the same sign) keeping gamma - a a root."""
        op = self._root_ops.get(k)
        if op is not None:
            return op
        rs = self.rs
        gamma = rs.all_roots[k]
        sign = 1 if k < rs.num_positive else -1
        for i in range(rs.rank):
            a = tuple(sign * (1 if j == i else 0) for j in range(rs.rank))
            rest = tuple(x - y for x, y in zip(gamma, a))
            if rs.is_root(rest):
                break
        ka, kr = rs.root_index[a], rs.root_index[rest]
        n = self.g.N[(ka, kr)]
        op = linalg.sp_scale(Fraction(1, n), linalg.sp_commutator(self.root_operator(ka), self.root_operator(kr)))
        self._root_ops[k] = op
        return op

    def act(self, x: LieElement) -> SpMat:
        if x.algebra is not self.g:
            raise ValueError("element from a different algebra")
        terms = []
        nr = self.g.n_roots
        for k, c in x.coeffs.items():
            terms.append((c, self.root_operator(k) if k < nr else self.H[k - nr]))
        return linalg.sp_lincomb(terms)

    def act_dense(self, x: LieElement) -> List[List[Fraction]]:
        return linalg.sp_to_dense(self.act(x), self.dim)


def build_irrep(g: ChevalleyAlgebra, lam: WeightLike, dim_cap: int = DEFAULT_DIM_CAP) -> IrrModule:
    return IrrModule(g, _as_weight(g.rs, lam), dim_cap)


def act(m: IrrModule, x: LieElement) -> SpMat:
    return m.act(x)


def adjoint_module(g: ChevalleyAlgebra, dim_cap: int = DEFAULT_DIM_CAP) -> IrrModule:
    rs = g.rs
    if not rs.is_simple:
        raise ValueError("the adjoint module is simple only for simple g")
    theta = rs.highest_roots[0]
    return build_irrep(g, [rs.pairing(theta, i) for i in range(rs.rank)], dim_cap)


# --- gradings of module operators -----------------------------------------------

def grading_keys(m: IrrModule, mats: Sequence[SpMat]) -> List[Tuple[Fraction, ...]]:
    """Finest grading of the weight basis by a Cartan element for which every
    matrix in ``mats`` is homogeneous.  Returns one key per basis vector."""
    n = m.rs.rank
    wts = m.basis_root_coords
    rows: List[List[Fraction]] = []
    for x in mats:
        ref = None
        seen = set()
        for r, c, _ in linalg.sp_entries(x):
            nu = tuple(a - b for a, b in zip(wts[r], wts[c]))
            if nu in seen:
                continue
            seen.add(nu)
            if ref is None:
                ref = nu
            else:
                rows.append([a - b for a, b in zip(nu, ref)])
    if rows:
        ys = linalg.nullspace(rows, n)
    else:
        ys = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return [tuple(sum((a * b for a, b in zip(w, y)), Fraction(0)) for y in ys) for w in wts]


def _joint_kernel(m: IrrModule, mats: Sequence[SpMat]) -> List[List[Fraction]]:
    n = m.dim
    if not mats:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    keys = grading_keys(m, mats)
    classes: Dict[tuple, List[int]] = {}
    for idx, k in enumerate(keys):
        classes.setdefault(k, []).append(idx)
    cols_of = []
    for x in mats:
        bycol: Dict[int, Dict[int, Fraction]] = {}
        for r, c, v in linalg.sp_entries(x):
            bycol.setdefault(c, {})[r] = v
        cols_of.append(bycol)
    out: List[List[Fraction]] = []
    for key in sorted(classes):
        cols = classes[key]
        rowmap: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for xi, bycol in enumerate(cols_of):
            for local, c in enumerate(cols):
                for r, v in bycol.get(c, {}).items():
                    rowmap.setdefault((xi, r), {})[local] = v
        rows = [[row.get(j, Fraction(0)) for j in range(len(cols))] for _, row in sorted(rowmap.items())]
        for v in linalg.nullspace(rows, len(cols)) if rows else [
                [Fraction(int(i == j)) for j in range(len(cols))] for i in range(len(cols))]:
            full = [Fraction(0)] * n
            for local, c in enumerate(cols):
                full[c] = v[local]
            out.append(full)
    return out


def invariants_subspace(m: IrrModule, gens: Sequence[LieElement]) -> Subspace:
    """Joint kernel of rho(x), x in gens."""
    mats = [m.act(x) for x in gens]
    return Subspace.from_vectors(m.dim, _joint_kernel(m, mats))


def restricted_eigenvalues(m: IrrModule, x: LieElement, sub: Subspace) -> List[Fraction]:
    """Eigenvalues (with multiplicity) of rho(x) on an invariant subspace."""
    if sub.dim == 0:
        return []
    op = m.act(x)
    images = [linalg.sp_matvec(op, {j: v for j, v in enumerate(b) if v}) for b in sub.basis]
    mat_cols = []
    for img in images:
        dense = [img.get(j, Fraction(0)) for j in range(m.dim)]
        if not sub.contains(dense):
            raise ValueError("subspace is not stable under the operator")
        mat_cols.append(sub.coords(dense))
    mat = [[mat_cols[c][r] for c in range(sub.dim)] for r in range(sub.dim)]
    poly = linalg.to_fmpq(mat).charpoly()
    vals: List[Fraction] = []
    for root, mult in poly.roots():
        vals += [Fraction(int(root.p), int(root.q))] * mult
    if len(vals) != sub.dim:
        raise ArithmeticError("operator has irrational eigenvalues on the subspace")
    return sorted(vals)


def type_grading(m: IrrModule, subset: Sequence[int]) -> GradedSubspace:
    """Grading of type Pi': degree of a weight vector is the Pi'-height of its weight."""
    pieces: Dict[Fraction, list] = {}
    for w, idx in m.weight_basis:
        deg = m.rs.pi_height(subset, w)
        for i in idx:
            v = [Fraction(0)] * m.dim
            v[i] = Fraction(1)
            pieces.setdefault(deg, []).append(v)
    return GradedSubspace(dict(sorted(pieces.items())))
