"""Chevalley bases and structure constants.

Each simple component is realized inside its adjoint module (built by
lowering).  Root vectors of non-simple positive roots are normalized on
extraspecial pairs, e_xi = [e_a, e_{xi-a}] / (p+1) with a the first simple
root such that xi - a is a root, so N_{a, xi-a} = p + 1 > 0 on every
extraspecial pair.  Negative root vectors are scaled so that
[e_g, e_{-g}] = h_g, the coroot.  All other constants are read off the
matrices and are therefore exactly the ones forced by these sign choices.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import flint

from . import linalg
from .linalg import SpMat
from .lowering import lower
from .rootsys import Root, RootSystem, build_root_system

Q = Fraction


class LieElement:
    """Sparse vector over the Chevalley basis of a fixed algebra."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "ChevalleyAlgebra", coeffs: Mapping[int, Fraction] | None = None):
        self.algebra = algebra
        self.coeffs: Dict[int, Fraction] = {k: Q(v) for k, v in (coeffs or {}).items() if v}

    def _check(self, other: "LieElement") -> None:
        if not isinstance(other, LieElement) or other.algebra is not self.algebra:
            raise ValueError("Lie elements belong to different algebras")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Q(0)) + v
        return LieElement(self.algebra, out)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __neg__(self) -> "LieElement":
        return LieElement(self.algebra, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, c) -> "LieElement":
        c = Q(c)
        return LieElement(self.algebra, {k: c * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, LieElement) and other.algebra is self.algebra and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def vector(self) -> List[Fraction]:
        v = [Q(0)] * self.algebra.dim
        for k, x in self.coeffs.items():
            v[k] = x
        return v

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            parts.append(f"{self.coeffs[k]}*{self.algebra.label(k)}")
        return " + ".join(parts)


def _adjoint_realization(rs: RootSystem) -> Tuple[Dict[Root, SpMat], List[SpMat]]:
    """Root vectors and Cartan generators of a simple algebra, as adjoint matrices."""
    n = rs.rank
    theta = rs.highest_roots[0]
    mod = lower(rs, [rs.pairing(theta, i) for i in range(n)])
    X: Dict[Root, SpMat] = {}
    for i in range(n):
        a = rs.simple_roots[i]
        X[a] = mod.E[i]
        X[tuple(-c for c in a)] = mod.F[i]
    for xi in rs.positive_roots[n:]:
        i = next(i for i in range(n) if xi[i] > 0 and rs.is_root(_minus_simple(xi, i)))
        beta = _minus_simple(xi, i)
        p = 0
        while rs.is_root(tuple(b - (p + 1) * (1 if k == i else 0) for k, b in enumerate(beta))):
            p += 1
        a = rs.simple_roots[i]
        X[xi] = linalg.sp_scale(Q(1, p + 1), linalg.sp_commutator(X[a], X[beta]))
        c = linalg.sp_commutator(X[tuple(-x for x in a)], X[tuple(-x for x in beta)])
        hx = linalg.sp_lincomb((k, mod.H[j]) for j, k in enumerate(rs.coroot_in_coroot_basis(xi)))
        br = linalg.sp_commutator(X[xi], c)
        r = next(iter(hx))
        t = br[r][r] / hx[r][r]
        neg = linalg.sp_scale(1 / t, c)
        assert linalg.sp_equal(linalg.sp_commutator(X[xi], neg), hx)
        X[tuple(-x for x in xi)] = neg
    return X, mod.H


def _minus_simple(r: Root, i: int) -> Root:
    return tuple(c - (1 if k == i else 0) for k, c in enumerate(r))


def _entry_of_bracket(a: SpMat, b: SpMat, r: int, c: int) -> Fraction:
    col_b = {k: row[c] for k, row in b.items() if c in row}
    col_a = {k: row[c] for k, row in a.items() if c in row}
    s = Q(0)
    ar, br = a.get(r, {}), b.get(r, {})
    for k, x in col_b.items():
        y = ar.get(k)
        if y:
            s += y * x
    for k, x in col_a.items():
        y = br.get(k)
        if y:
            s -= y * x
    return s


class ChevalleyAlgebra:
    """The Lie algebra of a root system on the basis {e_gamma} + {h_i}.

    Basis indices: 0..|Delta|-1 follow ``rs.all_roots``; the Cartan elements
    h_1..h_n (simple coroots) come last.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.n_roots = len(rs.all_roots)
        self.rank = rs.rank
        self.dim = self.n_roots + rs.rank
        # N[(a, b)] = structure constant of [e_a, e_b] on e_{a+b} (root indices)
        self.N: Dict[Tuple[int, int], int] = {}
        for comp, idx in zip(rs.components, rs.component_indices):
            sub = RootSystem([comp])
            X, _ = _adjoint_realization(sub)

            def glob(r: Root) -> Root:
                g = [0] * rs.rank
                for loc, gi in enumerate(idx):
                    g[gi] = r[loc]
                return tuple(g)

            for ga in sub.all_roots:
                for gb in sub.all_roots:
                    s = tuple(x + y for x, y in zip(ga, gb))
                    if not sub.is_root(s):
                        continue
                    target = X[s]
                    r = next(iter(target))
                    c = next(iter(target[r]))
                    val = _entry_of_bracket(X[ga], X[gb], r, c) / target[r][c]
                    assert val.denominator == 1
                    self.N[(rs.root_index[glob(ga)], rs.root_index[glob(gb)])] = int(val)
        self._table: List[Dict[int, Tuple[Tuple[int, Fraction], ...]]] = [dict() for _ in range(self.dim)]
        self._build_table()

    # --- structure constants ----------------------------------------------------

    def _build_table(self) -> None:
        rs = self.rs
        nr = self.n_roots
        for a, ra in enumerate(rs.all_roots):
            for b, rb in enumerate(rs.all_roots):
                s = tuple(x + y for x, y in zip(ra, rb))
                if (a, b) in self.N:
                    self._table[a][b] = ((rs.root_index[s], Q(self.N[(a, b)])),)
                elif not any(s):
                    sign = 1 if a < rs.num_positive else -1
                    pos = ra if sign == 1 else rb
                    cor = rs.coroot_in_coroot_basis(pos)
                    self._table[a][b] = tuple((nr + i, sign * c) for i, c in enumerate(cor) if c)
            for i in range(self.rank):
                v = rs.pairing(ra, i)
                if v:
                    self._table[nr + i][a] = ((a, Q(v)),)
                    self._table[a][nr + i] = ((a, Q(-v)),)

    def structure_constants(self) -> Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]]:
        return {(a, b): v for a, row in enumerate(self._table) for b, v in row.items()}

    def structure_constant(self, gamma: Sequence[int], delta: Sequence[int]) -> int:
        """N_{gamma, delta} with [e_gamma, e_delta] = N e_{gamma+delta}; 0 if not a root."""
        rs = self.rs
        return self.N.get((rs.root_index[tuple(gamma)], rs.root_index[tuple(delta)]), 0)

    # --- elements ----------------------------------------------------------------

    def label(self, k: int) -> str:
        if k < self.n_roots:
            return "e" + str(list(self.rs.all_roots[k])).replace(" ", "")
        return f"h{k - self.n_roots + 1}"

    def basis_element(self, k: int) -> LieElement:
        return LieElement(self, {k: 1})

    def basis(self) -> List[LieElement]:
        return [self.basis_element(k) for k in range(self.dim)]

    def e(self, root: Union[Sequence[int], int]) -> LieElement:
        """Root vector; an int selects the simple root with that 0-based index."""
        if isinstance(root, int):
            root = self.rs.simple_roots[root]
        return self.basis_element(self.rs.root_index[tuple(root)])

    def f(self, i: int) -> LieElement:
        return self.e(tuple(-c for c in self.rs.simple_roots[i]))

    def h(self, i: int) -> LieElement:
        return self.basis_element(self.n_roots + i)

    def cartan_element(self, coeffs: Sequence) -> LieElement:
        return LieElement(self, {self.n_roots + i: c for i, c in enumerate(coeffs)})

    def coroot(self, root: Sequence[int]) -> LieElement:
        return self.cartan_element(self.rs.coroot_in_coroot_basis(root))

    def zero(self) -> LieElement:
        return LieElement(self, {})

    def element(self, vector: Sequence) -> LieElement:
        return LieElement(self, {k: x for k, x in enumerate(vector) if x})

    def coweight_element(self, subset: Iterable[int]) -> LieElement:
        """sum_{a in subset} varpi_a^vee as an element of the Cartan subalgebra."""
        return self.cartan_element(self.rs.coweight_in_coroot_basis(subset))

    # --- operations -----------------------------------------------------------

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        if x.algebra is not self or y.algebra is not self:
            raise ValueError("bracket of elements from a different algebra")
        out: Dict[int, Fraction] = {}
        for a, xa in x.coeffs.items():
            row = self._table[a]
            for b, yb in y.coeffs.items():
                terms = row.get(b)
                if terms:
                    c = xa * yb
                    for k, v in terms:
                        out[k] = out.get(k, Q(0)) + c * v
        return LieElement(self, out)

    def ad_matrix(self, x: LieElement) -> List[List[Fraction]]:
        """Matrix of ad x in the Chevalley basis (columns are images of basis vectors)."""
        m = [[Q(0)] * self.dim for _ in range(self.dim)]
        for a, xa in x.coeffs.items():
            for b, terms in self._table[a].items():
                for k, v in terms:
                    m[k][b] += xa * v
        return m

    def ad_sparse(self, x: LieElement) -> SpMat:
        return linalg.sp_from_dense(self.ad_matrix(x))

    def killing(self, x: LieElement, y: LieElement) -> Fraction:
        ax = linalg.to_fmpq(self.ad_matrix(x))
        ay = linalg.to_fmpq(self.ad_matrix(y))
        prod = ax * ay
        return sum((linalg._frac(prod[i, i]) for i in range(self.dim)), Q(0))

    def is_ad_nilpotent(self, x: LieElement) -> bool:
        m = linalg.to_fmpq(self.ad_matrix(x))
        p = m
        k = 1
        while k < self.dim:
            p = p * p
            k *= 2
        return all(v == 0 for v in p.entries())

    def span_basis(self, elements: Sequence[LieElement]) -> List[LieElement]:
        ech = linalg.Echelon(self.dim)
        out = []
        for x in elements:
            if ech.add(x.vector()):
                out.append(x)
        return out

    def component_support(self, x: LieElement) -> set:
        """Indices of simple components on which x has a nonzero projection."""
        rs = self.rs
        comps = set()
        for k in x.coeffs:
            if k < self.n_roots:
                comps.add(rs.root_component(rs.all_roots[k]))
            else:
                comps.add(rs.component_of[k - self.n_roots])
        return comps

    def is_nondegenerate(self, x: LieElement) -> bool:
        return self.component_support(x) == set(range(len(self.rs.components)))

    def to_json(self) -> dict:
        rows = []
        for (a, b), terms in sorted(self.structure_constants().items()):
            rows.append({
                "x": self.label(a),
                "y": self.label(b),
                "bracket": [[self.label(k), str(v)] for k, v in terms],
            })
        return {"type": self.rs.name, "dim": self.dim,
                "basis": [self.label(k) for k in range(self.dim)], "table": rows}


def build_chevalley(rs: Union[RootSystem, str]) -> ChevalleyAlgebra:
    if isinstance(rs, str):
        rs = build_root_system(rs)
    return ChevalleyAlgebra(rs)


def bracket(g: ChevalleyAlgebra, x: LieElement, y: LieElement) -> LieElement:
    return g.bracket(x, y)


def generated_subalgebra(g: ChevalleyAlgebra, gens: Sequence[LieElement]) -> List[LieElement]:
    """Basis of the Lie subalgebra generated by ``gens``.

    The span is closed under ad of the generators only; right-normed brackets
    of generators already span the generated subalgebra.
    """
    if not gens:
        raise ValueError("need at least one generator")
    ech = linalg.Echelon(g.dim)
    basis: List[LieElement] = []
    frontier: List[LieElement] = []
    for x in gens:
        if ech.add(x.vector()):
            basis.append(x)
            frontier.append(x)
    for _ in range(g.dim):
        new = []
        for y in frontier:
            for x in gens:
                z = g.bracket(x, y)
                if z and ech.add(z.vector()):
                    basis.append(z)
                    new.append(z)
        if not new:
            break
        frontier = new
    return basis


def centralizer_in_g(g: ChevalleyAlgebra, x: LieElement) -> List[LieElement]:
    return [g.element(v) for v in linalg.nullspace(g.ad_matrix(x), g.dim)]


def centralizer_of_set(g: ChevalleyAlgebra, xs: Sequence[LieElement]) -> List[LieElement]:
    rows: List[List[Fraction]] = []
    for x in xs:
        rows += g.ad_matrix(x)
    if not rows:
        return g.basis()
    return [g.element(v) for v in linalg.nullspace(rows, g.dim)]
