"""Root systems of simple and semisimple type with exact Cartan data.

Roots are integer tuples in the simple-root basis; simple roots follow
Bourbaki numbering and indices are 0-based throughout the API.  The inner
product is normalized so that short roots have squared length 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from . import linalg

Root = Tuple[int, ...]

_VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _simple_data(letter: str, n: int) -> Tuple[List[int], List[Tuple[int, int]]]:
    """Squared lengths of simple roots and Dynkin edges (0-based, Bourbaki)."""
    path = [(i, i + 1) for i in range(n - 1)]
    if letter == "A":
        return [2] * n, path
    if letter == "B":
        return [4] * (n - 1) + [2], path
    if letter == "C":
        return [2] * (n - 1) + [4], path
    if letter == "D":
        return [2] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if letter == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
        return [2] * n, edges
    if letter == "F":
        return [4, 4, 2, 2], path
    if letter == "G":
        return [2, 6], [(0, 1)]
    raise AssertionError(letter)


def parse_type(text: str) -> List[Tuple[str, int]]:
    """Parse ``"A2"``, ``"A2+A1"`` or ``"B3,G2"`` into a component list."""
    comps = []
    for part in text.replace(",", "+").split("+"):
        part = part.strip().upper()
        if not part:
            continue
        try:
            comps.append((part[0], int(part[1:])))
        except ValueError:
            raise ValueError(f"cannot parse root system type {part!r}") from None
    return comps


@dataclass(frozen=True)
class Weight:
    """An element of the weight lattice tensored with Q.

    ``root_coords`` are coefficients in the simple-root basis,
    ``fund_coords`` in the fundamental-weight basis.
    """

    root_coords: Tuple[Fraction, ...]
    fund_coords: Tuple[Fraction, ...]

    def in_root_lattice(self) -> bool:
        return all(c.denominator == 1 for c in self.root_coords)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.fund_coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.fund_coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a + b for a, b in zip(self.root_coords, other.root_coords)),
            tuple(a + b for a, b in zip(self.fund_coords, other.fund_coords)),
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.root_coords), tuple(-a for a in self.fund_coords))

    def scaled(self, c) -> "Weight":
        c = Fraction(c)
        return Weight(tuple(c * a for a in self.root_coords), tuple(c * a for a in self.fund_coords))


class RootSystem:
    """A reduced root system, possibly a direct sum of simple ones."""

    def __init__(self, components: Sequence[Tuple[str, int]]):
        comps = []
        for letter, n in components:
            letter = str(letter).upper()
            if letter not in _VALID_RANKS or not isinstance(n, int) or not _VALID_RANKS[letter](n):
                raise ValueError(f"invalid simple type {letter}{n}")
            comps.append((letter, n))
        if not comps:
            raise ValueError("a root system needs at least one component")
        self.components: Tuple[Tuple[str, int], ...] = tuple(comps)

        lengths: List[int] = []
        edges: List[Tuple[int, int]] = []
        comp_of: List[int] = []
        offset = 0
        for c, (letter, n) in enumerate(comps):
            ls, es = _simple_data(letter, n)
            lengths += ls
            edges += [(i + offset, j + offset) for i, j in es]
            comp_of += [c] * n
            offset += n
        self.rank = offset
        self.component_of: Tuple[int, ...] = tuple(comp_of)
        self.component_indices: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(i for i in range(self.rank) if comp_of[i] == c) for c in range(len(comps))
        )
        n = self.rank
        sym = [[0] * n for _ in range(n)]
        for i in range(n):
            sym[i][i] = lengths[i]
        for i, j in edges:
            sym[i][j] = sym[j][i] = -max(lengths[i], lengths[j]) // 2
        self.edges = tuple(sorted(edges))
        self.sym: Tuple[Tuple[int, ...], ...] = tuple(tuple(r) for r in sym)
        # cartan[i][j] = 2(a_i, a_j)/(a_j, a_j) = <a_i, a_j^vee>
        self.cartan: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(2 * sym[i][j] // sym[j][j] for j in range(n)) for i in range(n)
        )
        self.inverse_cartan: Tuple[Tuple[Fraction, ...], ...] = tuple(
            tuple(r) for r in linalg.inverse(self.cartan)
        )
        self.index_of_connection: int = int(linalg.to_fmpq(self.cartan).det())

        self.positive_roots: Tuple[Root, ...] = self._positive_roots()
        self.all_roots: Tuple[Root, ...] = self.positive_roots + tuple(
            tuple(-c for c in r) for r in self.positive_roots
        )
        self.root_index: Dict[Root, int] = {r: k for k, r in enumerate(self.all_roots)}
        self.num_positive = len(self.positive_roots)
        self.simple_roots: Tuple[Root, ...] = self.positive_roots[:n]
        self.fund_weights: Tuple[Weight, ...] = tuple(
            self.weight([1 if j == i else 0 for j in range(n)]) for i in range(n)
        )
        self.highest_roots: Tuple[Root, ...] = tuple(
            max((r for r in self.positive_roots if all(r[i] == 0 for i in range(n) if comp_of[i] != c)),
                key=sum)
            for c in range(len(comps))
        )

    # --- construction helpers ------------------------------------------------

    def _positive_roots(self) -> Tuple[Root, ...]:
        n = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        found: Set[Root] = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(n):
                    s = self.simple_reflection(r, i)
                    if s not in found and s not in simple and all(c >= 0 for c in s):
                        found.add(s)
                        nxt.append(s)
                    t = tuple(-c for c in s)
                    if all(c >= 0 for c in t) and t not in found:
                        found.add(t)
                        nxt.append(t)
            frontier = nxt
        return tuple(sorted(found, key=lambda r: (sum(r), tuple(-c for c in r))))

    # --- basic geometry ---------------------------------------------------------

    @property
    def name(self) -> str:
        return "+".join(f"{l}{n}" for l, n in self.components)

    @property
    def is_simple(self) -> bool:
        return len(self.components) == 1

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSystem) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        """Inner product of two vectors given in simple-root coordinates."""
        s = Fraction(0)
        for i, a in enumerate(x):
            if a:
                row = self.sym[i]
                for j, b in enumerate(y):
                    if b:
                        s += a * b * row[j]
        return Fraction(s)

    def pairing(self, x: Sequence, i: int):
        """<x, a_i^vee> for x in simple-root coordinates."""
        return sum(c * self.cartan[j][i] for j, c in enumerate(x) if c)

    def simple_reflection(self, x: Sequence, i: int) -> tuple:
        c = self.pairing(x, i)
        out = list(x)
        out[i] -= c
        return tuple(out)

    def reflect(self, x: Sequence, gamma: Sequence) -> tuple:
        c = 2 * self.inner(x, gamma) / self.inner(gamma, gamma)
        return tuple(a - c * g for a, g in zip(x, gamma))

    def is_root(self, r: Sequence) -> bool:
        return tuple(r) in self.root_index

    def height(self, r: Sequence):
        return sum(r)

    def is_positive(self, r: Sequence) -> bool:
        return self.root_index[tuple(r)] < self.num_positive

    def negate_index(self, k: int) -> int:
        p = self.num_positive
        return k + p if k < p else k - p

    def root_component(self, r: Sequence) -> int:
        return self.component_of[next(i for i, c in enumerate(r) if c)]

    def coroot_in_coroot_basis(self, r: Sequence) -> Tuple[Fraction, ...]:
        """Coefficients of gamma^vee in the basis a_1^vee, ..., a_n^vee."""
        norm = self.inner(r, r)
        return tuple(Fraction(c * self.sym[i][i], norm) for i, c in enumerate(r))

    # --- weights -----------------------------------------------------------------

    def weight(self, fund_coords: Sequence) -> Weight:
        """Weight from fundamental-weight coordinates."""
        m = [Fraction(x) for x in fund_coords]
        if len(m) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(m)}")
        # m_i = sum_j b_j cartan[j][i]  =>  b = (C^T)^{-1} m
        b = tuple(sum(self.inverse_cartan[i][j] * m[i] for i in range(self.rank)) for j in range(self.rank))
        return Weight(b, tuple(m))

    def weight_from_root(self, root_coords: Sequence) -> Weight:
        b = tuple(Fraction(x) for x in root_coords)
        if len(b) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(b)}")
        m = tuple(Fraction(self.pairing(b, i)) for i in range(self.rank))
        return Weight(b, m)

    def zero_weight(self) -> Weight:
        return self.weight([0] * self.rank)

    @property
    def rho(self) -> Weight:
        return self.weight([1] * self.rank)

    def rho_coweight(self) -> Weight:
        """rho^vee = half the sum of positive coroots, identified with E via ( , )."""
        acc = [Fraction(0)] * self.rank
        for r in self.positive_roots:
            norm = self.inner(r, r)
            for i, c in enumerate(r):
                acc[i] += Fraction(c) / norm
        return self.weight_from_root(acc)

    def fund_coweight(self, i: int) -> Weight:
        """varpi_i^vee = 2 varpi_i / (a_i, a_i), as an element of E."""
        return self.fund_weights[i].scaled(Fraction(2, self.sym[i][i]))

    def pi_height(self, subset: Iterable[int], nu) -> Fraction:
        """Sum of the simple-root coefficients of ``nu`` over ``subset``."""
        coords = nu.root_coords if isinstance(nu, Weight) else nu
        return sum((Fraction(coords[i]) for i in set(subset)), Fraction(0))

    def pi_height_by_coweights(self, subset: Iterable[int], nu) -> Fraction:
        """The same number computed as (sum of fundamental coweights, nu)."""
        coords = nu.root_coords if isinstance(nu, Weight) else nu
        total = [Fraction(0)] * self.rank
        for i in set(subset):
            total = [a + b for a, b in zip(total, self.fund_coweight(i).root_coords)]
        return self.inner(total, coords)

    def coweight_in_coroot_basis(self, subset: Iterable[int]) -> Tuple[Fraction, ...]:
        """Coefficients c with sum_i c_i a_i^vee = sum_{j in subset} varpi_j^vee."""
        delta = [1 if j in set(subset) else 0 for j in range(self.rank)]
        # a_j(sum c_i a_i^vee) = sum_i c_i cartan[j][i] = delta_j
        return tuple(linalg.solve(self.cartan, delta))

    # --- combinatorics ---------------------------------------------------------

    def dynkin_bipartition(self) -> Tuple[frozenset, frozenset]:
        """2-coloring of the Dynkin forest; the lowest index of each component
        goes to the first part."""
        adj: Dict[int, List[int]] = {i: [] for i in range(self.rank)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        color: Dict[int, int] = {}
        for start in range(self.rank):
            if start in color:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w not in color:
                        color[w] = 1 - color[v]
                        stack.append(w)
        first = frozenset(i for i in range(self.rank) if color[i] == 0)
        return first, frozenset(range(self.rank)) - first

    def are_orthogonal(self, i: int, j: int) -> bool:
        return self.sym[i][j] == 0

    def dominant_conjugate(self, x: Sequence) -> tuple:
        x = tuple(x)
        while True:
            for i in range(self.rank):
                if self.pairing(x, i) < 0:
                    x = self.simple_reflection(x, i)
                    break
            else:
                return x

    def to_json(self) -> dict:
        return {
            "type": self.name,
            "components": [[l, n] for l, n in self.components],
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "index_of_connection": self.index_of_connection,
            "roots": [list(r) for r in self.all_roots],
        }


def build_root_system(kind) -> RootSystem:
    """Accepts ``[("A", 2), ("A", 1)]`` or a string such as ``"A2+A1"``."""
    if isinstance(kind, str):
        kind = parse_type(kind)
    return RootSystem(kind)


def pi_height(rs: RootSystem, subset: Iterable[int], nu) -> Fraction:
    return rs.pi_height(subset, nu)


def dynkin_bipartition(rs: RootSystem) -> Tuple[frozenset, frozenset]:
    return rs.dynkin_bipartition()


def simple_types(max_rank: int, min_rank: int = 1) -> List[Tuple[str, int]]:
    """All simple types in the given rank window (C2 included, D needs rank 4)."""
    out = []
    for letter in "ABCDEFG":
        for n in range(min_rank, max_rank + 1):
            if _VALID_RANKS[letter](n):
                out.append((letter, n))
    return out
