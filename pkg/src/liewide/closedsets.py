"""Closed subsets of a root system and the wideness criterion for regular
ad-nilpotent subalgebras.

A ``RootSubset`` is a bitmask over ``rs.all_roots``.  A closed set Gamma with
Gamma and -Gamma disjoint encodes the subalgebra spanned by the root vectors
e_gamma, gamma in Gamma; it is wide exactly when the closure of
Gamma u -Gamma is the whole root system.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .rootsys import Root, RootSystem, Weight

CENSUS_MAX_ROOTS = 24


@lru_cache(maxsize=None)
def _tables(rs: RootSystem) -> Tuple[Tuple[Tuple[int, ...], ...], Tuple[int, ...]]:
    roots = rs.all_roots
    sums = []
    for a in roots:
        row = []
        for b in roots:
            s = tuple(x + y for x, y in zip(a, b))
            row.append(rs.root_index.get(s, -1))
        sums.append(tuple(row))
    neg = tuple(rs.negate_index(k) for k in range(len(roots)))
    return tuple(sums), neg


def _bits(mask: int) -> List[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def _neg_mask(rs: RootSystem, mask: int) -> int:
    _, neg = _tables(rs)
    out = 0
    for k in _bits(mask):
        out |= 1 << neg[k]
    return out


def _closure_mask(rs: RootSystem, mask: int) -> int:
    sums, _ = _tables(rs)
    members = _bits(mask)
    queue = list(members)
    while queue:
        a = queue.pop()
        row = sums[a]
        for b in list(members):
            s = row[b]
            if s >= 0 and not (mask >> s) & 1:
                mask |= 1 << s
                members.append(s)
                queue.append(s)
    return mask


@dataclass(frozen=True)
class RootSubset:
    rs: RootSystem
    mask: int

    @classmethod
    def from_roots(cls, rs: RootSystem, roots: Iterable[Sequence[int]]) -> "RootSubset":
        mask = 0
        for r in roots:
            r = tuple(r)
            if r not in rs.root_index:
                raise ValueError(f"{r} is not a root of {rs.name}")
            mask |= 1 << rs.root_index[r]
        return cls(rs, mask)

    @classmethod
    def from_indices(cls, rs: RootSystem, idx: Iterable[int]) -> "RootSubset":
        mask = 0
        for k in idx:
            mask |= 1 << k
        return cls(rs, mask)

    @property
    def indices(self) -> List[int]:
        return _bits(self.mask)

    @property
    def roots(self) -> List[Root]:
        return [self.rs.all_roots[k] for k in self.indices]

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, root) -> bool:
        k = self.rs.root_index.get(tuple(root))
        return k is not None and bool((self.mask >> k) & 1)

    def __or__(self, other: "RootSubset") -> "RootSubset":
        return RootSubset(self.rs, self.mask | other.mask)

    def negative(self) -> "RootSubset":
        return RootSubset(self.rs, _neg_mask(self.rs, self.mask))

    def is_closed(self) -> bool:
        return _closure_mask(self.rs, self.mask) == self.mask

    def is_asymmetric(self) -> bool:
        return not (self.mask & _neg_mask(self.rs, self.mask))

    def is_ad_nilpotent(self) -> bool:
        return self.is_closed() and self.is_asymmetric()

    def is_abelian(self) -> bool:
        """No two members sum to a root (or to zero)."""
        sums, neg = _tables(self.rs)
        idx = self.indices
        for a in idx:
            for b in idx:
                if sums[a][b] >= 0 or neg[a] == b:
                    return False
        return True

    def is_full(self) -> bool:
        return self.mask == (1 << len(self.rs.all_roots)) - 1

    def sort_key(self) -> Tuple[int, ...]:
        return tuple(self.indices)

    def __repr__(self) -> str:
        return f"RootSubset({self.rs.name}, {[list(r) for r in self.roots]})"


def closure(gamma: RootSubset) -> RootSubset:
    return RootSubset(gamma.rs, _closure_mask(gamma.rs, gamma.mask))


@dataclass(frozen=True)
class WideVerdict:
    wide: bool
    witness: Optional[RootSubset] = None   # closure of Gamma u -Gamma when not wide

    def to_json(self) -> dict:
        d = {"wide": self.wide}
        if self.witness is not None:
            d["witness"] = [list(r) for r in self.witness.roots]
        return d


def _check_ad_nilpotent(gamma: RootSubset) -> None:
    rs = gamma.rs
    sums, neg = _tables(rs)
    idx = gamma.indices
    for a in idx:
        if (gamma.mask >> neg[a]) & 1:
            raise ValueError(
                f"subset meets its negative: {list(rs.all_roots[a])} and {list(rs.all_roots[neg[a]])}")
        for b in idx:
            s = sums[a][b]
            if s >= 0 and not (gamma.mask >> s) & 1:
                raise ValueError(
                    f"subset is not closed: {list(rs.all_roots[a])} + {list(rs.all_roots[b])} is a root outside it")


def is_wide_criterion(gamma: RootSubset) -> WideVerdict:
    _check_ad_nilpotent(gamma)
    full = closure(gamma | gamma.negative())
    if full.is_full():
        return WideVerdict(True)
    return WideVerdict(False, full)


def parabolic_nilradical_set(rs: RootSystem, subset: Iterable[int]) -> RootSubset:
    subset = set(subset)
    return RootSubset.from_roots(rs, [r for r in rs.all_roots if sum(r[i] for i in subset) > 0])


def pi_partition_set(rs: RootSystem, subset: Iterable[int]) -> RootSubset:
    subset = set(subset)
    gens = [rs.simple_roots[i] if i in subset else tuple(-c for c in rs.simple_roots[i])
            for i in range(rs.rank)]
    return closure(RootSubset.from_roots(rs, gens))


def derived_uplus_set(rs: RootSystem) -> RootSubset:
    return RootSubset.from_roots(rs, rs.positive_roots[rs.rank:])


def positive_set(rs: RootSystem) -> RootSubset:
    return RootSubset.from_roots(rs, rs.positive_roots)


def is_disjoint_partition(rs: RootSystem, subset: Iterable[int]) -> bool:
    """Both parts consist of pairwise orthogonal simple roots."""
    a = sorted(set(subset))
    b = [i for i in range(rs.rank) if i not in set(a)]
    return all(rs.are_orthogonal(i, j) for part in (a, b) for i, j in itertools.combinations(part, 2))


# --- cones -----------------------------------------------------------------------

def _primitive(v: Sequence[Fraction]) -> Tuple[int, ...]:
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


@dataclass
class Cone:
    """{mu in E : (mu, gamma) >= 0 for every defining root gamma}."""

    rs: RootSystem
    defining: Tuple[Root, ...]
    strictly_convex: bool
    _generators: Optional[List[Weight]] = field(default=None, repr=False)

    def contains(self, mu) -> bool:
        coords = mu.root_coords if isinstance(mu, Weight) else mu
        return all(self.rs.inner(coords, g) >= 0 for g in self.defining)

    def interior_contains(self, mu) -> bool:
        coords = mu.root_coords if isinstance(mu, Weight) else mu
        return all(self.rs.inner(coords, g) > 0 for g in self.defining)

    def lineality(self) -> List[List[Fraction]]:
        rows = [[sum(self.rs.sym[i][j] * g[j] for j in range(self.rs.rank)) for i in range(self.rs.rank)]
                for g in self.defining]
        if not rows:
            return [[Fraction(int(i == j)) for j in range(self.rs.rank)] for i in range(self.rs.rank)]
        return linalg.nullspace(rows, self.rs.rank)

    @property
    def generators(self) -> List[Weight]:
        """Extreme rays, plus both signs of a lineality basis when not pointed."""
        if self._generators is None:
            self._generators = self._compute_generators()
        return self._generators

    def _compute_generators(self, max_combos: int = 200_000) -> List[Weight]:
        rs = self.rs
        n = rs.rank
        lin = self.lineality()
        gens: List[Weight] = []
        for v in lin:
            gens.append(rs.weight_from_root(v))
            gens.append(rs.weight_from_root([-x for x in v]))
        forms = []
        seen = set()
        for g in self.defining:
            row = tuple(Fraction(sum(rs.sym[i][j] * g[j] for j in range(n))) for i in range(n))
            key = _primitive(row)
            if key not in seen:
                seen.add(key)
                forms.append(row)
        r = n - len(lin)
        if r == 0:
            return gens
        combos = math.comb(len(forms), r - 1)
        if combos > max_combos:
            raise ValueError(f"too many facet combinations ({combos}) to enumerate rays")
        rays = {}
        for sub in itertools.combinations(forms, r - 1):
            # rays live in the orthogonal complement of the lineality space
            rows = [list(x) for x in sub] + [
                [sum(rs.sym[i][j] * v[j] for j in range(n)) for i in range(n)] for v in lin]
            ker = linalg.nullspace(rows, n) if rows else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
            if len(ker) != 1:
                continue
            v = ker[0]
            vals = [sum(f[i] * v[i] for i in range(n)) for f in forms]
            if all(x >= 0 for x in vals):
                pass
            elif all(x <= 0 for x in vals):
                v = [-x for x in v]
            else:
                continue
            key = _primitive(v)
            if key not in rays:
                rays[key] = rs.weight_from_root(v)
        gens += [rays[k] for k in sorted(rays, reverse=True)]
        return gens

    def is_ray(self, mu) -> bool:
        """mu spans one of the extreme rays (up to positive scaling)."""
        coords = mu.root_coords if isinstance(mu, Weight) else mu
        key = _primitive(coords)
        return any(_primitive(g.root_coords) == key for g in self.generators)

    def to_json(self) -> dict:
        return {
            "defining_roots": [list(g) for g in self.defining],
            "strictly_convex": self.strictly_convex,
            "generators": [[str(x) for x in g.root_coords] for g in self.generators],
        }


def cone_of(gamma: RootSubset) -> Cone:
    rs = gamma.rs
    roots = tuple(gamma.roots)
    spans = bool(roots) and linalg.rank([list(r) for r in roots], rs.rank) == rs.rank
    return Cone(rs, roots, spans)


# --- census ----------------------------------------------------------------------

@dataclass(frozen=True)
class CensusRecord:
    subset: RootSubset
    verdict: WideVerdict
    size: int
    abelian: bool
    family_tags: Tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "roots": [list(r) for r in self.subset.roots],
            "closed": self.subset.is_closed(),
            "wide": self.verdict.wide,
            "size": self.size,
            "abelian": self.abelian,
            "family_tags": list(self.family_tags),
        }


def _family_masks(rs: RootSystem) -> Dict[str, set]:
    fam: Dict[str, set] = {"parabolic-nilradical": set(), "pi-partition": set(), "derived-u+": set()}
    for k in range(1 << rs.rank):
        sub = [i for i in range(rs.rank) if (k >> i) & 1]
        if sub:
            fam["parabolic-nilradical"].add(parabolic_nilradical_set(rs, sub).mask)
        fam["pi-partition"].add(pi_partition_set(rs, sub).mask)
    fam["derived-u+"].add(derived_uplus_set(rs).mask)
    return fam


def family_tags(gamma: RootSubset, families: Optional[Dict[str, set]] = None) -> Tuple[str, ...]:
    families = families or _family_masks(gamma.rs)
    tags = tuple(name for name, masks in families.items() if gamma.mask in masks)
    return tags or ("other",)


@lru_cache(maxsize=None)
def _reflection_perms(rs: RootSystem) -> Tuple[Tuple[int, ...], ...]:
    return tuple(
        tuple(rs.root_index[rs.simple_reflection(r, i)] for r in rs.all_roots) for i in range(rs.rank)
    )


def weyl_orbit(gamma: RootSubset) -> List[RootSubset]:
    perms = _reflection_perms(gamma.rs)
    seen = {gamma.mask}
    queue = [gamma.mask]
    while queue:
        m = queue.pop()
        for p in perms:
            img = 0
            for k in _bits(m):
                img |= 1 << p[k]
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return sorted((RootSubset(gamma.rs, m) for m in seen), key=RootSubset.sort_key)


def closed_asymmetric_subsets(rs: RootSystem) -> List[RootSubset]:
    """Every closed Gamma with Gamma and -Gamma disjoint, in sorted-index order."""
    n = len(rs.all_roots)
    if n > CENSUS_MAX_ROOTS:
        raise ValueError(f"census needs |Delta| <= {CENSUS_MAX_ROOTS}; {rs.name} has {n} roots")
    _, neg = _tables(rs)
    found: List[int] = []

    def rec(k: int, mask: int, excluded: int) -> None:
        if k == n:
            found.append(mask)
            return
        if (mask >> k) & 1:
            rec(k + 1, mask, excluded)
            return
        rec(k + 1, mask, excluded | (1 << k))
        if (mask >> neg[k]) & 1:
            return
        c = _closure_mask(rs, mask | (1 << k))
        if c & excluded or c & _neg_mask(rs, c):
            return
        rec(k + 1, c, excluded)

    rec(0, 0, 0)
    subsets = [RootSubset(rs, m) for m in found]
    subsets.sort(key=RootSubset.sort_key)
    return subsets


def enumerate_census(rs: RootSystem, max_results: Optional[int] = None,
                     dedupe_weyl: bool = False) -> Iterator[CensusRecord]:
    subsets = closed_asymmetric_subsets(rs)
    families = _family_masks(rs)
    count = 0
    for gamma in subsets:
        if dedupe_weyl and weyl_orbit(gamma)[0].mask != gamma.mask:
            continue
        if max_results is not None and count >= max_results:
            return
        count += 1
        yield CensusRecord(gamma, is_wide_criterion(gamma), len(gamma), gamma.is_abelian(),
                           family_tags(gamma, families))
