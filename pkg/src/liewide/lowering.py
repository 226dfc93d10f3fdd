"""Explicit simple highest-weight modules by exact lowering.

The module is built weight space by weight space, going down from the highest
weight.  A weight space V_mu is spanned by the vectors f_i b with b a basis
vector of V_{mu + a_i}; the action of every e_j on such a vector follows from
e_j f_i = f_i e_j + delta_ij h_i.  In a simple module the joint map
v -> (e_j v)_j is injective below the top, so a basis of V_mu is any maximal
set of candidates with independent images.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import flint

from . import linalg
from .linalg import SpMat
from .rootsys import RootSystem

Key = Tuple[int, ...]


@dataclass
class LoweredModule:
    rs: RootSystem
    highest: Tuple[int, ...]
    keys: List[Key]                      # weight spaces, lambda - sum k_i a_i
    dims: Dict[Key, int]
    offsets: Dict[Key, int]
    dim: int
    basis_keys: List[Key]
    E: List[SpMat]
    F: List[SpMat]
    H: List[SpMat]


def _unit(n: int, i: int) -> Key:
    return tuple(1 if j == i else 0 for j in range(n))


def _sub(a: Key, b: Key) -> Key:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: Key, b: Key) -> Key:
    return tuple(x + y for x, y in zip(a, b))


def lower(rs: RootSystem, highest: Sequence[int], dim_cap: int | None = None) -> LoweredModule:
    lam = tuple(int(x) for x in highest)
    n = rs.rank
    if len(lam) != n or any(x < 0 for x in lam):
        raise ValueError(f"highest weight must be {n} nonnegative integers, got {highest}")
    cartan = rs.cartan
    units = [_unit(n, i) for i in range(n)]

    def hval(key: Key, i: int) -> int:
        return lam[i] - sum(key[j] * cartan[j][i] for j in range(n) if key[j])

    zero = tuple([0] * n)
    dims: Dict[Key, int] = {zero: 1}
    # emat[(key, j)][t] = coordinates of e_j b_t in V_{key - e_j}
    emat: Dict[Tuple[Key, int], List[List[Fraction]]] = {}
    # fmat[(key, i)][t] = coordinates of f_i b_t in V_{key + e_i}
    fmat: Dict[Tuple[Key, int], List[List[Fraction]]] = {}
    order: List[Key] = [zero]
    total = 1
    level = [zero]
    while level:
        new = sorted({_add(k, units[i]) for k in level for i in range(n)}, reverse=True)
        next_level = []
        for key in new:
            parents = [i for i in range(n) if key[i] > 0 and _sub(key, units[i]) in dims]
            targets = [j for j in range(n) if key[j] > 0 and _sub(key, units[j]) in dims]
            cands: List[Tuple[int, int]] = []
            images: List[List[Fraction]] = []
            for i in parents:
                p = _sub(key, units[i])
                for t in range(dims[p]):
                    img: List[Fraction] = []
                    for j in targets:
                        tgt = _sub(key, units[j])
                        vec = [Fraction(0)] * dims[tgt]
                        if p[j] > 0:
                            q = _sub(p, units[j])
                            if q in dims:
                                w = emat[(p, j)][t]
                                cols = fmat[(q, i)]
                                for s, ws in enumerate(w):
                                    if ws:
                                        for r, x in enumerate(cols[s]):
                                            if x:
                                                vec[r] += ws * x
                        if i == j:
                            vec[t] += hval(p, i)
                        img += vec
                    cands.append((i, t))
                    images.append(img)
            nrows = len(images[0]) if images else 0
            if nrows == 0:
                for i in parents:
                    p = _sub(key, units[i])
                    fmat[(p, i)] = [[] for _ in range(dims[p])]
                continue
            mat = [[images[c][r] for c in range(len(cands))] for r in range(nrows)]
            red, pivots = linalg.rref(mat, len(cands))
            d = len(pivots)
            for i in parents:
                fmat[(_sub(key, units[i]), i)] = [None] * dims[_sub(key, units[i])]
            for c, (i, t) in enumerate(cands):
                fmat[(_sub(key, units[i]), i)][t] = [red[r][c] for r in range(d)]
            if d == 0:
                continue
            dims[key] = d
            total += d
            if dim_cap is not None and total > dim_cap:
                raise ValueError(f"module dimension exceeds dim_cap={dim_cap}")
            order.append(key)
            next_level.append(key)
            offset = 0
            for j in targets:
                size = dims[_sub(key, units[j])]
                emat[(key, j)] = [images[pivots[k]][offset:offset + size] for k in range(d)]
                offset += size
        level = next_level

    offsets: Dict[Key, int] = {}
    basis_keys: List[Key] = []
    pos = 0
    for key in order:
        offsets[key] = pos
        basis_keys += [key] * dims[key]
        pos += dims[key]

    E: List[SpMat] = [{} for _ in range(n)]
    F: List[SpMat] = [{} for _ in range(n)]
    H: List[SpMat] = [{} for _ in range(n)]
    for (key, j), cols in emat.items():
        src = offsets[key]
        dst = offsets[_sub(key, units[j])]
        for t, col in enumerate(cols):
            for s, x in enumerate(col):
                if x:
                    E[j].setdefault(dst + s, {})[src + t] = x
    for (key, i), cols in fmat.items():
        tgt = _add(key, units[i])
        if tgt not in dims or key not in dims:
            continue
        src = offsets[key]
        dst = offsets[tgt]
        for t, col in enumerate(cols):
            for s, x in enumerate(col):
                if x:
                    F[i].setdefault(dst + s, {})[src + t] = x
    for key in order:
        for i in range(n):
            v = hval(key, i)
            if v:
                for t in range(dims[key]):
                    H[i][offsets[key] + t] = {offsets[key] + t: Fraction(v)}
    return LoweredModule(rs, lam, order, dims, offsets, pos, basis_keys, E, F, H)
