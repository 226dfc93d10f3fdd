"""End-to-end scenarios: the e3 subalgebra of sl4 and the standard families of
wide subalgebras, each producing a deterministic report."""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import closedsets as cs
from . import linalg
from .chevalley import ChevalleyAlgebra, LieElement, build_chevalley
from .indecomp import (DECOMPOSABLE, INDECOMPOSABLE, centralizer_algebra, grading_certificate,
                       is_valid_projector, verdict_of_algebra, witness_projector)
from .repmod import IrrModule, adjoint_module, build_irrep, weyl_dim
from .rootsys import RootSystem, build_root_system
from .sl2 import centralizer_nilradical, jacobson_morozov, minimal_nilpotent, principal_nilpotent

Matrix = List[List[Fraction]]


@dataclass
class Check:
    name: str
    operation: str
    certificate: str
    passed: bool
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "operation": self.operation, "certificate": self.certificate,
                "passed": self.passed, "data": self.data}


@dataclass
class Report:
    scenario: str
    inputs: dict
    checks: List[Check] = field(default_factory=list)
    skipped: List[dict] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def to_json(self, timing: bool = False) -> dict:
        out = {"scenario": self.scenario, "inputs": self.inputs, "passed": self.passed,
               "checks": [c.to_json() for c in self.checks], "skipped": self.skipped}
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True, indent=1)


def _m(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def _mul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


def _t(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]


def _add(a: Matrix, b: Matrix, c: Fraction = Fraction(1)) -> Matrix:
    return [[x + c * y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _is_zero(a: Matrix) -> bool:
    return not any(x for r in a for x in r)


def _block(a: Matrix, b: Matrix) -> Matrix:
    """The 4x4 matrix (a b; 0 a)."""
    z = [[Fraction(0)] * 2 for _ in range(2)]
    return [ra + rb for ra, rb in zip(a, b)] + [rz + ra for rz, ra in zip(z, a)]


# --- e3 inside sl4 --------------------------------------------------------------------

SL2_BASIS = {"e": _m([[0, 1], [0, 0]]), "h": _m([[1, 0], [0, -1]]), "f": _m([[0, 0], [1, 0]])}
PSI = _m([[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])


def e3_matrices() -> Dict[str, Matrix]:
    zero = _m([[0, 0], [0, 0]])
    out = {}
    for k, a in SL2_BASIS.items():
        out["A:" + k] = _block(a, zero)
    for k, b in SL2_BASIS.items():
        out["B:" + k] = _block(zero, b)
    return out


def defining_coordinates(g: ChevalleyAlgebra, defining: IrrModule, mat: Matrix) -> LieElement:
    """The element x of g with rho(x) = mat in the given faithful module."""
    n = defining.dim
    images = [linalg.sp_to_dense(defining.act(b), n) for b in g.basis()]
    rows = [[img[i][j] for img in images] for i in range(n) for j in range(n)]
    rhs = [mat[i][j] for i in range(n) for j in range(n)]
    sol = linalg.solve(rows, rhs, g.dim)
    if sol is None:
        raise ValueError("matrix is not in the image of the representation")
    return g.element(sol)


def _span_rank(mats: Sequence[Matrix]) -> int:
    return linalg.rank([[x for r in m for x in r] for m in mats]) if mats else 0


def sp4_siegel_nilradical() -> List[Matrix]:
    """Root vectors of sp4 (form PSI) whose root has positive coefficient on the
    long simple root, for the torus diag(x, y, -y, -x) and the upper-triangular Borel."""
    # weight of E_ij as (coeff of x, coeff of y); x = a1 + a2/2, y = a2/2
    tw = [(1, 0), (0, 1), (0, -1), (-1, 0)]
    groups: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for i in range(4):
        for j in range(4):
            w = (tw[i][0] - tw[j][0], tw[i][1] - tw[j][1])
            groups.setdefault(w, []).append((i, j))
    out = []
    for w, cells in sorted(groups.items()):
        if Fraction(w[0] + w[1], 2) <= 0:
            continue
        # unknown X supported on cells with PSI X + X^t PSI = 0
        eqs = []
        for r in range(4):
            for c in range(4):
                row = []
                for (i, j) in cells:
                    # X = E_ij: (PSI X)_rc = PSI[r][i] [j == c], (X^t PSI)_rc = [j == r] PSI[i][c]
                    v = (PSI[r][i] if j == c else 0) + (PSI[i][c] if j == r else 0)
                    row.append(Fraction(v))
                eqs.append(row)
        for vec in linalg.nullspace(eqs, len(cells)):
            mat = [[Fraction(0)] * 4 for _ in range(4)]
            for (i, j), v in zip(cells, vec):
                mat[i][j] = v
            out.append(mat)
    return out


def _weight_label(lam: Sequence[int]) -> str:
    parts = []
    for i, a in enumerate(lam):
        if a:
            parts.append(("" if a == 1 else str(a)) + f"w{i + 1}")
    return "+".join(parts) or "0"


def scenario_e3(max_m: int = 3, dim_cap: int = 3000, seed: int = 0) -> Report:
    t0 = time.perf_counter()
    rep = Report("e3-suite", {"max_m": max_m, "dim_cap": dim_cap, "seed": seed})
    g = build_chevalley("A3")
    defining = build_irrep(g, [1, 0, 0])
    mats = e3_matrices()
    gens = {k: defining_coordinates(g, defining, v) for k, v in mats.items()}
    gen_list = list(gens.values())

    # structure: traceless, B-part an abelian ideal
    traceless = all(sum(m[i][i] for i in range(4)) == 0 for m in mats.values())
    bkeys = [k for k in mats if k.startswith("B:")]
    bspan = [mats[k] for k in bkeys]
    abelian = all(_is_zero(_add(_mul(mats[a], mats[b]), _mul(mats[b], mats[a]), Fraction(-1)))
                  for a in bkeys for b in bkeys)
    ideal = all(_span_rank(bspan + [_add(_mul(mats[a], mats[b]), _mul(mats[b], mats[a]), Fraction(-1))]) == 3
                for a in mats for b in bkeys)
    rep.add(Check("e3 structure", "defining_coordinates", "matrix identities",
                  traceless and abelian and ideal,
                  {"traceless": traceless, "b_abelian": abelian, "b_ideal": ideal,
                   "generators": {k: repr(v) for k, v in gens.items()}}))

    # (a) e3 inside sp4
    in_sp4 = {k: _is_zero(_add(_mul(PSI, m), _mul(_t(m), PSI))) for k, m in mats.items()}
    rep.add(Check("e3 in sp4", "bilinear form", "PSI g + g^t PSI = 0", all(in_sp4.values()), in_sp4))

    # (b) nilradical of the Siegel parabolic equals the A = 0 part
    nil = sp4_siegel_nilradical()
    r_nil, r_b = _span_rank(nil), _span_rank(bspan)
    r_union = _span_rank(nil + bspan)
    rep.add(Check("sp4 parabolic nilradical", "sp4_siegel_nilradical", "span comparison",
                  r_nil == r_b == r_union == 3, {"dim_nilradical": r_nil, "dim_A_zero": r_b, "dim_sum": r_union}))

    # (c), (d) verdicts
    indec = [tuple(m * x for x in (1, 0, 0)) for m in range(1, max_m + 1)]
    indec += [tuple(m * x for x in (0, 0, 1)) for m in range(1, max_m + 1)]
    dec = [(0, 1, 0), (0, 2, 0), (1, 0, 1)]
    for lam, expected in [(l, INDECOMPOSABLE) for l in indec] + [(l, DECOMPOSABLE) for l in dec]:
        need = weyl_dim(g.rs, lam)
        label = _weight_label(lam)
        if need > dim_cap:
            rep.skipped.append({"check": f"verdict R({label})", "reason": f"dim {need} > dim_cap {dim_cap}"})
            continue
        m = build_irrep(g, lam, dim_cap)
        A = centralizer_algebra(m, gen_list)
        v = verdict_of_algebra(A, seed)
        ok = v.decision == expected
        data = {"weight": list(lam), "dim": m.dim, "decision": v.decision, "algebra_dim": A.dim,
                "radical_dim": v.data.get("radical_dim")}
        if v.decision == DECOMPOSABLE:
            data["piece_dims"] = v.data["piece_dims"]
            data["projector"] = v.data["projector"]
        rep.add(Check(f"verdict R({label})", "verdict", v.certificate_kind, ok, data))

    # (e) dimension inequality for the decomposable weights
    c2 = build_root_system("C2")
    for lam in dec:
        a1, a2, a3 = lam
        tl = (a1 + a3, a2)
        d, ds = weyl_dim(g.rs, lam), weyl_dim(c2, tl)
        rep.add(Check(f"dimension R({_weight_label(lam)}) vs sp4", "weyl_dim", "strict inequality",
                      d > ds, {"dim_sl4": d, "sp4_weight": list(tl), "dim_sp4": ds}))
    rep.wall_time = time.perf_counter() - t0
    return rep


# --- families ---------------------------------------------------------------------------

def _fund(rank: int, i: int, c: int = 1) -> Tuple[int, ...]:
    return tuple(c if j == i else 0 for j in range(rank))


def module_panel(rs: RootSystem) -> List[Tuple[int, ...]]:
    """Adjoint, varpi_1 and the smallest weight that is not fundamental (ties
    broken by coordinates), without repetitions."""
    theta = rs.highest_roots[0]
    adj = tuple(int(rs.pairing(theta, i)) for i in range(rs.rank))
    cands = []
    for i, j in itertools.combinations_with_replacement(range(rs.rank), 2):
        lam = [0] * rs.rank
        lam[i] += 1
        lam[j] += 1
        cands.append(tuple(lam))
    small = min(cands, key=lambda l: (weyl_dim(rs, l), tuple(-x for x in l)))
    out = []
    for lam in (adj, _fund(rs.rank, 0), small):
        if lam not in out:
            out.append(lam)
    return out


def census_panel(rs: RootSystem) -> List[Tuple[int, ...]]:
    """Adjoint, varpi_1 and varpi_2 (3 varpi_1 in rank one), without repetitions."""
    theta = rs.highest_roots[0]
    adj = tuple(int(rs.pairing(theta, i)) for i in range(rs.rank))
    extra = _fund(rs.rank, 1) if rs.rank > 1 else (3,)
    out = []
    for lam in (adj, _fund(rs.rank, 0), extra):
        if lam not in out:
            out.append(lam)
    return out


def root_vectors(g: ChevalleyAlgebra, gamma: cs.RootSubset) -> List[LieElement]:
    return [g.basis_element(k) for k in gamma.indices]


def _regular_support(g: ChevalleyAlgebra, gens: Sequence[LieElement]) -> Optional[cs.RootSubset]:
    """Root subset of a set of root vectors spanning a regular subalgebra, or None."""
    if not all(len(x.coeffs) == 1 and next(iter(x.coeffs)) < g.n_roots for x in gens):
        return None
    gamma = cs.RootSubset.from_indices(g.rs, [next(iter(x.coeffs)) for x in gens])
    return gamma if gamma.is_closed() and gamma.is_asymmetric() else None


@dataclass
class FamilyInstance:
    name: str
    gens: List[LieElement]
    gamma: Optional[cs.RootSubset]
    grading: object        # LieElement for an h-grading, RootSubset for the torus form


def family_instances(g: ChevalleyAlgebra) -> List[FamilyInstance]:
    rs = g.rs
    n = rs.rank
    out: List[FamilyInstance] = []
    for k in range(1, n + 1):
        for sub in itertools.combinations(range(n), k):
            gamma = cs.parabolic_nilradical_set(rs, sub)
            out.append(FamilyInstance(f"nilradical {{{','.join(f'a{i + 1}' for i in sub)}}}",
                                      root_vectors(g, gamma), gamma, g.coweight_element(sub)))
    for label, e in (("principal", principal_nilpotent(g)), ("minimal", minimal_nilpotent(g))):
        t = jacobson_morozov(g, e)
        gens = centralizer_nilradical(g, t).basis()
        out.append(FamilyInstance(f"z(e)_nil {label}", gens, _regular_support(g, gens), t.h))
    for k in range(0, n + 1):
        for sub in itertools.combinations(range(n), k):
            gamma = cs.pi_partition_set(rs, sub)
            out.append(FamilyInstance(f"pi-partition {{{','.join(f'a{i + 1}' for i in sub)}}}",
                                      root_vectors(g, gamma), gamma, gamma))
    gamma = cs.derived_uplus_set(rs)
    out.append(FamilyInstance("derived u+", root_vectors(g, gamma), gamma, gamma))
    return out


def scenario_families(letter: str, rank: int, dim_cap: int = 3000, seed: int = 0) -> Report:
    t0 = time.perf_counter()
    rs = build_root_system(f"{letter}{rank}")
    if len(rs.all_roots) > cs.CENSUS_MAX_ROOTS:
        raise ValueError(f"families suite needs |roots| <= {cs.CENSUS_MAX_ROOTS}, {rs.name} has {len(rs.all_roots)}")
    rep = Report("families-suite", {"type": rs.name, "dim_cap": dim_cap, "seed": seed})
    g = build_chevalley(rs)
    panel: List[IrrModule] = []
    adj = module_panel(rs)[0]
    for lam in module_panel(rs):
        need = weyl_dim(rs, lam)
        if need > dim_cap:
            rep.skipped.append({"module": list(lam), "reason": f"dim {need} > dim_cap {dim_cap}"})
            continue
        panel.append(build_irrep(g, lam, dim_cap))
    for inst in family_instances(g):
        crit = cs.is_wide_criterion(inst.gamma) if inst.gamma is not None else None
        expect_wide = crit is None or crit.wide
        for m in panel:
            is_adj = tuple(int(x) for x in m.highest.fund_coords) == adj
            A = centralizer_algebra(m, inst.gens)
            cert = grading_certificate(A, inst.grading)
            v = verdict_of_algebra(A, seed)
            data = {"module": [int(x) for x in m.highest.fund_coords], "module_dim": m.dim,
                    "criterion": None if crit is None else ("wide" if crit.wide else "not_wide"),
                    "certificate": cert.to_json(), "decision": v.decision, "algebra_dim": A.dim,
                    "subalgebra_dim": len(inst.gens)}
            if expect_wide:
                ok = cert.ok and v.decision == INDECOMPOSABLE
            elif is_adj:
                p = witness_projector(m, crit.witness)
                wit_ok = is_valid_projector(A, p)
                data["witness"] = [list(r) for r in crit.witness.roots]
                data["witness_projector_valid"] = wit_ok
                ok = (not cert.ok) and v.decision == DECOMPOSABLE and wit_ok
            else:
                ok = not cert.ok or v.decision == INDECOMPOSABLE
            kind = "grading(h)" if isinstance(inst.grading, LieElement) else "grading(torus)"
            rep.add(Check(f"{inst.name} on R({_weight_label(data['module'])})",
                          "criterion+grading_certificate+verdict", f"{kind}/{v.certificate_kind}", ok, data))
    rep.wall_time = time.perf_counter() - t0
    return rep


def cli_main(argv=None) -> int:
    from .cli import main
    return main(argv)
