"""Command line entry point.

Exit codes: 0 when every requested check passes, 1 when a check fails, 2 on
bad usage (argparse errors and rejected inputs).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import closedsets as cs
from .atlas import census_panel, scenario_e3, scenario_families
from .chevalley import ChevalleyAlgebra, LieElement, build_chevalley
from .indecomp import INDECOMPOSABLE, centralizer_algebra, grading_certificate, verdict_of_algebra
from .repmod import build_irrep, freudenthal
from .rootsys import RootSystem, build_root_system
from .sl2 import centralizer_nilradical, graded_centralizer, h_grading, jacobson_morozov


class UsageError(ValueError):
    pass


# --- parsers --------------------------------------------------------------------------

_TERM = re.compile(r"\s*([+-]?)\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*\s*)?([efh])\[([^\]]*)\]\s*")


def parse_element(g: ChevalleyAlgebra, text: str) -> LieElement:
    """Parse sums like ``e[1]+2*e[1,1]-1/2*h[2]`` (indices 1-based; a bracket
    with several entries gives root coordinates)."""
    rs = g.rs
    pos = 0
    out = g.zero()
    text = text.strip()
    if not text:
        raise UsageError("empty element")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse element at {text[pos:]!r}")
        sign, coef, kind, idx = m.groups()
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        try:
            parts = [int(x) for x in idx.split(",")]
        except ValueError:
            raise UsageError(f"bad index {idx!r}") from None
        if kind == "h":
            if len(parts) != 1 or not 1 <= parts[0] <= rs.rank:
                raise UsageError(f"h index must be in 1..{rs.rank}")
            x = g.h(parts[0] - 1)
        elif len(parts) == 1:
            if not 1 <= parts[0] <= rs.rank:
                raise UsageError(f"simple index must be in 1..{rs.rank}")
            x = g.e(parts[0] - 1) if kind == "e" else g.f(parts[0] - 1)
        else:
            root = tuple(parts) if kind == "e" else tuple(-p for p in parts)
            if not rs.is_root(root):
                raise UsageError(f"{list(root)} is not a root of {rs.name}")
            x = g.e(root)
        out = out + x * c
        pos = m.end()
    return out


_ROOT_TERM = re.compile(r"([+-]?)([0-9]*)a([0-9]+)")


def parse_roots(rs: RootSystem, text: str) -> List[tuple]:
    """Parse ``a1,-a2,a1+2a2`` into root coordinate tuples."""
    roots = []
    for item in text.split(","):
        item = item.replace(" ", "")
        if not item:
            continue
        coords = [0] * rs.rank
        pos = 0
        while pos < len(item):
            m = _ROOT_TERM.match(item, pos)
            if not m or m.end() == pos:
                raise UsageError(f"cannot parse root {item!r}")
            sign, mult, idx = m.groups()
            i = int(idx) - 1
            if not 0 <= i < rs.rank:
                raise UsageError(f"simple root index {idx} out of range 1..{rs.rank}")
            coords[i] += (-1 if sign == "-" else 1) * (int(mult) if mult else 1)
            pos = m.end()
        if not rs.is_root(coords):
            raise UsageError(f"{item} is not a root of {rs.name}")
        roots.append(tuple(coords))
    return roots


def parse_weight(rs: RootSystem, text: str) -> List[int]:
    try:
        lam = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad weight {text!r}") from None
    if len(lam) != rs.rank:
        raise UsageError(f"weight needs {rs.rank} coordinates")
    if any(x < 0 for x in lam):
        raise UsageError("weight must be dominant")
    return lam


def _rs(args) -> RootSystem:
    return build_root_system(f"{args.type.upper()}{args.rank}")


def _frac(x) -> str:
    return str(x)


def _emit(args, payload, human: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


# --- commands ---------------------------------------------------------------------------

def cmd_rootsys(args) -> int:
    rs = _rs(args)
    data = rs.to_json()
    if args.dump_rootsys:
        data["positive_roots"] = [list(r) for r in rs.positive_roots]
    lines = [f"{rs.name}: rank {rs.rank}, {len(rs.all_roots)} roots, index of connection {rs.index_of_connection}",
             "Cartan matrix:"] + ["  " + " ".join(f"{x:>3}" for x in row) for row in rs.cartan]
    lines.append("highest root: " + " ".join(str(x) for x in rs.highest_roots[0]))
    if args.dump_rootsys:
        lines.append("positive roots:")
        lines += ["  " + " ".join(str(x) for x in r) for r in rs.positive_roots]
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_chevalley(args) -> int:
    g = build_chevalley(_rs(args))
    data = {"type": g.rs.name, "dim": g.dim}
    lines = [f"{g.rs.name}: dim {g.dim}"]
    if args.dump_chevalley:
        data = g.to_json()
        for (a, b), n in sorted(g.N.items()):
            if a < b:
                ra, rb = g.rs.all_roots[a], g.rs.all_roots[b]
                s = tuple(x + y for x, y in zip(ra, rb))
                lines.append(f"[{g.label(a)}, {g.label(b)}] = {n} e{list(s)}")
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_census(args) -> int:
    rs = _rs(args)
    records = list(cs.enumerate_census(rs, max_results=args.max_results, dedupe_weyl=args.dedupe_weyl))
    if args.json:
        for r in records:
            print(json.dumps(r.to_json(), sort_keys=True))
    else:
        print(f"{'size':>4} {'wide':>5} {'abel':>5}  roots / tags")
        for r in records:
            print(f"{r.size:>4} {str(r.verdict.wide):>5} {str(r.abelian):>5}  "
                  f"{[list(x) for x in r.subset.roots]} {','.join(r.family_tags)}")
        print(f"{len(records)} subsets, {sum(r.verdict.wide for r in records)} wide")
    if args.figures:
        from .plotting import census_figure
        census_figure(records, rs.name, args.figures)
    return 0


def cmd_sl2(args) -> int:
    g = build_chevalley(_rs(args))
    e = parse_element(g, args.element)
    t = jacobson_morozov(g, e)
    grading = h_grading(g, t.h)
    cent = graded_centralizer(g, t)
    nil = centralizer_nilradical(g, t)
    data = {"e": repr(t.e), "h": repr(t.h), "f": repr(t.f),
            "grading_dims": {_frac(k): v for k, v in grading.dims().items()},
            "centralizer_dims": {_frac(k): v for k, v in cent.dims().items()},
            "z_nil_basis": [repr(x) for x in nil.basis()]}
    lines = [f"e = {t.e!r}", f"h = {t.h!r}", f"f = {t.f!r}",
             "g_h(i): " + ", ".join(f"{k}:{v}" for k, v in grading.dims().items()),
             "g^e(i): " + ", ".join(f"{k}:{v}" for k, v in cent.dims().items()),
             f"z(e)_nil (dim {nil.dim()}):"] + [f"  {x!r}" for x in nil.basis()]
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_irrep(args) -> int:
    rs = _rs(args)
    lam = parse_weight(rs, args.weight)
    mult = freudenthal(rs, lam)
    weights = sorted(mult.items(), key=lambda kv: (-sum(kv[0].root_coords), kv[0].fund_coords))
    data = {"type": rs.name, "highest_weight": lam, "dim": sum(mult.values()),
            "weights": [{"weight": [_frac(x) for x in w.fund_coords], "multiplicity": m} for w, m in weights]}
    if args.dump:
        g = build_chevalley(rs)
        m = build_irrep(g, lam, args.dim_cap)
        data["generators"] = {name: [[[r, c, _frac(v)] for r, row in sorted(mat.items()) for c, v in sorted(row.items())]
                                     for mat in mats] for name, mats in m.gen_matrices.items()}
        data["basis_weights"] = [[_frac(x) for x in rs.weight_from_root(w).fund_coords] for w in m.basis_root_coords]
    lines = [f"R({','.join(map(str, lam))}) of {rs.name}: dim {data['dim']}"]
    lines += [f"  {' '.join(w['weight']):<16} x{w['multiplicity']}" for w in data["weights"]]
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_check_wide(args) -> int:
    rs = _rs(args)
    gamma = cs.RootSubset.from_roots(rs, parse_roots(rs, args.roots))
    v = cs.is_wide_criterion(gamma)
    data = {"roots": [list(r) for r in gamma.roots], **v.to_json()}
    lines = [f"{rs.name} {[list(r) for r in gamma.roots]}: {'wide' if v.wide else 'not wide'}"]
    if not v.wide:
        lines.append(f"  witness: {[list(r) for r in v.witness.roots]}")
    ok = v.wide
    if args.modules:
        g = build_chevalley(rs)
        gens = [g.basis_element(k) for k in gamma.indices]
        mods = census_panel(rs) if args.modules == "panel" else [
            tuple(parse_weight(rs, w)) for w in args.modules.split(";")]
        data["modules"] = []
        for lam in mods:
            m = build_irrep(g, lam, args.dim_cap)
            A = centralizer_algebra(m, gens)
            verdict = verdict_of_algebra(A, args.seed)
            entry = {"weight": list(lam), "dim": m.dim, "decision": verdict.decision}
            if v.wide:
                cert = grading_certificate(A, gamma)
                entry["certificate"] = cert.ok
                ok = ok and cert.ok and verdict.decision == INDECOMPOSABLE
            data["modules"].append(entry)
            lines.append(f"  R({','.join(map(str, lam))}) dim {m.dim}: {verdict.decision}")
    _emit(args, data, "\n".join(lines))
    return 0 if ok else 1


def _report_out(args, rep, figure) -> int:
    if args.json:
        print(rep.dumps(args.timing))
    else:
        for c in rep.checks:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  [{c.operation}; {c.certificate}]")
        for s in rep.skipped:
            print(f"SKIP  {s}")
        print(f"{sum(c.passed for c in rep.checks)}/{len(rep.checks)} checks passed"
              + (f" in {rep.wall_time:.2f}s" if args.timing else ""))
    if args.figures:
        figure(rep, args.figures)
    return 0 if rep.passed else 1


def cmd_e3(args) -> int:
    from .plotting import e3_figure
    return _report_out(args, scenario_e3(args.max_m, args.dim_cap, args.seed), e3_figure)


def cmd_families(args) -> int:
    from .plotting import families_figure
    return _report_out(args, scenario_families(args.type.upper(), args.rank, args.dim_cap, args.seed),
                       families_figure)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--dim-cap", type=int, default=3000, help="largest module dimension built")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    common.add_argument("--figures", metavar="DIR", help="write figures into DIR")
    common.add_argument("--timing", action="store_true", help="include wall time in reports")

    typed = argparse.ArgumentParser(add_help=False)
    typed.add_argument("--type", required=True, choices=list("ABCDEFGabcdefg"))
    typed.add_argument("--rank", required=True, type=int)

    p = argparse.ArgumentParser(prog="liewide", description="Exact root systems, modules and wide subalgebras.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("rootsys", parents=[common, typed], help="root system data")
    s.add_argument("--dump-rootsys", action="store_true")
    s.set_defaults(func=cmd_rootsys)
    s = sub.add_parser("chevalley", parents=[common, typed], help="Chevalley basis")
    s.add_argument("--dump-chevalley", action="store_true")
    s.set_defaults(func=cmd_chevalley)
    s = sub.add_parser("census", parents=[common, typed], help="closed subsets and the wideness criterion")
    s.add_argument("--max-results", type=int)
    s.add_argument("--dedupe-weyl", action="store_true")
    s.set_defaults(func=cmd_census)
    s = sub.add_parser("sl2", parents=[common, typed], help="sl2-triple through a nilpotent element")
    s.add_argument("--element", required=True, help='e.g. "e[1]+e[2]"')
    s.set_defaults(func=cmd_sl2)
    s = sub.add_parser("irrep", parents=[common, typed], help="simple module R(lambda)")
    s.add_argument("--weight", required=True, help="fundamental coordinates, e.g. 0,1,0")
    s.add_argument("--dump", action="store_true", help="include generator matrices")
    s.set_defaults(func=cmd_irrep)
    s = sub.add_parser("check-wide", parents=[common, typed], help="wideness of a regular subalgebra")
    s.add_argument("--roots", required=True, help='e.g. "a1,-a2,a1+2a2"')
    s.add_argument("--modules", help='"panel" or weights separated by ";" to also run verdicts')
    s.set_defaults(func=cmd_check_wide)
    s = sub.add_parser("e3-suite", parents=[common], help="e3 inside sl4")
    s.add_argument("--max-m", type=int, default=3)
    s.set_defaults(func=cmd_e3)
    s = sub.add_parser("families-suite", parents=[common, typed], help="standard families of wide subalgebras")
    s.set_defaults(func=cmd_families)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"liewide: error: {exc}", file=sys.stderr)
        return 2


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
