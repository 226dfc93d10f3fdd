"""Figures written next to the textual reports (Agg backend, files only)."""

from __future__ import annotations

import os
from collections import Counter
from typing import List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, directory: str, name: str) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, name)
    fig.savefig(path, dpi=120, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
    return path


def census_figure(records: Sequence, type_name: str, directory: str) -> str:
    """Stacked counts of closed asymmetric subsets by size, split by the criterion."""
    wide = Counter(r.size for r in records if r.verdict.wide)
    other = Counter(r.size for r in records if not r.verdict.wide)
    sizes = sorted(set(wide) | set(other))
    w = [wide.get(s, 0) for s in sizes]
    o = [other.get(s, 0) for s in sizes]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(sizes, w, color="tab:blue", label="wide")
    ax.bar(sizes, o, bottom=w, color="tab:gray", label="not wide")
    ax.set_xlabel("|Gamma|")
    ax.set_ylabel("closed subsets")
    ax.set_title(f"{type_name}: closed subsets with Gamma and -Gamma disjoint")
    ax.set_xticks(sizes)
    ax.legend()
    return _save(fig, directory, f"census_{type_name}.png")


def e3_figure(report, directory: str) -> str:
    """Module dimensions in the e3 suite, with sp4 comparison dimensions."""
    labels: List[str] = []
    dims: List[int] = []
    colors: List[str] = []
    for c in report.checks:
        if c.operation == "verdict":
            labels.append(c.name.replace("verdict ", ""))
            dims.append(c.data["dim"])
            colors.append("tab:blue" if c.data["decision"] == "indecomposable" else "tab:orange")
    fig, ax = plt.subplots(figsize=(7, 3.5))
    xs = range(len(labels))
    ax.bar(xs, dims, color=colors)
    sp = {c.name.split()[1]: c.data["dim_sp4"] for c in report.checks if c.operation == "weyl_dim"}
    for x, lab in zip(xs, labels):
        if lab in sp:
            ax.plot([x - 0.4, x + 0.4], [sp[lab]] * 2, color="black")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=45, ha="right")
    ax.set_ylabel("dim R(lambda)")
    ax.set_title("e3 in sl4: blue indecomposable, orange decomposable; bars mark sp4 dims")
    return _save(fig, directory, "e3_suite.png")


def families_figure(report, directory: str) -> str:
    """Dimension of the centralizer algebra for each family check."""
    dims = [c.data["algebra_dim"] for c in report.checks]
    colors = ["tab:green" if c.passed else "tab:red" for c in report.checks]
    fig, ax = plt.subplots(figsize=(8, 3.5))
    ax.bar(range(len(dims)), dims, color=colors)
    ax.set_yscale("log")
    ax.set_xlabel("check")
    ax.set_ylabel("dim (End V)^h")
    ax.set_title(f"{report.inputs['type']}: families suite (green = agreement)")
    return _save(fig, directory, f"families_{report.inputs['type']}.png")
