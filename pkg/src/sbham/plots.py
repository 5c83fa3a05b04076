"""Figures written next to the CLI's delimited reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

plt.rcParams.update({
    "font.size": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
})


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_burnside(report, path):
    """Grouped bars of |Fix(sigma^k)| and |Fix(R sigma^k)| per k, log scale."""
    k = np.arange(report.n)
    fig, ax = plt.subplots(figsize=(max(4, 0.6 * report.n + 2), 3.2))
    w = 0.38
    ax.bar(k - w / 2, report.rotation_fixes, w, label=r"rotation $\sigma^k$")
    ax.bar(k + w / 2, report.reflection_fixes, w, label=r"reflection $R\sigma^k$")
    ax.set_yscale("log")
    ax.set_xticks(k)
    ax.set_xlabel("k")
    ax.set_ylabel("fixed words")
    title = f"SB({report.m},{report.n}): N = {report.necklaces}, bracelets = {report.dihedral_orbits}"
    if report.rfix is not None:
        title += f", Rfix = {report.rfix}"
    ax.set_title(title)
    ax.legend(frameon=False)
    return _save(fig, path)


def plot_sign_histogram(plus, minus, title, path):
    fig, ax = plt.subplots(figsize=(3.6, 3.2))
    bars = ax.bar(["+1", "-1"], [plus, minus], color=["tab:green", "tab:red"])
    ax.bar_label(bars, labels=[f"{plus:,}", f"{minus:,}"])
    ax.set_xlabel(r"sgn$(f_S)$")
    ax.set_ylabel("candidates")
    ax.set_title(title)
    return _save(fig, path)


def plot_verdict_grid(reports, path):
    """Heat map over (m, n): obstructed cells dark, annotated with sgn(sigma)."""
    ms = sorted({r.m for r in reports})
    ns = sorted({r.n for r in reports})
    grid = np.zeros((len(ms), len(ns)))
    fig, ax = plt.subplots(figsize=(0.55 * len(ns) + 2, 0.45 * len(ms) + 1.5))
    for r in reports:
        i, j = ms.index(r.m), ns.index(r.n)
        grid[i, j] = 1 if r.obstructed else 0
        ax.text(j, i, "+" if r.sgn_sigma > 0 else "-", ha="center", va="center",
                color="white" if r.obstructed else "black", fontsize=8)
    ax.imshow(grid, cmap="Greys", vmin=0, vmax=1.4, aspect="auto")
    ax.set_xticks(range(len(ns)), labels=ns)
    ax.set_yticks(range(len(ms)), labels=ms)
    ax.set_xlabel("n")
    ax.set_ylabel("m")
    ax.set_title(r"sign obstruction (dark) and sgn$(\sigma)$")
    return _save(fig, path)
