"""Figures for pipeline runs: graph size and class mass along the move trace."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .graph import Graph
from .moves import collapse, source_eliminate
from .pipeline import CornerReport, DecompositionReport

_KIND_MARK = {"SourceElim": "v", "IsolatedRemoval": "x", "Collapse": "o"}


def _sizes(g: Graph, rep: DecompositionReport) -> list[tuple[int, int]]:
    out = [(len(g.vertices), len(g.edges))]
    for m in rep.trace:
        g = collapse(g, m.vertex) if m.kind == "Collapse" else source_eliminate(g, m.vertex)
        out.append((len(g.vertices), len(g.edges)))
    return out


def plot_trace(g: Graph, rep: DecompositionReport | CornerReport, path: str | Path, title: str = "") -> Path:
    """Write a two-panel PNG/PDF/SVG (chosen by suffix) of the run to ``path``."""
    corner = rep if isinstance(rep, CornerReport) else None
    dec = corner.decomposition if corner else rep
    sizes = _sizes(g, dec)
    xs = range(len(sizes))
    nrows = 2 if corner else 1
    fig, axes = plt.subplots(nrows, 1, figsize=(6, 2.6 * nrows), sharex=True, squeeze=False)
    ax = axes[0][0]
    ax.plot(xs, [s[0] for s in sizes], marker=".", label="vertices")
    ax.plot(xs, [s[1] for s in sizes], marker=".", label="edges")
    for i, m in enumerate(dec.trace, start=1):
        ax.plot([i], [sizes[i][0]], _KIND_MARK.get(m.kind, "."), color="k", ms=5)
    ax.set_ylabel("size")
    ax.legend(frameon=False, fontsize=8)
    if corner:
        ax2 = axes[1][0]
        mass = [corner.start.mass()] + [s.after.mass() for s in corner.trace]
        ax2.step(xs, mass, where="post", color="C2")
        ax2.set_ylabel("class mass")
    axes[-1][0].set_xlabel("move")
    if title:
        axes[0][0].set_title(title, fontsize=9)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, metadata={"Software": None} if path.suffix == ".png" else None)
    plt.close(fig)
    return path
