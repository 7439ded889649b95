"""Figure rendering for the CLI report paths.

All functions write a file and return its path; matplotlib is imported
lazily with the Agg backend so library users without a display (or
without plots) pay nothing.
"""

from __future__ import annotations

from pathlib import Path


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def _draw_polygon(ax, poly, title=None):
    from toricode.lattice import _hull_cycle_2d

    pts = sorted(poly.lattice_point_set())
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    if poly.dim == 2:
        cycle = _hull_cycle_2d(list(poly.vertices))
        loop = list(cycle) + [cycle[0]]
        ax.fill([p[0] for p in loop], [p[1] for p in loop],
                color="#9ecae1", alpha=0.6, zorder=1)
        ax.plot([p[0] for p in loop], [p[1] for p in loop],
                color="#3182bd", lw=1.5, zorder=2)
    elif poly.dim == 1:
        vs = list(poly.vertices)
        ax.plot([vs[0][0], vs[-1][0]], [vs[0][1], vs[-1][1]],
                color="#3182bd", lw=2, zorder=2)
    ax.scatter(xs, ys, color="#08306b", s=24, zorder=3)
    lo = (min(xs) - 1, min(ys) - 1)
    hi = (max(xs) + 1, max(ys) + 1)
    ax.set_xticks(range(lo[0], hi[0] + 1))
    ax.set_yticks(range(lo[1], hi[1] + 1))
    ax.set_xlim(lo[0] - 0.3, hi[0] + 0.3)
    ax.set_ylim(lo[1] - 0.3, hi[1] + 0.3)
    ax.set_aspect("equal")
    ax.grid(True, lw=0.3, alpha=0.5)
    ax.tick_params(labelsize=6)
    if title:
        ax.set_title(title, fontsize=8)


def save_polytope_figure(path, poly, title=None) -> str:
    """Draw a single polygon (m = 2) with its lattice points."""
    if poly.ambient_dim != 2:
        raise ValueError("polytope figures are only rendered for m = 2")
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(4, 4))
    _draw_polygon(ax, poly, title=title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(Path(path))


def save_census_figure(path, records) -> str:
    """Gallery of classified polygons; records are (polytope, label) pairs."""
    plt = _pyplot()
    records = list(records)
    if not records:
        raise ValueError("no records to draw")
    cols = min(4, len(records))
    rows = (len(records) + cols - 1) // cols
    fig, axes = plt.subplots(rows, cols, figsize=(2.4 * cols, 2.4 * rows),
                             squeeze=False)
    for ax in axes.ravel():
        ax.axis("off")
    for ax, (poly, label) in zip(axes.ravel(), records):
        ax.axis("on")
        _draw_polygon(ax, poly, title=label)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(Path(path))


def save_weight_distribution(path, enumerator, n, d, title=None) -> str:
    """Bar chart of the weight enumerator with the minimum distance marked."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 3.2))
    weights = list(range(n + 1))
    counts = [int(c) for c in enumerator]
    ax.bar(weights, counts, color="#74c476", width=0.85)
    ax.axvline(d, color="#d62728", lw=1.2, ls="--", label=f"d = {d}")
    ax.set_xlabel("weight")
    ax.set_ylabel("codewords")
    ax.set_yscale("symlog")
    ax.legend(fontsize=8)
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(Path(path))
