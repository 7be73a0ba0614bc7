"""Text, SVG and matplotlib renderings of the four-color grid."""

from __future__ import annotations

from xml.sax.saxutils import escape

from gridsep.grid import GridDims, GridPermutation
from gridsep.structure import ColorClass, color_class

FILLS = {
    ColorClass.DARK_BLUE: "#b3b3ff",
    ColorClass.LIGHT_BLUE: "#d9d9ff",
    ColorClass.DARK_RED: "#ffb3b3",
    ColorClass.LIGHT_RED: "#ffd9d9",
    None: "#ffffff",
}

BRACKETS = {
    ColorClass.DARK_BLUE: "[]",
    ColorClass.LIGHT_BLUE: "()",
    ColorClass.DARK_RED: "<>",
    ColorClass.LIGHT_RED: "{}",
    None: "  ",
}

LEGEND = "[dark blue] (light blue) <dark red> {light red}"


def _classes(pi: GridPermutation):
    dims = pi.dims
    if not dims.even:
        return [None] * dims.size
    return [color_class(v, dims) for v in pi.images]


def ascii_grid(pi: GridPermutation, legend: bool = True) -> str:
    """One line per row; the bracket style around each value marks its color class."""
    classes = _classes(pi)
    labels = [f"{a},{b}" for a, b in pi.images]
    width = max(len(s) for s in labels)
    n2 = pi.dims.n2
    lines = []
    for r in range(pi.dims.n1):
        cells = []
        for k in range(r * n2, (r + 1) * n2):
            left, right = BRACKETS[classes[k]]
            cells.append(f"{left}{labels[k]:>{width}}{right}")
        lines.append(" ".join(cells))
    if legend and pi.dims.even:
        lines.append(LEGEND)
    return "\n".join(lines)


def svg_grid(pi: GridPermutation, cell: int = 48) -> str:
    dims = pi.dims
    classes = _classes(pi)
    w, h = dims.n2 * cell, dims.n1 * cell
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="{cell // 4}">'
    ]
    for k, (v, cls) in enumerate(zip(pi.images, classes)):
        i, j = divmod(k, dims.n2)
        x, y = j * cell, i * cell
        name = cls.value if cls else "none"
        out.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" '
                   f'fill="{FILLS[cls]}" stroke="#000" class="{name}"/>')
        out.append(f'<text x="{x + cell / 2:g}" y="{y + cell / 2:g}" text-anchor="middle" '
                   f'dominant-baseline="central">{escape(f"({v[0]},{v[1]})")}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _figure(width, height):
    from matplotlib.backends.backend_agg import FigureCanvasAgg
    from matplotlib.figure import Figure

    fig = Figure(figsize=(width, height))
    FigureCanvasAgg(fig)
    return fig


def plot_grid(pi: GridPermutation, path, title: str | None = None, dpi: int = 120) -> None:
    """Save the colored grid to ``path``; the format follows the file suffix."""
    from matplotlib.patches import Rectangle

    dims = pi.dims
    classes = _classes(pi)
    fig = _figure(0.75 * dims.n2 + 0.5, 0.75 * dims.n1 + 0.8)
    ax = fig.add_subplot(1, 1, 1)
    for k, (v, cls) in enumerate(zip(pi.images, classes)):
        i, j = divmod(k, dims.n2)
        ax.add_patch(Rectangle((j, i), 1, 1, facecolor=FILLS[cls], edgecolor="black", lw=0.8))
        ax.text(j + 0.5, i + 0.5, f"{v[0]},{v[1]}", ha="center", va="center", fontsize=8)
    ax.set_xlim(0, dims.n2)
    ax.set_ylim(dims.n1, 0)
    ax.set_aspect("equal")
    ax.set_xticks([j + 0.5 for j in range(dims.n2)], [str(j + 1) for j in range(dims.n2)])
    ax.set_yticks([i + 0.5 for i in range(dims.n1)], [str(i + 1) for i in range(dims.n1)])
    ax.tick_params(length=0, labelsize=8)
    ax.xaxis.tick_top()
    if title:
        ax.set_title(title, fontsize=9, pad=18)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)


def plot_layers(dims: GridDims, path, dpi: int = 120) -> None:
    """Heat map of each cell's layer index around the center."""
    from gridsep.disks import center_distance

    dims.require_even()
    grid = [[center_distance(dims, (i, j)) for j in range(1, dims.n2 + 1)]
            for i in range(1, dims.n1 + 1)]
    fig = _figure(0.5 * dims.n2 + 1.2, 0.5 * dims.n1 + 0.6)
    ax = fig.add_subplot(1, 1, 1)
    im = ax.imshow(grid, cmap="viridis_r")
    for i, row in enumerate(grid):
        for j, d in enumerate(row):
            ax.text(j, i, str(d), ha="center", va="center", fontsize=7, color="white")
    ax.set_xticks([])
    ax.set_yticks([])
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
