"""Corners, boundary and defects of a permutation on an even-by-even grid.

A coordinate value ``v`` is *small* in coordinate ``i`` when ``v <= t_i``
and *large* otherwise.  Values whose coordinates are both small or both
large are homogeneous (blue); mixed values are heterogeneous (red).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Hashable, Mapping, Union

from gridsep.grid import (
    Cell,
    GridDims,
    GridPermutation,
    OddDimensions,
    Topology,
    edge_indices,
    score,
)


class ColorClass(enum.Enum):
    DARK_BLUE = "dark_blue"    # (large, large)
    LIGHT_BLUE = "light_blue"  # (small, small)
    DARK_RED = "dark_red"      # (large, small)
    LIGHT_RED = "light_red"    # (small, large)

    @property
    def homogeneous(self) -> bool:
        return self in (ColorClass.DARK_BLUE, ColorClass.LIGHT_BLUE)

    @property
    def large(self) -> tuple[bool, bool]:
        return _LARGE[self]


_LARGE = {
    ColorClass.DARK_BLUE: (True, True),
    ColorClass.LIGHT_BLUE: (False, False),
    ColorClass.DARK_RED: (True, False),
    ColorClass.LIGHT_RED: (False, True),
}
_BY_LARGE = {v: k for k, v in _LARGE.items()}


def class_of(large1: bool, large2: bool) -> ColorClass:
    return _BY_LARGE[(large1, large2)]


def color_class(value: Cell, dims: GridDims) -> ColorClass:
    dims.require_even()
    if not dims.contains(value):
        raise ValueError(f"value {value} lies outside the {dims} grid")
    return _BY_LARGE[(value[0] > dims.t1, value[1] > dims.t2)]


@dataclass(frozen=True)
class Defects:
    """Defect multisets, sorted, for both coordinates."""

    d1_small: tuple[int, ...]
    d1_large: tuple[int, ...]
    d2_small: tuple[int, ...]
    d2_large: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.d1_small) + len(self.d1_large) + len(self.d2_small) + len(self.d2_large)

    def small(self, i: int) -> tuple[int, ...]:
        return self.d1_small if i == 1 else self.d2_small

    def large(self, i: int) -> tuple[int, ...]:
        return self.d1_large if i == 1 else self.d2_large


def defects(pi: GridPermutation, topology: Topology = Topology.PLANAR) -> Defects:
    """Collect defect values over the neighbor multiset.

    A neighbor pair whose images are both small in coordinate ``i``
    contributes the larger of the two values; both large contributes the
    smaller one.
    """
    dims = pi.dims
    t = (dims.t1, dims.t2)
    small = ([], [])
    large = ([], [])
    im = pi.images
    for a, b in edge_indices(dims.n1, dims.n2, topology):
        for k in (0, 1):
            u, v = im[a][k], im[b][k]
            if u <= t[k] and v <= t[k]:
                small[k].append(max(u, v))
            elif u > t[k] and v > t[k]:
                large[k].append(min(u, v))
    return Defects(
        tuple(sorted(small[0])), tuple(sorted(large[0])),
        tuple(sorted(small[1])), tuple(sorted(large[1])),
    )


def corner_cells(dims: GridDims) -> list[Cell]:
    n1, n2 = dims.n1, dims.n2
    return [(1, 1), (1, n2), (n1, 1), (n1, n2)]


def boundary_cells(dims: GridDims) -> list[Cell]:
    """Non-corner boundary cells, clockwise from the top-left corner."""
    n1, n2 = dims.n1, dims.n2
    out = [(1, j) for j in range(2, n2)]
    out += [(i, n2) for i in range(2, n1)]
    out += [(n1, j) for j in range(n2 - 1, 1, -1)]
    out += [(i, 1) for i in range(n1 - 1, 1, -1)]
    return out


def _split(values, t):
    return [v for v in values if v <= t], [v for v in values if v > t]


@dataclass(frozen=True)
class StructureReport:
    corners: tuple[Cell, ...]
    boundary: tuple[Cell, ...]
    d1_small: tuple[int, ...]
    d1_large: tuple[int, ...]
    d2_small: tuple[int, ...]
    d2_large: tuple[int, ...]
    h: int
    x1: int
    x2: int
    g: int

    @property
    def defect_count(self) -> int:
        return len(self.d1_small) + len(self.d1_large) + len(self.d2_small) + len(self.d2_large)

    def to_dict(self) -> dict:
        return {
            "corners": [list(v) for v in self.corners],
            "boundary": [list(v) for v in self.boundary],
            "d1_small": list(self.d1_small),
            "d1_large": list(self.d1_large),
            "d2_small": list(self.d2_small),
            "d2_large": list(self.d2_large),
            "h": self.h,
            "x1": self.x1,
            "x2": self.x2,
            "g": self.g,
        }


def structure_report(pi: GridPermutation) -> StructureReport:
    dims = pi.dims
    dims.require_even()
    t = (dims.t1, dims.t2)
    corners = [pi[c] for c in corner_cells(dims)]
    boundary = [pi[c] for c in boundary_cells(dims)]
    d = defects(pi, Topology.PLANAR)

    g = h = 0
    x = [0, 0]
    for k in (0, 1):
        c_small, c_large = _split([v[k] for v in corners], t[k])
        b_small, b_large = _split([v[k] for v in boundary], t[k])
        h += sum(b_large) + sum(c_large) - sum(b_small) - sum(c_small)
        x[k] = len(b_small) + len(c_small) - len(b_large) - len(c_large)
        d_small, d_large = d.small(k + 1), d.large(k + 1)
        g += (sum(b_large) + 2 * sum(c_large) + 2 * sum(d_large)
              - sum(b_small) - 2 * sum(c_small) - 2 * sum(d_small))
    return StructureReport(
        corners=tuple(sorted(corners)),
        boundary=tuple(sorted(boundary)),
        d1_small=d.d1_small, d1_large=d.d1_large,
        d2_small=d.d2_small, d2_large=d.d2_large,
        h=h, x1=x[0], x2=x[1], g=g,
    )


def balance_terms(pi: GridPermutation) -> list[tuple[int, int]]:
    """Per coordinate, the two sides ``|B>|+2|C>|+2|D>|`` and ``|B<|+2|C<|+2|D<|``."""
    dims = pi.dims
    dims.require_even()
    t = (dims.t1, dims.t2)
    corners = [pi[c] for c in corner_cells(dims)]
    boundary = [pi[c] for c in boundary_cells(dims)]
    d = defects(pi)
    out = []
    for k in (0, 1):
        c_small, c_large = _split([v[k] for v in corners], t[k])
        b_small, b_large = _split([v[k] for v in boundary], t[k])
        out.append((
            len(b_large) + 2 * len(c_large) + 2 * len(d.large(k + 1)),
            len(b_small) + 2 * len(c_small) + 2 * len(d.small(k + 1)),
        ))
    return out


def naive_upper_bound(dims: GridDims) -> int:
    """Sum over coordinates of (sum of large values - sum of small values), with multiplicity 4."""
    dims.require_even()
    return dims.n1 * dims.n2 * (dims.n1 + dims.n2)


def exact_identity_check(pi: GridPermutation) -> bool:
    return score(pi) == naive_upper_bound(pi.dims) - structure_report(pi).g


def key_lower_bound_doubled(pi: GridPermutation, report: StructureReport | None = None) -> int:
    """Twice the lower bound ``h + 4 + n1 + sum (t_i + 1/2) x_i`` on ``g``."""
    dims = pi.dims
    dims.require_even()
    if dims.n1 > dims.n2:
        raise ValueError("key bound needs n1 <= n2; transpose the permutation first")
    rep = report or structure_report(pi)
    return (2 * rep.h + 8 + 2 * dims.n1
            + (2 * dims.t1 + 1) * rep.x1 + (2 * dims.t2 + 1) * rep.x2)


Coloring = Union[Mapping[Cell, Hashable], Callable[[Cell], Hashable]]


def bichromatic_edges(coloring: Coloring, dims: GridDims, topology: Topology = Topology.PLANAR) -> int:
    """Number of neighbor pairs (with multiplicity) whose colors differ."""
    color = coloring if callable(coloring) else coloring.__getitem__
    cols = [color(c) for c in dims.cells()]
    return sum(1 for a, b in edge_indices(dims.n1, dims.n2, topology) if cols[a] != cols[b])


def homogeneous_coloring(pi: GridPermutation) -> dict[Cell, bool]:
    """Maps each cell to True when its image is homogeneous."""
    dims = pi.dims
    t1, t2 = dims.t1, dims.t2
    return {c: (pi[c][0] > t1) == (pi[c][1] > t2) for c in dims.cells()}


__all__ = [
    "ColorClass",
    "Defects",
    "OddDimensions",
    "StructureReport",
    "balance_terms",
    "bichromatic_edges",
    "boundary_cells",
    "class_of",
    "color_class",
    "corner_cells",
    "defects",
    "exact_identity_check",
    "homogeneous_coloring",
    "key_lower_bound_doubled",
    "naive_upper_bound",
    "structure_report",
]
