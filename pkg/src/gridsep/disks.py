"""Layers around the geometric center and minimum-weight cell sets.

For even dimensions the center sits at half-integer coordinates, so the
L1 distance from any cell to it is an integer.  Distances are computed
from doubled coordinates to stay in integer arithmetic.
"""

from __future__ import annotations

from typing import Iterable

from gridsep.grid import Cell, GridDims, GridPermutation
from gridsep.structure import boundary_cells, corner_cells, structure_report


def center_distance(dims: GridDims, cell: Cell) -> int:
    dims.require_even()
    return (abs(2 * cell[0] - dims.n1 - 1) + abs(2 * cell[1] - dims.n2 - 1)) // 2


def layer_count(dims: GridDims) -> int:
    dims.require_even()
    return dims.t1 + dims.t2


def layer_size(dims: GridDims, i: int) -> int:
    """Closed-form size of the i-th layer."""
    dims.require_even()
    a, b = sorted((dims.t1, dims.t2))
    if i < 1 or i > a + b:
        return 0
    if i <= a:
        return 4 * i
    if i <= b:
        return 4 * a
    return 4 * (a + b - i)


def layer_cells(dims: GridDims, i: int) -> set[Cell]:
    dims.require_even()
    return {c for c in dims.cells() if center_distance(dims, c) == i}


def weight(dims: GridDims, cells: Iterable[Cell]) -> int:
    dims.require_even()
    total = 0
    for c in cells:
        if not dims.contains(c):
            raise ValueError(f"cell {c} lies outside the {dims} grid")
        total += center_distance(dims, c)
    return total


def min_weight(dims: GridDims, k: int) -> int:
    """Smallest total center distance over all k-cell subsets."""
    dims.require_even()
    if not 0 <= k <= dims.size:
        raise ValueError(f"k={k} out of range 0..{dims.size}")
    r, covered = 0, 0
    while r < layer_count(dims) and covered + layer_size(dims, r + 1) <= k:
        r += 1
        covered += layer_size(dims, r)
    return (r + 1) * k - sum((r + 1 - i) * layer_size(dims, i) for i in range(1, r + 1))


def greedy_disk(dims: GridDims, k: int) -> list[Cell]:
    """The first k cells by center distance, ties broken row-major."""
    if not 0 <= k <= dims.size:
        raise ValueError(f"k={k} out of range 0..{dims.size}")
    return sorted(dims.cells(), key=lambda c: (center_distance(dims, c), c))[:k]


def is_disk(dims: GridDims, cells: Iterable[Cell]) -> bool:
    cells = set(cells)
    return weight(dims, cells) == min_weight(dims, len(cells))


def is_layered(dims: GridDims, cells: Iterable[Cell]) -> bool:
    """Full layers 1..r plus part of layer r + 1; agrees with :func:`is_disk`."""
    dist = sorted(center_distance(dims, c) for c in set(cells))
    if not dist:
        return True
    top = dist[-1]
    return all(dist.count(i) == layer_size(dims, i) for i in range(1, top))


def boundary_values(pi: GridPermutation) -> list[Cell]:
    """Images of all boundary cells, corners included."""
    dims = pi.dims
    return [pi[c] for c in corner_cells(dims)] + [pi[c] for c in boundary_cells(dims)]


def ball_identity_check(pi: GridPermutation) -> bool:
    dims = pi.dims
    rep = structure_report(pi)
    lhs = 2 * weight(dims, boundary_values(pi))
    rhs = 2 * rep.h + (2 * dims.t1 + 1) * rep.x1 + (2 * dims.t2 + 1) * rep.x2
    return lhs == rhs
