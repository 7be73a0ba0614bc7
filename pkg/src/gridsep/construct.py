"""The family of optimal permutations on even-by-even grids.

An optimal permutation with a vertical defect line looks like this: one
half of the grid holds homogeneous values in a light/dark blue
checkerboard and the other half holds heterogeneous values in a
light/dark red checkerboard.  The four center values sit in the corners,
the boundary carries a minimum-weight set of values, and the single
defect in every row takes the values ``t`` and ``t + 1`` alternately.

Every builder here works internally on grids with ``n1 <= n2``; choices
refer to that orientation and the result is transposed back.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from itertools import accumulate

from gridsep.disks import center_distance, layer_size, min_weight, is_disk
from gridsep.grid import Cell, GridDims, GridPermutation, OddDimensions, score
from gridsep.structure import (
    ColorClass,
    boundary_cells,
    class_of,
    corner_cells,
    defects,
    homogeneous_coloring,
)

LB, DB, LR, DR = (ColorClass.LIGHT_BLUE, ColorClass.DARK_BLUE,
                  ColorClass.LIGHT_RED, ColorClass.DARK_RED)


class DefectLine(enum.Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"


class Side(enum.Enum):
    """Side holding the heterogeneous half; LEFT/RIGHT read as TOP/BOTTOM for a horizontal line."""

    LEFT = "left"
    RIGHT = "right"


class DefectKind(enum.Enum):
    ROW = "row"
    COLUMN = "column"


@dataclass(frozen=True)
class BuildChoices:
    defect_line: DefectLine = DefectLine.VERTICAL
    heterogeneous_side: Side = Side.RIGHT
    defect_kind: DefectKind = DefectKind.ROW
    seed: int | None = None  # None selects the canonical build

    @property
    def canonical(self) -> bool:
        return self.seed is None


class Infeasible(ValueError):
    """The requested member of the optimal family does not exist."""


class ExceptionalSearchFailed(RuntimeError):
    def __init__(self, dims, best, target):
        super().__init__(f"search on {dims} stopped at {best}, target {target}")
        self.best = best
        self.target = target


class FailedCondition(enum.Enum):
    CORNERS_NOT_LAMBDA1 = "CornersNotLambda1"
    DEFECT_COUNT_NOT_MINIMAL = "DefectCountNotMinimal"
    NO_CLEAN_SPLIT = "NoCleanSplit"
    DEFECT_VALUES_WRONG = "DefectValuesWrong"
    BOUNDARY_NOT_DISK = "BoundaryNotDisk"


@dataclass(frozen=True)
class Certificate:
    passed: bool
    failed: FailedCondition | None = None

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {"pass": self.passed, "failed": self.failed.value if self.failed else None}


@dataclass(frozen=True)
class FamilyStatus:
    dims: GridDims
    r: int
    layer_total: int
    boundary_size: int
    empty: bool
    vertical_row_defects: bool
    vertical_column_defects: bool
    horizontal_allowed: bool

    @property
    def nonempty(self) -> bool:
        return not self.empty

    def to_dict(self) -> dict:
        return {
            "n1": self.dims.n1, "n2": self.dims.n2, "r": self.r,
            "layer_total": self.layer_total, "boundary_size": self.boundary_size,
            "empty": self.empty,
            "vertical_row_defects": self.vertical_row_defects,
            "vertical_column_defects": self.vertical_column_defects,
            "horizontal_allowed": self.horizontal_allowed,
        }


def _oriented(dims) -> GridDims:
    dims = dims if isinstance(dims, GridDims) else GridDims(*dims)
    dims.require_even()
    return dims


def center_values(dims: GridDims) -> dict[ColorClass, Cell]:
    """The four values nearest the center, keyed by color class."""
    t1, t2 = dims.t1, dims.t2
    return {LB: (t1, t2), LR: (t1, t2 + 1), DR: (t1 + 1, t2), DB: (t1 + 1, t2 + 1)}


def covering_layers(dims: GridDims) -> tuple[int, int, int]:
    """Smallest r whose first r layers cover the boundary, with both counts."""
    k = 2 * dims.n1 + 2 * dims.n2 - 4
    r, total = 0, 0
    while total < k:
        r += 1
        total += layer_size(dims, r)
    return r, total, k


def _value_class(v: Cell, t1: int, t2: int) -> ColorClass:
    return class_of(v[0] > t1, v[1] > t2)


def _cell_class(i: int, j: int, t2: int, kind: DefectKind, flip: bool) -> ColorClass:
    if j <= t2:
        return LB if ((i + j) % 2 == 0) != flip else DB
    small = ((i + j - 1) % 2 == 0) != flip
    if kind is DefectKind.ROW:
        return LR if small else DR
    return DR if small else LR


def _line_kind(v: Cell, kind: DefectKind, t1: int, t2: int) -> str | None:
    c, t = (0, t1) if kind is DefectKind.ROW else (1, t2)
    if v[c] == t:
        return "small"
    if v[c] == t + 1:
        return "large"
    return None


# classes holding the small / large line values for each defect kind
_LINE_CLASSES = {
    DefectKind.ROW: {"small": (LB, LR), "large": (DB, DR)},
    DefectKind.COLUMN: {"small": (LB, DR), "large": (DB, LR)},
}


def _select_boundary_values(dims: GridDims, kind: DefectKind, rng: random.Random | None):
    """Choose the boundary values of minimum weight that leave room for the defects.

    Returns the chosen set (center values included) and its weight, or
    raises :class:`Infeasible` when no balanced choice exists at all.
    """
    t1, t2 = dims.t1, dims.t2
    centers = set(center_values(dims).values())
    need = t1 + t2 - 2
    interior = t1 - 1
    boundary_defects = t2 >= 2

    pools = {}
    for cls in ColorClass:
        cands = [v for v in dims.cells() if _value_class(v, t1, t2) is cls and v not in centers]
        if rng is None:
            cands.sort(key=lambda v: (center_distance(dims, v), v))
        else:
            rng.shuffle(cands)
            cands.sort(key=lambda v: center_distance(dims, v))
        line = [v for v in cands if _line_kind(v, kind, t1, t2)]
        other = [v for v in cands if not _line_kind(v, kind, t1, t2)]
        pools[cls] = (line, other)

    def cost(cls, a):
        line, other = pools[cls]
        if a > len(line) or need - a < 0 or need - a > len(other):
            return None
        return (sum(center_distance(dims, v) for v in line[:a])
                + sum(center_distance(dims, v) for v in other[:need - a]))

    picks = {}
    total = sum(center_distance(dims, v) for v in centers)
    for side in ("small", "large"):
        x, y = _LINE_CLASSES[kind][side]
        lx, ly = len(pools[x][0]), len(pools[y][0])
        best, options = None, []
        for ax in range(lx + 1):
            cx = cost(x, ax)
            if cx is None:
                continue
            for ay in range(ly + 1):
                cy = cost(y, ay)
                if cy is None:
                    continue
                if boundary_defects and ax + ay < 1:
                    continue
                if (lx - ax) + (ly - ay) < interior:
                    continue
                c = cx + cy
                if best is None or c < best:
                    best, options = c, [(ax, ay)]
                elif c == best:
                    options.append((ax, ay))
        if best is None:
            raise Infeasible(f"no room for {side} {kind.value} defects on {dims}")
        ax, ay = options[0] if rng is None else rng.choice(options)
        picks[x], picks[y] = ax, ay
        total += best

    chosen = set(centers)
    for cls, a in picks.items():
        line, other = pools[cls]
        chosen.update(line[:a])
        chosen.update(other[:need - a])
    return chosen, total


def _take(options, rng):
    if rng is None:
        return min(options)
    return rng.choice(sorted(options))


def _build_vertical(dims: GridDims, kind: DefectKind, rng: random.Random | None,
                    exact: bool = True) -> GridPermutation:
    """Homogeneous left half, heterogeneous right half, vertical defect line.

    With ``exact`` the boundary must be a true disk; otherwise the lightest
    boundary that still admits the defects is used.
    """
    n1, n2, t1, t2 = dims.n1, dims.n2, dims.t1, dims.t2
    disk, w = _select_boundary_values(dims, kind, rng)
    k = 2 * n1 + 2 * n2 - 4
    if exact and w != min_weight(dims, k):
        raise Infeasible(
            f"{kind.value} defects on {dims} need a boundary of weight {w} > {min_weight(dims, k)}"
        )
    flip = False if rng is None else rng.random() < 0.5
    cls_of = {c: _cell_class(c[0], c[1], t2, kind, flip) for c in dims.cells()}
    vcls = {v: _value_class(v, t1, t2) for v in dims.cells()}
    grid: dict[Cell, Cell] = {}
    used: set[Cell] = set()

    def put(cell, v):
        assert vcls[v] is cls_of[cell] and v not in used and cell not in grid
        grid[cell] = v
        used.add(v)

    centers = center_values(dims)
    for c in corner_cells(dims):
        put(c, centers[cls_of[c]])

    def place_defect(i, pool):
        pair = ((i, t2), (i, t2 + 1))
        want = "small" if cls_of[pair[0]] is LB else "large"
        options = [(v, cell) for v in pool if v not in used
                   and _line_kind(v, kind, t1, t2) == want
                   for cell in pair if cls_of[cell] is vcls[v] and cell not in grid]
        if not options:
            raise Infeasible(f"no {want} defect value left for row {i} on {dims}")
        v, cell = _take(options, rng)
        put(cell, v)

    if t2 >= 2:
        for i in (1, n1):
            place_defect(i, disk)

    rim = boundary_cells(dims)
    if rng is not None:
        rng.shuffle(rim)
    for cell in rim:
        if cell not in grid:
            put(cell, _take([v for v in disk if v not in used and vcls[v] is cls_of[cell]], rng))

    outside = [v for v in dims.cells() if v not in disk]
    for i in range(2, n1):
        place_defect(i, outside)

    for cell in dims.cells():
        if cell not in grid:
            put(cell, _take([v for v in outside if v not in used and vcls[v] is cls_of[cell]], rng))
    return GridPermutation(dims, tuple(grid[c] for c in dims.cells()))


def _orient(pi: GridPermutation, choices: BuildChoices) -> GridPermutation:
    if choices.heterogeneous_side is Side.LEFT:
        pi = pi.reflect_positions(columns=True)
    if choices.defect_line is DefectLine.HORIZONTAL:
        pi = pi.transpose_positions()
    return pi


def _feasible(dims: GridDims, kind: DefectKind) -> bool:
    try:
        _, w = _select_boundary_values(dims, kind, None)
    except Infeasible:
        return False
    return w == min_weight(dims, 2 * dims.n1 + 2 * dims.n2 - 4)


def family_status(dims) -> FamilyStatus:
    dims = _oriented(dims)
    if dims.n1 > dims.n2:
        raise ValueError("family_status needs n1 <= n2")
    r, total, k = covering_layers(dims)
    twice = 2 * r
    if total == k:
        nonempty = twice <= 2 * dims.t2 - dims.t1 + 1
    else:
        nonempty = twice <= 2 * dims.t2 - dims.t1 + 3
    return FamilyStatus(
        dims=dims, r=r, layer_total=total, boundary_size=k, empty=not nonempty,
        vertical_row_defects=nonempty and _feasible(dims, DefectKind.ROW),
        vertical_column_defects=nonempty and _feasible(dims, DefectKind.COLUMN),
        horizontal_allowed=nonempty and dims.n1 == dims.n2,
    )


def _diagnose(dims: GridDims) -> str:
    r, total, k = covering_layers(dims)
    rel = "=" if total == k else ">"
    bound = "t2 - t1/2 + 1/2" if total == k else "t2 - t1/2 + 3/2"
    return (f"the first r={r} layers hold {total} values {rel} {k} boundary cells, "
            f"and r exceeds {bound} for t1={dims.t1}, t2={dims.t2}")


def build_optimal(dims, choices: BuildChoices = BuildChoices()) -> GridPermutation:
    """Build a member of the optimal family with the requested shape."""
    dims = _oriented(dims)
    if dims.n1 > dims.n2:
        return build_optimal(dims.transposed(), choices).transpose()
    if choices.defect_line is DefectLine.HORIZONTAL and dims.n1 != dims.n2:
        raise Infeasible("a horizontal defect line needs a square grid")
    status = family_status(dims)
    if status.empty:
        raise Infeasible(f"no optimal family member on {dims}: {_diagnose(dims)}")
    rng = None if choices.canonical else random.Random(choices.seed)
    pi = _build_vertical(dims, choices.defect_kind, rng)
    return _orient(pi, choices)


def _split_kind(col: dict[Cell, bool], dims: GridDims) -> bool:
    n1, n2, t1, t2 = dims.n1, dims.n2, dims.t1, dims.t2
    left = {col[(i, j)] for i in range(1, n1 + 1) for j in range(1, t2 + 1)}
    right = {col[(i, j)] for i in range(1, n1 + 1) for j in range(t2 + 1, n2 + 1)}
    if len(left) == 1 and len(right) == 1 and left != right:
        return True
    if n1 != n2:
        return False
    top = {col[(i, j)] for i in range(1, t1 + 1) for j in range(1, n2 + 1)}
    bottom = {col[(i, j)] for i in range(t1 + 1, n1 + 1) for j in range(1, n2 + 1)}
    return len(top) == 1 and len(bottom) == 1 and top != bottom


def verify_optimal(pi: GridPermutation) -> Certificate:
    """Check the four equality conditions that characterize optimal permutations."""
    dims = pi.dims
    dims.require_even()
    if dims.n1 > dims.n2:
        return verify_optimal(pi.transpose())
    t1, t2 = dims.t1, dims.t2
    if {pi[c] for c in corner_cells(dims)} != set(center_values(dims).values()):
        return Certificate(False, FailedCondition.CORNERS_NOT_LAMBDA1)
    d = defects(pi)
    if d.count != dims.n1:
        return Certificate(False, FailedCondition.DEFECT_COUNT_NOT_MINIMAL)
    if not _split_kind(homogeneous_coloring(pi), dims):
        return Certificate(False, FailedCondition.NO_CLEAN_SPLIT)
    if (any(v != t1 for v in d.d1_small) or any(v != t1 + 1 for v in d.d1_large)
            or any(v != t2 for v in d.d2_small) or any(v != t2 + 1 for v in d.d2_large)):
        return Certificate(False, FailedCondition.DEFECT_VALUES_WRONG)
    rim = [pi[c] for c in corner_cells(dims)] + [pi[c] for c in boundary_cells(dims)]
    if not is_disk(dims, rim):
        return Certificate(False, FailedCondition.BOUNDARY_NOT_DISK)
    return Certificate(True)


def generic_max(dims) -> int:
    """The closed-form maximum when the optimal family is nonempty."""
    dims = _oriented(dims)
    if dims.n1 > dims.n2:
        dims = dims.transposed()
    n1, n2 = dims.n1, dims.n2
    return n1 * n2 * (n1 + n2) - 4 - n1 - min_weight(dims, 2 * n1 + 2 * n2 - 4)


class OpenProblem(OddDimensions):
    """Maximum separation on grids with an odd side is an open problem."""


def is_exceptional(dims) -> bool:
    dims = _oriented(dims)
    if dims.n1 > dims.n2:
        dims = dims.transposed()
    return family_status(dims).empty


def max_value(dims) -> int:
    dims = dims if isinstance(dims, GridDims) else GridDims(*dims)
    if not dims.even:
        raise OpenProblem(f"the maximum on the {dims} grid is an open problem (odd side)")
    value = generic_max(dims)
    return value - 2 if is_exceptional(dims) else value


def build_exceptional(dims, seed: int = 0, steps: int = 2_000_000) -> GridPermutation:
    """Reach the reduced maximum on the four exceptional squares.

    Starts from the construction with the lightest boundary that still
    admits alternating defects (one unit heavier per freed defect value),
    then anneals if that start falls short.
    """
    dims = _oriented(dims)
    if not is_exceptional(dims):
        raise ValueError(f"{dims} is not one of the exceptional squares")
    target = max_value(dims)
    start = _build_vertical(dims, DefectKind.ROW, random.Random(seed) if seed else None, exact=False)
    if score(start) == target:
        return start
    from gridsep.solver import AnnealSchedule, anneal

    result = anneal(dims, target=target, seed=seed, schedule=AnnealSchedule(steps=steps), start=start)
    if result.max_score < target:
        raise ExceptionalSearchFailed(dims, result.max_score, target)
    return result.witness


# -- one-dimensional baseline -----------------------------------------------

def oned_score(seq) -> int:
    return sum(abs(a - b) for a, b in zip(seq, seq[1:]))


def oned_max(n: int) -> tuple[int, int, int]:
    """Maximum average neighbor distance as a fraction, and the total over n - 1 edges."""
    if n < 2:
        raise ValueError("need n >= 2")
    t, odd = divmod(n, 2)
    if odd:
        num, den = 2 * t * t + 2 * t - 1, 2 * t
    else:
        num, den = 2 * t * t - 1, 2 * t - 1
    total, rem = divmod(num * (n - 1), den)
    assert rem == 0
    return num, den, total


def _oscillates(seq, low: set[int]) -> bool:
    return all((a in low) != (b in low) for a, b in zip(seq, seq[1:]))


def oned_is_optimal(seq) -> bool:
    seq = list(seq)
    n = len(seq)
    if n < 2 or sorted(seq) != list(range(1, n + 1)):
        raise ValueError("expected a permutation of 1..n with n >= 2")
    ends = (seq[0], seq[-1])
    t, odd = divmod(n, 2)
    if not odd:
        return _oscillates(seq, set(range(1, t + 1))) and set(ends) == {t, t + 1}
    return ((_oscillates(seq, set(range(1, t + 1))) and set(ends) == {t + 1, t + 2})
            or (_oscillates(seq, set(range(1, t + 2))) and set(ends) == {t, t + 1}))


__all__ = [
    "BuildChoices", "Certificate", "DefectKind", "DefectLine", "ExceptionalSearchFailed",
    "FailedCondition", "FamilyStatus", "Infeasible", "OpenProblem", "Side",
    "build_exceptional", "build_optimal", "center_values", "family_status", "generic_max",
    "is_exceptional", "max_value", "oned_is_optimal", "oned_max", "oned_score", "verify_optimal",
]
