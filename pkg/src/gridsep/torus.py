"""Maximum neighbor separation on the toroidal grid.

Only the neighbor relation wraps around; distances between images are
still measured with the planar L1 metric.  Without corners and boundary
the objective is ``n1 n2 (n1 + n2) - 2 (sum D> - sum D<)``, and the best
permutations split into two equal blocks by two parallel cuts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from gridsep.construct import (
    BuildChoices,
    DefectKind,
    DefectLine,
    Infeasible,
    Side,
    _cell_class,
    _line_kind,
    _value_class,
)
from gridsep.grid import Cell, GridDims, GridPermutation, Topology, score
from gridsep.structure import defects, homogeneous_coloring, naive_upper_bound


class TorusFailure(enum.Enum):
    NOT_TWO_CUTS = "NotTwoCuts"
    CHECKERBOARD_BROKEN = "CheckerboardBroken"
    DEFECT_VALUES_WRONG = "DefectValuesWrong"


@dataclass(frozen=True)
class TorusCertificate:
    passed: bool
    failed: TorusFailure | None = None

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {"pass": self.passed, "failed": self.failed.value if self.failed else None}


def torus_score(pi: GridPermutation) -> int:
    return score(pi, Topology.TORUS)


def torus_g(pi: GridPermutation) -> int:
    d = defects(pi, Topology.TORUS)
    return 2 * (sum(d.d1_large) + sum(d.d2_large) - sum(d.d1_small) - sum(d.d2_small))


def torus_max_value(dims) -> int:
    dims = dims if isinstance(dims, GridDims) else GridDims(*dims)
    dims.require_even()
    return naive_upper_bound(dims) - 2 * min(dims.n1, dims.n2)


def torus_build(dims, choices: BuildChoices = BuildChoices(), offset: int = 0) -> GridPermutation:
    """Two blocks of width n2/2 separated by two vertical cuts.

    ``offset`` rotates the blocks cyclically; with offset 0 the cuts fall
    after columns t2 and n2.
    """
    dims = dims if isinstance(dims, GridDims) else GridDims(*dims)
    dims.require_even()
    if dims.n1 > dims.n2:
        return torus_build(dims.transposed(), choices, offset).transpose()
    if choices.defect_line is DefectLine.HORIZONTAL and dims.n1 != dims.n2:
        raise Infeasible("horizontal cuts need a square grid")
    if choices.seed is not None:
        raise Infeasible("the torus builder only supports the canonical mode")
    n1, n2, t1, t2 = dims.n1, dims.n2, dims.t1, dims.t2
    kind = choices.defect_kind
    coord = 0 if kind is DefectKind.ROW else 1
    cls_of = {c: _cell_class(c[0], c[1], t2, kind, False) for c in dims.cells()}
    vcls = {v: _value_class(v, t1, t2) for v in dims.cells()}
    grid: dict[Cell, Cell] = {}
    used: set[Cell] = set()

    def satisfied(pair, want):
        return any(c in grid and _line_kind(grid[c], kind, t1, t2) == want for c in pair)

    for i in range(1, n1 + 1):
        # the cut inside the row, then the wrap-around cut
        for pair, home in ((((i, t2), (i, t2 + 1)), (i, t2)),
                           (((i, n2), (i, 1)), (i, n2))):
            want = "large" if cls_of[pair[0]].large[coord] else "small"
            if satisfied(pair, want):
                continue
            cell = home if home not in grid else next(c for c in pair if c not in grid)
            options = [v for v in dims.cells() if v not in used and vcls[v] is cls_of[cell]
                       and _line_kind(v, kind, t1, t2) == want]
            if not options:
                raise Infeasible(f"no {want} defect value left on the {dims} torus")
            grid[cell] = min(options)
            used.add(grid[cell])

    for cell in dims.cells():
        if cell not in grid:
            v = min(v for v in dims.cells() if v not in used and vcls[v] is cls_of[cell])
            grid[cell] = v
            used.add(v)
    pi = GridPermutation(dims, tuple(grid[c] for c in dims.cells()))
    if choices.heterogeneous_side is Side.LEFT:
        pi = pi.roll_columns(t2)
    if offset:
        pi = pi.roll_columns(offset)
    if choices.defect_line is DefectLine.HORIZONTAL:
        pi = pi.transpose_positions()
    return pi


def _cyclic_block(flags: list[bool]) -> bool:
    """True when the True entries form one cyclic interval of half the length."""
    n = len(flags)
    if sum(flags) * 2 != n:
        return False
    changes = sum(1 for k in range(n) if flags[k] != flags[(k + 1) % n])
    return changes == 2


def _two_cuts(col: dict[Cell, bool], dims: GridDims) -> bool:
    n1, n2 = dims.n1, dims.n2
    columns = [{col[(i, j)] for i in range(1, n1 + 1)} for j in range(1, n2 + 1)]
    if all(len(s) == 1 for s in columns) and _cyclic_block([s == {True} for s in columns]):
        return True
    if n1 != n2:
        return False
    rows = [{col[(i, j)] for j in range(1, n2 + 1)} for i in range(1, n1 + 1)]
    return all(len(s) == 1 for s in rows) and _cyclic_block([s == {True} for s in rows])


def torus_verify(pi: GridPermutation) -> TorusCertificate:
    dims = pi.dims
    dims.require_even()
    if dims.n1 > dims.n2:
        return torus_verify(pi.transpose())
    t1, t2 = dims.t1, dims.t2
    col = homogeneous_coloring(pi)
    if not _two_cuts(col, dims):
        return TorusCertificate(False, TorusFailure.NOT_TWO_CUTS)
    d = defects(pi, Topology.TORUS)
    # every cut edge carries exactly one defect, so any surplus lies inside a block
    if d.count != 2 * dims.n1:
        return TorusCertificate(False, TorusFailure.CHECKERBOARD_BROKEN)
    rows_ok = (not d.d2_small and not d.d2_large
               and all(v == t1 for v in d.d1_small) and all(v == t1 + 1 for v in d.d1_large))
    cols_ok = (not d.d1_small and not d.d1_large
               and all(v == t2 for v in d.d2_small) and all(v == t2 + 1 for v in d.d2_large))
    if not (rows_ok or cols_ok):
        return TorusCertificate(False, TorusFailure.DEFECT_VALUES_WRONG)
    return TorusCertificate(True)


__all__ = [
    "TorusCertificate", "TorusFailure", "torus_build", "torus_g", "torus_max_value",
    "torus_score", "torus_verify",
]
