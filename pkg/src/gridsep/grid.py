"""Grid geometry, the neighbor relation and the separation objective.

Cells and values are 1-based ``(row, column)`` tuples.  A permutation is
stored row-major: ``images[(i - 1) * n2 + (j - 1)]`` is the value placed
in row ``i`` and column ``j``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Cell = tuple[int, int]


class InvalidPermutation(ValueError):
    """Raised when a sequence of images is not a bijection of the grid."""


class OddDimensions(ValueError):
    """Raised by operations that are only defined on even-by-even grids."""


class Topology(enum.Enum):
    PLANAR = "planar"
    TORUS = "torus"


@dataclass(frozen=True)
class GridDims:
    n1: int
    n2: int

    def __post_init__(self):
        if not (isinstance(self.n1, int) and isinstance(self.n2, int)):
            raise TypeError("grid dimensions must be integers")
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError(f"grid dimensions must be positive, got {self.n1}x{self.n2}")

    @property
    def size(self) -> int:
        return self.n1 * self.n2

    @property
    def even(self) -> bool:
        return self.n1 % 2 == 0 and self.n2 % 2 == 0

    @property
    def t1(self) -> int:
        if self.n1 % 2:
            raise OddDimensions(f"n1={self.n1} is odd")
        return self.n1 // 2

    @property
    def t2(self) -> int:
        if self.n2 % 2:
            raise OddDimensions(f"n2={self.n2} is odd")
        return self.n2 // 2

    def require_even(self) -> None:
        if not self.even:
            raise OddDimensions(f"{self.n1}x{self.n2} grid is not even-by-even")

    def transposed(self) -> GridDims:
        return GridDims(self.n2, self.n1)

    def cells(self) -> list[Cell]:
        return [(i, j) for i in range(1, self.n1 + 1) for j in range(1, self.n2 + 1)]

    def contains(self, cell: Cell) -> bool:
        i, j = cell
        return 1 <= i <= self.n1 and 1 <= j <= self.n2

    def index(self, cell: Cell) -> int:
        return (cell[0] - 1) * self.n2 + (cell[1] - 1)

    def cell(self, index: int) -> Cell:
        return divmod(index, self.n2)[0] + 1, index % self.n2 + 1

    def __str__(self):
        return f"{self.n1}x{self.n2}"


def _as_dims(dims) -> GridDims:
    if isinstance(dims, GridDims):
        return dims
    return GridDims(*dims)


@dataclass(frozen=True)
class GridPermutation:
    dims: GridDims
    images: tuple[Cell, ...]

    def __post_init__(self):
        dims = _as_dims(self.dims)
        images = tuple((int(v[0]), int(v[1])) for v in self.images)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "images", images)
        if len(images) != dims.size:
            raise InvalidPermutation(
                f"expected {dims.size} images for a {dims} grid, got {len(images)}"
            )
        seen = set()
        for v in images:
            if not dims.contains(v):
                raise InvalidPermutation(f"value {v} lies outside the {dims} grid")
            if v in seen:
                raise InvalidPermutation(f"value {v} appears more than once")
            seen.add(v)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Cell]]) -> GridPermutation:
        n1 = len(rows)
        n2 = len(rows[0]) if n1 else 0
        if any(len(row) != n2 for row in rows):
            raise InvalidPermutation("rows have unequal lengths")
        return cls(GridDims(n1, n2), tuple(v for row in rows for v in row))

    @classmethod
    def identity(cls, dims) -> GridPermutation:
        dims = _as_dims(dims)
        return cls(dims, tuple(dims.cells()))

    def __getitem__(self, cell: Cell) -> Cell:
        return self.images[self.dims.index(cell)]

    def rows(self) -> list[list[Cell]]:
        n2 = self.dims.n2
        return [list(self.images[k:k + n2]) for k in range(0, len(self.images), n2)]

    def transpose(self) -> GridPermutation:
        """Transpose positions and values, giving a permutation of the n2 x n1 grid."""
        dims = self.dims
        return GridPermutation(
            dims.transposed(),
            tuple((self[(i, j)][1], self[(i, j)][0])
                  for j in range(1, dims.n2 + 1) for i in range(1, dims.n1 + 1)),
        )

    def transpose_positions(self) -> GridPermutation:
        """Transpose positions only; needs a square grid."""
        if self.dims.n1 != self.dims.n2:
            raise ValueError("position-only transpose needs a square grid")
        n = self.dims.n1
        return GridPermutation(
            self.dims, tuple(self[(j, i)] for i in range(1, n + 1) for j in range(1, n + 1))
        )

    def reflect_positions(self, rows: bool = False, columns: bool = False) -> GridPermutation:
        n1, n2 = self.dims.n1, self.dims.n2
        out = []
        for i in range(1, n1 + 1):
            for j in range(1, n2 + 1):
                out.append(self[(n1 + 1 - i if rows else i, n2 + 1 - j if columns else j)])
        return GridPermutation(self.dims, tuple(out))

    def reflect_values(self, rows: bool = False, columns: bool = False) -> GridPermutation:
        n1, n2 = self.dims.n1, self.dims.n2
        return GridPermutation(
            self.dims,
            tuple((n1 + 1 - a if rows else a, n2 + 1 - b if columns else b) for a, b in self.images),
        )

    def roll_columns(self, shift: int) -> GridPermutation:
        """Cyclically shift positions to the right by ``shift`` columns."""
        n2 = self.dims.n2
        out = []
        for i in range(1, self.dims.n1 + 1):
            for j in range(1, n2 + 1):
                out.append(self[(i, (j - 1 - shift) % n2 + 1)])
        return GridPermutation(self.dims, tuple(out))

    def swap(self, a: Cell, b: Cell) -> GridPermutation:
        images = list(self.images)
        ia, ib = self.dims.index(a), self.dims.index(b)
        images[ia], images[ib] = images[ib], images[ia]
        return GridPermutation(self.dims, tuple(images))


@lru_cache(maxsize=256)
def edge_indices(n1: int, n2: int, topology: Topology) -> tuple[tuple[int, int], ...]:
    """Neighbor pairs as row-major cell indices.

    On the torus the wrap edge of a length-2 dimension coincides with the
    direct edge and is kept twice, so every cell has exactly four edges.
    """
    edges = []
    torus = topology is Topology.TORUS
    for i in range(n1):
        for j in range(n2):
            a = i * n2 + j
            if i + 1 < n1:
                edges.append((a, a + n2))
            elif torus and n1 > 1:
                edges.append((a, j))
            if j + 1 < n2:
                edges.append((a, a + 1))
            elif torus and n2 > 1:
                edges.append((a, i * n2))
    return tuple(edges)


def neighbors(dims, topology: Topology = Topology.PLANAR) -> list[tuple[Cell, Cell]]:
    """The neighbor multiset of the grid as pairs of cells."""
    dims = _as_dims(dims)
    return [(dims.cell(a), dims.cell(b)) for a, b in edge_indices(dims.n1, dims.n2, topology)]


def l1(x: Cell, y: Cell) -> int:
    return abs(x[0] - y[0]) + abs(x[1] - y[1])


def score(pi: GridPermutation, topology: Topology = Topology.PLANAR) -> int:
    """Total L1 distance between the images of neighboring cells."""
    if not isinstance(pi, GridPermutation):
        raise TypeError("score expects a GridPermutation")
    im = pi.images
    total = 0
    for a, b in edge_indices(pi.dims.n1, pi.dims.n2, topology):
        x, y = im[a], im[b]
        total += abs(x[0] - y[0]) + abs(x[1] - y[1])
    return total


@dataclass(frozen=True)
class Decomposition:
    s1_plus: tuple[int, ...]
    s1_minus: tuple[int, ...]
    s2_plus: tuple[int, ...]
    s2_minus: tuple[int, ...]

    @property
    def signed_sum(self) -> int:
        return (sum(self.s1_plus) - sum(self.s1_minus)
                + sum(self.s2_plus) - sum(self.s2_minus))

    def to_dict(self) -> dict:
        return {
            "s1_plus": list(self.s1_plus),
            "s1_minus": list(self.s1_minus),
            "s2_plus": list(self.s2_plus),
            "s2_minus": list(self.s2_minus),
        }


def decompose(pi: GridPermutation, topology: Topology = Topology.PLANAR) -> Decomposition:
    """Split the objective into positive and negative coordinate multisets.

    For each edge and coordinate the larger value joins the plus multiset
    and the smaller one the minus multiset; equal values land in both.
    """
    plus = ([], [])
    minus = ([], [])
    im = pi.images
    for a, b in edge_indices(pi.dims.n1, pi.dims.n2, topology):
        for k in (0, 1):
            u, v = im[a][k], im[b][k]
            plus[k].append(max(u, v))
            minus[k].append(min(u, v))
    return Decomposition(
        tuple(sorted(plus[0])), tuple(sorted(minus[0])),
        tuple(sorted(plus[1])), tuple(sorted(minus[1])),
    )


# -- interchange format -------------------------------------------------------

def to_json_obj(pi: GridPermutation, topology: Topology = Topology.PLANAR) -> dict:
    return {
        "n1": pi.dims.n1,
        "n2": pi.dims.n2,
        "topology": topology.value,
        "perm": [[[a, b] for a, b in row] for row in pi.rows()],
    }


def dumps(pi: GridPermutation, topology: Topology = Topology.PLANAR) -> str:
    return json.dumps(to_json_obj(pi, topology), sort_keys=True, separators=(",", ":"))


def from_json_obj(obj: dict) -> tuple[GridPermutation, Topology]:
    """Parse the interchange object; raises ValueError on any malformation."""
    if not isinstance(obj, dict):
        raise ValueError("grid document must be a JSON object")
    try:
        n1, n2, perm = obj["n1"], obj["n2"], obj["perm"]
    except KeyError as exc:
        raise ValueError(f"missing key {exc.args[0]!r}") from None
    try:
        topology = Topology(obj.get("topology", "planar"))
    except ValueError:
        raise ValueError(f"unknown topology {obj.get('topology')!r}") from None
    if not isinstance(n1, int) or not isinstance(n2, int) or isinstance(n1, bool) or isinstance(n2, bool):
        raise ValueError("n1 and n2 must be integers")
    if not isinstance(perm, list) or len(perm) != n1:
        raise ValueError(f"perm must be a list of {n1} rows")
    images = []
    for row in perm:
        if not isinstance(row, list) or len(row) != n2:
            raise ValueError(f"every row of perm must hold {n2} cells")
        for v in row:
            if (not isinstance(v, list) or len(v) != 2
                    or not all(isinstance(c, int) and not isinstance(c, bool) for c in v)):
                raise ValueError(f"malformed cell {v!r}")
            images.append((v[0], v[1]))
    return GridPermutation(GridDims(n1, n2), tuple(images)), topology


def loads(text: str) -> tuple[GridPermutation, Topology]:
    return from_json_obj(json.loads(text))

