"""Permutations of rectangular grids that maximally separate neighbors."""

from gridsep.grid import (
    Decomposition,
    GridDims,
    GridPermutation,
    InvalidPermutation,
    Topology,
    decompose,
    neighbors,
    score,
)

__version__ = "0.1.0"

__all__ = [
    "Decomposition",
    "GridDims",
    "GridPermutation",
    "InvalidPermutation",
    "Topology",
    "decompose",
    "neighbors",
    "score",
]
