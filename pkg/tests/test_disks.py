from itertools import combinations

import pytest

from conftest import random_even_grids
from gridsep.disks import (
    ball_identity_check,
    boundary_values,
    greedy_disk,
    is_disk,
    is_layered,
    layer_cells,
    layer_count,
    layer_size,
    min_weight,
    weight,
)
from gridsep.grid import GridDims
from gridsep.structure import structure_report

EVEN = [GridDims(a, b) for a in range(2, 13, 2) for b in range(2, 13, 2)]


@pytest.mark.parametrize("dims", EVEN, ids=str)
def test_layer_sizes_match_cell_counts(dims):
    sizes = [layer_size(dims, i) for i in range(1, layer_count(dims) + 1)]
    assert sizes == [len(layer_cells(dims, i)) for i in range(1, layer_count(dims) + 1)]
    assert sum(sizes) == dims.size


@pytest.mark.parametrize("dims", EVEN, ids=str)
def test_greedy_disk_attains_min_weight(dims):
    for k in range(dims.size + 1):
        disk = greedy_disk(dims, k)
        assert weight(dims, disk) == min_weight(dims, k)
        assert is_disk(dims, disk) and is_layered(dims, disk)


@pytest.mark.parametrize("n1,n2", [(2, 4), (4, 4), (2, 6)])
def test_min_weight_against_all_subsets(n1, n2):
    dims = GridDims(n1, n2)
    cells = dims.cells()
    for k in range(dims.size + 1):
        subsets = list(combinations(cells, k))
        assert min_weight(dims, k) == min(weight(dims, s) for s in subsets)
        for s in subsets[:400]:
            assert is_disk(dims, s) == is_layered(dims, s)


@pytest.mark.parametrize("n1,n2,k,w", [
    (6, 6, 20, 44), (4, 4, 12, 20), (8, 8, 28, 72), (4, 12, 28, 76), (2, 4, 8, 12), (2, 2, 4, 4),
])
def test_spot_weights(n1, n2, k, w):
    assert min_weight(GridDims(n1, n2), k) == w


def test_layers_of_4x8():
    dims = GridDims(4, 8)
    assert [layer_size(dims, i) for i in range(1, 7)] == [4, 8, 8, 8, 4, 0]


def test_out_of_range():
    dims = GridDims(4, 4)
    with pytest.raises(ValueError):
        min_weight(dims, 17)
    with pytest.raises(ValueError):
        weight(dims, [(5, 1)])


def test_ball_identity_and_key_chain():
    for pi in random_even_grids(300, seed=5):
        dims = pi.dims
        assert ball_identity_check(pi)
        if dims.n1 > dims.n2:
            continue
        rim = boundary_values(pi)
        g = structure_report(pi).g
        assert g >= 4 + dims.n1 + weight(dims, rim) >= 4 + dims.n1 + min_weight(dims, len(rim))
