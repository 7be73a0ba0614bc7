from itertools import combinations

import pytest

from conftest import load, random_even_grids
from gridsep.grid import GridDims, GridPermutation, Topology, score
from gridsep.structure import (
    ColorClass,
    balance_terms,
    bichromatic_edges,
    boundary_cells,
    color_class,
    corner_cells,
    defects,
    exact_identity_check,
    key_lower_bound_doubled,
    naive_upper_bound,
    structure_report,
)


def test_color_classes_on_4x6():
    dims = GridDims(4, 6)
    assert color_class((1, 1), dims) is ColorClass.LIGHT_BLUE
    assert color_class((3, 4), dims) is ColorClass.DARK_BLUE
    assert color_class((3, 2), dims) is ColorClass.DARK_RED
    assert color_class((2, 5), dims) is ColorClass.LIGHT_RED
    assert ColorClass.DARK_BLUE.homogeneous and not ColorClass.LIGHT_RED.homogeneous


def test_defects_of_4x6_example():
    pi, _ = load("defects_4x6")
    d = defects(pi)
    assert d.d2_small == (1, 2, 2, 3, 3, 3)
    assert d.d2_large == (4, 4, 4, 5, 5)
    rep = structure_report(pi)
    t1 = pi.dims.t1
    c1 = [v[0] for v in rep.corners]
    assert sorted(a for a in c1 if a <= t1) == [2, 2]
    assert sorted(a for a in c1 if a > t1) == [3, 4]


def test_rim_cells_partition_the_boundary():
    dims = GridDims(6, 8)
    rim = corner_cells(dims) + boundary_cells(dims)
    assert len(set(rim)) == len(rim) == 2 * 6 + 2 * 8 - 4
    assert len(boundary_cells(dims)) == 2 * 6 + 2 * 8 - 8
    assert all(c[0] in (1, 6) or c[1] in (1, 8) for c in rim)


def test_figure_grid_structure():
    pi, _ = load("optimal_6x6")
    rep = structure_report(pi)
    assert rep.defect_count == 6
    assert naive_upper_bound(pi.dims) - rep.g == score(pi) == 378
    assert 2 * rep.g == key_lower_bound_doubled(pi, rep)


def test_key_bound_requires_n1_le_n2():
    pi = GridPermutation.identity(GridDims(6, 4))
    with pytest.raises(ValueError):
        key_lower_bound_doubled(pi)


def test_invariants_on_random_permutations():
    for pi in random_even_grids(300, seed=11):
        dims = pi.dims
        rep = structure_report(pi)
        assert exact_identity_check(pi)
        assert all(plus == minus for plus, minus in balance_terms(pi))
        assert score(pi) < naive_upper_bound(dims)
        assert rep.defect_count >= min(dims.n1, dims.n2)
        if dims.n1 <= dims.n2:
            assert 2 * rep.g >= key_lower_bound_doubled(pi, rep)


def _min_balanced_cut(dims, topology):
    cells = dims.cells()
    best = None
    for half in combinations(range(len(cells)), len(cells) // 2):
        chosen = {cells[k] for k in half}
        cut = bichromatic_edges(lambda c: c in chosen, dims, topology)
        best = cut if best is None else min(best, cut)
    return best


@pytest.mark.parametrize("n1,n2", [(2, 2), (2, 4), (2, 6), (4, 4)])
def test_balanced_coloring_cut_minimum(n1, n2):
    dims = GridDims(n1, n2)
    assert _min_balanced_cut(dims, Topology.PLANAR) == n1
    assert _min_balanced_cut(dims, Topology.TORUS) == 2 * n1


def test_torus_defects_count_wrap_edges():
    pi, topology = load("torus_6x6")
    assert defects(pi, topology).count == 12
