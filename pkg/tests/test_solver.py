import random
from itertools import permutations

import pytest

from gridsep.grid import GridDims, GridPermutation, Topology, score
from gridsep.solver import (
    AnnealSchedule,
    BudgetExceeded,
    anneal,
    bnb_max,
    exhaustive_max,
    partial_bound,
)

SMALL = [((2, 2), Topology.PLANAR), ((2, 3), Topology.PLANAR), ((2, 4), Topology.PLANAR),
         ((3, 3), Topology.PLANAR), ((2, 2), Topology.TORUS), ((2, 4), Topology.TORUS)]


@pytest.mark.parametrize("shape,topology", SMALL)
def test_bnb_matches_exhaustive(shape, topology):
    ex = exhaustive_max(shape, topology)
    for seeded in (True, False):
        bb = bnb_max(shape, topology, seed_incumbent=seeded)
        assert bb.proven_optimal
        assert bb.max_score == ex.max_score
        assert bb.witness == ex.witness
    assert score(ex.witness, topology) == ex.max_score


@pytest.mark.parametrize("shape,topology,value,count", [
    ((2, 2), Topology.PLANAR, 6, 16), ((2, 3), Topology.PLANAR, 15, 20),
    ((2, 4), Topology.PLANAR, 30, 4), ((2, 2), Topology.TORUS, 12, 16),
    ((2, 4), Topology.TORUS, 44, 160),
])
def test_exhaustive_counts(shape, topology, value, count):
    result = exhaustive_max(shape, topology, collect=True)
    assert (result.max_score, result.argmax_count) == (value, count)
    assert len(set(result.argmax)) == count
    assert all(score(p, topology) == value for p in result.argmax)


def test_exhaustive_against_plain_loop():
    dims = GridDims(2, 3)
    best = max(score(GridPermutation(dims, p)) for p in permutations(dims.cells()))
    assert exhaustive_max(dims).max_score == best


def test_partial_bound_is_admissible():
    rng = random.Random(0)
    for shape, topology in SMALL[:4] + SMALL[5:]:
        dims = GridDims(*shape)
        cells = dims.cells()
        for _ in range(20):
            k = rng.randrange(max(0, dims.size - 6), dims.size + 1)
            prefix = rng.sample(cells, k)
            rest = [c for c in cells if c not in prefix]
            best = max(score(GridPermutation(dims, tuple(prefix) + tail), topology)
                       for tail in permutations(rest))
            assert partial_bound(dims, topology, prefix) >= best


def test_full_prefix_bound_is_exact():
    pi = GridPermutation.from_rows([[(2, 2), (1, 3), (2, 1)], [(1, 2), (1, 1), (2, 3)]])
    assert partial_bound(pi.dims, Topology.PLANAR, pi.images) == 14


def test_budgets(monkeypatch):
    with pytest.raises(BudgetExceeded):
        exhaustive_max((4, 4))
    with pytest.raises(BudgetExceeded):
        exhaustive_max((2, 3), budget=100)
    monkeypatch.setenv("GRIDSEP_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        exhaustive_max((2, 2))
    with pytest.raises(BudgetExceeded):
        bnb_max((4, 4), seed_incumbent=False)
    result = bnb_max((4, 4))
    assert not result.proven_optimal
    assert result.max_score == 98


def test_anneal_is_deterministic():
    sched = AnnealSchedule(steps=20_000)
    a = anneal((4, 6), seed=3, schedule=sched)
    b = anneal((4, 6), seed=3, schedule=sched)
    assert a == b
    assert score(a.witness) == a.max_score
    assert not a.proven_optimal


def test_anneal_stops_at_target():
    result = anneal((6, 6), Topology.TORUS, target=420, seed=0)
    assert result.max_score == 420
    assert score(result.witness, Topology.TORUS) == 420
    assert result.nodes_explored < AnnealSchedule().steps


def test_search_result_json_shape():
    d = exhaustive_max((2, 2)).to_dict()
    assert set(d) == {"max_score", "witness", "argmax_count", "proven_optimal",
                      "nodes_explored", "topology"}
    assert d["witness"] == [[[1, 1], [1, 2]], [[2, 2], [2, 1]]]
