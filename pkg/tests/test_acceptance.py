"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary and when this file is run as a script.
"""

import random
import time
from itertools import combinations, permutations

import pytest

from conftest import ACCEPTANCE_LINES, load, random_even_grids
from gridsep.construct import (
    build_optimal,
    family_status,
    max_value,
    oned_is_optimal,
    oned_max,
    oned_score,
    verify_optimal,
)
from gridsep.disks import ball_identity_check, boundary_values, greedy_disk, min_weight, weight
from gridsep.grid import GridDims, GridPermutation, Topology, decompose, score
from gridsep.solver import AnnealSchedule, anneal, exhaustive_max
from gridsep.structure import (
    balance_terms,
    bichromatic_edges,
    key_lower_bound_doubled,
    naive_upper_bound,
    structure_report,
)
from gridsep.torus import torus_max_value, torus_score, torus_verify


def record(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _all_permutations(dims):
    return [GridPermutation(dims, p) for p in permutations(dims.cells())]


def test_criterion_1_worked_example():
    pi, _ = load("example_2x3")
    start = time.perf_counter()
    f = score(pi)
    d = decompose(pi)
    elapsed = time.perf_counter() - start
    expected = {
        "s1_plus": [1, 1, 2, 2, 2, 2, 2], "s1_minus": [1, 1, 1, 1, 1, 1, 2],
        "s2_plus": [2, 2, 3, 3, 3, 3, 3], "s2_minus": [1, 1, 1, 1, 1, 2, 2],
    }
    ok = f == 14 and d.to_dict() == expected and elapsed < 1e-3
    record(1, "2x3 example scores 14 with the expected multisets", ok, f"{elapsed * 1e3:.3f} ms")


def test_criterion_2_exhaustive_vs_closed_form():
    details, ok = [], True
    for n1, n2, limit in ((2, 2, 30.0), (2, 4, 30.0)):
        dims = GridDims(n1, n2)
        start = time.perf_counter()
        result = exhaustive_max(dims, collect=True)
        elapsed = time.perf_counter() - start
        certified = {p for p in _all_permutations(dims) if verify_optimal(p)}
        ok &= result.max_score == max_value(dims)
        ok &= set(result.argmax) == certified
        ok &= elapsed < limit
        details.append(f"{dims}: max {result.max_score}, {result.argmax_count} maximizers, {elapsed:.2f} s")
    record(2, "exhaustive argmax equals the certified set on 2x2 and 2x4", ok, "; ".join(details))


def test_criterion_3_figure_grid():
    pi, _ = load("optimal_6x6")
    f = score(pi)
    ok = f == 378 == max_value(pi.dims) and bool(verify_optimal(pi))
    record(3, "6x6 reference grid scores 378 and is certified", ok, f"f = {f}")


def test_criterion_4_construction_sweep():
    exceptional = {4, 8, 12, 16}
    start = time.perf_counter()
    bad = []
    for n1 in range(2, 21, 2):
        for n2 in range(n1, 21, 2):
            if n1 == n2 and n1 in exceptional:
                continue
            dims = GridDims(n1, n2)
            pi = build_optimal(dims)
            if not verify_optimal(pi) or score(pi) != max_value(dims):
                bad.append(str(dims))
    elapsed = time.perf_counter() - start
    empty = [n for n in range(2, 41, 2) if family_status(GridDims(n, n)).empty]
    empty_rect = [
        (a, b) for a in range(2, 41, 2) for b in range(a + 2, 41, 2) if family_status(GridDims(a, b)).empty
    ]
    ok = not bad and empty == sorted(exceptional) and not empty_rect and elapsed < 10
    record(4, "construction sweep to 20x20 and emptiness scan to 40", ok,
           f"{elapsed:.2f} s, empty squares {empty}, failures {bad}")


def test_criterion_5_property_suite():
    start = time.perf_counter()
    violations = 0
    count = 0
    for pi in random_even_grids(1000, seed=2024):
        count += 1
        dims = pi.dims
        oriented = pi if dims.n1 <= dims.n2 else pi.transpose()
        od = oriented.dims
        rep = structure_report(oriented)
        f = score(oriented)
        rim = boundary_values(oriented)
        checks = [
            f == naive_upper_bound(od) - rep.g,
            all(a == b for a, b in balance_terms(oriented)),
            f < naive_upper_bound(od),
            rep.defect_count >= od.n1,
            2 * rep.g >= key_lower_bound_doubled(oriented, rep),
            ball_identity_check(oriented),
            rep.g >= 4 + od.n1 + weight(od, rim) >= 4 + od.n1 + min_weight(od, len(rim)),
        ]
        violations += checks.count(False)
    elapsed = time.perf_counter() - start
    record(5, "structural invariants on random permutations", violations == 0 and elapsed < 10,
           f"{count} permutations, {violations} violations, {elapsed:.2f} s")


def test_criterion_6_disk_oracle():
    mismatches = 0
    for n1 in range(2, 13, 2):
        for n2 in range(2, 13, 2):
            dims = GridDims(n1, n2)
            for k in range(dims.size + 1):
                mismatches += weight(dims, greedy_disk(dims, k)) != min_weight(dims, k)
    spots = [min_weight(GridDims(6, 6), 20), min_weight(GridDims(4, 4), 12),
             min_weight(GridDims(8, 8), 28), min_weight(GridDims(4, 12), 28)]
    ok = mismatches == 0 and spots == [44, 20, 72, 76]
    record(6, "greedy disks attain the minimum weight", ok, f"spot values {spots}")


def test_criterion_7_exceptional_4x4():
    target = max_value(GridDims(4, 4))
    reached = []
    for seed in range(5):
        result = anneal((4, 4), target=target, seed=seed, schedule=AnnealSchedule(steps=10**6))
        reached.append(result.max_score == target and score(result.witness) == target)
    ok = target == 98 and sum(reached) >= 3
    record(7, "annealing reaches 98 on 4x4", ok,
           f"{sum(reached)}/5 seeds; branch-and-bound proof of 98 not run")


def _min_balanced_torus_cut(dims):
    cells = dims.cells()
    best = None
    for half in combinations(range(len(cells)), len(cells) // 2):
        chosen = {cells[k] for k in half}
        cut = bichromatic_edges(lambda c: c in chosen, dims, Topology.TORUS)
        best = cut if best is None else min(best, cut)
    return best


def test_criterion_8_torus():
    pi, _ = load("torus_6x6")
    example_ok = torus_score(pi) == 420 and bool(torus_verify(pi))
    dims = GridDims(2, 4)
    result = exhaustive_max(dims, Topology.TORUS, collect=True)
    certified = {p for p in _all_permutations(dims) if torus_verify(p)}
    argmax_ok = result.max_score == 44 == torus_max_value(dims) and set(result.argmax) == certified
    cuts = {str(d): _min_balanced_torus_cut(d) for d in (GridDims(2, 4), GridDims(4, 4))}
    cuts_ok = cuts == {"2x4": 4, "4x4": 8}
    record(8, "torus example, 2x4 argmax set and balanced cut minimum", example_ok and argmax_ok and cuts_ok,
           f"2x4 maximizers {result.argmax_count}, cut minima {cuts}")


def test_criterion_9_one_dimensional():
    start = time.perf_counter()
    ok = True
    for n in range(2, 10):
        scores = {p: oned_score(p) for p in permutations(range(1, n + 1))}
        best = max(scores.values())
        ok &= best == oned_max(n)[2]
        ok &= {p for p, s in scores.items() if s == best} == {p for p in scores if oned_is_optimal(p)}
    elapsed = time.perf_counter() - start
    record(9, "1-D maxima and argmax sets for n = 2..9", ok and elapsed < 5, f"{elapsed:.2f} s")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
