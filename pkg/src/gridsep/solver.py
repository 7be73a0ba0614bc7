"""Independent search oracles: exhaustive enumeration, branch-and-bound, annealing."""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field
from itertools import islice, permutations

import numpy as np

from gridsep.grid import GridDims, GridPermutation, Topology, edge_indices, score

DEFAULT_EXHAUSTIVE_BUDGET = math.factorial(9)


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"search needs {required} candidates, budget is {budget}")
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class SearchResult:
    max_score: int
    witness: GridPermutation
    proven_optimal: bool
    nodes_explored: int
    topology: Topology = Topology.PLANAR
    argmax_count: int | None = None
    argmax: tuple[GridPermutation, ...] | None = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict:
        return {
            "max_score": self.max_score,
            "witness": [[list(v) for v in row] for row in self.witness.rows()],
            "argmax_count": self.argmax_count,
            "proven_optimal": self.proven_optimal,
            "nodes_explored": self.nodes_explored,
            "topology": self.topology.value,
        }


def env_budget(default: int) -> int:
    raw = os.environ.get("GRIDSEP_BUDGET")
    return int(raw) if raw else default


def _dims(dims) -> GridDims:
    return dims if isinstance(dims, GridDims) else GridDims(*dims)


def exhaustive_max(dims, topology: Topology = Topology.PLANAR, budget: int | None = None,
                   collect: bool = False, chunk: int = 50_000) -> SearchResult:
    """Score every permutation of the grid.

    The witness is the lexicographically smallest maximizer in row-major
    value order.  With ``collect`` all maximizers are returned as well.
    """
    dims = _dims(dims)
    n = dims.size
    required = math.factorial(n)
    budget = env_budget(DEFAULT_EXHAUSTIVE_BUDGET) if budget is None else budget
    if required > budget:
        raise BudgetExceeded(required, budget)
    values = dims.cells()
    vr = np.array([v[0] for v in values])
    vc = np.array([v[1] for v in values])
    edges = np.array(edge_indices(dims.n1, dims.n2, topology), dtype=np.intp).reshape(-1, 2)

    best, count, winners = -1, 0, []
    it = permutations(range(n))
    while True:
        block = np.array(list(islice(it, chunk)), dtype=np.intp)
        if block.size == 0:
            break
        a, b = block[:, edges[:, 0]], block[:, edges[:, 1]]
        s = (np.abs(vr[a] - vr[b]) + np.abs(vc[a] - vc[b])).sum(axis=1)
        top = int(s.max())
        if top < best:
            continue
        hits = np.flatnonzero(s == top)
        if top > best:
            best, count, winners = top, 0, []
        count += len(hits)
        if collect or not winners:
            winners.extend(block[h] for h in (hits if collect else hits[:1]))
    perms = [GridPermutation(dims, tuple(values[k] for k in w)) for w in winners]
    return SearchResult(
        max_score=best, witness=perms[0], proven_optimal=True, nodes_explored=required,
        topology=topology, argmax_count=count, argmax=tuple(perms) if collect else None,
    )


class _Bounder:
    """Admissible upper bound on the score of any completion of a row-major prefix."""

    def __init__(self, dims: GridDims, topology: Topology):
        self.dims = dims
        self.values = dims.cells()
        n = dims.size
        self.cap = (dims.n1 - 1) + (dims.n2 - 1)
        edges = edge_indices(dims.n1, dims.n2, topology)
        # edges closing when position p is assigned (other end earlier)
        self.closing = [[] for _ in range(n)]
        for a, b in edges:
            lo, hi = min(a, b), max(a, b)
            self.closing[hi].append(lo)
        self.frontier = []
        self.free_edges = []
        for k in range(n + 1):
            self.frontier.append([min(a, b) for a, b in edges if min(a, b) < k <= max(a, b)])
            self.free_edges.append(sum(1 for a, b in edges if min(a, b) >= k))
        vals = self.values
        self.dist = [[abs(x[0] - y[0]) + abs(x[1] - y[1]) for y in vals] for x in vals]
        self.far = [sorted(range(n), key=lambda v, u=u: -self.dist[u][v]) for u in range(n)]

    def bound(self, assign: list[int], used: list[bool], exact: int) -> int:
        k = len(assign)
        extra = 0
        for p in self.frontier[k]:
            u = assign[p]
            for v in self.far[u]:
                if not used[v]:
                    extra += self.dist[u][v]
                    break
        return exact + extra + self.free_edges[k] * self.cap


def partial_bound(dims, topology: Topology, prefix) -> int:
    """Bound for a prefix of values (cells) assigned to the first cells row-major."""
    dims = _dims(dims)
    b = _Bounder(dims, topology)
    idx = [dims.index(v) for v in prefix]
    used = [False] * dims.size
    for v in idx:
        used[v] = True
    exact = sum(b.dist[idx[p]][idx[q]] for p in range(len(idx)) for q in b.closing[p])
    return b.bound(idx, used, exact)


def _seed_incumbent(dims: GridDims, topology: Topology) -> GridPermutation | None:
    if not dims.even:
        return None
    if topology is Topology.TORUS:
        from gridsep.torus import torus_build
        return torus_build(dims)
    from gridsep.construct import build_exceptional, build_optimal, is_exceptional
    return build_exceptional(dims) if is_exceptional(dims) else build_optimal(dims)


def bnb_max(dims, topology: Topology = Topology.PLANAR, node_budget: int | None = None,
            seed_incumbent: bool = True) -> SearchResult:
    """Depth-first branch-and-bound over row-major cell assignments."""
    dims = _dims(dims)
    n = dims.size
    b = _Bounder(dims, topology)
    dist, closing = b.dist, b.closing
    node_budget = env_budget(10**7) if node_budget is None else node_budget

    best, witness = -1, None
    start = _seed_incumbent(dims, topology) if seed_incumbent else None
    if start is not None:
        best = score(start, topology)
        witness = [dims.index(v) for v in start.images]

    assign: list[int] = []
    used = [False] * n
    nodes = 0
    exhausted = False

    def dfs(exact: int) -> None:
        nonlocal best, witness, nodes, exhausted
        nodes += 1
        if nodes > node_budget:
            exhausted = True
            return
        k = len(assign)
        if k == n:
            if exact > best or (exact == best and assign < witness):
                best, witness = exact, list(assign)
            return
        bound = b.bound(assign, used, exact)
        if bound < best:
            return
        if bound == best and witness is not None and assign > witness[:k]:
            return
        for v in range(n):
            if used[v]:
                continue
            gain = sum(dist[v][assign[q]] for q in closing[k])
            used[v] = True
            assign.append(v)
            dfs(exact + gain)
            assign.pop()
            used[v] = False
            if exhausted:
                return

    dfs(0)
    if witness is None:
        raise BudgetExceeded(nodes, node_budget)
    values = b.values
    return SearchResult(
        max_score=best,
        witness=GridPermutation(dims, tuple(values[k] for k in witness)),
        proven_optimal=not exhausted,
        nodes_explored=min(nodes, node_budget),
        topology=topology,
    )


@dataclass(frozen=True)
class AnnealSchedule:
    steps: int = 1_000_000
    t0: float = 2.0
    cooling: float | None = None  # per-step factor; default cools to t_end over ``steps``
    t_end: float = 0.05

    def factor(self) -> float:
        if self.cooling is not None:
            return self.cooling
        return (self.t_end / self.t0) ** (1.0 / max(self.steps, 1))


def anneal(dims, topology: Topology = Topology.PLANAR, target: int | None = None, seed: int = 0,
           schedule: AnnealSchedule = AnnealSchedule(),
           start: GridPermutation | None = None) -> SearchResult:
    """Simulated annealing over transpositions of two images.

    A move only touches the edges at the two swapped cells, so each step
    costs O(1).  Stops as soon as ``target`` is reached.
    """
    dims = _dims(dims)
    n = dims.size
    rng = random.Random(seed)
    nbrs = [[] for _ in range(n)]
    for a, b in edge_indices(dims.n1, dims.n2, topology):
        nbrs[a].append(b)
        nbrs[b].append(a)
    if start is None:
        images = dims.cells()
        rng.shuffle(images)
    else:
        images = list(start.images)
    rows = [v[0] for v in images]
    cols = [v[1] for v in images]

    def local(p):
        rp, cp = rows[p], cols[p]
        return sum(abs(rp - rows[x]) + abs(cp - cols[x]) for x in nbrs[p])

    cur = sum(abs(rows[a] - rows[b]) + abs(cols[a] - cols[b])
              for a, b in edge_indices(dims.n1, dims.n2, topology))
    best, best_state = cur, (rows[:], cols[:])
    temp, factor = schedule.t0, schedule.factor()
    steps = 0
    exp, rand, randrange = math.exp, rng.random, rng.randrange
    while steps < schedule.steps and (target is None or best < target):
        steps += 1
        p = randrange(n)
        q = randrange(n - 1)
        if q >= p:
            q += 1
        before = local(p) + local(q)
        rows[p], rows[q] = rows[q], rows[p]
        cols[p], cols[q] = cols[q], cols[p]
        delta = local(p) + local(q) - before
        if delta >= 0 or rand() < exp(delta / temp):
            cur += delta
            if cur > best:
                best, best_state = cur, (rows[:], cols[:])
        else:
            rows[p], rows[q] = rows[q], rows[p]
            cols[p], cols[q] = cols[q], cols[p]
        temp *= factor
    witness = GridPermutation(dims, tuple(zip(*best_state)))
    return SearchResult(max_score=best, witness=witness, proven_optimal=False,
                        nodes_explored=steps, topology=topology)
