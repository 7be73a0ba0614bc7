import random
from pathlib import Path

import pytest

from gridsep.grid import GridDims, GridPermutation, loads

DATA = Path(__file__).parent / "data"


def load(name):
    return loads((DATA / f"{name}.json").read_text())


@pytest.fixture
def grid_file():
    return lambda name: DATA / f"{name}.json"


def random_permutation(dims, rng):
    cells = list(dims.cells())
    rng.shuffle(cells)
    return GridPermutation(dims, tuple(cells))


def random_even_grids(count, seed, max_n1=10, max_n2=12):
    rng = random.Random(seed)
    for _ in range(count):
        dims = GridDims(2 * rng.randint(1, max_n1 // 2), 2 * rng.randint(1, max_n2 // 2))
        yield random_permutation(dims, rng)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
