import numpy as np
import pytest

from model import Instance
from services.datagen import builtin, gen_uniform


@pytest.fixture
def table1():
    return builtin("table1")


@pytest.fixture
def table2():
    return builtin("table2")


@pytest.fixture
def table3():
    return builtin("table3")


@pytest.fixture
def identity():
    return Instance([[1.0]], [[1.0]])


@pytest.fixture
def random_instance():
    """Seeded uniform instance with sizes drawn from the given bounds"""

    def make(seed: int, max_m: int = 4, max_n: int = 5, max_l: int = 6, min_m: int = 1) -> Instance:
        rng = np.random.default_rng(seed)
        m = int(rng.integers(min_m, max_m + 1))
        n = int(rng.integers(1, max_n + 1))
        l = int(rng.integers(n, max_l + 1))
        return gen_uniform(m, n, l, seed)

    return make


@pytest.fixture
def two_class_instance():
    """Rows repeat two distinct (interest, availability) profiles"""

    def make(seed: int, m: int = 4, n: int = 4, l: int = 5) -> Instance:
        base = gen_uniform(2, n, l, seed)
        rows = np.arange(m) % 2
        return Instance(base.interest[rows], base.availability[rows])

    return make
