import numpy as np
import pytest

from eode._kernels import Rng
from eode.bench import FitnessBudget, problem_spec
from eode.types import Individual, Species


@pytest.fixture
def rng():
    return Rng(12345)


@pytest.fixture
def big_budget():
    return FitnessBudget(10**9)


def make_species(points, fitnesses, stagnation=None):
    stagnation = stagnation or [0] * len(points)
    members = [Individual(np.asarray(p, dtype=np.float64), float(f), int(s))
               for p, f, s in zip(points, fitnesses, stagnation)]
    return Species(members=members)


@pytest.fixture
def spec_f1():
    return problem_spec(1)


@pytest.fixture
def spec_f2():
    return problem_spec(2)


@pytest.fixture
def spec_f5():
    return problem_spec(5)
