import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=50, deadline=None, derandomize=True)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def small_plan():
    from diamondchsh import QuadPlan

    return QuadPlan(points_per_replicate=2 ** 12, replicates=4, seed=11)
