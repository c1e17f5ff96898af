import numpy as np
import pytest

from gaussent import random_state


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def sample_states(rng, n, **kwargs):
    return [random_state(rng, **kwargs) for _ in range(n)]
