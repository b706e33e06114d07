import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260816)


def random_image(shape, seed):
    return np.random.default_rng(seed).normal(size=shape)


def random_field(l_count, shape, seed):
    return np.random.default_rng(seed).normal(size=(2 * l_count,) + tuple(shape))
