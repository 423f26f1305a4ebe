import numpy as np
import pytest

from wcenhance import kernels
from wcenhance.image_io import RgbImage


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile the jitted kernels once so timing-sensitive tests see steady state
    kernels.warmup()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_image(rng, h, w):
    return RgbImage.from_array(rng.uniform(0.0, 1.0, (h, w, 3)))


def quantized_random_image(rng, h, w):
    arr = rng.integers(0, 256, (h, w, 3)).astype(np.float64) / 255.0
    return RgbImage.from_array(arr)
