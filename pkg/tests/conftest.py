import importlib.resources

import numpy as np
import pytest

from adacm.fitter import FitConfig, fit_mlp_to_lut
from adacm.image import Image
from adacm.lut import read_cube

REFERENCE_CUBE = "reference_33.cube"


@pytest.fixture(scope="session")
def reference_lut():
    data = importlib.resources.files("adacm.data").joinpath(REFERENCE_CUBE).read_bytes()
    return read_cube(data)


@pytest.fixture(scope="session")
def default_fit(reference_lut):
    """Full default fit of the bundled reference LUT (N=20, 30000 steps).

    Session-scoped: several tests and acceptance criteria reuse it.
    """
    return fit_mlp_to_lut(reference_lut, FitConfig())


@pytest.fixture(scope="session")
def test_photo():
    """Deterministic synthetic photo: smooth color gradients plus texture."""
    h, w = 192, 256
    y, x = np.mgrid[0:h, 0:w].astype(np.float64)
    y /= h - 1
    x /= w - 1
    rng = np.random.default_rng(42)
    noise = rng.normal(0.0, 0.02, (h, w, 3))
    px = np.stack(
        [
            0.5 + 0.4 * np.sin(2.1 * np.pi * x) * np.cos(1.3 * np.pi * y),
            0.45 + 0.35 * np.cos(1.7 * np.pi * (x + y)),
            0.55 + 0.3 * np.sin(1.1 * np.pi * y) + 0.1 * x,
        ],
        axis=-1,
    )
    return Image(np.clip(px + noise, 0.0, 1.0))
