import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from canonical import regular_ngon  # noqa: E402
from geometry_core import LinearMap2, make_polygon  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-size sweeps, deselect with -m \"not slow\"")


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("VOLPROD_THREADS", "VOLPROD_LOG_LEVEL", "VOLPROD_CONFIG"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def unit_square():
    return make_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def square():
    """[-1, 1]^2."""
    return make_polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)])


@pytest.fixture
def simplex():
    return make_polygon([(0, 0), (1, 0), (0, 1)])


@pytest.fixture
def hexagon():
    return regular_ngon(6)


@pytest.fixture
def scalene():
    return make_polygon([(0, 0), (3, 0), (0, 2)])


@pytest.fixture
def quadrilateral():
    return make_polygon([(0, 0), (3, 0), (3, 1), (0, 3)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_map(rng):
    """Factory for affine maps whose |det| is log-uniform on [0.1, 10]."""
    def draw():
        while True:
            M = rng.normal(size=(2, 2))
            det = np.linalg.det(M)
            if abs(det) > 0.1:
                break
        M *= np.sqrt(10.0 ** rng.uniform(-1.0, 1.0) / abs(det))
        return LinearMap2.from_matrix(M, rng.normal(size=2))
    return draw
