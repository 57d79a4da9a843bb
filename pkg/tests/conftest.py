import numpy as np
import pytest

import lameball.elastic
import lameball.sphharm
from lameball import _pykernels

try:
    from lameball import _ckernels
except ImportError:  # extension not built
    _ckernels = None

ACCEPTANCE_LINES = []

BACKENDS = ["python"] + (["cython"] if _ckernels is not None else [])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per kernel backend available in this build."""
    mod = _pykernels if request.param == "python" else _ckernels
    monkeypatch.setattr(lameball.sphharm, "kernels", mod)
    monkeypatch.setattr(lameball.elastic, "kernels", mod)
    return mod


def unit_vectors(rng, n):
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1)[:, None]


def ball_points(rng, n, rmax):
    v = unit_vectors(rng, n)
    return v * (rmax * rng.uniform(0.0, 1.0, n) ** (1.0 / 3.0))[:, None]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
