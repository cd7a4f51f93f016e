import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from saruma import _backend  # noqa: E402


@pytest.fixture(params=sorted(_backend.available_backends()))
def kernels(request, monkeypatch):
    """Run a test once per available kernel backend."""
    mod = _backend.available_backends()[request.param]
    monkeypatch.setattr(_backend, "kernels", mod)
    return mod


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
