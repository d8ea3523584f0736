from __future__ import annotations

import pytest

from qrg.params import ModelParams
from qrg.sampler import build_graph


@pytest.fixture(scope="session")
def small_graph():
    """One supercritical draw, shared read-only across tests."""
    return build_graph(ModelParams(2.0, 0.5, 300), 20260814)


@pytest.fixture(scope="session")
def audited_graph():
    """A draw small enough for brute-force checks, with raw edge points kept."""
    return build_graph(ModelParams(2.0, 0.8, 120), 77, audit=True)
