"""Shared fixtures for the test suite."""
from __future__ import annotations

import numpy as np
import pytest


@pytest.fixture
def rng() -> np.random.Generator:
    """Deterministic random generator; per-test isolation via a fixed seed."""
    return np.random.default_rng(20240817)
