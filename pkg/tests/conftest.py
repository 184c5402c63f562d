"""Shared fixtures for the delocalization-power test suite."""

import numpy as np
import pytest

from delocalization_power.config import config
from delocalization_power.gallery import adqc, cnot, heisenberg, identity, swap


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep every test away from the user's ~/.dlp/config.json."""
    fake_path = tmp_path / "dlp_config" / "config.json"
    monkeypatch.setattr(config, "get_config_path", lambda: fake_path)
    yield fake_path


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def cnot_gate():
    return cnot()


@pytest.fixture
def adqc_gate():
    return adqc()


@pytest.fixture
def identity_gate():
    return identity()


@pytest.fixture
def swap_gate():
    return swap()


@pytest.fixture
def weak_heisenberg():
    return heisenberg(0.01)
