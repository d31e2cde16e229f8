import numpy as np
import pytest

from framehomodyne.config import load_config
from framehomodyne.homodyne import phase_grid
from framehomodyne.runner import analytic_traces, build_scenario


@pytest.fixture(scope="session")
def scenarios():
    """Built preset scenarios, constructed lazily and shared across tests."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_scenario(load_config(name))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def traces(scenarios):
    """Analytic traces on the preset phase grid (256 nodes)."""
    cache = {}

    def get(name):
        if name not in cache:
            sc = scenarios(name)
            cache[name] = analytic_traces(sc, phase_grid(sc.config.n_phi))
        return cache[name]

    return get
