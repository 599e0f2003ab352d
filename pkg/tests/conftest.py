import numpy as np
import pytest

from linkhel import catalog
from linkhel.invariants import milnor_mu


@pytest.fixture(scope="session")
def borromean_entry():
    return catalog.borromean()


@pytest.fixture(scope="session")
def unlink_entry():
    return catalog.unlink()


@pytest.fixture(scope="session")
def hopf_entry():
    return catalog.hopf_pair_plus_unknot()


@pytest.fixture(scope="session")
def borromean_mu(borromean_entry):
    """Memoized mu reports for the Borromean entry, keyed by grid size."""
    cache = {}

    def compute(n):
        if n not in cache:
            cache[n] = milnor_mu(borromean_entry.link, n)
        return cache[n]

    return compute


@pytest.fixture
def rng():
    return np.random.default_rng(20090112)
