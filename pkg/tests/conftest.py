import itertools

import pytest

from chaingamma import new_chain
from chaingamma.precision import PrecContext


def corpus(n_max=4, a_choices=(2, 3, 4), mu_cap=120):
    """All chains with n <= n_max, entries from a_choices and rank <= mu_cap."""
    out = []
    for n in range(1, n_max + 1):
        for a in itertools.product(a_choices, repeat=n):
            c = new_chain(a)
            if c.mu <= mu_cap:
                out.append(c)
    return out


def small_corpus(mu_cap=30):
    return [c for c in corpus() if c.mu <= mu_cap]


@pytest.fixture(scope="session")
def ctx128():
    return PrecContext(128)


@pytest.fixture(scope="session")
def ctx64():
    return PrecContext(64)
