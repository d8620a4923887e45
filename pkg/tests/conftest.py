import numpy as np
import pytest

from taurho import make_shuffle


@pytest.fixture
def four_segment():
    """Four-segment reference shuffle with one reflected piece.

    Breakpoints at (0, 1/8, 1/2, 3/4, 1); the second piece (weight 3/8)
    runs with slope -1.  Doubles as the worked example for the exact
    inv/invs values 35/128 and 95/1024.
    """
    return make_shuffle((4, 2, 1, 3), (1 / 8, 3 / 8, 1 / 4, 1 / 4), (1, -1, 1, 1))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
