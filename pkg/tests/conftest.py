import random
from fractions import Fraction

import pytest

from hopfren.laurent import LaurentSeries
from hopfren.trees import Alphabet


@pytest.fixture
def rng():
    return random.Random(20260814)


@pytest.fixture
def ab1():
    return Alphabet(["a"])


@pytest.fixture
def ab2():
    return Alphabet(["a", "b"])


def random_series(rng, lo=-3, hi=3, pole_bound=16):
    coeffs = {}
    for k in range(lo, hi + 1):
        if rng.random() < 0.6:
            coeffs[k] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return LaurentSeries(coeffs, pole_bound=pole_bound)
