import random

import pytest
from hypothesis import strategies as st

from adicmorse.dyadic import from_bits, is_generic, random_rational

digit_lists = st.lists(st.integers(0, 1), max_size=40)
periods = st.lists(st.integers(0, 1), min_size=1, max_size=8)


@st.composite
def rationals(draw):
    """A rational 2-adic point drawn as prefix + repeated period."""
    return from_bits(draw(digit_lists), draw(periods))


@st.composite
def generic_rationals(draw):
    x = draw(rationals())
    if not is_generic(x):
        # move off the exceptional cosets by appending a repeat-rich period
        x = from_bits(draw(digit_lists), [0, 0, 1])
    return x


def seeded_points(seed, count):
    rng = random.Random(seed)
    return [random_rational(rng) for _ in range(count)]


def seeded_generic(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        x = random_rational(rng)
        if is_generic(x):
            out.append(x)
    return out


@pytest.fixture(scope="session")
def rational_sample():
    return seeded_points(1234, 10 ** 4)


@pytest.fixture(scope="session")
def generic_sample():
    return seeded_generic(4321, 200)
