from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from simplexdesign.core import MultiIndex, PointVector
from simplexdesign.perm import PermGroup

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


def perms(d: int):
    return st.permutations(tuple(range(d)))


def multi_indices(d: int, max_entry: int = 4):
    return st.lists(st.integers(0, max_entry), min_size=d, max_size=d).map(
        lambda v: MultiIndex(v))


@st.composite
def exact_points(draw, d: int, allow_negative: bool = False):
    # normalized integer weights; any positive total gives an exact sum of 1
    lo = -3 if allow_negative else 0
    w = draw(st.lists(st.integers(lo, 9), min_size=d, max_size=d)
             .filter(lambda v: sum(v) > 0))
    total = sum(w)
    return PointVector.make([Fraction(x, total) for x in w])


@st.composite
def small_groups(draw, d: int):
    kind = draw(st.sampled_from(["sym", "cyc", "gen"]))
    if kind == "sym":
        return PermGroup.symmetric(d)
    if kind == "cyc":
        return PermGroup.cyclic(d)
    gens = draw(st.lists(perms(d), min_size=1, max_size=2))
    return PermGroup.generated(d, [tuple(g) for g in gens])


@pytest.fixture
def c3():
    return PermGroup.cyclic(3)


@pytest.fixture
def s3():
    return PermGroup.symmetric(3)
