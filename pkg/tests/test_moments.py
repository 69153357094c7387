import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from simplexdesign.core import DesignSet, MultiIndex, PointVector
from simplexdesign.moments import (
    MomentReport,
    generalized_beta,
    monomial_average,
    power_sum_target,
    simplex_moment,
    symmetrized_average,
)
from simplexdesign.perm import PermGroup, apply

from conftest import exact_points, multi_indices, perms


def test_generalized_beta_oracles():
    # ratios of factorials at integer arguments
    assert generalized_beta((2, 2, 2)) == Fraction(1, 120)
    assert generalized_beta((1, 1)) == 1
    assert generalized_beta((1, 1, 1)) == Fraction(1, 2)
    assert generalized_beta((3, 1)) == Fraction(1, 3)  # 2!*0!/3!
    with pytest.raises(ValueError):
        generalized_beta((0, 1))


def test_simplex_moment_oracles():
    assert simplex_moment((1, 0, 0)) == Fraction(1, 3)
    assert simplex_moment((2, 0, 0)) == Fraction(1, 6)
    assert simplex_moment((1, 1, 0)) == Fraction(1, 12)
    assert simplex_moment((3, 0, 0)) == Fraction(1, 10)
    assert simplex_moment((2, 1, 0)) == Fraction(1, 30)
    assert simplex_moment((1, 1, 1)) == Fraction(1, 60)
    assert simplex_moment((1, 0, 0, 0)) == Fraction(1, 4)


@given(multi_indices(4, max_entry=3).filter(lambda k: k.degree > 0))
def test_moment_matches_beta_ratio(k):
    # independent route: flat moment as a quotient of generalized Betas
    expected = generalized_beta(tuple(e + 1 for e in k)) / generalized_beta((1,) * 4)
    assert simplex_moment(k) == expected


@given(multi_indices(4, max_entry=3), perms(4))
def test_moment_permutation_invariant(k, pi):
    assert simplex_moment(k) == simplex_moment(apply(tuple(pi), k))


@given(multi_indices(3, max_entry=3))
def test_normalization_recursion(k):
    # inserting a factor of (x_1 + ... + x_d) = 1 splits the moment
    children = []
    for j in range(3):
        bumped = list(k)
        bumped[j] += 1
        children.append(simplex_moment(MultiIndex(bumped)))
    assert simplex_moment(k) == sum(children)


def test_power_sum_target_oracles():
    assert power_sum_target(3, 1) == Fraction(1, 3)
    assert power_sum_target(3, 2) == Fraction(1, 6)
    assert power_sum_target(3, 3) == Fraction(1, 10)
    assert power_sum_target(4, 2) == Fraction(1, 10)


@given(st.integers(2, 6), st.integers(1, 5))
def test_power_sum_target_is_axis_moment(n, k):
    axis = MultiIndex((k,) + (0,) * (n - 1))
    assert power_sum_target(n, k) == simplex_moment(axis)


def test_monomial_average_exact():
    pts = [PointVector.make([Fraction(1), Fraction(0), Fraction(0)]),
           PointVector.make([Fraction(0), Fraction(1), Fraction(0)])]
    design = DesignSet.explicit(pts)
    assert monomial_average(design, (2, 0, 0)) == Fraction(1, 2)
    assert monomial_average(design, (1, 1, 0)) == 0
    assert isinstance(monomial_average(design, (1, 0, 0)), Fraction)


def test_monomial_average_float():
    design = DesignSet.explicit([PointVector.make([0.5, 0.25, 0.25])])
    avg = monomial_average(design, (1, 1, 0))
    assert isinstance(avg, float)
    assert avg == pytest.approx(0.125)


@given(exact_points(3), multi_indices(3, max_entry=2).filter(lambda k: k.degree > 0))
def test_average_recursion_on_designs(p, k):
    # same telescoping identity holds for empirical averages
    design = DesignSet.orbit([p], PermGroup.cyclic(3))
    total = Fraction(0)
    for j in range(3):
        bumped = list(k)
        bumped[j] += 1
        total += monomial_average(design, MultiIndex(bumped))
    assert monomial_average(design, k) == total


def test_symmetrized_average_accumulates_group():
    design = DesignSet.explicit([PointVector.make([Fraction(1), Fraction(0), Fraction(0)])])
    c3 = PermGroup.cyclic(3)
    # F_C3(2,0,0) at a vertex: one orbit member hits, the other two vanish
    assert symmetrized_average(design, (2, 0, 0), c3) == 1
    s3 = PermGroup.symmetric(3)
    # stabilizer of (2,0,0) doubles every image
    assert symmetrized_average(design, (2, 0, 0), s3) == 2


def test_mirror_average_restores_symmetrized_target(c3):
    from simplexdesign.construct import cyclic_design, mirror_design
    x = cyclic_design()
    x_mirror = mirror_design()
    k = (2, 1, 0)
    half = (symmetrized_average(x, k, c3) + symmetrized_average(x_mirror, k, c3)) / 2
    target = c3.order * simplex_moment(k)
    assert half == pytest.approx(float(target), abs=1e-9)
    # each orbit alone misses the target
    assert abs(symmetrized_average(x, k, c3) - float(target)) > 1e-3


def test_moment_report_passes():
    r = MomentReport(MultiIndex((1, 0, 0)), Fraction(1, 3), Fraction(1, 3), Fraction(0))
    assert r.passes(0.0, exact=True)
    tiny = MomentReport(MultiIndex((1, 0, 0)), Fraction(1, 3), 1 / 3 + 1e-12, 1e-12)
    assert tiny.passes(1e-9, exact=False)
    assert not tiny.passes(1e-13, exact=False)
    assert tiny.to_json()["target"] == "1/3"
