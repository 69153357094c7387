"""End-to-end checks, one test per published behavior guarantee.

Each test is independent and prints one pass/fail line under pytest -v.
Numbered 01..10; 05 is split into the span sweep (05a) and the
decomposition matrix (05b).
"""

import random
import time
from fractions import Fraction

import pytest

from simplexdesign.algebra import (
    decomposition_table,
    homogenize_to,
    in_span,
    partitions,
    symmetrized_monomial,
)
from simplexdesign.construct import (
    branch_discriminant,
    corollary_42_roots,
    cyclic_design,
    mirror_design,
    restriction_bound,
    six_point_design,
    solve_three_value_family,
)
from simplexdesign.core import DesignSet, MultiIndex, PointVector
from simplexdesign.moments import monomial_average, simplex_moment
from simplexdesign.perm import PermGroup
from simplexdesign.verify import (
    cross_validate,
    invariant_indices,
    verify_G_restricted,
    verify_brute_force,
    verify_power_sum_criterion,
)


def test_criterion_01_exact_flat_moments():
    assert simplex_moment((1, 1, 0)) == Fraction(1, 12)
    assert simplex_moment((1, 1, 1)) == Fraction(1, 60)


def test_criterion_02_cyclic_failure_and_mirror_average():
    k = MultiIndex((1, 2, 0))
    residual = abs(float(monomial_average(cyclic_design(), k)) - 1 / 30)
    assert residual == pytest.approx(0.00481, abs=5e-5)
    both = DesignSet.explicit(list(cyclic_design().expand())
                              + list(mirror_design().expand()))
    mirrored = float(monomial_average(both, k))
    assert abs(mirrored - 1 / 30) <= 1e-9


def test_criterion_03_six_point_strength_three_not_four():
    start = time.monotonic()
    r3 = verify_brute_force(six_point_design(), 3)
    assert r3.is_design
    assert r3.max_abs_residual <= 1e-9
    r4 = verify_brute_force(six_point_design(), 4)
    assert not r4.is_design
    assert time.monotonic() - start < 1.0


def test_criterion_04_exact_span_verdicts():
    c3 = PermGroup.cyclic(3)
    ok, _ = in_span(symmetrized_monomial(c3, (2, 1, 0)),
                    [symmetrized_monomial(c3, (j, 0, 0)) for j in (1, 2, 3)])
    assert not ok
    c4 = PermGroup.cyclic(4)
    ok, _ = in_span(symmetrized_monomial(c4, (1, 0, 1, 0)),
                    [symmetrized_monomial(c4, (1, 0, 0, 0)),
                     symmetrized_monomial(c4, (2, 0, 0, 0))])
    assert not ok
    s3 = PermGroup.symmetric(3)
    ok, coeffs = in_span(symmetrized_monomial(s3, (2, 1, 0)),
                         [symmetrized_monomial(s3, (j, 0, 0))
                          for j in (1, 2, 3)])
    assert ok and coeffs is not None


def test_criterion_05a_symmetric_spans_cover_all_partitions():
    start = time.monotonic()
    missing = []
    for d in (3, 4, 5):
        sd = PermGroup.symmetric(d)
        basis = [symmetrized_monomial(sd, (j,) + (0,) * (d - 1))
                 for j in range(1, 5)]
        for t in range(1, 5):
            for lam in partitions(t, d):
                k = MultiIndex(tuple(lam) + (0,) * (d - len(lam)))
                ok, _ = in_span(homogenize_to(symmetrized_monomial(sd, k), t),
                                basis[:t], adjoin_constant=True)
                if not ok:
                    missing.append((d, t, tuple(lam)))
    assert time.monotonic() - start < 5.0
    assert not missing, (
        "symmetrized power-sum spans do not cover these partition "
        f"monomials: {missing}")


def test_criterion_05b_decomposition_matrix_matches_and_has_rank_four():
    table = decomposition_table(4, 4)
    assert table.columns == [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]
    by_row = dict(zip(table.rows, table.path_matrix))
    assert by_row[(1,)] == [1, 3, 2, 3, 1]
    assert by_row[(1, 1)] == [1, 2, 1, 1, 0]
    assert by_row[(2,)] == [0, 1, 1, 2, 1]
    assert by_row[(1, 1, 1)] == [1, 1, 0, 0, 0]
    assert by_row[(2, 1)] == [0, 1, 1, 1, 0]
    assert by_row[(3,)] == [0, 0, 0, 1, 1]
    assert by_row[(1, 1, 1, 1)] == [1, 0, 0, 0, 0]
    assert table.rank_paths == 4
    assert table.rank_exact == 4


TABLE_ROWS = [
    # (d, a, b, c, proper)
    (3, 0.659, 0.232, 0.109, True),
    (4, 0.376, 0.571, 0.052, True),
    (4, 0.190, 0.569, 0.241, True),
    (5, 0.475, 0.508, 0.017, True),
    (5, 0.252, 0.502, 0.246, True),
    (6, 0.303, 0.448, 0.249, True),
    (7, 0.345, 0.404, 0.252, True),
    (8, 0.380, 0.365, 0.255, True),
    (9, 0.410, 0.328, 0.262, True),
    (6, 0.546, 0.459, -0.006, False),
    (7, 0.601, 0.421, -0.022, False),
    (8, 0.644, 0.390, -0.034, False),
    (9, 0.678, 0.364, -0.042, False),
    (16, 0.808, 0.258, -0.066, False),
    (25, 0.874, 0.197, -0.070, False),
    (100, 0.967, 0.086, -0.053, False),
]


def test_criterion_06_frozen_family_table():
    start = time.monotonic()
    cache = {}
    for d, a, b, c, proper in TABLE_ROWS:
        if d not in cache:
            cache[d] = solve_three_value_family(d)
        hits = [s for s in cache[d]
                if abs(s.a - a) <= 5e-4 and abs(s.b - b) <= 5e-4
                and abs(s.c - c) <= 5e-4]
        assert hits, f"no solution matches tabulated row d={d} a={a}"
        assert any(s.proper == proper for s in hits), (d, a, proper)
    assert time.monotonic() - start < 5.0


def _random_exact_point(rng: random.Random, d: int,
                        allow_negative: bool) -> PointVector:
    lo = -3 if allow_negative else 0
    while True:
        vals = [rng.randint(lo, 9) for _ in range(d)]
        if sum(vals) > 0:
            total = sum(vals)
            return PointVector.make([Fraction(v, total) for v in vals])


def test_criterion_07_criterion_agrees_with_brute_force_randomized():
    start = time.monotonic()
    rng = random.Random(20240816)
    trials = 0
    seen_verdicts = set()
    while trials < 120:
        d = rng.randint(2, 5)
        s = rng.randint(1, 2)
        t = rng.randint(1, 3)
        allow_negative = rng.random() < 0.4
        base = [_random_exact_point(rng, d, allow_negative) for _ in range(s)]
        cv = cross_validate(base, t)
        assert cv.agree, (d, s, t, [p.to_json() for p in base])
        seen_verdicts.add(cv.brute_force.is_design)
        trials += 1
    # the sample must exercise both outcomes to mean anything
    assert seen_verdicts == {True, False}
    assert time.monotonic() - start < 30.0


def test_criterion_08_restricted_classification():
    c3 = PermGroup.cyclic(3)
    x = cyclic_design()
    assert verify_G_restricted(x, 3, c3).is_design
    assert not verify_brute_force(x, 3).is_design
    degree3 = {tuple(k) for k in invariant_indices(3, 3, c3) if k.degree == 3}
    assert degree3 == {(3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 1)}


def test_criterion_09_restriction_bound_is_discriminant_sign():
    start = time.monotonic()
    for d in range(3, 21):
        for i in range(-200, 801):
            a = Fraction(i, 400)
            assert restriction_bound(d, a) == (branch_discriminant(d, a) >= 0)
    assert time.monotonic() - start < 5.0


def test_criterion_10_family_solutions_for_every_dimension():
    start = time.monotonic()
    for d in range(2, 101):
        sols = solve_three_value_family(d)
        passing = [s for s in sols
                   if verify_power_sum_criterion([s.base_point()], 3).is_design]
        assert passing, f"no admissible solution at d={d}"
    assert time.monotonic() - start < 30.0
