"""Design verification: brute force, the power-sum criterion, and
symmetry-restricted checks.

All three verifiers produce a VerificationResult holding one MomentReport per
checked quantity.  In exact mode a design must hit every target exactly; in
float mode residuals are compared against an absolute tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import perm as permmod
from .core import DesignSet, MultiIndex, PointVector, enumerate_multi_indices
from .moments import (MomentReport, monomial_average, power_sum_target,
                      simplex_moment, symmetrized_average)
from .perm import PermGroup

DEFAULT_TOLERANCE = 1e-9

CLASS_PROPER = "proper-design"
CLASS_PSEUDO = "pseudodesign"
CLASS_NOT = "not-a-design"


@dataclass
class VerificationResult:
    method: str
    t: int
    is_design: bool
    classification: str
    max_abs_residual: float
    reports: list[MomentReport] = field(default_factory=list)
    tolerance: float = DEFAULT_TOLERANCE
    exact: bool = False

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "t": self.t,
            "is_design": self.is_design,
            "classification": self.classification,
            "max_abs_residual": self.max_abs_residual,
            "tolerance": self.tolerance,
            "exact": self.exact,
            "reports": [r.to_json() for r in self.reports],
        }


def _classify(is_design: bool, proper: bool) -> str:
    if not is_design:
        return CLASS_NOT
    return CLASS_PROPER if proper else CLASS_PSEUDO


def _finish(method: str, t: int, reports: list[MomentReport], tolerance: float,
            exact: bool, proper: bool) -> VerificationResult:
    ok = all(r.passes(tolerance, exact) for r in reports)
    worst = max((r.abs_residual for r in reports), default=0.0)
    return VerificationResult(method, t, ok, _classify(ok, proper), worst,
                              reports, tolerance, exact)


def verify_brute_force(design: DesignSet, t: int,
                       tolerance: float = DEFAULT_TOLERANCE,
                       canonical_only: bool = False) -> VerificationResult:
    """Check every monomial of degree 1..t against its flat moment.

    canonical_only restricts to non-increasing indices, which is sound only
    for point sets closed under all coordinate permutations.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    design.expand()  # materialize once; also enforces the cap
    reports = []
    for degree in range(1, t + 1):
        for k in enumerate_multi_indices(design.d, degree, exact_degree=True):
            if canonical_only and not k.is_canonical():
                continue
            target = simplex_moment(k)
            observed = monomial_average(design, k)
            residual = observed - target
            reports.append(MomentReport(k, target, observed, residual))
    return _finish("brute-force", t, reports, tolerance, design.exact,
                   design.is_proper())


def verify_power_sum_criterion(base_points: Sequence[PointVector], t: int,
                               tolerance: float = DEFAULT_TOLERANCE) -> VerificationResult:
    """The orbit-free test for full S_n-orbit multisets of s base points:

        (1/(s*n)) * sum_ij x_ij^k  ==  (n-1)! k! / (n+k-1)!   for k = 1..t.

    Never expands the orbit, so it stays cheap for any n.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    base_points = list(base_points)
    if not base_points:
        raise ValueError("no base points")
    n = base_points[0].d
    s = len(base_points)
    if any(p.d != n for p in base_points):
        raise ValueError("base point dimension mismatch")
    exact = all(p.exact for p in base_points)
    reports = []
    for k in range(1, t + 1):
        target = power_sum_target(n, k)
        if exact:
            observed = sum(c ** k for p in base_points for c in p.coords) / Fraction(s * n)
        else:
            observed = math.fsum(c ** k for p in base_points
                                 for c in p.as_floats()) / (s * n)
        residual = observed - target
        index = MultiIndex((k,) + (0,) * (n - 1))
        reports.append(MomentReport(index, target, observed, residual,
                                    symmetrization="power-sum"))
    proper = all(p.is_proper() for p in base_points)
    return _finish("power-sum-criterion", t, reports, tolerance, exact, proper)


def invariant_indices(d: int, t: int, group: PermGroup) -> list[MultiIndex]:
    """Multi-indices of degree 1..t whose G-orbit is the full S_d-orbit."""
    out = []
    for degree in range(1, t + 1):
        for k in enumerate_multi_indices(d, degree, exact_degree=True):
            if permmod.is_invariant(group, k):
                out.append(k)
    return out


def verify_G_restricted(design: DesignSet, t: int, group: PermGroup,
                        tolerance: float = DEFAULT_TOLERANCE) -> VerificationResult:
    """Check only the G-invariant indices, via |G|-normalized symmetrized
    averages against the plain flat moment.

    This is the right notion for orbits under a subgroup G: indices whose
    G-orbit falls short of the full permutation orbit carry information the
    G-average cannot see, so they are excluded.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if group.d != design.d:
        raise ValueError("group dimension mismatch")
    order = group.order
    reports = []
    for k in invariant_indices(design.d, t, group):
        target = simplex_moment(k)
        total = symmetrized_average(design, k, group)
        observed = total / order
        residual = observed - target
        reports.append(MomentReport(k, target, observed, residual,
                                    symmetrization=group.label))
    return _finish("G-restricted", t, reports, tolerance, design.exact,
                   design.is_proper())


@dataclass
class CrossValidation:
    criterion: VerificationResult
    brute_force: VerificationResult
    agree: bool

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion.to_json(),
            "brute_force": self.brute_force.to_json(),
            "agree": self.agree,
        }


def cross_validate(base_points: Sequence[PointVector], t: int,
                   tolerance: float = DEFAULT_TOLERANCE) -> CrossValidation:
    """Run the power-sum criterion and the brute-force check on the expanded
    S_n orbit and compare verdicts.  They must agree for t <= 3."""
    base_points = list(base_points)
    n = base_points[0].d
    crit = verify_power_sum_criterion(base_points, t, tolerance)
    design = DesignSet.orbit(base_points, PermGroup.symmetric(n))
    brute = verify_brute_force(design, t, tolerance)
    return CrossValidation(crit, brute, crit.is_design == brute.is_design)
