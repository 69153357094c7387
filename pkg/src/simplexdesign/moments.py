"""Flat-measure moments on the simplex and their finite-set counterparts.

The uniform (flat Dirichlet) average of a monomial x^k over the (d-1)-simplex
has the closed form

    (d-1)! * prod(k_i!) / (d-1+sum(k))!

which is a ratio of the generalized Beta function at shifted exponents.  A
finite multiset X is a t-design when its empirical averages match these for
every monomial of degree at most t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import perm as permmod
from .core import DesignSet, MultiIndex, Scalar, scalar_to_json
from .perm import PermGroup


def generalized_beta(alphas: Sequence[int]) -> Fraction:
    """B(alpha) = prod(Gamma(alpha_i)) / Gamma(sum(alpha_i)), exact.

    Only integer arguments >= 1 are needed here, so Gamma reduces to
    factorials.
    """
    alphas = tuple(alphas)
    if not alphas:
        raise ValueError("generalized Beta of nothing")
    if any((not isinstance(a, int)) or a < 1 for a in alphas):
        raise ValueError(f"arguments must be integers >= 1, got {alphas!r}")
    num = 1
    for a in alphas:
        num *= math.factorial(a - 1)
    return Fraction(num, math.factorial(sum(alphas) - 1))


def simplex_moment(k: Sequence[int]) -> Fraction:
    """Flat average of x^k over the (d-1)-simplex, d = len(k).  Exact."""
    k = MultiIndex(k)
    if k.dimension < 2:
        raise ValueError("simplex moments need dimension >= 2")
    num = math.factorial(k.dimension - 1)
    for e in k:
        num *= math.factorial(e)
    return Fraction(num, math.factorial(k.dimension - 1 + k.degree))


def power_sum_target(n: int, k: int) -> Fraction:
    """Gamma(n)Gamma(k+1)/Gamma(n+k): the required normalized power sum.

    For an S_n-orbit multiset of s base points this is the value
    (1/(s*n)) * sum_i sum_j x_{ij}^k must take for each k = 1..t.
    """
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    return Fraction(math.factorial(n - 1) * math.factorial(k), math.factorial(n + k - 1))


def _monomial_at(coords: tuple, k: MultiIndex):
    v = coords[0] ** k[0] if k[0] else 1
    for c, e in zip(coords[1:], k[1:]):
        if e:
            v = v * c ** e
    return v


def monomial_average(design: DesignSet, k: Sequence[int]) -> Scalar:
    """Multiset average of the monomial x^k over the design.

    Exact designs give a Fraction, float designs a float.
    """
    k = MultiIndex(k)
    pts = design.expand()
    if k.dimension != design.d:
        raise ValueError("index dimension does not match design")
    if design.exact:
        total = Fraction(0)
        for p in pts:
            total += _monomial_at(p.coords, k)
        return total / len(pts)
    total = math.fsum(_monomial_at(p.as_floats(), k) for p in pts)
    return total / len(pts)


def symmetrized_average(design: DesignSet, k: Sequence[int], group: PermGroup) -> Scalar:
    """Average of the G-symmetrized monomial sum(pi in G) x^(pi(k)).

    The sum runs over group elements, so coinciding images of k are counted
    with multiplicity.  The matching simplex target is |G| * simplex_moment(k)
    because the flat moment is permutation invariant.
    """
    k = MultiIndex(k)
    vals = [monomial_average(design, permmod.apply(g, k)) for g in group.elements()]
    if design.exact:
        return sum(vals, Fraction(0))
    return math.fsum(vals)


@dataclass
class MomentReport:
    """One checked index: target vs observed average and their difference."""

    index: MultiIndex
    target: Scalar
    observed: Scalar
    residual: Scalar
    symmetrization: str = "none"

    @property
    def abs_residual(self) -> float:
        return abs(float(self.residual))

    def passes(self, tolerance: float, exact: bool) -> bool:
        if exact:
            return self.residual == 0
        return self.abs_residual <= tolerance

    def to_json(self) -> dict:
        return {
            "index": list(self.index),
            "target": scalar_to_json(self.target),
            "observed": scalar_to_json(self.observed),
            "residual": scalar_to_json(self.residual),
            "symmetrization": self.symmetrization,
        }
