"""Constructions: orbit designs from polynomial roots and the two explicit
symmetric families.

The three-value family places (d-2) equal coordinates a/(d-2) next to a pair
(b, c) with a + b + c = 1 and matches the normalized power sums at k = 2, 3.
Eliminating b and c turns the k = 3 condition into a univariate cubic in a;
that cubic is derived here from the power-sum system itself by exact
polynomial algebra rather than copied from anywhere, and every root is
re-checked against the k = 3 equation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import DesignSet, PointVector
from .moments import power_sum_target
from .perm import PermGroup

ROOT_AGREEMENT_TOL = 1e-10

# cubic whose roots are the base coordinates of the 6-point orbit design on
# the 2-simplex; elementary symmetric values e1 = 1, e2 = 1/4, e3 = 1/60
SIX_POINT_CUBIC = (Fraction(60), Fraction(-60), Fraction(15), Fraction(-1))


def _horner(coeffs, x: float) -> float:
    v = 0.0
    for c in coeffs:
        v = v * x + c
    return v


def _dhorner(coeffs, x: float) -> float:
    n = len(coeffs) - 1
    v = 0.0
    for i, c in enumerate(coeffs[:-1]):
        v = v * x + c * (n - i)
    return v


def _newton_polish(coeffs, x: float, steps: int = 4) -> float:
    for _ in range(steps):
        dv = _dhorner(coeffs, x)
        if dv == 0.0:
            break
        x -= _horner(coeffs, x) / dv
    return x


def _roots_companion(coeffs) -> list[float]:
    cs = [float(c) for c in coeffs]
    rts = np.roots(cs)
    out = [float(r.real) for r in rts if abs(r.imag) <= 1e-8 * max(1.0, abs(r))]
    return sorted(_newton_polish(cs, r) for r in out)


def _roots_bisection(coeffs, lo: float, hi: float, grid: int = 4000) -> list[float]:
    cs = [float(c) for c in coeffs]
    xs = [lo + (hi - lo) * i / grid for i in range(grid + 1)]
    vals = [_horner(cs, x) for x in xs]
    roots = []
    for i in range(grid):
        a, b = xs[i], xs[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            roots.append(a)
            continue
        if fa * fb < 0:
            for _ in range(80):
                m = 0.5 * (a + b)
                fm = _horner(cs, m)
                if fm == 0.0:
                    a = b = m
                    break
                if fa * fm < 0:
                    b, fb = m, fm
                else:
                    a, fa = m, fm
            roots.append(_newton_polish(cs, 0.5 * (a + b)))
    if vals[-1] == 0.0:
        roots.append(xs[-1])
    return sorted(roots)


def real_polynomial_roots(coeffs) -> list[float]:
    """Real roots, ascending, by two independent routes that must agree.

    Route one is the companion-matrix eigenvalue solve, route two a sign-change
    scan with bisection; both finish with Newton polish.  Their results must
    match pairwise to 1e-10.  The scan can miss even-multiplicity roots; in
    that degenerate case the companion result is returned as-is.
    """
    cs = [float(c) for c in coeffs]
    if len(cs) < 2 or cs[0] == 0.0:
        raise ValueError("leading coefficient must be nonzero")
    bound = 1.0 + max(abs(c / cs[0]) for c in cs[1:])
    comp = _roots_companion(cs)
    bis = _roots_bisection(cs, -bound, bound)
    if len(comp) == len(bis):
        for x, y in zip(comp, bis):
            if abs(x - y) > ROOT_AGREEMENT_TOL:
                raise ArithmeticError(
                    f"root finders disagree: {x!r} vs {y!r}")
    return comp


def corollary_42_roots() -> PointVector:
    """The three roots of 60x^3 - 60x^2 + 15x - 1, sorted descending.

    They sum to 1 and are all positive, so they form a point of the
    2-simplex; its full 6-element permutation orbit is a 3-design.
    """
    roots = real_polynomial_roots(SIX_POINT_CUBIC)
    if len(roots) != 3:
        raise ArithmeticError("expected three real roots")
    roots = sorted(roots, reverse=True)
    if not all(0.0 < r < 1.0 for r in roots):
        raise ArithmeticError(f"roots left (0,1): {roots!r}")
    for r in roots:
        if abs(_horner([float(c) for c in SIX_POINT_CUBIC], r)) > 1e-12:
            raise ArithmeticError(f"root residual too large at {r!r}")
    return PointVector.float_point(roots)


def six_point_design() -> DesignSet:
    """Full S_3 orbit of the cubic roots: six points, a 3-design."""
    return DesignSet.orbit([corollary_42_roots()], PermGroup.symmetric(3))


def cyclic_design() -> DesignSet:
    """C_3 orbit of the cubic roots: three points.  A design only in the
    symmetry-restricted sense; see the counterexample report."""
    return DesignSet.orbit([corollary_42_roots()], PermGroup.cyclic(3))


def mirror_design() -> DesignSet:
    """The other C_3 coset: the three odd permutations of the roots."""
    base = corollary_42_roots()
    swapped = base.permuted((1, 0, 2))
    return DesignSet.orbit([swapped], PermGroup.cyclic(3))


@dataclass
class UniformExcessSolution:
    """One solution of the (a, b, ..., b) family: a = 1 - (d-1)b."""

    d: int
    a: float
    b: float
    proper: bool

    def base_point(self) -> PointVector:
        return PointVector.float_point([self.a] + [self.b] * (self.d - 1))

    def to_json(self) -> dict:
        return {"d": self.d, "a": self.a, "b": self.b, "proper": self.proper}


def uniform_excess_family(d: int, t: int = 2) -> list[UniformExcessSolution]:
    """Solve the two-value family at degree t <= 2.

    The k = 2 power-sum condition gives b = (1 +- 1/sqrt(d+1))/d; both signs
    are returned, larger a first.  For t = 1 the same two points are returned
    since any normalized two-value point already passes degree 1.  The
    centroid (all coordinates 1/d) is excluded by construction.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if t not in (1, 2):
        raise ValueError("family solves degrees up to 2")
    sols = []
    for sign in (+1, -1):
        b = (1 + sign / math.sqrt(d + 1)) / d
        a = 1 - (d - 1) * b
        proper = min(a, b) >= 0
        sols.append(UniformExcessSolution(d, a, b, proper))
    sols.sort(key=lambda s: -s.a)
    return sols


def branch_discriminant(d: int, a):
    """Discriminant of the quadratic for (b, c): nonnegative iff a is
    admissible.  Exact for Fraction input."""
    if d < 3:
        raise ValueError("three-value family needs d >= 3")
    if isinstance(a, Fraction):
        return -Fraction(d, d - 2) * a * a + 2 * a - Fraction(d - 3, d + 1)
    return -(d / (d - 2)) * a * a + 2 * a - (d - 3) / (d + 1)


def branch_b(d: int, a: float, sign: int = +1) -> float:
    """b = ((1 - a) +- sqrt(disc))/2, the two k=2-compatible choices."""
    disc = float(branch_discriminant(d, a))
    if disc < 0:
        raise ValueError(f"discriminant {disc!r} < 0: a={a!r} violates the "
                         f"admissible range for d={d}")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    return ((1.0 - float(a)) + sign * math.sqrt(disc)) / 2.0


def restriction_bound(d: int, a) -> bool:
    """|d(a-1)+2| <= sqrt(2(d-1)(d-2)/(d+1)), checked in squared form.

    Squaring keeps the test exact for rational a; it is equivalent to the
    discriminant above being nonnegative.
    """
    if d < 3:
        raise ValueError("three-value family needs d >= 3")
    if isinstance(a, (Fraction, int)):
        lhs = (d * (Fraction(a) - 1) + 2) ** 2
        rhs = Fraction(2 * (d - 1) * (d - 2), d + 1)
        return lhs <= rhs
    lhs = (d * (float(a) - 1.0) + 2.0) ** 2
    rhs = 2.0 * (d - 1) * (d - 2) / (d + 1)
    return lhs <= rhs


# ---------------------------------------------------------------------------
# exact univariate polynomial helpers (coefficient lists, ascending powers)

def _padd(p, q):
    n = max(len(p), len(q))
    p = list(p) + [Fraction(0)] * (n - len(p))
    q = list(q) + [Fraction(0)] * (n - len(q))
    return [x + y for x, y in zip(p, q)]


def _pmul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def _pscale(p, c):
    c = Fraction(c)
    return [x * c for x in p]


def three_value_cubic(d: int) -> tuple[int, int, int, int]:
    """The univariate cubic in a implied by the k = 2, 3 power-sum system.

    Derivation, all exact: with S = b + c = 1 - a and Q = b^2 + c^2 forced by
    the k = 2 condition, the product is P = (S^2 - Q)/2 and the k = 3
    condition reads a^3/(d-2)^2 + S^3 - 3PS = 6/((d+1)(d+2)).  Expanding in a
    and clearing denominators gives integer coefficients, returned descending
    (a^3 first).
    """
    if d < 3:
        raise ValueError("cubic form needs d >= 3")
    S = [Fraction(1), Fraction(-1)]                      # 1 - a
    Q = _padd([Fraction(2, d + 1)], _pscale([0, 0, 1], Fraction(-1, d - 2)))
    P = _pscale(_padd(_pmul(S, S), _pscale(Q, -1)), Fraction(1, 2))
    lhs = _pscale([0, 0, 0, 1], Fraction(1, (d - 2) ** 2))     # a^3/(d-2)^2
    lhs = _padd(lhs, _pmul(_pmul(S, S), S))                    # + S^3
    lhs = _padd(lhs, _pscale(_pmul(P, S), -3))                 # - 3 P S
    f = _padd(lhs, [Fraction(-6, (d + 1) * (d + 2))])
    while len(f) < 4:
        f.append(Fraction(0))
    lcm = 1
    for c in f:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in f]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g:
        ints = [c // g for c in ints]
    if ints[3] < 0:
        ints = [-c for c in ints]
    # descending order for the root finders
    return (ints[3], ints[2], ints[1], ints[0])


def printed_reference_cubic(d: int) -> tuple[int, int, int, int]:
    """An alternative closed form for the same cubic that does not check out:
    its roots fail the k = 3 power-sum condition.  Kept only so reports can
    show its residuals next to the derived one."""
    return (d * (d * d - 1),
            -3 * (d + 2) * (d * d - 1),
            3 * (d * d - 4) * (d - 1),
            -((d - 2) ** 2) * (d + 1))


def _power_sum_residual(d: int, coords: list[float], k: int) -> float:
    target = float(power_sum_target(d, k))
    return math.fsum(c ** k for c in coords) / d - target


@dataclass
class FamilySolution:
    """One admissible root of the three-value cubic with its branch pair.

    b carries the plus branch and c the minus branch; the swapped assignment
    is the same multiset, so solutions are deduplicated this way.
    """

    d: int
    a: float
    b: float
    c: float
    branch: str
    satisfies_restriction: bool
    proper: bool

    def base_point(self) -> PointVector:
        if self.d == 2:
            return PointVector.float_point([self.b, self.c])
        u = self.a / (self.d - 2)
        return PointVector.float_point([u] * (self.d - 2) + [self.b, self.c])

    @property
    def orbit_size(self) -> int:
        """Distinct permutations of the base point (multiplicity formula)."""
        groups: list[list[float]] = []
        for v in self.base_point().coords:
            for grp in groups:
                if abs(grp[0] - v) <= 1e-12:
                    grp.append(v)
                    break
            else:
                groups.append([v])
        n = math.factorial(self.d)
        for grp in groups:
            n //= math.factorial(len(grp))
        return n

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "branch": self.branch,
            "satisfies_restriction": self.satisfies_restriction,
            "proper": self.proper,
            "orbit_size": self.orbit_size,
            "base_point": self.base_point().to_json(),
        }


def _solve_dim_two() -> list[FamilySolution]:
    # on the 1-simplex the pair (b, 1-b) with b = (1 + 1/sqrt(3))/2 matches
    # the power sums through k = 3; there is no spread coordinate, a = 0
    b = (1 + 1 / math.sqrt(3)) / 2
    c = 1 - b
    sol = FamilySolution(2, 0.0, b, c, "plus", True, True)
    for k in (2, 3):
        if abs(_power_sum_residual(2, [b, c], k)) > 1e-12:
            raise ArithmeticError("dimension-2 closed form failed its check")
    return [sol]


def solve_three_value_family(d: int) -> list[FamilySolution]:
    """All admissible solutions of the three-value family in dimension d.

    Roots of the derived cubic are kept when the branch discriminant is
    nonnegative (equivalently when the restriction inequality holds); each
    kept root is validated against the k = 2 and k = 3 power sums.  Sorted
    by ascending a.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if d == 2:
        return _solve_dim_two()
    cubic = three_value_cubic(d)
    roots = real_polynomial_roots(cubic)
    sols = []
    for a in roots:
        disc = branch_discriminant(d, a)
        if disc < -1e-13:
            continue
        disc = max(disc, 0.0)
        total = 1.0 - a
        b = (total + math.sqrt(disc)) / 2.0
        c = (total - math.sqrt(disc)) / 2.0
        sol = FamilySolution(d, a, b, c, "plus", restriction_bound(d, a),
                             min(a / (d - 2), b, c) >= -1e-12)
        coords = [a / (d - 2)] * (d - 2) + [b, c]
        for k in (2, 3):
            if abs(_power_sum_residual(d, coords, k)) > 1e-10:
                raise ArithmeticError(
                    f"root a={a!r} fails the k={k} power sum for d={d}")
        sols.append(sol)
    if not sols:
        raise ArithmeticError(f"no admissible root found for d={d}")
    sols.sort(key=lambda sol: sol.a)
    return sols


def distinct_family_solutions(d: int) -> list[FamilySolution]:
    """Family solutions deduplicated by coordinate multiset.

    For d = 3 the base point has no repeated slot, so the three cubic roots
    describe one and the same orbit; keep a single representative per orbit,
    the one with the largest a, and sort by descending a.
    """
    sols = solve_three_value_family(d)
    sols.sort(key=lambda sol: -sol.a)
    kept: list[FamilySolution] = []
    seen: list[tuple[float, ...]] = []
    for sol in sols:
        key = tuple(sorted(sol.base_point().as_floats()))
        if any(all(abs(x - y) <= 1e-9 for x, y in zip(key, prev)) for prev in seen):
            continue
        seen.append(key)
        kept.append(sol)
    return kept


# dimensions the tables command reports: proper solutions for small d,
# improper ones continuing past the properness cutoff
TABLE_PROPER_DIMS = tuple(range(3, 10))
TABLE_IMPROPER_DIMS = (6, 7, 8, 9, 16, 25, 100)


def build_design(solution: FamilySolution, group: PermGroup | None = None) -> DesignSet:
    """Orbit design set for a family solution, full symmetric group unless a
    subgroup is requested."""
    if group is None:
        group = PermGroup.symmetric(solution.d)
    return DesignSet.orbit([solution.base_point()], group)
