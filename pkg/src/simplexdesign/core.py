"""Core data types: exact scalars, multi-indices, points and design sets.

Scalars live in one of two modes.  Exact mode uses ``fractions.Fraction``
(arbitrary precision, always reduced); float mode is for coordinates that
come out of numeric root finding and cannot be written down exactly.  The
mode is decided per point and a design is exact only if every point is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Iterator, Sequence, Union

from . import perm
from .perm import CapExceeded, PermGroup

ExactScalar = Fraction
Scalar = Union[Fraction, float]

# float-mode points must sum to 1 within this
FLOAT_SUM_TOL = 1e-12
# float-mode properness allows this much numeric dust below zero
FLOAT_PROPER_TOL = 1e-12
# refuse to materialize orbit multisets larger than this
EXPANSION_CAP = 1_000_000


def parse_scalar(value) -> Scalar:
    """Coerce a JSON-ish value to a scalar.

    Strings "p/q" (or "p") and ints become exact Fractions; floats stay
    floats.  Anything else is an error.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a scalar: {value!r}")
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return value
    raise ValueError(f"not a scalar: {value!r}")


def scalar_to_json(x: Scalar):
    """Fractions serialize as "p/q" strings, floats as numbers."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return float(x)


def format_float(x: float) -> str:
    """Fixed 17-significant-digit rendering used by CSV and text output."""
    return f"{x:.17g}"


class MultiIndex(tuple):
    """A tuple of non-negative integer exponents, one per coordinate."""

    def __new__(cls, exponents: Iterable[int]):
        ex = tuple(exponents)
        if len(ex) == 0:
            raise ValueError("multi-index needs at least one entry")
        for e in ex:
            if not isinstance(e, int) or isinstance(e, bool) or e < 0:
                raise ValueError(f"bad exponent {e!r}")
        return super().__new__(cls, ex)

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def dimension(self) -> int:
        return len(self)

    def canonical(self) -> "MultiIndex":
        """Exponents sorted non-increasingly; the orbit representative."""
        return MultiIndex(sorted(self, reverse=True))

    def is_canonical(self) -> bool:
        return all(self[i] >= self[i + 1] for i in range(len(self) - 1))


def canonicalize(k: Sequence[int]) -> MultiIndex:
    return MultiIndex(k).canonical()


def enumerate_multi_indices(d: int, t: int, exact_degree: bool = True) -> Iterator[MultiIndex]:
    """All multi-indices of dimension d with degree == t (or <= t).

    Yields in lexicographic descending order, so (t,0,...,0) comes first.
    """
    if d < 1 or t < 0:
        raise ValueError("need d >= 1 and t >= 0")

    def rec(dim: int, budget: int):
        if dim == 1:
            if exact_degree:
                yield (budget,)
            else:
                for v in range(budget, -1, -1):
                    yield (v,)
            return
        for first in range(budget, -1, -1):
            for rest in rec(dim - 1, budget - first):
                yield (first,) + rest

    for ex in rec(d, t):
        yield MultiIndex(ex)


def _as_exact(values) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class PointVector:
    """A point of the simplex (or a pseudo-point with negative entries).

    coords are all Fraction (exact mode) or all float.  The coordinate sum
    must be 1: exactly in exact mode, within FLOAT_SUM_TOL otherwise.
    """

    coords: tuple[Scalar, ...]
    exact: bool

    def __post_init__(self):
        if len(self.coords) < 1:
            raise ValueError("empty point")
        if self.exact:
            if any(not isinstance(c, Rational) for c in self.coords):
                raise ValueError("exact point with non-rational coordinate")
            if sum(self.coords) != 1:
                raise ValueError(f"exact point sums to {sum(self.coords)}, not 1")
        else:
            if abs(math.fsum(self.coords) - 1.0) > FLOAT_SUM_TOL:
                raise ValueError(f"point sums to {math.fsum(self.coords)!r}, not 1")

    @classmethod
    def make(cls, values) -> "PointVector":
        """Exact if every value parses to a rational, float otherwise."""
        parsed = [parse_scalar(v) for v in values]
        if all(isinstance(p, Fraction) for p in parsed):
            return cls(tuple(parsed), True)
        return cls(tuple(float(p) for p in parsed), False)

    @classmethod
    def exact_point(cls, values) -> "PointVector":
        return cls(_as_exact(values), True)

    @classmethod
    def float_point(cls, values) -> "PointVector":
        return cls(tuple(float(v) for v in values), False)

    @property
    def d(self) -> int:
        return len(self.coords)

    def is_proper(self) -> bool:
        """All coordinates non-negative (tiny float dust tolerated)."""
        if self.exact:
            return all(c >= 0 for c in self.coords)
        return all(c >= -FLOAT_PROPER_TOL for c in self.coords)

    def permuted(self, pi: perm.TY_PERM) -> "PointVector":
        return PointVector(tuple(self.coords[pi[i]] for i in range(len(pi))), self.exact)

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.coords)

    def to_json(self) -> list:
        return [scalar_to_json(c) for c in self.coords]


@dataclass(frozen=True)
class DesignSet:
    """A finite multiset of simplex points, explicit or given as a group orbit.

    Orbit mode stores base points plus a group; the multiset is the union of
    the group orbits counted with multiplicity (|G| copies per base point,
    coinciding images kept as repeats).
    """

    d: int
    points: tuple[PointVector, ...] = ()
    base_points: tuple[PointVector, ...] = ()
    group: PermGroup | None = None

    def __post_init__(self):
        if self.group is None:
            if not self.points or self.base_points:
                raise ValueError("explicit design needs points and no base points")
        else:
            if not self.base_points or self.points:
                raise ValueError("orbit design needs base points and no explicit points")
            if self.group.d != self.d:
                raise ValueError("group dimension mismatch")
        for p in list(self.points) + list(self.base_points):
            if p.d != self.d:
                raise ValueError("point dimension mismatch")

    @classmethod
    def explicit(cls, points: Sequence[PointVector]) -> "DesignSet":
        points = tuple(points)
        return cls(points[0].d, points=points)

    @classmethod
    def orbit(cls, base_points: Sequence[PointVector], group: PermGroup) -> "DesignSet":
        base = tuple(base_points)
        return cls(base[0].d, base_points=base, group=group)

    @property
    def mode(self) -> str:
        return "orbit" if self.group is not None else "explicit"

    @property
    def exact(self) -> bool:
        pts = self.points if self.group is None else self.base_points
        return all(p.exact for p in pts)

    @property
    def size(self) -> int:
        """Multiset cardinality, without materializing the orbit."""
        if self.group is None:
            return len(self.points)
        return len(self.base_points) * self.group.order

    def expand(self, cap: int = EXPANSION_CAP) -> tuple[PointVector, ...]:
        """The full multiset.  Orbit designs enumerate group elements per base
        point; repeated images are kept as repeats."""
        if self.size > cap:
            raise CapExceeded(f"expansion of {self.size} points exceeds cap {cap}")
        return self._expanded

    @cached_property
    def _expanded(self) -> tuple[PointVector, ...]:
        if self.group is None:
            return self.points
        out = []
        for b in self.base_points:
            for g in self.group.elements():
                out.append(b.permuted(g))
        return tuple(out)

    def distinct_points(self) -> list[tuple[PointVector, int]]:
        """Deduplicated view: (point, multiplicity) pairs, first-seen order."""
        counts: dict[tuple, int] = {}
        rep: dict[tuple, PointVector] = {}
        for p in self.expand():
            key = p.coords
            counts[key] = counts.get(key, 0) + 1
            rep.setdefault(key, p)
        return [(rep[k], c) for k, c in counts.items()]

    def is_proper(self) -> bool:
        pts = self.points if self.group is None else self.base_points
        return all(p.is_proper() for p in pts)
