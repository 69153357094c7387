"""Symmetrized polynomials, homogenization and exact span arithmetic.

Everything here works in the quotient of the polynomial ring by the relation
sum(x) = 1.  Comparing polynomials of different degrees therefore means
multiplying the lower-degree one by powers of sum(x) until the degrees agree;
distinct homogeneous polynomials stay distinct in the quotient, so span
questions reduce to exact linear algebra over the rationals on monomial
coefficient vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import perm as permmod
from .core import MultiIndex, PointVector
from .perm import PermGroup


@dataclass(frozen=True)
class SymPoly:
    """A homogeneous polynomial with rational coefficients, stored sparsely.

    terms maps exponent tuples to nonzero Fractions; every exponent tuple has
    length d and degree ``degree``.
    """

    d: int
    degree: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def from_dict(cls, d: int, degree: int, terms: dict) -> "SymPoly":
        clean = {e: Fraction(c) for e, c in terms.items() if c != 0}
        for e in clean:
            if len(e) != d or sum(e) != degree or any(v < 0 for v in e):
                raise ValueError(f"term {e!r} not homogeneous of degree {degree} in {d} vars")
        return cls(d, degree, tuple(sorted(clean.items(), reverse=True)))

    @classmethod
    def zero(cls, d: int, degree: int) -> "SymPoly":
        return cls(d, degree, ())

    @classmethod
    def monomial(cls, k: Sequence[int], coeff=1) -> "SymPoly":
        k = MultiIndex(k)
        return cls.from_dict(k.dimension, k.degree, {tuple(k): Fraction(coeff)})

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SymPoly") -> "SymPoly":
        if (self.d, self.degree) != (other.d, other.degree):
            raise ValueError("degree or dimension mismatch")
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, Fraction(0)) + c
        return SymPoly.from_dict(self.d, self.degree, out)

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "SymPoly":
        c = Fraction(c)
        return SymPoly.from_dict(self.d, self.degree, {e: cf * c for e, cf in self.terms})

    def times_sum(self, m: int = 1) -> "SymPoly":
        """Multiply by (x_1 + ... + x_d)^m, expanded exactly."""
        terms = self.as_dict()
        for _ in range(m):
            new: dict = {}
            for e, c in terms.items():
                for j in range(self.d):
                    e2 = e[:j] + (e[j] + 1,) + e[j + 1:]
                    new[e2] = new.get(e2, Fraction(0)) + c
            terms = new
        return SymPoly.from_dict(self.d, self.degree + m, terms)

    def evaluate(self, point):
        """Value at a point; exact for rational input.  Accepts a PointVector
        or a plain coordinate sequence."""
        coords = point.coords if isinstance(point, PointVector) else tuple(point)
        total = None
        for e, c in self.terms:
            v = c if all(isinstance(x, Fraction) for x in coords) else float(c)
            for x, k in zip(coords, e):
                if k:
                    v = v * x ** k
            total = v if total is None else total + v
        if total is None:
            return Fraction(0) if all(isinstance(x, Fraction) for x in coords) else 0.0
        return total


def symmetrized_monomial(group: PermGroup, k: Sequence[int]) -> SymPoly:
    """sum over pi in G of x^(pi(k)), multiplicities kept.

    The coefficient of an exponent vector e equals the number of group
    elements mapping k to e, which is |G| / |orbit| on each orbit element.
    """
    k = MultiIndex(k)
    if k.dimension != group.d:
        raise ValueError("index dimension does not match group")
    terms: dict = {}
    for g in group.elements():
        e = tuple(permmod.apply(g, k))
        terms[e] = terms.get(e, Fraction(0)) + 1
    return SymPoly.from_dict(group.d, k.degree, terms)


def homogenize_to(p: SymPoly, degree: int) -> SymPoly:
    """Lift to the requested degree by multiplying with powers of sum(x)."""
    if degree < p.degree:
        raise ValueError(f"cannot homogenize degree {p.degree} down to {degree}")
    return p.times_sum(degree - p.degree)


def _eliminate(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place fraction Gaussian elimination; returns (rows, pivot column list).

    Partial pivoting picks the entry of largest absolute value, which for
    exact arithmetic only affects intermediate coefficient growth.
    """
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        best, best_i = None, None
        for i in range(r, len(rows)):
            v = rows[i][col]
            if v != 0 and (best is None or abs(v) > best):
                best, best_i = abs(v), i
        if best_i is None:
            continue
        rows[r], rows[best_i] = rows[best_i], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def exact_rank(vectors: Iterable[Sequence[Fraction]]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    _, pivots = _eliminate(rows)
    return len(pivots)


def in_span(candidate: SymPoly, basis: Sequence[SymPoly],
            adjoin_constant: bool = False) -> tuple[bool, list[Fraction] | None]:
    """Exact membership of ``candidate`` in the linear span of ``basis``.

    All polynomials are first homogenized to the maximum degree present.
    With adjoin_constant the constant polynomial, homogenized to that degree
    (i.e. (sum x)^t), joins the basis; its coefficient is reported last.
    Returns (membership, coefficients or None).
    """
    polys = list(basis)
    if not polys:
        raise ValueError("empty basis")
    if any(b.d != candidate.d for b in polys):
        raise ValueError("dimension mismatch")
    top = max([candidate.degree] + [b.degree for b in polys])
    cand = homogenize_to(candidate, top)
    polys = [homogenize_to(b, top) for b in polys]
    if adjoin_constant:
        polys.append(homogenize_to(SymPoly.monomial((0,) * candidate.d), top))

    support = sorted({e for p in polys for e, _ in p.terms} | {e for e, _ in cand.terms})
    col_of = {e: i for i, e in enumerate(support)}
    width = len(support) + 1
    rows = []
    for j, p in enumerate(polys):
        # row j: coefficients of basis poly j over the support, tagged with
        # unit vector so elimination tracks the combination
        row = [Fraction(0)] * width
        for e, c in p.terms:
            row[col_of[e]] = c
        rows.append(row)
    target = [Fraction(0)] * width
    for e, c in cand.terms:
        target[col_of[e]] = c

    # Solve A^T w = target by eliminating on the stacked [coeffs | marker]
    # system: append the identity tail to recover coefficients.
    n = len(rows)
    aug = [[rows[j][i] for j in range(n)] + [target[i]] for i in range(len(support))]
    aug, pivots = _eliminate(aug)
    coeffs = [Fraction(0)] * n
    for r_i, col in enumerate(pivots):
        if col < n:
            coeffs[col] = aug[r_i][n]
        elif aug[r_i][n] != 0:
            return False, None
    # rows beyond the pivots are all-zero by construction
    # verify: the combination must reproduce the candidate exactly
    acc = SymPoly.zero(candidate.d, top)
    for c, p in zip(coeffs, polys):
        if c != 0:
            acc = acc + p.scale(c)
    if acc.terms != cand.terms:
        return False, None
    return True, coeffs


def partitions(n: int, max_parts: int) -> Iterator[tuple[int, ...]]:
    """Partitions of n into at most max_parts parts, lexicographically
    ascending on the padded tuple: (1,1,..) first, (n,) last."""

    def gen(rem: int, cap: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield tuple(acc)
            return
        lo = -(-rem // (max_parts - len(acc))) if max_parts > len(acc) else rem + 1
        for first in range(max(lo, 1), min(rem, cap) + 1):
            if len(acc) < max_parts:
                yield from gen(rem - first, first, acc + [first])

    # build descending-part tuples in ascending lex order: iterate leading
    # part from small to large, bounded below so the remainder still fits
    yield from gen(n, n, [])


def pad_partition(lam: Sequence[int], d: int) -> MultiIndex:
    lam = tuple(lam)
    return MultiIndex(lam + (0,) * (d - len(lam)))


def _add_box(shape: tuple[int, ...], max_rows: int) -> list[tuple[int, ...]]:
    out = []
    s = list(shape)
    for i in range(len(s)):
        if i == 0 or s[i - 1] > s[i]:
            out.append(tuple(s[:i] + [s[i] + 1] + s[i + 1:]))
    if len(s) < max_rows:
        out.append(tuple(s + [1]))
    return out


def young_path_counts(lam: Sequence[int], t: int, max_rows: int) -> dict[tuple[int, ...], int]:
    """Number of one-box-at-a-time growth paths from lam to each partition of t.

    This is the arithmetic behind the bookkeeping identities relating a
    degree-s symmetrized component to the degree-t components it feeds after
    repeated multiplication by sum(x): each step every index k contributes
    its distinct canonical children k + e_j once.  The counts are not the
    exact expansion coefficients (see decomposition_table, which reports
    both), but their matrix has the same rank profile.
    """
    lam = tuple(v for v in lam if v > 0)
    cur = {lam: 1}
    for _ in range(t - sum(lam)):
        new: dict = {}
        for sh, c in cur.items():
            for sh2 in _add_box(sh, max_rows):
                new[sh2] = new.get(sh2, 0) + c
        cur = new
    return cur


@dataclass
class DecompositionTable:
    """Expansions of low-degree symmetrized components over degree-t ones.

    rows: source partitions (all partitions of degrees 1..t-1, then the
    all-ones column partition when it fits in d rows).  columns: partitions
    of exactly t.  path_matrix holds the growth-path counts; exact_matrix
    the true rational coefficients of homogenize(F_G(row), t) in the basis
    {F_G(col)} whenever that expansion exists (always for the full symmetric
    group), else None for that row.
    """

    d: int
    t: int
    group_label: str
    rows: list[tuple[int, ...]]
    columns: list[tuple[int, ...]]
    path_matrix: list[list[int]]
    exact_matrix: list[list[Fraction] | None]
    rank_paths: int
    rank_exact: int

    def to_csv(self) -> str:
        def name(p):
            return "(" + ",".join(map(str, p)) + ")"

        lines = ["row," + ",".join(name(c) for c in self.columns) + ",convention"]
        for lam, counts in zip(self.rows, self.path_matrix):
            lines.append(name(lam) + "," + ",".join(str(v) for v in counts) + ",paths")
        for lam, coeffs in zip(self.rows, self.exact_matrix):
            if coeffs is None:
                vals = ["-"] * len(self.columns)
            else:
                vals = [str(c) for c in coeffs]
            lines.append(name(lam) + "," + ",".join(vals) + ",exact")
        lines.append(f"rank,{self.rank_paths},paths")
        lines.append(f"rank,{self.rank_exact},exact")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "t": self.t,
            "group": self.group_label,
            "rows": [list(r) for r in self.rows],
            "columns": [list(c) for c in self.columns],
            "path_matrix": self.path_matrix,
            "exact_matrix": [
                None if row is None else [str(c) for c in row] for row in self.exact_matrix
            ],
            "rank_paths": self.rank_paths,
            "rank_exact": self.rank_exact,
        }


def decomposition_table(d: int, t: int, group: PermGroup | None = None) -> DecompositionTable:
    """Build the degree-t decomposition table for dimension d.

    Rows cover every partition of each degree below t plus the single-column
    partition (1,...,1) of degree t when t <= d; that row closes the system
    and is the identity expansion.  Two conventions are emitted side by side
    because they answer different questions: path counts describe which
    components appear under repeated multiplication by sum(x), the exact
    matrix gives the true linear-combination coefficients.
    """
    if group is None:
        group = PermGroup.symmetric(d)
    if group.d != d:
        raise ValueError("group dimension mismatch")
    if t < 1:
        raise ValueError("t must be >= 1")
    columns = sorted(partitions(t, d))
    rows: list[tuple[int, ...]] = []
    for s in range(1, t):
        rows.extend(sorted(partitions(s, d)))
    if t <= d:
        rows.append((1,) * t)
    if not rows:
        raise ValueError(f"no rows for d={d}, t={t}")

    path_matrix = []
    for lam in rows:
        counts = young_path_counts(lam, t, d)
        path_matrix.append([counts.get(mu, 0) for mu in columns])

    basis = [symmetrized_monomial(group, pad_partition(mu, d)) for mu in columns]
    exact_matrix: list[list[Fraction] | None] = []
    for lam in rows:
        cand = symmetrized_monomial(group, pad_partition(lam, d))
        ok, coeffs = in_span(cand, basis)
        exact_matrix.append(coeffs if ok else None)

    rank_paths = exact_rank([[Fraction(v) for v in row] for row in path_matrix])
    rank_exact = exact_rank([row for row in exact_matrix if row is not None])
    return DecompositionTable(d, t, group.label, rows, columns,
                              path_matrix, exact_matrix, rank_paths, rank_exact)
