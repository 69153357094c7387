"""Permutations of coordinate positions and the groups acting on multi-indices.

A permutation is a tuple ``pi`` of length d holding images: ``pi[i]`` is the
position that feeds slot ``i`` under the action ``apply(pi, k)[i] = k[pi[i]]``.
Everything is 0-indexed internally; JSON interfaces use 1-indexed images.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

TY_PERM = tuple[int, ...]

# 10! elements; symmetric-group enumeration and generated closures refuse to
# go past this.
GROUP_ENUMERATION_CAP = 3628800


class CapExceeded(RuntimeError):
    """Raised when a group enumeration or multiset expansion would blow up."""


def is_perm(p) -> bool:
    """``p`` is a valid permutation of 0..len(p)-1."""
    return sorted(p) == list(range(len(p)))


def identity(d: int) -> TY_PERM:
    return tuple(range(d))


def compose(p: TY_PERM, q: TY_PERM) -> TY_PERM:
    """(p o q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def inverse(p: TY_PERM) -> TY_PERM:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def parity(p: TY_PERM) -> int:
    """0 for even permutations, 1 for odd."""
    seen = [False] * len(p)
    par = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j, cyc = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            cyc += 1
        par ^= (cyc - 1) & 1
    return par


def apply(pi: TY_PERM, k):
    """Permute the entries of ``k``: result[i] = k[pi[i]].

    Accepts any indexable sequence; returns the same kind of tuple that came
    in (plain tuple, or a tuple subclass such as MultiIndex).
    """
    if len(pi) != len(k):
        raise ValueError(f"permutation of length {len(pi)} applied to length {len(k)}")
    out = tuple(k[pi[i]] for i in range(len(pi)))
    if type(k) is tuple:
        return out
    try:
        return type(k)(out)
    except TypeError:
        return out


@dataclass(frozen=True)
class PermGroup:
    """A permutation group on d coordinate positions.

    kind is one of "symmetric", "cyclic", "generated".  Cyclic means the
    group of the d coordinate shifts; generated means the closure of the
    given generators.
    """

    d: int
    kind: str
    generators: tuple[TY_PERM, ...] = field(default=())

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be positive")
        if self.kind not in ("symmetric", "cyclic", "generated"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        for g in self.generators:
            if len(g) != self.d or not is_perm(g):
                raise ValueError(f"bad generator {g!r} for d={self.d}")

    @classmethod
    def symmetric(cls, d: int) -> "PermGroup":
        return cls(d, "symmetric")

    @classmethod
    def cyclic(cls, d: int) -> "PermGroup":
        return cls(d, "cyclic")

    @classmethod
    def generated(cls, d: int, generators) -> "PermGroup":
        return cls(d, "generated", tuple(tuple(g) for g in generators))

    @property
    def label(self) -> str:
        if self.kind == "symmetric":
            return f"S{self.d}"
        if self.kind == "cyclic":
            return f"C{self.d}"
        return f"G{self.d}<{len(self.generators)} gens>"

    def elements(self) -> tuple[TY_PERM, ...]:
        """All group elements, identity first, deterministic order."""
        if self.kind == "symmetric":
            if math.factorial(self.d) > GROUP_ENUMERATION_CAP:
                raise CapExceeded(
                    f"S_{self.d} has {math.factorial(self.d)} elements, "
                    f"cap is {GROUP_ENUMERATION_CAP}")
            # itertools gives lexicographic order, identity first
            return tuple(itertools.permutations(range(self.d)))
        if self.kind == "cyclic":
            d = self.d
            return tuple(tuple((i + j) % d for i in range(d)) for j in range(d))
        return self._closure()

    def _closure(self) -> tuple[TY_PERM, ...]:
        # breadth-first closure, level contents sorted so order is reproducible
        ident = identity(self.d)
        seen = {ident}
        out = [ident]
        frontier = [ident]
        while frontier:
            new = set()
            for p in frontier:
                for g in self.generators:
                    q = compose(g, p)
                    if q not in seen:
                        new.add(q)
            if len(seen) + len(new) > GROUP_ENUMERATION_CAP:
                raise CapExceeded("generated group exceeds enumeration cap")
            frontier = sorted(new)
            seen |= new
            out.extend(frontier)
        return tuple(out)

    @property
    def order(self) -> int:
        if self.kind == "symmetric":
            return math.factorial(self.d)
        if self.kind == "cyclic":
            return self.d
        return len(self.elements())

    def __contains__(self, p) -> bool:
        p = tuple(p)
        if self.kind == "symmetric":
            return is_perm(p) and len(p) == self.d
        return p in set(self.elements())


def orbit(group: PermGroup, k) -> frozenset:
    """The set of distinct images of ``k`` under the group."""
    return frozenset(apply(p, k) for p in group.elements())


def symmetric_orbit_size(k) -> int:
    """|S_d-orbit of k| = d! / prod(multiplicity!) without enumerating S_d."""
    counts: dict = {}
    for v in k:
        counts[v] = counts.get(v, 0) + 1
    n = math.factorial(len(k))
    for c in counts.values():
        n //= math.factorial(c)
    return n


def is_invariant(group: PermGroup, k) -> bool:
    """True iff the G-orbit of ``k`` equals the full S_d-orbit.

    The G-orbit is always a subset of the S_d-orbit, so set equality reduces
    to comparing sizes; the S_d side comes from the multinomial formula.
    """
    return len(orbit(group, k)) == symmetric_orbit_size(tuple(k))


def coset_representatives(group: PermGroup) -> tuple[TY_PERM, ...]:
    """Representatives of the left cosets pi*G in S_d, identity first.

    Greedy sweep through S_d in lexicographic order: take a permutation if no
    previously chosen representative covers it.
    """
    d = group.d
    if math.factorial(d) > GROUP_ENUMERATION_CAP:
        raise CapExceeded(f"coset enumeration needs S_{d}")
    elems = group.elements()
    covered = set()
    reps = []
    for p in itertools.permutations(range(d)):
        if p in covered:
            continue
        reps.append(p)
        for g in elems:
            covered.add(compose(p, g))
    return tuple(reps)


def perm_to_json(p: TY_PERM) -> list[int]:
    """1-indexed image list used by the file and HTTP interfaces."""
    return [i + 1 for i in p]


def perm_from_json(images: list[int]) -> TY_PERM:
    p = tuple(i - 1 for i in images)
    if not is_perm(p):
        raise ValueError(f"not a permutation (1-indexed): {images!r}")
    return p
