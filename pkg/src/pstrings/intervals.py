"""The partial monoid of finite disjoint unions of bounded intervals.

An :class:`IntervalSet` is always canonical: components sorted, pairwise
disjoint, and no two neighbours whose union is connected. All endpoints
are ``Fraction``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .linalg import as_fraction


class Overlap(ValueError):
    """Raised when a raw interval family is not pairwise disjoint."""


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise ValueError(f"empty interval: {self}")

    _LITERAL = re.compile(r"^\s*([\[(])\s*([^,\s]+)\s*,\s*([^,\s]+)\s*([\])])\s*$")

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """Parse ``"[0,1)"``-style literals; endpoints as ints, decimals or ``p/q``."""
        m = cls._LITERAL.match(text)
        if not m:
            raise ValueError(f"bad interval literal: {text!r}")
        return cls(Fraction(m.group(2)), Fraction(m.group(3)), m.group(1) == "[", m.group(4) == "]")

    @classmethod
    def from_json(cls, obj) -> "Interval":
        if isinstance(obj, str):
            return cls.parse(obj)
        return cls(as_fraction(obj["lo"]), as_fraction(obj["hi"]), bool(obj["lo_closed"]), bool(obj["hi_closed"]))

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "lo_closed": self.lo_closed, "hi_closed": self.hi_closed}

    def __str__(self):
        return f"{'[' if self.lo_closed else '('}{self.lo},{self.hi}{']' if self.hi_closed else ')'}"

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_closed(self) -> bool:
        return self.lo_closed and self.hi_closed

    @property
    def is_open(self) -> bool:
        return not self.lo_closed and not self.hi_closed

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def tau(self) -> "Interval | None":
        """Reflect and toggle both endpoint types; ``None`` for a degenerate point."""
        if self.is_degenerate:
            return None
        return Interval(-self.hi, -self.lo, not self.hi_closed, not self.lo_closed)


def intersects(j: Interval, k: Interval) -> bool:
    if j.lo > k.lo or (j.lo == k.lo and not j.lo_closed):
        lo, lo_c = j.lo, j.lo_closed
    else:
        lo, lo_c = k.lo, k.lo_closed
    if j.hi < k.hi or (j.hi == k.hi and not j.hi_closed):
        hi, hi_c = j.hi, j.hi_closed
    else:
        hi, hi_c = k.hi, k.hi_closed
    return lo < hi or (lo == hi and lo_c and hi_c)


def _start_key(j: Interval):
    return (j.lo, not j.lo_closed, j.hi, j.hi_closed)


@dataclass(frozen=True)
class IntervalSet:
    components: tuple = ()

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __bool__(self):
        return bool(self.components)

    def __str__(self):
        return "{" + ", ".join(map(str, self.components)) + "}" if self.components else "{}"

    def __lt__(self, other: "IntervalSet"):
        return [_start_key(j) for j in self] < [_start_key(j) for j in other]

    @classmethod
    def parse(cls, *literals: str) -> "IntervalSet":
        return normalize([Interval.parse(s) for s in literals])

    def to_json(self) -> list:
        return [j.to_json() for j in self]

    def contains(self, x) -> bool:
        return any(j.contains(x) for j in self)

    @property
    def is_plus(self) -> bool:
        return all(j.is_closed for j in self)


EMPTY = IntervalSet(())


def _merge_sorted(comps: list[Interval], pointset: bool) -> tuple:
    out: list[Interval] = []
    for j in comps:
        if out:
            prev = out[-1]
            touching = prev.hi == j.lo and (prev.hi_closed != j.lo_closed or (pointset and prev.hi_closed))
            overlapping = pointset and (prev.hi > j.lo)
            if touching or overlapping:
                if j.hi > prev.hi or (j.hi == prev.hi and j.hi_closed):
                    hi, hi_c = j.hi, j.hi_closed
                else:
                    hi, hi_c = prev.hi, prev.hi_closed
                out[-1] = Interval(prev.lo, hi, prev.lo_closed, hi_c)
                continue
        out.append(j)
    return tuple(out)


def normalize(raw: Iterable[Interval]) -> IntervalSet:
    """Canonical form of a pairwise disjoint family; raises :class:`Overlap` otherwise."""
    comps = sorted(raw, key=_start_key)
    for i in range(len(comps)):
        for k in range(i + 1, len(comps)):
            if comps[k].lo > comps[i].hi:
                break
            if intersects(comps[i], comps[k]):
                raise Overlap(f"{comps[i]} and {comps[k]} overlap")
    return IntervalSet(_merge_sorted(comps, pointset=False))


def pointset_union(raw: Iterable[Interval]) -> IntervalSet:
    """Canonical form of the point-set union; overlaps are allowed."""
    return IntervalSet(_merge_sorted(sorted(raw, key=_start_key), pointset=True))


def disjoint(p: IntervalSet, q: IntervalSet) -> bool:
    return not any(intersects(j, k) for j in p for k in q)


def union_partial(sets: Sequence[IntervalSet]) -> IntervalSet | None:
    """Superimposition; ``None`` when the members are not pairwise disjoint."""
    comps = [j for p in sets for j in p]
    try:
        return normalize(comps)
    except Overlap:
        return None


def tau(p: IntervalSet) -> IntervalSet:
    """The homotopy inversion, componentwise.

    On sets where two open ends meet at a missing point the componentwise
    images share a closed point; the point-set union is returned there, and
    on such sets ``tau`` is not an involution.
    """
    comps = [t for t in (j.tau() for j in reversed(p.components)) if t is not None]
    return pointset_union(comps)


def alpha(s) -> Fraction:
    """Order-preserving bijection of Q onto (0, 1) inside Q."""
    s = as_fraction(s)
    return (1 + s / (1 + abs(s))) / 2


def alpha_t(s, t) -> Fraction:
    s, t = as_fraction(s), as_fraction(t)
    return (1 - t) * s + t * alpha(s)


@dataclass(frozen=True)
class Affine:
    slope: Fraction
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "slope", as_fraction(self.slope))
        object.__setattr__(self, "offset", as_fraction(self.offset))
        if self.slope <= 0:
            raise ValueError("affine pushforward needs a positive slope")

    def __call__(self, s):
        return self.slope * s + self.offset


@dataclass(frozen=True)
class AlphaT:
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", as_fraction(self.t))
        if not 0 <= self.t <= 1:
            raise ValueError("t must lie in [0, 1]")

    def __call__(self, s):
        return alpha_t(s, self.t)


def pushforward(p: IntervalSet, f: Callable) -> IntervalSet:
    """Image under a strictly increasing map, endpoint types kept."""
    if isinstance(f, (int, Fraction)):
        raise TypeError("pushforward needs a map")
    return IntervalSet(tuple(Interval(f(j.lo), f(j.hi), j.lo_closed, j.hi_closed) for j in p))


def h_t(p: IntervalSet, t) -> tuple[IntervalSet, IntervalSet]:
    q = pushforward(p, AlphaT(t))
    return q, tau(q)


def _check_unit(u) -> Fraction:
    u = as_fraction(u)
    if not 0 <= u <= 1:
        raise ValueError("parameter must lie in [0, 1]")
    return u


def vanish_from(q: IntervalSet, u) -> IntervalSet:
    """Slide ``q`` (inside the positive half-line) left and its mirror right by ``u``.

    Each component meets its mirror at the origin, fuses into a half-open
    interval around 0, and shrinks to nothing.
    """
    u = as_fraction(u)
    pieces = []
    for j in q:
        if j.lo <= 0:
            raise ValueError("vanish_from needs components in the open positive half-line")
        if u <= j.lo:
            pieces.append(Interval(j.lo - u, j.hi - u, j.lo_closed, j.hi_closed))
            pieces.append(Interval(u - j.hi, u - j.lo, not j.hi_closed, not j.lo_closed))
        elif u < j.hi:
            pieces.append(Interval(u - j.hi, j.hi - u, not j.hi_closed, j.hi_closed))
    return pointset_union(pieces)


def vanish_path(p: IntervalSet, u) -> IntervalSet:
    """The null-homotopy of the fused pair ``I(alpha)P u tau I(alpha)P`` at time ``u``."""
    u = _check_unit(u)
    return vanish_from(pushforward(p, alpha), u)


def split_closed(p: IntervalSet) -> tuple[IntervalSet, IntervalSet]:
    plus = tuple(j for j in p if j.is_closed)
    minus = tuple(j for j in p if not j.is_closed)
    return IntervalSet(plus), IntervalSet(minus)


def measure(p: IntervalSet) -> Fraction:
    return sum((j.length for j in p), Fraction(0))


def _breakpoints(sets: Iterable[IntervalSet]) -> list[Fraction]:
    pts = set()
    for p in sets:
        for j in p:
            pts.add(j.lo)
            pts.add(j.hi)
    return sorted(pts)


def multiplicity_distance(parts: Sequence[IntervalSet], target: IntervalSet) -> Fraction:
    """Integral of ``|sum_i 1_{parts[i]} - 1_target|`` (endpoint types ignored)."""
    pts = _breakpoints([*parts, target])
    total = Fraction(0)
    for a, b in zip(pts, pts[1:]):
        mid = (a + b) / 2
        mult = sum(1 for p in parts if p.contains(mid))
        total += abs(mult - (1 if target.contains(mid) else 0)) * (b - a)
    return total


def symdiff_distance(p: IntervalSet, q: IntervalSet) -> Fraction:
    return multiplicity_distance([p], q)


def euler_char(p: IntervalSet) -> int:
    """Compactly supported Euler characteristic: closed +1, open -1, half-open 0."""
    return sum(1 if j.is_closed else -1 if j.is_open else 0 for j in p)
