"""Partial abelian monoids with group action, and their axiom checkers.

Every monoid defines n-ary summability directly (``summable``); the checkers
validate partition coherence instead of assuming it. ``sum`` returns ``None``
for an undefined sum.
"""

from __future__ import annotations

import itertools
import random
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Sequence

from . import intervals as iv
from .group_rep import FiniteGroup, OrthogonalRep, PointedGSet
from .linalg import dot, matmul, rref, transpose


class NotInCarrier(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    """Smash summability search ran out of budget (distinct from 'undefined')."""


class Basepoint:
    """The basepoint of smash and wedge constructions."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "0"

    def __reduce__(self):
        return (Basepoint, ())


BASE = Basepoint()


def _sort_key(x):
    return repr(x)


class PartialMonoid(ABC):
    """Common interface. ``group`` is ``None`` for a trivial action."""

    zero: Hashable
    group: FiniteGroup | None = None

    @abstractmethod
    def contains(self, a) -> bool: ...

    @abstractmethod
    def _summable(self, tup: tuple) -> bool: ...

    @abstractmethod
    def _sum(self, tup: tuple): ...

    def elements(self) -> list | None:
        """The carrier when finite, else ``None``."""
        return None

    def act(self, g: int, a):
        return a

    def random_element(self, rng: random.Random):
        return rng.choice(self.elements())

    def random_tuple(self, rng: random.Random, n: int) -> tuple:
        return tuple(self.random_element(rng) for _ in range(n))

    def _check(self, tup) -> tuple:
        tup = tuple(tup)
        for a in tup:
            if not self.contains(a):
                raise NotInCarrier(f"{a!r} is not in the carrier")
        return tup

    def summable(self, tup: Iterable) -> bool:
        tup = self._check(tup)
        if len(tup) <= 1:
            return True
        return self._summable(tup)

    def sum(self, tup: Iterable):
        tup = self._check(tup)
        if not tup:
            return self.zero
        if len(tup) == 1:
            return tup[0]
        if not self._summable(tup):
            return None
        return self._sum(tup)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def label_json(self, a):
        return a

    def label_from_json(self, obj):
        return obj


def sum_partial(m: PartialMonoid, tup: Iterable):
    return m.sum(tup)


# -- group subsets -----------------------------------------------------------


@dataclass(eq=False)
class GroupSubsetPM(PartialMonoid):
    """A subset containing 0 of ``Z^rank x prod Z/m_i``; tuples sum when the total stays inside.

    ``action[g]`` maps each subset element to its image; it must come from
    group automorphisms for the axioms to hold.
    """

    rank: int
    moduli: tuple
    subset: tuple
    group: FiniteGroup | None = None
    action: dict | None = None

    def __post_init__(self):
        self.moduli = tuple(self.moduli)
        self.subset = tuple(self._reduce(tuple(a)) for a in self.subset)
        self._members = set(self.subset)
        if len(self._members) != len(self.subset):
            raise ValueError("duplicate subset elements")
        if self.zero not in self._members:
            raise ValueError("the subset must contain 0")

    @classmethod
    def integers(cls, values: Iterable[int], **kw) -> "GroupSubsetPM":
        return cls(1, (), tuple((v,) for v in values), **kw)

    @classmethod
    def cyclic_group(cls, n: int) -> "GroupSubsetPM":
        return cls(0, (n,), tuple((i,) for i in range(n)))

    @classmethod
    def finite_abelian(cls, moduli: Sequence[int]) -> "GroupSubsetPM":
        subset = tuple(itertools.product(*(range(m) for m in moduli)))
        return cls(0, tuple(moduli), subset)

    @property
    def zero(self):
        return (0,) * (self.rank + len(self.moduli))

    def _reduce(self, a: tuple) -> tuple:
        if len(a) != self.rank + len(self.moduli):
            raise ValueError(f"{a!r} has wrong length")
        return a[: self.rank] + tuple(x % m for x, m in zip(a[self.rank :], self.moduli))

    def add(self, a, b):
        return self._reduce(tuple(x + y for x, y in zip(a, b)))

    def total(self, tup):
        out = self.zero
        for a in tup:
            out = self.add(out, a)
        return out

    def contains(self, a) -> bool:
        return a in self._members

    def elements(self):
        return list(self.subset)

    def _summable(self, tup):
        return self.total(tup) in self._members

    def _sum(self, tup):
        return self.total(tup)

    def act(self, g, a):
        if self.action is None:
            return a
        return self.action[g][a]

    def label_json(self, a):
        return a[0] if len(a) == 1 else list(a)

    def label_from_json(self, obj):
        a = (obj,) if isinstance(obj, int) else tuple(obj)
        return self._reduce(a)


# -- pointed sets ------------------------------------------------------------


@dataclass(eq=False)
class PointedSetPM(PartialMonoid):
    """Folding: a tuple sums iff at most one entry is off the basepoint."""

    pset: PointedGSet

    @property
    def zero(self):
        return self.pset.basepoint

    @property
    def group(self):
        return self.pset.group

    def contains(self, a):
        return a in self.pset.index

    def elements(self):
        return list(self.pset.elements)

    def _summable(self, tup):
        return sum(1 for a in tup if a != self.zero) <= 1

    def _sum(self, tup):
        return next((a for a in tup if a != self.zero), self.zero)

    def act(self, g, a):
        return self.pset.act(g, a)

    def label_json(self, a):
        return list(a) if isinstance(a, tuple) else a

    def label_from_json(self, obj):
        return _tuplify(obj)


def _tuplify(obj):
    if isinstance(obj, list):
        return tuple(_tuplify(x) for x in obj)
    return obj


# -- Grassmannian over Q -----------------------------------------------------


@dataclass(eq=False)
class GrassmannQ(PartialMonoid):
    """Subspaces of Q^n as RREF row tuples; orthogonal families sum to their direct sum."""

    n: int
    rep: OrthogonalRep | None = None

    def __post_init__(self):
        if self.rep is not None and self.rep.dim != self.n:
            raise ValueError("representation dimension must equal n")

    @property
    def zero(self):
        return ()

    @property
    def group(self):
        return self.rep.group if self.rep is not None else None

    def span(self, *vectors) -> tuple:
        return rref([tuple(Fraction(x) for x in v) for v in vectors]) if vectors else ()

    def contains(self, a):
        if a == ():
            return True
        return isinstance(a, tuple) and all(len(r) == self.n for r in a) and rref(a) == a

    def _summable(self, tup):
        for i, j in itertools.combinations(range(len(tup)), 2):
            if any(dot(u, v) != 0 for u in tup[i] for v in tup[j]):
                return False
        return True

    def _sum(self, tup):
        rows = [r for w in tup for r in w]
        return rref(rows) if rows else ()

    def act(self, g, a):
        if self.rep is None or not a:
            return a
        return rref(matmul(a, transpose(self.rep.matrices[g])))

    def random_element(self, rng):
        k = rng.randint(0, self.n)
        vecs = [tuple(Fraction(rng.randint(-2, 2)) for _ in range(self.n)) for _ in range(k)]
        return rref(vecs) if vecs else ()

    def random_tuple(self, rng, n):
        if rng.random() < 0.5:
            return super().random_tuple(rng, n)
        # cut a random orthogonal basis into the n slots so the tuple is summable
        basis = _random_orthogonal_basis(rng, self.n)
        slots = [[] for _ in range(n)]
        for b in basis:
            k = rng.randint(-1, n - 1)
            if k >= 0:
                slots[k].append(b)
        return tuple(rref(s) if s else () for s in slots)

    def label_json(self, a):
        return [[str(x) for x in r] for r in a]

    def label_from_json(self, obj):
        return self.span(*obj)


def _random_orthogonal_basis(rng, n):
    out = []
    while len(out) < n:
        v = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        for b in out:
            c = dot(v, b) / dot(b, b)
            v = [x - c * y for x, y in zip(v, b)]
        if any(v):
            out.append(tuple(v))
    return out


# -- intervals -----------------------------------------------------------------


@dataclass(eq=False)
class IntervalMonoid(PartialMonoid):
    """I(R) under superimposition; trivial action, infinite carrier."""

    grid: int = 2
    span: int = 6

    @property
    def zero(self):
        return iv.EMPTY

    def contains(self, a):
        return isinstance(a, iv.IntervalSet)

    def _summable(self, tup):
        return iv.union_partial(tup) is not None

    def _sum(self, tup):
        return iv.union_partial(tup)

    def random_element(self, rng):
        return random_interval_set(rng, max_components=3, grid=self.grid, span=self.span)

    def random_tuple(self, rng, n):
        if rng.random() < 0.5 or n == 0:
            return super().random_tuple(rng, n)
        whole = random_interval_set(rng, max_components=2 * n, grid=self.grid, span=self.span)
        slots = [[] for _ in range(n)]
        for j in whole:
            for piece in _random_cut(rng, j):
                slots[rng.randrange(n)].append(piece)
        return tuple(iv.normalize(s) for s in slots)

    def label_json(self, a):
        return a.to_json()

    def label_from_json(self, obj):
        return iv.normalize([iv.Interval.from_json(x) for x in obj])


def _random_cut(rng, j: iv.Interval):
    """Split an interval at an interior point into two half-open-at-the-cut pieces."""
    if j.is_degenerate or rng.random() < 0.5:
        return [j]
    c = j.lo + j.length * Fraction(rng.randint(1, 3), 4)
    left_closed = rng.random() < 0.5
    return [iv.Interval(j.lo, c, j.lo_closed, left_closed), iv.Interval(c, j.hi, not left_closed, j.hi_closed)]


def random_interval_set(
    rng: random.Random, max_components: int = 3, grid: int = 2, span: int = 6, general_position: bool = False
) -> iv.IntervalSet:
    """Random canonical set with endpoints on a ``1/grid`` lattice in ``[-span, span]``.

    ``general_position`` forbids shared endpoints (no two components touch),
    so no pair of open ends meets at a missing point.
    """
    k = rng.randint(0, max_components)
    pts = sorted(rng.sample(range(-span * grid, span * grid + 1), 2 * k))
    comps = []
    for a, b in zip(pts[::2], pts[1::2]):
        comps.append(iv.Interval(Fraction(a, grid), Fraction(b, grid), rng.random() < 0.5, rng.random() < 0.5))
    if not general_position and len(comps) >= 2 and rng.random() < 0.3:
        # make a touching pair with complementary types, which normalize merges
        i = rng.randrange(len(comps) - 1)
        a, b = comps[i], comps[i + 1]
        comps[i + 1] = iv.Interval(a.hi, b.hi, not a.hi_closed, b.hi_closed)
    return iv.normalize(comps)


# -- smash products ------------------------------------------------------------


@dataclass(eq=False)
class SmashPM(PartialMonoid):
    """``M ^ N``: basepoint or pairs ``(m, n)`` with both nonzero.

    Summability is decided by breadth-first rewriting of the multiset with
    the two distributivity schemas; the first reachable single element is
    the sum.
    """

    left: PartialMonoid
    right: PartialMonoid
    budget: int = 20_000
    _memo: dict = field(default_factory=dict, repr=False)

    @property
    def zero(self):
        return BASE

    @property
    def group(self):
        return self.left.group or self.right.group

    def contains(self, a):
        if a is BASE:
            return True
        return (
            isinstance(a, tuple)
            and len(a) == 2
            and self.left.contains(a[0])
            and self.right.contains(a[1])
            and not self.left.is_zero(a[0])
            and not self.right.is_zero(a[1])
        )

    def elements(self):
        le, ri = self.left.elements(), self.right.elements()
        if le is None or ri is None:
            return None
        return [BASE] + [(m, n) for m in le if not self.left.is_zero(m) for n in ri if not self.right.is_zero(n)]

    def pair(self, m, n):
        if self.left.is_zero(m) or self.right.is_zero(n):
            return BASE
        return (m, n)

    def act(self, g, a):
        if a is BASE:
            return a
        return self.pair(self.left.act(g, a[0]), self.right.act(g, a[1]))

    def _moves(self, state: tuple) -> Iterator[tuple]:
        """States reachable by one contraction."""
        for coord, other, pm in ((1, 0, self.left), (0, 1, self.right)):
            groups: dict = {}
            for i, a in enumerate(state):
                groups.setdefault(a[coord], []).append(i)
            for key, idx in groups.items():
                for r in range(2, len(idx) + 1):
                    for sub in itertools.combinations(idx, r):
                        parts = tuple(state[i][other] for i in sub)
                        if not pm.summable(parts):
                            continue
                        s = pm.sum(parts)
                        new = self.pair(s, key) if coord == 1 else self.pair(key, s)
                        rest = [a for i, a in enumerate(state) if i not in sub]
                        if new is not BASE:
                            rest.append(new)
                        yield tuple(sorted(rest, key=_sort_key))

    def reductions(self, tup, exhaustive: bool = True) -> set:
        """Terminal single results (``BASE`` for an empty multiset) reachable from ``tup``."""
        start = tuple(sorted((a for a in self._check(tup) if a is not BASE), key=_sort_key))
        key = (start, exhaustive)
        if key in self._memo:
            return self._memo[key]
        results = set()
        seen = {start}
        queue = deque([start])
        while queue:
            state = queue.popleft()
            if len(state) <= 1:
                results.add(state[0] if state else BASE)
                if not exhaustive:
                    break
                continue
            for nxt in self._moves(state):
                if nxt not in seen:
                    if len(seen) >= self.budget:
                        raise SearchBudgetExceeded(f"smash search exceeded {self.budget} states")
                    seen.add(nxt)
                    queue.append(nxt)
        self._memo[key] = results
        return results

    def _summable(self, tup):
        return bool(self.reductions(tup, exhaustive=False))

    def _sum(self, tup):
        (res,) = self.reductions(tup, exhaustive=False)
        return res

    def random_element(self, rng):
        while True:
            a = self.pair(self.left.random_element(rng), self.right.random_element(rng))
            if a is not BASE or rng.random() < 0.2:
                return a

    def random_tuple(self, rng, n):
        if rng.random() < 0.5 or n == 0:
            return super().random_tuple(rng, n)
        # share one coordinate so a distributivity schema applies
        if rng.random() < 0.5:
            d = self.right.random_element(rng)
            return tuple(self.pair(c, d) for c in self.left.random_tuple(rng, n))
        c = self.left.random_element(rng)
        return tuple(self.pair(c, d) for d in self.right.random_tuple(rng, n))

    def label_json(self, a):
        if a is BASE:
            return None
        return [self.left.label_json(a[0]), self.right.label_json(a[1])]

    def label_from_json(self, obj):
        if obj is None:
            return BASE
        return self.pair(self.left.label_from_json(obj[0]), self.right.label_from_json(obj[1]))


def smash_summable(m: SmashPM, tup) -> bool:
    return m.summable(tup)


def smash_sum(m: SmashPM, tup):
    return m.sum(tup)


def interval_monoid() -> IntervalMonoid:
    return IntervalMonoid()


def string_labels(m: PartialMonoid) -> SmashPM:
    """The label monoid ``I(R) ^ M`` of string configurations."""
    return SmashPM(IntervalMonoid(), m)


def is_string_labels(m: PartialMonoid) -> bool:
    return isinstance(m, SmashPM) and isinstance(m.left, IntervalMonoid)


def homotopy_inversion(label):
    """``tau ^ 1`` on an element ``(P, a)`` of ``I(R) ^ M``."""
    if label is BASE:
        return label
    p, a = label
    t = iv.tau(p)
    return (t, a) if t else BASE


# -- X ^ M for a pointed G-set X -------------------------------------------------


@dataclass(eq=False)
class WedgeLabelPM(PartialMonoid):
    """``X ^ M`` with the folding structure on ``X``.

    By distributivity, the particles over each ``x`` must sum in ``M``, and
    at most one of these partial sums may be nonzero (the others collapse
    to the basepoint). When ``M`` has no nontrivial zero sums this is just
    "all ``x`` agree and the ``a`` sum".
    """

    pset: PointedGSet
    inner: PartialMonoid

    @property
    def zero(self):
        return BASE

    @property
    def group(self):
        return self.pset.group or self.inner.group

    def pair(self, x, a):
        if x == self.pset.basepoint or self.inner.is_zero(a):
            return BASE
        return (x, a)

    def contains(self, a):
        if a is BASE:
            return True
        return (
            isinstance(a, tuple)
            and len(a) == 2
            and a[0] in self.pset.index
            and a[0] != self.pset.basepoint
            and self.inner.contains(a[1])
            and not self.inner.is_zero(a[1])
        )

    def elements(self):
        inner = self.inner.elements()
        if inner is None:
            return None
        return [BASE] + [(x, a) for x in self.pset.non_base for a in inner if not self.inner.is_zero(a)]

    def _group_sums(self, tup) -> list | None:
        groups: dict = {}
        for a in tup:
            if a is not BASE:
                groups.setdefault(a[0], []).append(a[1])
        out = []
        for x in sorted(groups, key=_sort_key):
            s = self.inner.sum(groups[x])
            if s is None:
                return None
            if not self.inner.is_zero(s):
                out.append((x, s))
        return out if len(out) <= 1 else None

    def _summable(self, tup):
        return self._group_sums(tup) is not None

    def _sum(self, tup):
        out = self._group_sums(tup)
        return out[0] if out else BASE

    def act(self, g, a):
        if a is BASE:
            return a
        return self.pair(self.pset.act(g, a[0]), self.inner.act(g, a[1]))

    def random_element(self, rng):
        x = rng.choice(self.pset.elements)
        return self.pair(x, self.inner.random_element(rng))

    def random_tuple(self, rng, n):
        if rng.random() < 0.5 or n == 0:
            return super().random_tuple(rng, n)
        x = rng.choice(self.pset.non_base) if self.pset.non_base else self.pset.basepoint
        return tuple(self.pair(x, a) for a in self.inner.random_tuple(rng, n))

    def label_json(self, a):
        if a is BASE:
            return None
        x = list(a[0]) if isinstance(a[0], tuple) else a[0]
        return [x, self.inner.label_json(a[1])]

    def label_from_json(self, obj):
        if obj is None:
            return BASE
        return self.pair(_tuplify(obj[0]), self.inner.label_from_json(obj[1]))


# -- explicit tables -------------------------------------------------------------


@dataclass(eq=False)
class TablePM(PartialMonoid):
    """A finite partial monoid with explicit n-ary sums.

    ``sums`` maps a sorted tuple of nonzero elements (length >= 2) to its
    sum; absent keys are not summable. Zeros in a tuple are ignored.
    """

    carrier: tuple
    zero_element: Hashable
    sums: dict
    group: FiniteGroup | None = None
    action: dict | None = None

    def __post_init__(self):
        self.carrier = tuple(self.carrier)
        if self.zero_element not in self.carrier:
            raise ValueError("zero must be in the carrier")

    @property
    def zero(self):
        return self.zero_element

    @classmethod
    def from_binary(cls, carrier, zero, add: dict, max_arity: int = 6, **kw) -> "TablePM":
        """Close a commutative binary table: a multiset sums iff pairwise contraction reaches one element."""
        nonzero = [a for a in carrier if a != zero]
        binary = {}
        for (a, b), s in add.items():
            binary[tuple(sorted((a, b), key=_sort_key))] = s
        sums: dict = {}
        memo: dict = {}

        def contract(state: tuple) -> set:
            if state in memo:
                return memo[state]
            if len(state) <= 1:
                return {state[0] if state else zero}
            out = set()
            for i, j in itertools.combinations(range(len(state)), 2):
                key = tuple(sorted((state[i], state[j]), key=_sort_key))
                if key not in binary:
                    continue
                s = binary[key]
                rest = [a for k, a in enumerate(state) if k not in (i, j)]
                if s != zero:
                    rest.append(s)
                out |= contract(tuple(sorted(rest, key=_sort_key)))
            memo[state] = out
            return out

        for n in range(2, max_arity + 1):
            for combo in itertools.combinations_with_replacement(sorted(nonzero, key=_sort_key), n):
                results = contract(combo)
                if len(results) > 1:
                    raise ValueError(f"binary table is not associative at {combo}: {results}")
                if results:
                    sums[combo] = next(iter(results))
        return cls(tuple(carrier), zero, sums, **kw)

    def contains(self, a):
        return a in self.carrier

    def elements(self):
        return list(self.carrier)

    def _key(self, tup):
        return tuple(sorted((a for a in tup if a != self.zero), key=_sort_key))

    def _summable(self, tup):
        key = self._key(tup)
        return len(key) <= 1 or key in self.sums

    def _sum(self, tup):
        key = self._key(tup)
        if not key:
            return self.zero
        if len(key) == 1:
            return key[0]
        return self.sums[key]

    def act(self, g, a):
        if self.action is None:
            return a
        return self.action[g][a]


# -- checkers --------------------------------------------------------------------


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """All set partitions, blocks ordered by first element."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first], *part]
        for i in range(len(part)):
            yield part[:i] + [[first, *part[i]]] + part[i + 1 :]


@dataclass
class AxiomReport:
    monoid: str
    mode: str
    tuples_checked: int = 0
    violations: list = field(default_factory=list)
    max_violations: int = 50

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, axiom: str, tup, detail: str = ""):
        if len(self.violations) < self.max_violations:
            self.violations.append({"axiom": axiom, "tuple": repr(tup), "detail": detail})

    def to_json(self) -> dict:
        return {
            "monoid": self.monoid,
            "mode": self.mode,
            "tuples_checked": self.tuples_checked,
            "passed": self.passed,
            "violations": self.violations,
        }


def _tuples(m: PartialMonoid, max_arity: int, budget: int, samples: int, seed: int):
    carrier = m.elements()
    if carrier is not None and sum(len(carrier) ** n for n in range(max_arity + 1)) <= budget:
        return "exhaustive", (t for n in range(max_arity + 1) for t in itertools.product(carrier, repeat=n))
    rng = random.Random(seed)

    def gen():
        for _ in range(samples):
            yield m.random_tuple(rng, rng.randint(0, max_arity))

    return "random", gen()


def check_tuple(m: PartialMonoid, tup: tuple, report: AxiomReport) -> None:
    if len(tup) == 0:
        if not m.summable(()) or m.sum(()) != m.zero:
            report.add("(1)", tup, "empty tuple must sum to zero")
        return
    if len(tup) == 1:
        if not m.summable(tup) or m.sum(tup) != tup[0]:
            report.add("(2)", tup, "singleton must sum to itself")
        return
    whole = m.summable(tup)
    total = m.sum(tup) if whole else None
    for perm in (tup[::-1], tup[1:] + tup[:1]):
        if m.summable(perm) != whole or (whole and m.sum(perm) != total):
            report.add("commutativity", tup, f"reordering {perm!r} disagrees")
            break
    for part in set_partitions(list(range(len(tup)))):
        blocks = [tuple(tup[i] for i in b) for b in part]
        if not all(m.summable(b) for b in blocks):
            continue
        block_sums = tuple(m.sum(b) for b in blocks)
        outer = m.summable(block_sums)
        if outer != whole:
            report.add("(3)", tup, f"partition {part}: whole summable={whole}, block sums summable={outer}")
        elif whole and m.sum(block_sums) != total:
            report.add("(3)", tup, f"partition {part}: totals differ")


def check_axioms(
    m: PartialMonoid, max_arity: int = 4, budget: int = 100_000, samples: int = 10_000, seed: int = 0
) -> AxiomReport:
    """Empty sum, singleton sums, commutativity and partition coherence on every tuple."""
    if max_arity < 2:
        raise ValueError("max_arity must be at least 2")
    mode, tuples = _tuples(m, max_arity, budget, samples, seed)
    report = AxiomReport(type(m).__name__, mode)
    for tup in tuples:
        report.tuples_checked += 1
        check_tuple(m, tup, report)
    return report


def equivariance_check(
    m: PartialMonoid, group: FiniteGroup | None = None, max_arity: int = 3, budget: int = 100_000,
    samples: int = 2_000, seed: int = 0,
) -> AxiomReport:
    """Check that the action fixes zero, is an action, and commutes with summability and sums."""
    group = group or m.group
    mode, tuples = _tuples(m, max_arity, budget, samples, seed)
    report = AxiomReport(type(m).__name__, mode)
    if group is None:
        return report
    for g in group.elements:
        if m.act(g, m.zero) != m.zero:
            report.add("zero", (), f"element {g} moves zero")
    for tup in tuples:
        report.tuples_checked += 1
        for a in tup:
            if not m.contains(m.act(group.identity, a)) or m.act(group.identity, a) != a:
                report.add("action", (a,), "identity acts nontrivially")
        for g in group.elements:
            moved = tuple(m.act(g, a) for a in tup)
            if not all(m.contains(a) for a in moved):
                report.add("carrier", tup, f"element {g} leaves the carrier")
                continue
            if m.summable(tup) != m.summable(moved):
                report.add("summability", tup, f"element {g} changes summability")
            elif m.summable(tup) and m.act(g, m.sum(tup)) != m.sum(moved):
                report.add("sum", tup, f"element {g} does not commute with the sum")
        if len(tup) == 1:
            for g in group.elements:
                for h in group.elements:
                    if m.act(g, m.act(h, tup[0])) != m.act(group.mul[g][h], tup[0]):
                        report.add("action", tup, f"action law fails at ({g}, {h})")
    return report
