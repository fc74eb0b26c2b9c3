"""Finite groups, exact orthogonal representations, universe stages, pointed G-sets.

Group elements are the indices ``0..n-1`` of ``FiniteGroup.names``; every
table in this module is indexed that way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Sequence

from .linalg import Matrix, Vector, block_diag, identity, is_orthogonal, matmul, matvec, nullspace

MAX_SUBGROUP_SEARCH = 24


class NotASubgroup(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its full multiplication table."""

    names: tuple
    mul: tuple  # mul[a][b] = index of a*b
    name: str = ""

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise ValueError("a group has at least one element")
        if len(self.mul) != n or any(len(row) != n for row in self.mul):
            raise ValueError("multiplication table must be n x n")
        for row in self.mul:
            for x in row:
                if not 0 <= x < n:
                    raise ValueError(f"table entry {x} out of range")
        r = range(n)
        if any(self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]] for a in r for b in r for c in r):
            raise ValueError("multiplication is not associative")
        e = self.identity  # raises if none
        for a in r:
            if e not in self.mul[a]:
                raise ValueError(f"element {self.names[a]!r} has no inverse")

    @classmethod
    def from_table(cls, elements: Sequence[Hashable], mul: Sequence[Sequence[Hashable]], name: str = "") -> "FiniteGroup":
        """Build from a table whose entries are element ids (not indices)."""
        index = {x: i for i, x in enumerate(elements)}
        if len(index) != len(elements):
            raise ValueError("duplicate element ids")
        try:
            table = tuple(tuple(index[x] for x in row) for row in mul)
        except KeyError as exc:
            raise ValueError(f"unknown element in table: {exc}") from None
        return cls(tuple(elements), table, name)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls(tuple(range(n)), tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), f"Z/{n}")

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls.cyclic(1)

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        perms = list(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        # (p*q)(x) = p(q(x))
        table = tuple(tuple(index[tuple(p[q[x]] for x in range(n))] for q in perms) for p in perms)
        return cls(tuple(perms), table, f"S{n}")

    @classmethod
    def product(cls, g: "FiniteGroup", h: "FiniteGroup") -> "FiniteGroup":
        pairs = [(a, b) for a in range(g.order) for b in range(h.order)]
        index = {p: i for i, p in enumerate(pairs)}
        table = tuple(
            tuple(index[(g.mul[a][c], h.mul[b][d])] for (c, d) in pairs) for (a, b) in pairs
        )
        names = tuple((g.names[a], h.names[b]) for a, b in pairs)
        return cls(names, table, f"{g.name}x{h.name}")

    @property
    def order(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def identity(self) -> int:
        for e in range(self.order):
            if all(self.mul[e][a] == a and self.mul[a][e] == a for a in range(self.order)):
                return e
        raise ValueError("no two-sided identity")

    @cached_property
    def inv(self) -> tuple:
        e = self.identity
        return tuple(self.mul[a].index(e) for a in range(self.order))

    def product_of(self, *gs: int) -> int:
        out = self.identity
        for g in gs:
            out = self.mul[out][g]
        return out

    def is_subgroup(self, subset) -> bool:
        s = set(subset)
        if self.identity not in s:
            return False
        return all(self.mul[a][b] in s for a in s for b in s) and all(self.inv[a] in s for a in s)

    def check_subgroup(self, subset) -> frozenset:
        s = frozenset(subset)
        if not s or not all(0 <= x < self.order for x in s) or not self.is_subgroup(s):
            raise NotASubgroup(f"{sorted(s)} is not a subgroup of {self.name or 'G'}")
        return s

    def closure(self, gens) -> frozenset:
        out = {self.identity, *gens}
        frontier = list(out)
        while frontier:
            new = []
            for a in frontier:
                for b in list(out):
                    for c in (self.mul[a][b], self.mul[b][a]):
                        if c not in out:
                            out.add(c)
                            new.append(c)
            frontier = new
        return frozenset(out)


def subgroups(g: FiniteGroup, bound: int = MAX_SUBGROUP_SEARCH) -> list[frozenset]:
    """All subgroups, sorted by (order, sorted elements)."""
    if g.order > bound:
        raise ValueError(f"group order {g.order} exceeds subgroup search bound {bound}")
    found = {g.closure([a]) for a in g.elements}
    frontier = set(found)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(found):
                c = g.closure(a | b)
                if c not in found:
                    new.add(c)
        found |= new
        frontier = new
    return sorted(found, key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class OrthogonalRep:
    group: FiniteGroup
    dim: int
    matrices: tuple  # matrices[g]: dim x dim rational matrix

    def check(self) -> list[str]:
        """Return violated laws (empty when the rep is orthogonal and a homomorphism)."""
        problems = []
        g = self.group
        if self.matrices[g.identity] != identity(self.dim):
            problems.append("identity does not act trivially")
        for a in g.elements:
            if not is_orthogonal(self.matrices[a]):
                problems.append(f"matrix of {g.names[a]!r} is not orthogonal")
        for a in g.elements:
            for b in g.elements:
                if matmul(self.matrices[a], self.matrices[b]) != self.matrices[g.mul[a][b]]:
                    problems.append(f"homomorphism law fails at ({g.names[a]!r}, {g.names[b]!r})")
        return problems


def act_vector(rep: OrthogonalRep, g: int, v: Sequence) -> Vector:
    if len(v) != rep.dim:
        raise ValueError(f"dimension mismatch: rep has dim {rep.dim}, vector has {len(v)}")
    return matvec(rep.matrices[g], tuple(v))


def _regular_matrix(g: FiniteGroup, a: int) -> Matrix:
    n = g.order
    rows = [[Fraction(0)] * n for _ in range(n)]
    for h in range(n):
        rows[g.mul[a][h]][h] = Fraction(1)  # e_h -> e_{ah}
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class UniverseStage:
    """``copies`` copies of the regular representation, coordinates copy-major.

    Coordinate ``c * |G| + h`` is the basis vector ``e_h`` of copy ``c``.
    """

    group: FiniteGroup
    copies: int
    rep: OrthogonalRep = field(compare=False, repr=False)

    @property
    def dim(self) -> int:
        return self.copies * self.group.order

    def act(self, g: int, v: Sequence) -> Vector:
        return act_vector(self.rep, g, v)

    def pad(self, v: Sequence, target: "UniverseStage") -> Vector:
        """Stabilization: include this stage into a larger one by zero-padding."""
        if target.group != self.group or target.copies < self.copies:
            raise ValueError("can only pad into a larger stage of the same group")
        if len(v) != self.dim:
            raise ValueError(f"dimension mismatch: stage has dim {self.dim}, vector has {len(v)}")
        return tuple(v) + (Fraction(0),) * (target.dim - self.dim)

    def doubled(self) -> "UniverseStage":
        return regular_rep(self.group, 2 * self.copies)


def regular_rep(g: FiniteGroup, k: int) -> UniverseStage:
    if k < 1:
        raise ValueError("need at least one copy of the regular representation")
    mats = tuple(block_diag([_regular_matrix(g, a)] * k) for a in g.elements)
    return UniverseStage(g, k, OrthogonalRep(g, k * g.order, mats))


def fixed_subspace(rep: OrthogonalRep, h) -> Matrix:
    """RREF basis of the vectors fixed by every element of the subgroup ``h``."""
    sub = rep.group.check_subgroup(h)
    eye = identity(rep.dim)
    rows = []
    for a in sorted(sub):
        m = rep.matrices[a]
        rows.extend(tuple(x - y for x, y in zip(r, e)) for r, e in zip(m, eye))
    return nullspace(rows, rep.dim)


@dataclass(frozen=True)
class PointedGSet:
    """A finite pointed set with a basepoint-fixing action.

    ``action[g][i]`` is the index of ``g . elements[i]``. ``group`` may be
    ``None`` for a plain pointed set (trivial action).
    """

    elements: tuple
    basepoint: Hashable
    group: FiniteGroup | None = None
    action: tuple | None = None

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate elements")
        if self.basepoint not in self.elements:
            raise ValueError("basepoint must be an element")

    @classmethod
    def plain(cls, elements, basepoint) -> "PointedGSet":
        return cls(tuple(elements), basepoint)

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    @property
    def non_base(self) -> tuple:
        return tuple(x for x in self.elements if x != self.basepoint)

    def act(self, g: int, x):
        if self.action is None:
            return x
        return self.elements[self.action[g][self.index[x]]]

    def check(self) -> list[str]:
        if self.action is None:
            return []
        problems = []
        g = self.group
        for a in g.elements:
            if self.act(a, self.basepoint) != self.basepoint:
                problems.append(f"{g.names[a]!r} moves the basepoint")
        for x in self.elements:
            if self.act(g.identity, x) != x:
                problems.append(f"identity moves {x!r}")
            for a in g.elements:
                for b in g.elements:
                    if self.act(a, self.act(b, x)) != self.act(g.mul[a][b], x):
                        problems.append(f"action law fails at ({g.names[a]!r}, {g.names[b]!r}, {x!r})")
        return problems

    def wedge(self, other: "PointedGSet") -> "PointedGSet":
        """``self v other``: elements ``(0, x)``, ``(1, y)`` and a shared basepoint ``"*"``."""
        if (self.group is None) != (other.group is None) or (self.group and self.group != other.group):
            raise ValueError("wedge needs a common group")
        elems = ("*",) + tuple((0, x) for x in self.non_base) + tuple((1, y) for y in other.non_base)
        action = None
        if self.group is not None:
            idx = {x: i for i, x in enumerate(elems)}

            def img(g, e):
                if e == "*":
                    return e
                side, x = e
                return (side, (self if side == 0 else other).act(g, x))

            action = tuple(tuple(idx[img(g, e)] for e in elems) for g in self.group.elements)
        return PointedGSet(elems, "*", self.group, action)

    def smash(self, other: "PointedGSet") -> "PointedGSet":
        """``self ^ other`` with diagonal action; non-base elements are pairs."""
        group = self.group or other.group
        elems = ("*",) + tuple((x, y) for x in self.non_base for y in other.non_base)
        action = None
        if group is not None:
            idx = {x: i for i, x in enumerate(elems)}
            action = tuple(
                tuple(idx[e if e == "*" else (self.act(g, e[0]), other.act(g, e[1]))] for e in elems)
                for g in group.elements
            )
        return PointedGSet(elems, "*", group, action)


def coset_gset(g: FiniteGroup, h) -> PointedGSet:
    """``G/H_+``: left cosets (as sorted element tuples) plus basepoint ``"*"``."""
    sub = g.check_subgroup(h)
    cosets = []
    seen = set()
    for a in g.elements:
        c = tuple(sorted(g.mul[a][x] for x in sub))
        if c not in seen:
            seen.add(c)
            cosets.append(c)
    cosets.sort()
    elems = ("*",) + tuple(cosets)
    idx = {c: i for i, c in enumerate(elems)}

    def translate(a, c):
        if c == "*":
            return c
        return tuple(sorted(g.mul[a][x] for x in c))

    action = tuple(tuple(idx[translate(a, c)] for c in elems) for a in g.elements)
    return PointedGSet(elems, "*", g, action)


def coset_of(g: FiniteGroup, h, a: int) -> tuple:
    return tuple(sorted(g.mul[a][x] for x in h))
