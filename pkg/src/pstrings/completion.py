"""Component monoids, their group completions, and low-degree homology of nerves.

Everything here is exact integer arithmetic; Grothendieck groups are read
off Smith normal forms of relation matrices.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from . import intervals as iv
from .configuration import LabeledConfig, hopf_mul
from .monoids import PartialMonoid, _sort_key
from .snf import invariant_factors, smith_normal_form

DEFAULT_ARITY = 4
MAX_NERVE_CARRIER = 5
MAX_P_BOUND = 4


class BoundExceeded(ValueError):
    pass


class InfiniteCarrier(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroup:
    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.rank < 0 or any(d < 2 for d in self.torsion):
            raise ValueError("rank must be >= 0 and invariant factors >= 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def from_invariants(cls, ngens: int, factors: Iterable[int]) -> "AbelianGroup":
        """Cokernel of a map into ``Z^ngens`` with the given nonzero invariant factors."""
        factors = sorted(abs(d) for d in factors if d)
        return cls(ngens - len(factors), tuple(d for d in factors if d > 1))

    @property
    def order(self) -> int | None:
        if self.rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def abelian_invariants(moduli: Sequence[int]) -> AbelianGroup:
    """Invariant factors of ``prod Z/m_i`` (via the SNF of the diagonal matrix)."""
    if not moduli:
        return AbelianGroup(0)
    diag = [[m if i == j else 0 for j in range(len(moduli))] for i, m in enumerate(moduli)]
    return AbelianGroup.from_invariants(len(moduli), smith_normal_form(diag).diagonal)


# -- presentations ---------------------------------------------------------------


@dataclass
class MonoidPresentation:
    """Commutative monoid ``<generators | lhs = rhs>``; relation sides are sorted multisets."""

    generators: list
    relations: list = field(default_factory=list)
    arity_bound: int | None = None

    def __post_init__(self):
        self._index = {g: i for i, g in enumerate(self.generators)}
        seen, rels = set(), []
        for lhs, rhs in self.relations:
            key = (self._ms(lhs), self._ms(rhs))
            if key not in seen:
                seen.add(key)
                rels.append(key)
        self.relations = rels

    def _ms(self, side) -> tuple:
        for g in side:
            if g not in self._index:
                raise ValueError(f"unknown generator {g!r}")
        return tuple(sorted(side, key=self._index.__getitem__))

    def add_relation(self, lhs, rhs) -> None:
        key = (self._ms(lhs), self._ms(rhs))
        if key not in self.relations:
            self.relations.append(key)

    def relation_matrix(self) -> list[list[int]]:
        rows = []
        for lhs, rhs in self.relations:
            row = [0] * len(self.generators)
            for g in lhs:
                row[self._index[g]] += 1
            for g in rhs:
                row[self._index[g]] -= 1
            rows.append(row)
        return rows

    def to_json(self) -> dict:
        return {
            "generators": [repr(g) for g in self.generators],
            "relations": [[[repr(g) for g in lhs], [repr(g) for g in rhs]] for lhs, rhs in self.relations],
            "arity_bound": self.arity_bound,
        }


def pi0_presentation(m: PartialMonoid, arity_bound: int = DEFAULT_ARITY) -> MonoidPresentation:
    """Generators ``M - {0}``; one relation per summable multiset of size 2..``arity_bound``."""
    if arity_bound < 2:
        raise ValueError("arity bound must be at least 2")
    carrier = m.elements()
    if carrier is None:
        raise InfiniteCarrier("component monoids are only presented for finite carriers")
    gens = sorted((a for a in carrier if not m.is_zero(a)), key=_sort_key)
    pres = MonoidPresentation(gens, arity_bound=arity_bound)
    for n in range(2, arity_bound + 1):
        for combo in itertools.combinations_with_replacement(gens, n):
            s = m.sum(combo)
            if s is None:
                continue
            pres.add_relation(combo, () if m.is_zero(s) else (s,))
    return pres


@dataclass
class Completion:
    group: AbelianGroup
    images: dict  # generator -> coordinate tuple (free part first, then torsion mod d_i)
    presentation: MonoidPresentation

    def image(self, gen) -> tuple:
        return self.images[gen]

    def add(self, x: tuple, y: tuple) -> tuple:
        return self.reduce(tuple(a + b for a, b in zip(x, y)))

    def scale(self, k: int, x: tuple) -> tuple:
        return self.reduce(tuple(k * a for a in x))

    @property
    def zero(self) -> tuple:
        return (0,) * (self.group.rank + len(self.group.torsion))

    def reduce(self, x: tuple) -> tuple:
        r = self.group.rank
        return tuple(x[:r]) + tuple(a % d for a, d in zip(x[r:], self.group.torsion))

    def class_of(self, multiset: Iterable) -> tuple:
        out = self.zero
        for g in multiset:
            out = self.add(out, self.images[g])
        return out

    def to_json(self) -> dict:
        return {
            **self.group.to_json(),
            "arity_bound": self.presentation.arity_bound,
            "images": {repr(g): list(v) for g, v in self.images.items()},
        }


def grothendieck_group(pres: MonoidPresentation) -> Completion:
    """Cokernel of the relation matrix, with the universal map on generators.

    With ``U R V = D`` the substitution ``y = x V`` turns the relation
    lattice into ``span(d_i e_i)``, so generator ``j`` maps to row ``j`` of
    ``V``; coordinates with ``d_i = 1`` are dropped, ``d_i > 1`` are read
    mod ``d_i``, and the rest are free.
    """
    n = len(pres.generators)
    rows = pres.relation_matrix()
    if n == 0:
        return Completion(AbelianGroup(0), {}, pres)
    if rows:
        res = smith_normal_form(rows)
        diag = res.diagonal + [0] * (n - len(res.diagonal))
        V = res.V
    else:
        diag = [0] * n
        V = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    free = [i for i in range(n) if diag[i] == 0]
    tors = [i for i in range(n) if diag[i] > 1]
    group = AbelianGroup(len(free), tuple(diag[i] for i in tors))
    images = {}
    for j, g in enumerate(pres.generators):
        images[g] = tuple(V[j][i] for i in free) + tuple(V[j][i] % diag[i] for i in tors)
    return Completion(group, images, pres)


def completion_report(m: PartialMonoid, arity_bound: int = DEFAULT_ARITY) -> dict:
    pres = pi0_presentation(m, arity_bound)
    comp = grothendieck_group(pres)
    nxt = grothendieck_group(pi0_presentation(m, arity_bound + 1))
    return {
        **comp.group.to_json(),
        "arity_bound": arity_bound,
        "stable_under_bound_increase": nxt.group == comp.group,
        "presentation": pres.to_json(),
        "images": {repr(g): list(v) for g, v in comp.images.items()},
    }


# -- the strings side -----------------------------------------------------------------


def string_class(sc: LabeledConfig, comp: Completion) -> tuple:
    """``sum over particles (P, a) of chi(P) [a]`` with ``chi`` the compactly supported Euler characteristic.

    Closed strings count +1, open ones -1 (the mirror image of a closed
    one), half-open ones 0. This is additive under disjoint superposition
    and under the partial sums of the label monoid, and vanishes on
    ``x + tau x``.
    """
    out = comp.zero
    for _, (p, a) in sc:
        out = comp.add(out, comp.scale(iv.euler_char(p), comp.image(a)))
    return out


def particle_class(c: LabeledConfig, comp: Completion) -> tuple:
    return comp.class_of(c.labels)


@dataclass
class Pi0Check:
    group: AbelianGroup
    inverse_failures: list = field(default_factory=list)
    additivity_failures: list = field(default_factory=list)
    path_failures: list = field(default_factory=list)
    plus_failures: list = field(default_factory=list)
    cases: int = 0

    @property
    def passed(self) -> bool:
        return not (self.inverse_failures or self.additivity_failures or self.path_failures or self.plus_failures)

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "cases": self.cases,
            "inverse_failures": self.inverse_failures,
            "additivity_failures": self.additivity_failures,
            "path_failures": self.path_failures,
            "plus_failures": self.plus_failures,
            "passed": self.passed,
        }


def strings_pi0_check(
    m: PartialMonoid,
    corpus: Sequence[LabeledConfig],
    gadget,
    arity_bound: int = DEFAULT_ARITY,
    pairs: int = 20,
    samples: int = 12,
    seed: int = 0,
) -> Pi0Check:
    """Class-level sanity of group completion on a corpus of string configurations."""
    from .strings import gamma, grouplike_certificate, is_plus, tau_inv

    comp = grothendieck_group(pi0_presentation(m, arity_bound))
    report = Pi0Check(comp.group)
    for k, x in enumerate(corpus):
        report.cases += 1
        cx, ct = string_class(x, comp), string_class(tau_inv(x), comp)
        if comp.add(cx, ct) != comp.zero:
            report.inverse_failures.append(k)
        if is_plus(x):
            # closed strings only: the class is the canonical image of the particle class
            underlying = [a for _, (p, a) in x for _ in p]
            if cx != comp.class_of(underlying):
                report.plus_failures.append(k)
        path = grouplike_certificate(x, gadget)
        for i in range(samples + 1):
            if string_class(path.evaluate(Fraction(i, samples)), comp) != comp.zero:
                report.path_failures.append([k, str(Fraction(i, samples))])
                break
    rng = random.Random(seed)
    if corpus:
        for _ in range(pairs):
            i, j = rng.randrange(len(corpus)), rng.randrange(len(corpus))
            x, y = corpus[i], corpus[j]
            report.cases += 1
            lhs = string_class(hopf_mul(x, y, gadget), comp)
            if lhs != comp.add(string_class(x, comp), string_class(y, comp)):
                report.additivity_failures.append([i, j])
    return report


# -- chain complexes -----------------------------------------------------------------


def homology_from_boundaries(dims: Sequence[int], boundaries: dict) -> list[AbelianGroup]:
    """``H_n`` for ``n < len(dims) - 1`` from sparse boundaries ``d_n: C_n -> C_{n-1}``.

    ``boundaries[n]`` lists, for each basis element of ``C_n``, a
    ``{index in C_(n-1): coefficient}`` map.
    """
    factors = {}
    for n, cols in boundaries.items():
        # rows of the transposed matrix = basis of C_n; invariant factors agree
        factors[n] = invariant_factors(cols, dims[n - 1])
    out = []
    for n in range(len(dims) - 1):
        rank_out = len(factors.get(n, []))
        incoming = factors.get(n + 1, [])
        kernel = dims[n] - rank_out
        tors = tuple(d for d in incoming if d > 1)
        out.append(AbelianGroup(kernel - len(incoming), tors))
    return out


def _simplex_boundary(faces: Sequence, index: dict) -> dict:
    out: dict = {}
    for i, f in enumerate(faces):
        k = index.get(f)
        if k is None:  # degenerate face: zero in the normalized complex
            continue
        out[k] = out.get(k, 0) + (-1) ** i
    return {k: v for k, v in out.items() if v}


def nerve_homology(objects: Sequence, morphisms: Sequence, compose, source, target, is_identity) -> list[AbelianGroup]:
    """``H_0, H_1`` of the normalized nerve of a finite category (chains up to degree 2).

    ``compose(f, g)`` is ``g`` after ``f`` (``target(f) == source(g)``).
    """
    obj_index = {o: i for i, o in enumerate(objects)}
    arrows = [f for f in morphisms if not is_identity(f)]
    arr_index = {f: i for i, f in enumerate(arrows)}
    by_source: dict = {}
    for f in arrows:
        by_source.setdefault(source(f), []).append(f)
    d1 = [_simplex_boundary([target(f), source(f)], obj_index) for f in arrows]
    d2 = []
    for f in arrows:
        for g in by_source.get(target(f), ()):
            # faces of (f, g): drop f -> g, compose -> g.f, drop g -> f
            gf = compose(f, g)
            d2.append(_simplex_boundary([g, gf, f], arr_index))
    dims = [len(objects), len(arrows), len(d2)]
    return homology_from_boundaries(dims, {1: d1, 2: d2})


# -- the category Q(M) -------------------------------------------------------------------


def q_category(m: PartialMonoid, p_bound: int):
    """Objects: tuples over ``M`` of length <= ``p_bound``; arrows: maps ``theta`` with ``b_j = sum a_i``."""
    carrier = m.elements()
    if carrier is None:
        raise InfiniteCarrier("the nerve is only built for finite carriers")
    if len(carrier) > MAX_NERVE_CARRIER:
        raise BoundExceeded(f"carrier larger than {MAX_NERVE_CARRIER}")
    if not 0 <= p_bound <= MAX_P_BOUND:
        raise BoundExceeded(f"p_bound must lie in [0, {MAX_P_BOUND}]")
    carrier = sorted(carrier, key=_sort_key)
    objects = [tup for p in range(p_bound + 1) for tup in itertools.product(carrier, repeat=p)]
    morphisms = []
    for a in objects:
        for q in range(p_bound + 1):
            for theta in itertools.product(range(q), repeat=len(a)):
                b = []
                for j in range(q):
                    s = m.sum([a[i] for i in range(len(a)) if theta[i] == j])
                    if s is None:
                        break
                    b.append(s)
                else:
                    morphisms.append((a, tuple(b), theta))
    return objects, morphisms


def nerve_Q_homology(m: PartialMonoid, p_bound: int = 2) -> tuple[AbelianGroup, AbelianGroup]:
    objects, morphisms = q_category(m, p_bound)

    def compose(f, g):
        return (f[0], g[1], tuple(g[2][j] for j in f[2]))

    def is_identity(f):
        return f[0] == f[1] and f[2] == tuple(range(len(f[0])))

    h = nerve_homology(objects, morphisms, compose, lambda f: f[0], lambda f: f[1], is_identity)
    return h[0], h[1]


# -- finite commutative monoids and bar constructions --------------------------------------


@dataclass(frozen=True)
class CommutativeMonoid:
    """A finite commutative monoid given by its multiplication table (indices into ``names``)."""

    names: tuple
    unit: int
    mul: tuple

    def __post_init__(self):
        n = len(self.names)
        mul = tuple(tuple(r) for r in self.mul)
        object.__setattr__(self, "mul", mul)
        if len(mul) != n or any(len(r) != n for r in mul):
            raise ValueError("table must be square")
        for a in range(n):
            if mul[self.unit][a] != a:
                raise ValueError("unit is not a unit")
            for b in range(n):
                if mul[a][b] != mul[b][a]:
                    raise ValueError("table is not commutative")
                for c in range(n):
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                        raise ValueError("table is not associative")

    @classmethod
    def cyclic(cls, n: int) -> "CommutativeMonoid":
        return cls(tuple(range(n)), 0, tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))

    @classmethod
    def trivial(cls) -> "CommutativeMonoid":
        return cls((0,), 0, ((0,),))

    @classmethod
    def from_table(cls, names, unit, table) -> "CommutativeMonoid":
        idx = {x: i for i, x in enumerate(names)}
        return cls(tuple(names), idx[unit], tuple(tuple(idx[table[a][b]] for b in names) for a in names))

    @property
    def order(self) -> int:
        return len(self.names)


def table_presentation(a: CommutativeMonoid) -> MonoidPresentation:
    """All elements as generators; ``[x] + [y] = [xy]`` and ``[1] = 0``."""
    gens = list(range(a.order))
    pres = MonoidPresentation(gens, arity_bound=2)
    pres.add_relation((a.unit,), ())
    for x in gens:
        for y in gens:
            pres.add_relation((x, y), (a.mul[x][y],))
    return pres


def bar_nerve_homology(a: CommutativeMonoid) -> list[AbelianGroup]:
    """``H_0, H_1`` of the one-object nerve ``BA``: n-simplices are n-tuples of non-unit elements."""
    arrows = [x for x in range(a.order) if x != a.unit]
    idx = {x: i for i, x in enumerate(arrows)}
    d1 = [{} for _ in arrows]  # one object: d(x) = * - * = 0
    d2 = []
    for x in arrows:
        for y in arrows:
            d2.append(_simplex_boundary([y, a.mul[x][y], x], idx))
    return homology_from_boundaries([1, len(arrows), len(d2)], {1: d1, 2: d2})


def two_sided_bar_homology(a: CommutativeMonoid, b: CommutativeMonoid, f: Sequence[int]) -> list[AbelianGroup]:
    """``H_0, H_1`` of the nerve of ``B(A, B)``: objects ``B``, arrows ``(x, d): d -> f(x) d``."""
    if len(f) != a.order or f[a.unit] != b.unit:
        raise ValueError("f must be a unital map A -> B")
    objects = list(range(b.order))
    morphisms = [(x, d) for x in range(a.order) for d in objects]

    def compose(g1, g2):
        return (a.mul[g2[0]][g1[0]], g1[1])

    return nerve_homology(
        objects,
        morphisms,
        compose,
        lambda g: g[1],
        lambda g: b.mul[f[g[0]]][g[1]],
        lambda g: g[0] == a.unit,
    )


@dataclass
class BarReport:
    h0_bar: AbelianGroup
    h1_bar: AbelianGroup
    h1_one_object: AbelianGroup
    completion: AbelianGroup

    @property
    def contractible(self) -> bool:
        return self.h0_bar == AbelianGroup(1) and self.h1_bar.is_trivial

    @property
    def agrees(self) -> bool:
        return self.h1_one_object == self.completion

    def to_json(self) -> dict:
        return {
            "H0_B(A,A')": self.h0_bar.to_json(),
            "H1_B(A,A')": self.h1_bar.to_json(),
            "H1_BA": self.h1_one_object.to_json(),
            "grothendieck": self.completion.to_json(),
            "contractible_in_low_degrees": self.contractible,
            "H1_matches_grothendieck": self.agrees,
        }


def bar_homology(a: CommutativeMonoid, b: CommutativeMonoid | None = None, f: Sequence[int] | None = None) -> BarReport:
    if b is None:
        b, f = a, list(range(a.order))
    h = two_sided_bar_homology(a, b, f)
    one = bar_nerve_homology(a)
    return BarReport(h[0], h[1], one[1], grothendieck_group(table_presentation(a)).group)
