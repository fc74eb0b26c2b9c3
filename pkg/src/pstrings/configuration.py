"""Labeled configuration spaces at a finite universe stage.

A configuration is a finite set of distinct rational points carrying
nonzero labels in a partial monoid; zero-labeled particles are erased.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .group_rep import PointedGSet, UniverseStage
from .linalg import Matrix, Vector, as_vector, identity, is_orthogonal, matmul, matvec
from .monoids import BASE, PartialMonoid, WedgeLabelPM


class DuplicatePoint(ValueError):
    pass


class StageMismatch(ValueError):
    pass


class UndefinedSum(ValueError):
    """Coinciding particles whose labels are not summable."""


def _sorted_particles(particles) -> tuple:
    return tuple(sorted(particles, key=lambda p: p[0]))


@dataclass(frozen=True)
class LabeledConfig:
    stage: UniverseStage
    monoid: PartialMonoid = field(compare=False, hash=False, repr=False)
    particles: tuple = ()

    def __len__(self):
        return len(self.particles)

    def __iter__(self):
        return iter(self.particles)

    @property
    def points(self) -> list:
        return [p for p, _ in self.particles]

    @property
    def labels(self) -> list:
        return [a for _, a in self.particles]

    def label_at(self, point):
        return dict(self.particles).get(tuple(point), self.monoid.zero)

    def padded(self, target: UniverseStage) -> "LabeledConfig":
        return LabeledConfig(target, self.monoid, tuple((self.stage.pad(p, target), a) for p, a in self))

    def with_monoid(self, monoid: PartialMonoid, relabel=lambda a: a) -> "LabeledConfig":
        return make_config(self.stage, monoid, [(p, relabel(a)) for p, a in self])


def make_config(stage: UniverseStage, monoid: PartialMonoid, raw: Iterable[tuple]) -> LabeledConfig:
    """Normalize raw ``(point, label)`` pairs: drop zero labels, reject repeated points."""
    out = {}
    for point, label in raw:
        point = as_vector(point)
        if len(point) != stage.dim:
            raise StageMismatch(f"point {point} does not live in a stage of dimension {stage.dim}")
        if not monoid.contains(label):
            raise ValueError(f"label {label!r} is not in the monoid")
        if monoid.is_zero(label):
            continue
        if point in out:
            raise DuplicatePoint(f"two particles at {point}")
        out[point] = label
    return LabeledConfig(stage, monoid, _sorted_particles(out.items()))


def collide(stage: UniverseStage, monoid: PartialMonoid, raw: Iterable[tuple]) -> LabeledConfig:
    """Like :func:`make_config`, but coinciding particles have their labels summed."""
    groups = defaultdict(list)
    for point, label in raw:
        groups[as_vector(point)].append(label)
    out = []
    for point, labels in groups.items():
        s = monoid.sum(labels)
        if s is None:
            raise UndefinedSum(f"labels {labels!r} at {point} are not summable")
        out.append((point, s))
    return make_config(stage, monoid, out)


def config_partial_sum(configs: Sequence[LabeledConfig]) -> LabeledConfig | None:
    """Superimpose configurations; ``None`` when some coinciding labels do not sum."""
    if not configs:
        raise ValueError("need at least one configuration (the stage is otherwise unknown)")
    stage, monoid = configs[0].stage, configs[0].monoid
    if any(c.stage != stage for c in configs):
        raise StageMismatch("configurations live at different stages")
    try:
        return collide(stage, monoid, [pa for c in configs for pa in c])
    except UndefinedSum:
        return None


def g_act(config: LabeledConfig, g: int) -> LabeledConfig:
    """``g(c, a) = (gc, g a g^-1)``: move points by the representation, labels by the action."""
    return make_config(config.stage, config.monoid, [(config.stage.act(g, p), config.monoid.act(g, a)) for p, a in config])


def is_fixed(config: LabeledConfig, h) -> bool:
    sub = config.stage.group.check_subgroup(h)
    return all(g_act(config, g) == config for g in sub)


def orbit(config: LabeledConfig) -> list[LabeledConfig]:
    seen = []
    for g in config.stage.group.elements:
        c = g_act(config, g)
        if c not in seen:
            seen.append(c)
    return seen


@dataclass(frozen=True)
class Gadget:
    """The chosen equivariant isometry ``l: V x V -> V`` and fixed line ``e: R -> V^G``.

    With input stage k (dimension ``d``) the output stage is 2k, and
    ``l(v, w) = (-w, v)``: a quarter rotation in every coordinate pair
    ``(i, i + d)`` applied to the concatenation. ``e(s)`` is ``s`` times the
    all-ones vector of the first regular copy, a fixed vector of norm
    ``sqrt(|G|)``.
    """

    stage: UniverseStage

    @cached_property
    def out(self) -> UniverseStage:
        return self.stage.doubled()

    def e(self, s) -> Vector:
        s = Fraction(s)
        n = self.stage.group.order
        return (s,) * n + (Fraction(0),) * (self.stage.dim - n)

    def l(self, v: Sequence, w: Sequence) -> Vector:
        if len(v) != self.stage.dim or len(w) != self.stage.dim:
            raise StageMismatch("l expects two vectors of the input stage")
        return tuple(-x for x in w) + tuple(v)

    def embed(self, v: Sequence) -> Vector:
        """Zero-pad a stage-k vector into stage 2k."""
        return self.stage.pad(v, self.out)

    def rotation(self, t) -> tuple[Fraction, Fraction]:
        """``(cos, sin)`` of the rotation angle at time ``t``, rationally parametrized by ``s = 1 - t``."""
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValueError("t must lie in [0, 1]")
        s = 1 - t
        return (1 - s * s) / (1 + s * s), 2 * s / (1 + s * s)

    def l_t_matrix(self, t) -> Matrix:
        c, sn = self.rotation(t)
        d = self.stage.dim
        m = [[Fraction(0)] * (2 * d) for _ in range(2 * d)]
        for i in range(d):
            m[i][i], m[i][i + d] = c, -sn
            m[i + d][i], m[i + d][i + d] = sn, c
        return tuple(tuple(r) for r in m)

    def l_t(self, t, x: Sequence) -> Vector:
        """The isometry path: ``l_0`` restricts to ``l(., 0)``, ``l_1`` is the identity."""
        if len(x) == self.stage.dim:
            x = self.embed(x)
        c, sn = self.rotation(t)
        d = self.stage.dim
        return tuple(c * x[i] - sn * x[i + d] for i in range(d)) + tuple(sn * x[i] + c * x[i + d] for i in range(d))

    def check(self, ts: Iterable = (0, Fraction(1, 3), Fraction(1, 2), 1)) -> list[str]:
        """Isometry and equivariance of ``l`` and ``l_t``; ``e`` must be fixed."""
        problems = []
        g = self.stage.group
        d = self.stage.dim
        eye = identity(d)
        zero = (Fraction(0),) * d
        cols = [self.l(u, zero) for u in eye] + [self.l(zero, u) for u in eye]
        lmat = tuple(zip(*cols))
        if not is_orthogonal(lmat):
            problems.append("l is not an isometry")
        for a in g.elements:
            if self.stage.act(a, self.e(1)) != self.e(1):
                problems.append(f"e is not fixed by {g.names[a]!r}")
            big = self.out.rep.matrices[a]
            small = self.stage.rep.matrices[a]
            for u in eye:
                if matvec(big, self.l(u, zero)) != self.l(matvec(small, u), zero):
                    problems.append(f"l is not equivariant for {g.names[a]!r}")
                    break
            for t in ts:
                m = self.l_t_matrix(t)
                if matmul(big, m) != matmul(m, big):
                    problems.append(f"l_{t} does not commute with {g.names[a]!r}")
        for t in ts:
            if not is_orthogonal(self.l_t_matrix(t)):
                problems.append(f"l_{t} is not an isometry")
        return problems


def isometry_path(gadget: Gadget, t, v: Sequence) -> Vector:
    return gadget.l_t(t, v)


def delta_map(config: LabeledConfig, p) -> LabeledConfig:
    """``A(delta_p)``: keep particles tagged ``p`` and forget the tag."""
    m = config.monoid
    if not isinstance(m, WedgeLabelPM):
        raise TypeError("delta_map needs labels in a wedge-label monoid")
    if p == m.pset.basepoint:
        return LabeledConfig(config.stage, m.inner, ())
    return make_config(config.stage, m.inner, [(pt, a[1]) for pt, a in config if a[0] == p])


def psi(assignment: Mapping, gadget: Gadget, pset: PointedGSet, inner: PartialMonoid) -> LabeledConfig:
    """Reassemble ``p -> f(p)`` into one configuration over ``P ^ M`` at stage 2k.

    The ``n``-th non-base element of ``P`` is embedded at ``e(n)``; a particle
    ``v`` of ``f(p)`` lands at ``l(e(n_p), v)``.
    """
    if pset.action is not None:
        raise ValueError("psi expects a finite pointed set with trivial action")
    target = WedgeLabelPM(pset, inner)
    raw = []
    for n, p in enumerate(pset.non_base, start=1):
        cfg = assignment.get(p)
        if cfg is None:
            continue
        if cfg.stage != gadget.stage:
            raise StageMismatch("all assigned configurations must live at the gadget's input stage")
        for v, a in cfg:
            raw.append((gadget.l(gadget.e(n), v), target.pair(p, a)))
    return make_config(gadget.out, target, raw)


TWO_POINTS = PointedGSet.plain((0, 1, 2), 0)


def fold(config: LabeledConfig) -> LabeledConfig:
    """``P ^ M -> M`` induced by folding all of ``P`` onto one point."""
    m = config.monoid
    return make_config(config.stage, m.inner, [(p, a[1]) for p, a in config])


def hopf_mul(x: LabeledConfig, y: LabeledConfig, gadget: Gadget) -> LabeledConfig:
    """The Hopf multiplication: ``psi`` on ``{1: x, 2: y}`` followed by folding."""
    if x.stage != y.stage:
        raise StageMismatch("factors live at different stages")
    return fold(psi({1: x, 2: y}, gadget, TWO_POINTS, x.monoid))
