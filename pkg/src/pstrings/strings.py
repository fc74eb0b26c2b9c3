"""String configurations ``I(V, M) = C(V, I(R) ^ M)`` and their homotopies.

A string configuration is a :class:`LabeledConfig` whose labels are pairs
``(P, a)``: a nonempty interval set and a nonzero element of ``M``.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import intervals as iv
from .configuration import (
    DuplicatePoint,
    Gadget,
    LabeledConfig,
    StageMismatch,
    UndefinedSum,
    collide,
    hopf_mul,
    make_config,
)
from .group_rep import FiniteGroup, PointedGSet, UniverseStage, coset_gset
from .linalg import Vector, as_fraction, l1_norm, vadd, vscale, vsub
from .monoids import (
    BASE,
    PartialMonoid,
    SmashPM,
    WedgeLabelPM,
    homotopy_inversion,
    is_string_labels,
    string_labels,
)


class DomainError(ValueError):
    pass


StringConfig = LabeledConfig


def make_strings(stage: UniverseStage, m: PartialMonoid, items: Iterable[tuple]) -> StringConfig:
    """Build from ``(point, IntervalSet, label)`` triples over the label monoid ``I(R) ^ m``."""
    lm = string_labels(m)
    return make_config(stage, lm, [(v, lm.pair(p, a)) for v, p, a in items])


def _inner(sc: StringConfig) -> PartialMonoid:
    if not is_string_labels(sc.monoid):
        raise TypeError("expected a string configuration")
    return sc.monoid.right


def flatten(sc: StringConfig) -> list[tuple]:
    """One ``(v, J, a)`` record per interval component."""
    _inner(sc)
    return [(v, j, a) for v, (p, a) in sc for j in p]


def unflatten(stage: UniverseStage, m: PartialMonoid, records: Iterable[tuple]) -> StringConfig:
    grouped: dict = {}
    for v, j, a in records:
        v = tuple(v)
        if v in grouped and grouped[v][1] != a:
            raise ValueError(f"strings over {v} carry different labels")
        grouped.setdefault(v, ([], a))[0].append(j)
    return make_strings(stage, m, [(v, iv.normalize(js), a) for v, (js, a) in grouped.items()])


def is_plus(sc: StringConfig) -> bool:
    return all(p.is_plus for _, (p, _) in sc)


def rho(sc: StringConfig) -> StringConfig:
    """The inclusion ``I_+(V, M) -> I(V, M)``; rejects configurations outside ``I_+``."""
    if not is_plus(sc):
        raise DomainError("rho is defined on configurations of closed intervals only")
    return sc


def lambda_map(sc: StringConfig, gadget: Gadget) -> LabeledConfig:
    """Each closed string ``{v} x J`` becomes a particle at ``l(v, e(midpoint J))``."""
    if not is_plus(sc):
        raise DomainError("lambda is defined on configurations of closed intervals only")
    m = _inner(sc)
    if sc.stage != gadget.stage:
        raise StageMismatch("configuration and gadget stages differ")
    return make_config(gadget.out, m, [(gadget.l(v, gadget.e((j.lo + j.hi) / 2)), a) for v, j, a in flatten(sc)])


STANDARD = iv.IntervalSet((iv.Interval(-1, 1),))


def gamma(config: LabeledConfig) -> StringConfig:
    """Each particle ``(v, a)`` becomes the string ``{v} x [-1, 1]`` labeled ``a``."""
    return make_strings(config.stage, config.monoid, [(v, STANDARD, a) for v, a in config])


def tau_inv(sc: StringConfig) -> StringConfig:
    return make_config(sc.stage, sc.monoid, [(v, homotopy_inversion(lab)) for v, lab in sc])


def push_labels(sc: StringConfig, f) -> StringConfig:
    """Apply an increasing map of the line to every interval label."""
    return make_config(sc.stage, sc.monoid, [(v, (iv.pushforward(p, f), a)) for v, (p, a) in sc])


def standard_interval(j: iv.Interval, t) -> iv.Interval:
    """``[t a - (1 - t), t b + (1 - t)]``: from ``[-1, 1]`` at 0 to ``J`` at 1."""
    return iv.Interval(t * j.lo - (1 - t), t * j.hi + (1 - t))


# -- metric -------------------------------------------------------------------


@dataclass
class MatchReport:
    """Groups of particle indices paired by the coupling, with their costs.

    A group with one index on each side is an ordinary pair; a group with
    several indices on one side is a collision (those particles merge into
    the single particle on the other side). Empty sides are unmatched.
    """

    groups: list = field(default_factory=list)  # (a_indices, b_indices, cost)
    total: Fraction = Fraction(0)
    method: str = ""

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(a[0], b[0]) for a, b, _ in self.groups if len(a) == 1 and len(b) == 1]

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "total": str(self.total),
            "groups": [[list(a), list(b), str(c)] for a, b, c in self.groups],
        }


@dataclass(frozen=True)
class _Particle:
    point: Vector
    key: object  # the M-part of the label: particles couple only with equal keys
    intervals: iv.IntervalSet | None
    weight: Fraction  # cost of leaving it unmatched


def _particles(c: LabeledConfig) -> list[_Particle]:
    if is_string_labels(c.monoid):
        return [_Particle(v, a, p, iv.measure(p)) for v, (p, a) in c]
    return [_Particle(v, a, None, Fraction(1)) for v, a in c]


def _star_cost(leaves: Sequence[_Particle], center: _Particle):
    if any(x.key != center.key for x in leaves):
        return None
    if center.intervals is None:
        if len(leaves) > 1:
            return None
        return l1_norm(vsub(leaves[0].point, center.point))
    move = sum((l1_norm(vsub(x.point, center.point)) for x in leaves), Fraction(0))
    return move + iv.multiplicity_distance([x.intervals for x in leaves], center.intervals)


def brute_force_matching(costs, wa, wb) -> tuple[Fraction, list]:
    """Exhaustive optimum over partial injections; ``costs[i][j]`` is ``None`` if forbidden."""
    n, m = len(wa), len(wb)
    best = [None, None]

    def rec(i, used, acc, pairs):
        if best[0] is not None and acc >= best[0]:
            return
        if i == n:
            total = acc + sum((wb[j] for j in range(m) if j not in used), Fraction(0))
            if best[0] is None or total < best[0]:
                best[0], best[1] = total, list(pairs)
            return
        for j in range(m):
            if j not in used and costs[i][j] is not None:
                pairs.append((i, j))
                rec(i + 1, used | {j}, acc + costs[i][j], pairs)
                pairs.pop()
        rec(i + 1, used, acc + wa[i], pairs)

    rec(0, frozenset(), Fraction(0), [])
    return best[0], best[1]


def hungarian_matching(costs, wa, wb) -> tuple[Fraction, list]:
    """Same optimum via the assignment solver on the (n+m)-square augmented matrix."""
    from .assignment import min_cost_assignment

    n, m = len(wa), len(wb)
    big = sum(wa, Fraction(0)) + sum(wb, Fraction(0)) + 1
    size = n + m
    mat = [[Fraction(0)] * size for _ in range(size)]
    for i in range(n):
        for j in range(m):
            c = costs[i][j]
            # a forbidden pair is never better than leaving both unmatched
            mat[i][j] = c if c is not None else wa[i] + wb[j]
        for k in range(n):
            mat[i][m + k] = wa[i] if k == i else big
    for k in range(m):
        for j in range(m):
            mat[n + k][j] = wb[j] if j == k else big
    assignment, _ = min_cost_assignment(mat)
    pairs = []
    total = Fraction(0)
    for i in range(n):
        j = assignment[i]
        if j < m and costs[i][j] is not None:
            pairs.append((i, j))
            total += costs[i][j]
        else:
            total += wa[i]
    matched_b = {j for _, j in pairs}
    total += sum((wb[j] for j in range(m) if j not in matched_b), Fraction(0))
    return total, pairs


EXHAUSTIVE_LIMIT = 6


def match_particles(a: LabeledConfig, b: LabeledConfig) -> MatchReport:
    """Optimal one-to-one coupling (exhaustive up to 6 particles a side, Hungarian beyond)."""
    pa, pb = _particles(a), _particles(b)
    costs = [[_star_cost([x], y) for y in pb] for x in pa]
    wa, wb = [x.weight for x in pa], [y.weight for y in pb]
    if max(len(pa), len(pb)) <= EXHAUSTIVE_LIMIT:
        total, pairs = brute_force_matching(costs, wa, wb)
        method = "exhaustive"
    else:
        total, pairs = hungarian_matching(costs, wa, wb)
        method = "hungarian"
    groups = [((i,), (j,), costs[i][j]) for i, j in pairs]
    ma, mb = {i for i, _ in pairs}, {j for _, j in pairs}
    groups += [((i,), (), wa[i]) for i in range(len(pa)) if i not in ma]
    groups += [((), (j,), wb[j]) for j in range(len(pb)) if j not in mb]
    return MatchReport(groups, total, method)


def _star_cover(pa: list[_Particle], pb: list[_Particle], max_leaves: int):
    """Cheapest cover where each particle of ``pb`` absorbs up to ``max_leaves`` particles of ``pa``."""
    n = len(pa)
    dp = {0: (Fraction(0), ())}
    for j, center in enumerate(pb):
        options = [((), center.weight)]
        compatible = [i for i, x in enumerate(pa) if x.key == center.key]
        for r in range(1, max_leaves + 1):
            for leaves in itertools.combinations(compatible, r):
                c = _star_cost([pa[i] for i in leaves], center)
                if c is not None:
                    options.append((leaves, c))
        new: dict = {}
        for mask, (cost, hist) in dp.items():
            for leaves, c in options:
                bits = sum(1 << i for i in leaves)
                if bits & mask:
                    continue
                key = mask | bits
                total = cost + c
                if key not in new or total < new[key][0]:
                    new[key] = (total, hist + ((leaves, j, c),))
        dp = new
    best = None
    for mask, (cost, hist) in dp.items():
        rest = [i for i in range(n) if not mask >> i & 1]
        total = cost + sum((pa[i].weight for i in rest), Fraction(0))
        if best is None or total < best[0]:
            best = (total, hist, rest)
    return best


MERGE_LIMIT = 12


def config_distance(a: LabeledConfig, b: LabeledConfig, merge: bool = True, max_leaves: int = 2):
    """Rational pseudo-distance between configurations at one stage, with its coupling.

    Pairs cost the l1 displacement plus the symmetric-difference measure of
    the interval labels, and need equal M-parts; an unmatched particle costs
    its interval measure. With ``merge`` a particle may also absorb up to
    ``max_leaves`` particles of the other side (cost: their displacements
    plus the L1 distance between its interval set and their superposition),
    which makes collisions with partial sums continuous.
    """
    if a.stage != b.stage:
        raise StageMismatch("configurations live at different stages")
    if a == b:
        return Fraction(0), MatchReport([((i,), (i,), Fraction(0)) for i in range(len(a))], Fraction(0), "identical")
    report = match_particles(a, b)
    pa, pb = _particles(a), _particles(b)
    if merge and max(len(pa), len(pb)) <= MERGE_LIMIT:
        for swap in (False, True):
            src, dst = (pb, pa) if swap else (pa, pb)
            total, hist, rest = _star_cover(src, dst, max_leaves)
            if total < report.total:
                groups = [(tuple(leaves), (j,), c) for leaves, j, c in hist]
                groups += [((i,), (), src[i].weight) for i in rest]
                if swap:
                    groups = [(bb, aa, c) for aa, bb, c in groups]
                report = MatchReport(groups, total, "collision-aware")
    return report.total, report


# -- paths ----------------------------------------------------------------------


def _unit(t) -> Fraction:
    t = as_fraction(t)
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    return t


def _scale(c: LabeledConfig) -> Fraction:
    vals = [Fraction(1)]
    for v, lab in c:
        vals.extend(abs(x) for x in v)
        if is_string_labels(c.monoid):
            for j in lab[0]:
                vals.extend((abs(j.lo), abs(j.hi)))
    return max(vals)


def _strand_count(c: LabeledConfig) -> int:
    if is_string_labels(c.monoid):
        return max(1, len(flatten(c)))
    return max(1, len(c))


class PathSpec(ABC):
    """A catalog homotopy, evaluable exactly at rational times in [0, 1]."""

    kind: str = ""
    time_factor: int = 1  # speed-up from reparametrizing sub-paths onto sub-intervals

    @abstractmethod
    def evaluate(self, t) -> LabeledConfig: ...

    @abstractmethod
    def start(self) -> LabeledConfig:
        """The declared configuration at t = 0, computed without ``evaluate``."""

    @abstractmethod
    def end(self) -> LabeledConfig:
        """The declared configuration at t = 1, computed without ``evaluate``."""

    @abstractmethod
    def base(self) -> LabeledConfig: ...

    def collisions(self) -> list:
        return []

    def default_lipschitz(self) -> Fraction:
        """``8 * strands * scale * |G| * time_factor``; see the README for the speed bounds."""
        b = self.base()
        return 8 * _strand_count(b) * _scale(b) * b.stage.group.order * self.time_factor


@dataclass
class GammaLambda(PathSpec):
    """``gamma lambda ~ 1``: shrink the lambda-coordinate and stretch strings, then rotate back."""

    sc: StringConfig
    gadget: Gadget
    kind = "gamma-lambda"
    time_factor = 2

    def __post_init__(self):
        rho(self.sc)

    def base(self):
        return self.sc

    def evaluate(self, t):
        t = _unit(t)
        g = self.gadget
        lm = self.sc.monoid
        if t <= Fraction(1, 2):
            s = 2 * t
            raw = [
                (g.l(v, g.e((1 - s) * (j.lo + j.hi) / 2)), lm.pair(iv.IntervalSet((standard_interval(j, s),)), a))
                for v, j, a in flatten(self.sc)
            ]
            return collide(g.out, lm, raw)
        s = 2 * t - 1
        return make_config(g.out, lm, [(g.l_t(s, v), lab) for v, lab in self.sc])

    def start(self):
        return gamma(lambda_map(self.sc, self.gadget))

    def end(self):
        return self.sc.padded(self.gadget.out)


@dataclass
class LambdaGamma(PathSpec):
    """``lambda gamma ~ 1``: particles follow the isometry path ``l_t``."""

    x: LabeledConfig
    gadget: Gadget
    kind = "lambda-gamma"

    def base(self):
        return self.x

    def evaluate(self, t):
        t = _unit(t)
        return make_config(self.gadget.out, self.x.monoid, [(self.gadget.l_t(t, v), a) for v, a in self.x])

    def start(self):
        return lambda_map(gamma(self.x), self.gadget)

    def end(self):
        return self.x.padded(self.gadget.out)


@dataclass
class Ht(PathSpec):
    """``mu (1, tau)`` deformed by ``h_t``: labels ``I(alpha_t) P`` and ``tau I(alpha_t) P``."""

    x: StringConfig
    gadget: Gadget
    kind = "ht"

    def base(self):
        return self.x

    def _at(self, f):
        y = push_labels(self.x, f)
        return hopf_mul(y, tau_inv(y), self.gadget)

    def evaluate(self, t):
        return self._at(iv.AlphaT(_unit(t)))

    def start(self):
        return hopf_mul(self.x, tau_inv(self.x), self.gadget)

    def end(self):
        return self._at(iv.alpha)


@dataclass
class Vanish(PathSpec):
    """Labelwise null-homotopy of ``I(alpha) P u tau I(alpha) P``."""

    sc: StringConfig
    kind = "vanish"

    def base(self):
        return self.sc

    def evaluate(self, t):
        t = _unit(t)
        lm = self.sc.monoid
        return make_config(self.sc.stage, lm, [(v, lm.pair(iv.vanish_path(p, t), a)) for v, (p, a) in self.sc])

    def start(self):
        lm = self.sc.monoid
        return make_config(self.sc.stage, lm, [(v, lm.pair(iv.union_partial(iv.h_t(p, 1)), a)) for v, (p, a) in self.sc])

    def end(self):
        return LabeledConfig(self.sc.stage, self.sc.monoid, ())


def _segment_collision(p0, p1, q0, q1) -> Fraction | None:
    """Earliest s in [0, 1] with p0 + s(p1 - p0) == q0 + s(q1 - q0), if any."""
    d0 = vsub(p0, q0)
    dd = vsub(vsub(p1, q1), d0)
    if not any(dd):
        return Fraction(0) if not any(d0) else None
    k = next(i for i, x in enumerate(dd) if x)
    s = -d0[k] / dd[k]
    if 0 <= s <= 1 and not any(vadd(d0, vscale(s, dd))):
        return s
    return None


@dataclass
class LinearIsotopy(PathSpec):
    """Straight-line motion of particles; with ``merge_at_end`` coincident targets are summed."""

    source: LabeledConfig
    targets: Mapping  # source point -> target point
    merge_at_end: bool = False
    kind = "isotopy"

    def base(self):
        return self.source

    def _raw(self, t):
        return [(vadd(v, vscale(t, vsub(self.targets[v], v))), lab) for v, lab in self.source]

    def evaluate(self, t):
        t = _unit(t)
        raw = self._raw(t)
        if t == 1 and self.merge_at_end:
            return collide(self.source.stage, self.source.monoid, raw)
        return make_config(self.source.stage, self.source.monoid, raw)

    def start(self):
        return self.source

    def end(self):
        raw = [(self.targets[v], lab) for v, lab in self.source]
        if self.merge_at_end:
            return collide(self.source.stage, self.source.monoid, raw)
        return make_config(self.source.stage, self.source.monoid, raw)

    def collisions(self) -> list:
        """Exact pairwise collision times; merges at ``t = 1`` are allowed when requested."""
        out = []
        parts = list(self.source)
        for (v, _), (w, _) in itertools.combinations(parts, 2):
            s = _segment_collision(v, self.targets[v], w, self.targets[w])
            if s is None or (s == 1 and self.merge_at_end):
                continue
            out.append({"points": [[str(x) for x in v], [str(x) for x in w]], "time": str(s)})
        return out

    def default_lipschitz(self):
        b = self.base()
        move = max((l1_norm(vsub(self.targets[v], v)) for v, _ in b), default=Fraction(0))
        return max(Fraction(1), 2 * len(b) * move)


@dataclass
class InverseCertificate(PathSpec):
    """``mu(x, tau x) ~ empty`` in three stages of equal length.

    A: ``h_t`` labelwise inside the image of ``mu``. B: each particle pair
    coming from one point slides together and is summed (their interval
    parts are disjoint). C: the fused labels vanish.
    """

    x: StringConfig
    gadget: Gadget
    kind = "inverse"
    time_factor = 3

    def base(self):
        return self.x

    def _stage_b(self) -> LinearIsotopy:
        g = self.gadget
        raw, targets = [], {}
        lm = self.x.monoid
        for v, (p, a) in self.x:
            q = iv.pushforward(p, iv.alpha)
            mid = g.l(g.e(Fraction(3, 2)), v)
            for n, lab in ((1, (q, a)), (2, (iv.tau(q), a))):
                pt = g.l(g.e(n), v)
                raw.append((pt, lm.pair(*lab)))
                targets[pt] = mid
        return LinearIsotopy(make_config(g.out, lm, raw), targets, merge_at_end=True)

    def _stage_c(self, u):
        g = self.gadget
        lm = self.x.monoid
        return make_config(
            g.out, lm, [(g.l(g.e(Fraction(3, 2)), v), lm.pair(iv.vanish_path(p, u), a)) for v, (p, a) in self.x]
        )

    def evaluate(self, t):
        t = _unit(t)
        if t <= Fraction(1, 3):
            return Ht(self.x, self.gadget).evaluate(3 * t)
        if t <= Fraction(2, 3):
            return self._stage_b().evaluate(3 * t - 1)
        return self._stage_c(3 * t - 2)

    def start(self):
        return hopf_mul(self.x, tau_inv(self.x), self.gadget)

    def end(self):
        return LabeledConfig(self.gadget.out, self.x.monoid, ())

    def collisions(self):
        return self._stage_b().collisions()

    def junctions(self) -> dict:
        """Exact agreement of adjacent stages at t = 1/3 and t = 2/3."""
        b = self._stage_b()
        return {
            "A/B": Ht(self.x, self.gadget).end() == b.start(),
            "B/C": b.end() == self._stage_c(0),
        }


def path_eval(spec: PathSpec, t) -> LabeledConfig:
    return spec.evaluate(t)


def grouplike_certificate(x: StringConfig, gadget: Gadget) -> InverseCertificate:
    return InverseCertificate(x, gadget)


# -- certification ----------------------------------------------------------------


@dataclass
class ContinuityReport:
    kind: str
    N: int
    L: Fraction
    max_ratio: Fraction = Fraction(0)
    worst_step: int | None = None
    endpoint_ok: bool = False
    audit_ok: bool = True
    audit_failures: list = field(default_factory=list)
    collisions: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.endpoint_ok and self.audit_ok and not self.collisions and self.max_ratio <= self.L

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "N": self.N,
            "L": str(self.L),
            "max_ratio": str(self.max_ratio),
            "worst_step": self.worst_step,
            "endpoint_ok": self.endpoint_ok,
            "audit_ok": self.audit_ok,
            "audit_failures": self.audit_failures,
            "collision": bool(self.collisions),
            "collisions": self.collisions,
            "passed": self.passed,
            **self.extra,
        }


def vanish_audit(c: LabeledConfig, threshold: Fraction) -> list:
    """Closed interval components shorter than ``threshold`` (illegal near-vanishing)."""
    if not is_string_labels(c.monoid):
        return []
    return [
        {"point": [str(x) for x in v], "interval": str(j)}
        for v, (p, _) in c
        for j in p
        if j.length < threshold and j.is_closed
    ]


def certify_continuity(spec: PathSpec, N: int = 64, L=None) -> ContinuityReport:
    """Sample on the uniform grid: exact endpoints, bounded step ratios, vanish audit."""
    if N < 2:
        raise ValueError("need at least two samples")
    L = spec.default_lipschitz() if L is None else as_fraction(L)
    report = ContinuityReport(spec.kind, N, L)
    report.collisions = list(spec.collisions())
    samples = []
    for i in range(N + 1):
        try:
            samples.append(spec.evaluate(Fraction(i, N)))
        except (DuplicatePoint, UndefinedSum) as exc:
            report.collisions.append({"time": str(Fraction(i, N)), "error": str(exc)})
            samples.append(None)
    report.endpoint_ok = samples[0] == spec.start() and samples[-1] == spec.end()
    threshold = Fraction(1, N)
    for i, c in enumerate(samples):
        if c is None:
            continue
        for f in vanish_audit(c, threshold):
            report.audit_failures.append({"time": str(Fraction(i, N)), **f})
    report.audit_ok = not report.audit_failures
    for i in range(N):
        a, b = samples[i], samples[i + 1]
        if a is None or b is None:
            continue
        d, _ = config_distance(a, b)
        ratio = d * N
        if ratio > report.max_ratio:
            report.max_ratio, report.worst_step = ratio, i
    return report


# -- the structural maps for wedges and cosets ---------------------------------------


def _wedge_inner(sc: StringConfig) -> WedgeLabelPM:
    m = _inner(sc)
    if not isinstance(m, WedgeLabelPM):
        raise TypeError("expected labels in I(R) ^ (X ^ M)")
    return m


def c3_pair(t: StringConfig, x: PointedGSet, y: PointedGSet) -> tuple[StringConfig, StringConfig]:
    """``T(X v Y) -> T(X) x T(Y)`` from the two projections of the wedge."""
    w = _wedge_inner(t)
    out = []
    for side, ps in ((0, x), (1, y)):
        target = WedgeLabelPM(ps, w.inner)
        items = [(v, p, target.pair(lab[0][1], lab[1])) for v, (p, lab) in t if lab[0][0] == side]
        out.append(make_strings(t.stage, target, items))
    return out[0], out[1]


def c3_merge(u: StringConfig, v: StringConfig, gadget: Gadget) -> StringConfig:
    """``T(X) x T(Y) -> T(X v Y)``: include both into the wedge and multiply."""
    wu, wv = _wedge_inner(u), _wedge_inner(v)
    wedge = wu.pset.wedge(wv.pset)
    target = WedgeLabelPM(wedge, wu.inner)

    def include(sc, side):
        return make_strings(sc.stage, target, [(pt, p, target.pair((side, lab[0]), lab[1])) for pt, (p, lab) in sc])

    return hopf_mul(include(u, 0), include(v, 1), gadget)


def coset_vector(stage: UniverseStage, coset: tuple) -> Vector:
    """Indicator of the coset in the first regular copy: an equivariant embedding of G/H."""
    n = stage.group.order
    return tuple(Fraction(1) if i < n and i in coset else Fraction(0) for i in range(stage.dim))


def c4_rho(f: Mapping, gadget: Gadget, g: FiniteGroup, h) -> StringConfig:
    """Assemble ``f: G/H -> T(X)`` into one configuration of ``T(G/H_+ ^ X)``.

    A particle ``xi`` of ``f(gH)`` with label ``P ^ a`` goes to
    ``l(coset_vector(gH), xi)`` with label ``P ^ gH ^ a``.
    """
    cosets = coset_gset(g, h)
    configs = [f[c] for c in cosets.non_base]
    if any(c.stage != gadget.stage for c in configs):
        raise StageMismatch("all values of f must live at the gadget's input stage")
    if not configs:
        raise ValueError("f must be defined on every coset")
    w = _wedge_inner(configs[0])
    target = WedgeLabelPM(cosets.smash(w.pset), w.inner)
    items = []
    for c in cosets.non_base:
        cv = coset_vector(gadget.stage, c)
        for xi, (p, lab) in f[c]:
            items.append((gadget.l(cv, xi), p, target.pair((c, lab[0]), lab[1])))
    return make_strings(gadget.out, target, items)


def c4_pairing(sc: StringConfig, coset: tuple, x: PointedGSet) -> StringConfig:
    """``T`` of the pairing ``G/H_+ ^ G/H_+ ^ X -> X`` evaluated at ``coset`` (positions kept)."""
    w = _wedge_inner(sc)
    target = WedgeLabelPM(x, w.inner)
    items = [(v, p, target.pair(lab[0][1], lab[1])) for v, (p, lab) in sc if lab[0][0] == coset]
    return make_strings(sc.stage, target, items)


def act_on_map(f: Mapping, g: FiniteGroup, h, a: int) -> dict:
    """``(a . f)(sH) = a . f(a^-1 sH)``."""
    from .configuration import g_act
    from .group_rep import coset_of

    cosets = coset_gset(g, h)
    inv = g.inv[a]
    out = {}
    for c in cosets.non_base:
        pre = coset_of(g, h, g.mul[inv][c[0]])
        out[c] = g_act(f[pre], a)
    return out


def label_multiset(c: LabeledConfig) -> list:
    return sorted((repr(a) for a in c.labels))
