import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction as F

import pytest

from pstrings import intervals as iv
from pstrings import strings as st
from pstrings.assignment import brute_force_assignment, min_cost_assignment
from pstrings.configuration import Gadget, LabeledConfig, g_act, make_config
from pstrings.group_rep import FiniteGroup, PointedGSet, coset_gset, regular_rep, subgroups
from pstrings.io import load_corpus
from pstrings.monoids import GroupSubsetPM, WedgeLabelPM

from helpers import random_particles, random_strings, setting

S = iv.IntervalSet.parse
S0 = PointedGSet.plain(("*", "s"), "*")


@pytest.fixture
def z2():
    return setting(2, copies=1, modulus=2)


def test_flatten_round_trip(z2):
    stage, _, m = z2
    sc = st.make_strings(stage, m, [((0, 0), S("[0,1]", "[2,3]"), (1,))])
    recs = st.flatten(sc)
    assert len(recs) == 2 and {r[2] for r in recs} == {(1,)}
    assert st.unflatten(stage, m, recs) == sc
    assert st.flatten(LabeledConfig(stage, sc.monoid, ())) == []
    rng = random.Random(30)
    for _ in range(50):
        x = random_strings(rng, stage, m)
        assert st.unflatten(stage, m, st.flatten(x)) == x


def test_plus_and_rho(z2):
    stage, _, m = z2
    plus = st.make_strings(stage, m, [((0, 0), S("[0,1]"), (1,))])
    minus = st.make_strings(stage, m, [((0, 0), S("[0,1)"), (1,))])
    assert st.is_plus(plus) and not st.is_plus(minus)
    assert st.rho(plus) == plus
    with pytest.raises(st.DomainError):
        st.rho(minus)


def test_lambda_examples(z2):
    stage, gadget, m = z2
    one = st.make_strings(stage, m, [((0, 0), S("[-1,1]"), (1,))])
    assert st.lambda_map(one, gadget).particles == (((0,) * 4, (1,)),)
    two = st.make_strings(stage, m, [((0, 0), S("[0,1]", "[2,3]"), (1,))])
    out = st.lambda_map(two, gadget)
    assert len(out) == 2
    assert {p[0] for p in out.points} == {F(-1, 2), F(-5, 2)}
    assert len(st.lambda_map(LabeledConfig(stage, one.monoid, ()), gadget)) == 0
    with pytest.raises(st.DomainError):
        st.lambda_map(st.make_strings(stage, m, [((0, 0), S("(0,1]"), (1,))]), gadget)


def test_gamma_and_tau(z2):
    stage, _, m = z2
    x = make_config(stage, m, [((1, 0), (1,))])
    g = st.gamma(x)
    assert g.particles[0][1][0] == S("[-1,1]") and st.is_plus(g)
    sc = st.make_strings(stage, m, [((0, 0), S("[0,1]"), (1,))])
    assert st.tau_inv(sc).particles[0][1][0] == S("(-1,0)")
    rng = random.Random(31)
    for _ in range(50):
        y = random_strings(rng, stage, m)
        assert st.tau_inv(st.tau_inv(y)) == y
        assert len(st.tau_inv(y)) == len(y)


def test_path_endpoints(z2):
    stage, gadget, m = z2
    sc = st.make_strings(stage, m, [((0, 0), S("[0,1]", "[2,3]"), (1,)), ((1, 2), S("[-1,1/2]"), (1,))])
    p = st.GammaLambda(sc, gadget)
    assert st.path_eval(p, 1) == sc.padded(gadget.out)
    assert st.path_eval(p, 0) == st.gamma(st.lambda_map(sc, gadget))
    assert len(st.Vanish(sc).evaluate(1)) == 0
    with pytest.raises(ValueError):
        p.evaluate(F(3, 2))


def test_gamma_lambda_halves_agree(z2):
    stage, gadget, m = z2
    sc = st.make_strings(stage, m, [((0, 0), S("[0,1]", "[2,3]"), (1,))])
    p = st.GammaLambda(sc, gadget)
    # the second half starts from l_0(v) = l(v, 0) with the original strings
    assert p.evaluate(F(1, 2)) == make_config(gadget.out, sc.monoid, [(gadget.l(v, (0, 0)), lab) for v, lab in sc])


# -- metric ------------------------------------------------------------------------------


def test_distance_examples(z2):
    stage, _, m = z2
    sc = st.make_strings(stage, m, [((0, 0), S("[0,1]"), (1,))])
    assert st.config_distance(sc, sc)[0] == 0
    moved = st.make_strings(stage, m, [((F(1, 3), 0), S("[0,1]"), (1,))])
    assert st.config_distance(sc, moved)[0] == F(1, 3)
    half = st.make_strings(stage, m, [((0, 0), S("[0,3/4)"), (1,))])
    empty = LabeledConfig(stage, sc.monoid, ())
    assert st.config_distance(half, empty)[0] == F(3, 4)


def test_one_to_one_solvers_agree():
    rng = random.Random(32)
    stage, _, m = setting(2, copies=1, modulus=3)
    for _ in range(40):
        a, b = (random_strings(rng, stage, m, max_n=5, span=2) for _ in range(2))
        pa, pb = st._particles(a), st._particles(b)
        costs = [[st._star_cost([x], y) for y in pb] for x in pa]
        wa, wb = [x.weight for x in pa], [y.weight for y in pb]
        exh, _ = st.brute_force_matching(costs, wa, wb)
        hun, _ = st.hungarian_matching(costs, wa, wb)
        assert exh == hun
        rep = st.match_particles(a, b)
        assert rep.total == sum(c for _, _, c in rep.groups)


def test_assignment_against_permutations():
    rng = random.Random(33)
    for n in range(1, 7):
        for _ in range(10):
            cost = [[F(rng.randint(-5, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
            assign, total = min_cost_assignment(cost)
            assert sorted(assign) == list(range(n))
            assert total == brute_force_assignment(cost)[1]


def test_collision_aware_coupling_sees_merges(z2):
    stage, _, m = z2
    eps = F(1, 100)
    apart = st.make_strings(stage, m, [((0, 0), S("[0,1)"), (1,)), ((eps, 0), S("[1,2]"), (1,))])
    merged = st.make_strings(stage, m, [((0, 0), S("[0,2]"), (1,))])
    d, rep = st.config_distance(apart, merged)
    assert d == eps
    assert rep.method == "collision-aware"
    d1, _ = st.config_distance(apart, merged, merge=False)
    assert d1 > 1


def test_match_report_json(z2):
    stage, _, m = z2
    a = st.make_strings(stage, m, [((0, 0), S("[0,1]"), (1,))])
    b = st.make_strings(stage, m, [((1, 0), S("[0,1]"), (1,))])
    _, rep = st.config_distance(a, b)
    js = rep.to_json()
    assert js["total"] == "1" and js["groups"] == [[[0], [0], "1"]]


# -- certification -------------------------------------------------------------------------


def test_certify_catalog_paths(z2):
    stage, gadget, m = z2
    sc = st.make_strings(stage, m, [((0, 0), S("[0,1]", "[2,3]"), (1,)), ((1, 2), S("[-1,1/2]"), (1,))])
    for spec in (st.GammaLambda(sc, gadget), st.Vanish(sc), st.Ht(sc, gadget), st.grouplike_certificate(sc, gadget)):
        rep = st.certify_continuity(spec, 64)
        assert rep.passed, rep.to_json()
    x = make_config(stage, m, [((1, 0), (1,)), ((0, 3), (1,))])
    assert st.certify_continuity(st.LambdaGamma(x, gadget), 64).passed


def test_isotopy_through_a_collision_is_flagged(z2):
    stage, _, m = z2
    sc = st.make_strings(stage, m, [((1, 0), S("[0,1]"), (1,)), ((-1, 0), S("[0,1]"), (1,))])
    iso = st.LinearIsotopy(sc, {(1, 0): (-1, 0), (-1, 0): (1, 0)})
    assert iso.collisions()
    rep = st.certify_continuity(iso, 64)
    assert not rep.passed and rep.to_json()["collision"]


def test_isotopy_without_collision_passes(z2):
    stage, _, m = z2
    sc = st.make_strings(stage, m, [((1, 0), S("[0,1]"), (1,)), ((-1, 0), S("[0,1]"), (1,))])
    iso = st.LinearIsotopy(sc, {(1, 0): (1, 2), (-1, 0): (-1, 2)})
    assert iso.collisions() == []
    assert st.certify_continuity(iso, 16).passed


@dataclass
class _Jump(st.PathSpec):
    a: LabeledConfig
    b: LabeledConfig
    kind = "jump"

    def base(self):
        return self.a

    def evaluate(self, t):
        return self.a if t < F(1, 2) else self.b

    def start(self):
        return self.a

    def end(self):
        return self.b


def test_a_jump_fails_the_ratio_check(z2):
    stage, _, m = z2
    a = st.make_strings(stage, m, [((0, 0), S("[0,1]"), (1,))])
    b = st.make_strings(stage, m, [((3, 0), S("[0,1]"), (1,))])
    rep = st.certify_continuity(_Jump(a, b), 64, L=10)
    # deleting and recreating the unit string (cost 2) beats moving it by 3
    assert rep.endpoint_ok and rep.max_ratio == 128 and not rep.passed


def test_closed_vanishing_fails_the_audit(z2):
    stage, _, m = z2

    @dataclass
    class Shrink(_Jump):
        kind = "shrink"

        def evaluate(self, t):
            if t == 1:
                return self.b
            return st.make_strings(stage, m, [((0, 0), iv.IntervalSet((iv.Interval(0, (1 - t) / 2),)), (1,))])

    a = st.make_strings(stage, m, [((0, 0), S("[0,1]"), (1,))])
    rep = st.certify_continuity(Shrink(a, LabeledConfig(stage, a.monoid, ())), 64)
    assert not rep.audit_ok


def test_grouplike_certificate(z2):
    stage, gadget, m = z2
    empty = LabeledConfig(stage, st.make_strings(stage, m, []).monoid, ())
    cert = st.grouplike_certificate(empty, gadget)
    assert all(len(cert.evaluate(F(i, 6))) == 0 for i in range(7))
    one = st.make_strings(stage, m, [((0, 0), S("[0,1]"), (1,))])
    cert = st.grouplike_certificate(one, gadget)
    assert cert.junctions() == {"A/B": True, "B/C": True}
    assert cert.evaluate(1) == LabeledConfig(gadget.out, one.monoid, ())
    assert st.certify_continuity(cert, 64).passed


def test_certificates_on_random_strings():
    rng = random.Random(34)
    stage, gadget, m = setting(2, copies=1, modulus=3)
    for _ in range(6):
        x = random_strings(rng, stage, m, max_n=2, span=2)
        cert = st.grouplike_certificate(x, gadget)
        assert all(cert.junctions().values())
        assert st.certify_continuity(cert, 32).endpoint_ok


def test_corpus_respects_declared_size():
    for x in load_corpus():
        assert len(x) <= 4
        assert all(len(p) <= 2 for _, (p, _) in x)


# -- wedges and cosets ---------------------------------------------------------------------


def _wedge_setting():
    stage, gadget, m = setting(2, copies=1, modulus=3)
    wedge = S0.wedge(S0)
    return stage, gadget, m, wedge


def test_c3_examples():
    stage, gadget, m, wedge = _wedge_setting()
    lab = WedgeLabelPM(wedge, m)
    t = st.make_strings(stage, lab, [((0, 0), S("[0,1]"), lab.pair((0, "s"), (1,)))])
    u, v = st.c3_pair(t, S0, S0)
    assert len(u) == 1 and len(v) == 0
    assert u.labels == [(S("[0,1]"), ("s", (1,)))]
    e_u, e_v = st.c3_pair(LabeledConfig(stage, t.monoid, ()), S0, S0)
    assert len(e_u) == len(e_v) == 0


def test_c3_round_trip_and_equivariance():
    stage, gadget, m, _ = _wedge_setting()
    rng = random.Random(35)
    side = WedgeLabelPM(S0, m)
    for _ in range(30):
        u = random_strings(rng, stage, side, max_n=3)
        v = random_strings(rng, stage, side, max_n=3)
        merged = st.c3_merge(u, v, gadget)
        pu, pv = st.c3_pair(merged, S0, S0)
        assert Counter(pu.labels) == Counter(u.labels)
        assert Counter(pv.labels) == Counter(v.labels)
        for g in stage.group.elements:
            gu, gv = st.c3_pair(g_act(merged, g), S0, S0)
            hu, hv = st.c3_pair(merged, S0, S0)
            assert gu == g_act(hu, g) and gv == g_act(hv, g)


@pytest.mark.parametrize("group", [FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.symmetric(3)])
def test_c4_rho(group):
    stage = regular_rep(group, 1)
    gadget = Gadget(stage)
    m = GroupSubsetPM.cyclic_group(3)
    x = PointedGSet.plain(("*", "x"), "*")
    lab = WedgeLabelPM(x, m)
    rng = random.Random(36)
    for h in subgroups(group):
        cosets = coset_gset(group, h).non_base
        empty = {c: LabeledConfig(stage, st.make_strings(stage, lab, []).monoid, ()) for c in cosets}
        assert len(st.c4_rho(empty, gadget, group, h)) == 0
        for _ in range(4):
            f = {c: random_strings(rng, stage, lab, max_n=2) for c in cosets}
            r = st.c4_rho(f, gadget, group, h)
            assert len(r) == sum(len(v) for v in f.values())
            for c in cosets:
                assert Counter(st.c4_pairing(r, c, x).labels) == Counter(f[c].labels)
            for a in group.elements:
                assert st.c4_rho(st.act_on_map(f, group, h, a), gadget, group, h) == g_act(r, a)


def test_c4_single_coset_retags():
    group = FiniteGroup.cyclic(2)
    stage = regular_rep(group, 1)
    gadget = Gadget(stage)
    lab = WedgeLabelPM(PointedGSet.plain(("*", "x"), "*"), GroupSubsetPM.cyclic_group(2))
    whole = frozenset(group.elements)
    (coset,) = coset_gset(group, whole).non_base
    f = {coset: st.make_strings(stage, lab, [((1, 0), S("[0,1]"), lab.pair("x", (1,)))])}
    r = st.c4_rho(f, gadget, group, whole)
    assert r.labels == [(S("[0,1]"), ((coset, "x"), (1,)))]
