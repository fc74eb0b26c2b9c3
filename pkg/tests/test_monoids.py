import itertools
import random
from fractions import Fraction as F

import pytest

from pstrings import intervals as iv
from pstrings.group_rep import FiniteGroup, PointedGSet
from pstrings.io import data_path, load_monoid, read_json
from pstrings.monoids import (
    BASE,
    GrassmannQ,
    GroupSubsetPM,
    NotInCarrier,
    PointedSetPM,
    SearchBudgetExceeded,
    SmashPM,
    TablePM,
    WedgeLabelPM,
    check_axioms,
    equivariance_check,
    homotopy_inversion,
    interval_monoid,
    random_interval_set,
    set_partitions,
    smash_sum,
    smash_summable,
    string_labels,
    sum_partial,
)

S = iv.IntervalSet.parse
S0 = PointedGSet.plain(("*", "s"), "*")


def fixture(name):
    return load_monoid(read_json(data_path(f"fixtures/{name}.json")))


def test_set_partitions_are_counted_by_bell_numbers():
    assert [sum(1 for _ in set_partitions(list(range(n)))) for n in range(6)] == [1, 1, 2, 5, 15, 52]


def test_group_subset_sums():
    m = GroupSubsetPM.integers(range(4))
    assert sum_partial(m, [(1,), (2,)]) == (3,)
    assert sum_partial(m, [(2,), (3,)]) is None
    assert sum_partial(m, []) == (0,)
    with pytest.raises(NotInCarrier):
        m.summable([(7,)])


def test_whole_group_is_a_total_monoid():
    m = GroupSubsetPM.finite_abelian([2, 3])
    for a, b in itertools.product(m.elements(), repeat=2):
        assert m.sum([a, b]) == m.add(a, b)


def test_pointed_set_folding():
    m = PointedSetPM(PointedGSet.plain(("*", "x", "y"), "*"))
    assert m.sum(["x", "*"]) == "x"
    assert m.sum(["x", "y"]) is None


def test_grassmann_orthogonal_sums():
    m = GrassmannQ(2)
    e1, e2 = m.span((1, 0)), m.span((0, 1))
    assert m.sum([e1, e2]) == m.span((1, 0), (0, 1))
    assert m.sum([e1, m.span((1, 1))]) is None


def test_interval_monoid_sums():
    m = interval_monoid()
    assert m.sum([]) == iv.EMPTY
    assert m.sum([S("[0,1)"), S("[1,2]")]) == S("[0,2]")


@pytest.mark.parametrize(
    "m",
    [
        GroupSubsetPM.integers(range(4)),
        PointedSetPM(PointedGSet.plain(("*", "a", "b"), "*")),
        WedgeLabelPM(S0.wedge(S0), GroupSubsetPM.cyclic_group(2)),
        WedgeLabelPM(PointedGSet.plain(("*", "a", "b"), "*"), GroupSubsetPM.integers(range(4))),
        GroupSubsetPM.finite_abelian([2, 2]),
    ],
    ids=["subset0123", "pointed3", "wedge-s0s0-z2", "wedge3-0123", "klein"],
)
def test_finite_monoids_pass_exhaustively(m):
    rep = check_axioms(m, max_arity=4)
    assert rep.mode == "exhaustive"
    assert rep.passed, rep.violations[:3]


@pytest.mark.parametrize("m", [GrassmannQ(3), interval_monoid(), string_labels(GroupSubsetPM.cyclic_group(2))], ids=["grassmann3", "interval", "strings"])
def test_infinite_monoids_pass_randomized(m):
    rep = check_axioms(m, max_arity=4, samples=1500, seed=11)
    assert rep.mode == "random"
    assert rep.passed, rep.violations[:3]


def test_corrupted_table_is_caught():
    rep = check_axioms(fixture("corrupted_table"), max_arity=3)
    assert not rep.passed
    assert any(v["axiom"] == "(3)" for v in rep.violations)


class _DropsOnePair(GroupSubsetPM):
    """{0..3} with (1,1) removed from the summable pairs, (1,1,0) kept."""

    def _summable(self, tup):
        if tup == ((1,), (1,)):
            return False
        return super()._summable(tup)


def test_removing_a_pair_but_keeping_the_padded_pair_is_caught():
    m = _DropsOnePair(1, (), tuple((i,) for i in range(4)))
    rep = check_axioms(m, max_arity=3)
    assert any(v["axiom"] == "(3)" and v["tuple"] == repr(((1,), (1,), (0,))) for v in rep.violations)


def test_absorbing_table_from_binary():
    m = fixture("absorbing")
    assert m.sum([1, 1, 1]) == "inf"
    assert check_axioms(m, max_arity=4).passed


def test_equivariance_examples():
    assert equivariance_check(GroupSubsetPM.integers(range(4))).passed
    assert equivariance_check(fixture("negation")).passed
    assert not equivariance_check(fixture("corrupted_action")).passed


def test_smash_distributivity_schemas():
    m = SmashPM(GroupSubsetPM.integers(range(4)), GroupSubsetPM.integers(range(4)))
    c1, c2, d = (1,), (2,), (1,)
    assert smash_sum(m, [(c1, d), (c2, d)]) == ((3,), d)
    assert smash_sum(m, [(c1, (1,)), (c1, (2,))]) == (c1, (3,))
    assert not smash_summable(m, [((1,), (2,)), ((2,), (3,))])
    assert smash_sum(m, [BASE, (c1, d)]) == (c1, d)


def test_smash_budget_is_reported_separately():
    m = SmashPM(GroupSubsetPM.integers(range(9)), GroupSubsetPM.integers(range(9)), budget=3)
    tup = [((1,), (1,))] * 4 + [((2,), (1,))] * 2
    with pytest.raises(SearchBudgetExceeded):
        m.summable(tup)


def confluence_counterexamples(m, max_arity=4):
    out = []
    for n in range(2, max_arity + 1):
        for tup in itertools.combinations_with_replacement(m.elements(), n):
            if len(m.reductions(tup)) > 1:
                out.append(tup)
    return out


def test_smash_reduction_confluent_without_competing_schemas():
    m = SmashPM(GroupSubsetPM.integers(range(3)), PointedSetPM(PointedGSet.plain(("*", "a", "b"), "*")))
    assert confluence_counterexamples(m) == []


def test_smash_reduction_counterexample_is_reported():
    # 1^1 + 1^1 is 2^1 by the first schema and 1^0 = 0 by the second
    m = SmashPM(GroupSubsetPM.integers(range(3)), GroupSubsetPM.cyclic_group(2))
    bad = confluence_counterexamples(m)
    pair = (((1,), (1,)), ((1,), (1,)))
    assert pair in bad
    assert m.reductions(pair) == {((2,), (1,)), BASE}


def test_string_labels_reduce_confluently():
    # an interval set is never summable with itself, so the two schemas never compete
    lm = string_labels(GroupSubsetPM.cyclic_group(2))
    rng = random.Random(13)
    for _ in range(400):
        tup = lm.random_tuple(rng, rng.randint(2, 4))
        assert len(lm.reductions(tup)) <= 1, tup


def test_homotopy_inversion():
    a = (1,)
    assert homotopy_inversion((S("[0,1]"), a)) == (S("(-1,0)"), a)
    lm = string_labels(GroupSubsetPM.cyclic_group(2))
    rng = random.Random(12)
    for _ in range(200):
        x = lm.pair(random_interval_set(rng, 2, general_position=True), (1,))
        y = lm.pair(random_interval_set(rng, 2, general_position=True), (1,))
        if x is BASE or y is BASE:
            continue
        ends = lambda z: {e for j in z[0] for e in (j.lo, j.hi)}
        if ends(x) & ends(y):
            continue  # shared endpoints: tau can glue or separate components
        assert homotopy_inversion(homotopy_inversion(x)) == x
        assert lm.summable([x, y]) == lm.summable([homotopy_inversion(x), homotopy_inversion(y)])


def test_tau_can_change_summability_at_shared_endpoints():
    lm = string_labels(GroupSubsetPM.cyclic_group(2))
    x, y = (S("[0,1]"), (1,)), (S("[1,2]"), (1,))
    assert not lm.summable([x, y])
    assert lm.summable([homotopy_inversion(x), homotopy_inversion(y)])


def test_wedge_label_sums():
    m = WedgeLabelPM(S0.wedge(S0), GroupSubsetPM.cyclic_group(2))
    a, b = m.elements()[1], m.elements()[2]
    assert a[0] != b[0]
    assert m.sum([a, b]) is None
    assert m.sum([a, a]) is BASE
    # x^1 + x^1 = x^0 = 0 by distributivity, so y^1 survives
    assert m.sum([a, a, b]) == b


def test_wedge_label_matches_smash_with_folding():
    x = PointedGSet.plain(("*", "a", "b"), "*")
    inner = GroupSubsetPM.cyclic_group(2)
    w, s = WedgeLabelPM(x, inner), SmashPM(PointedSetPM(x), inner)
    for n in range(5):
        for tup in itertools.combinations_with_replacement(w.elements(), n):
            assert w.sum(tup) == s.sum(tup), tup


def test_json_kind_and_type_keys_agree():
    a = load_monoid({"kind": "cyclic", "n": 3})
    b = load_monoid({"type": "cyclic", "n": 3})
    assert a.elements() == b.elements()
