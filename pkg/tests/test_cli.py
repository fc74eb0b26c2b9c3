import json

import pytest

from pstrings import cli

from helpers import CLI_RUNS, FIXTURES, cli_argv, run_cli


def invoke(capsys, *args):
    code = cli.main(cli_argv(list(args)))
    report = json.loads(capsys.readouterr().out)
    assert report["exit_code"] == code
    return code, report


@pytest.mark.parametrize(
    "args,expected",
    [
        (["axioms", "group_subset_0123.json"], 0),
        (["axioms", "pointed_3.json"], 0),
        (["axioms", "negation.json"], 0),
        (["axioms", "corrupted_table.json"], 1),
        (["axioms", "corrupted_action.json"], 1),
        (["completion", "absorbing.json"], 0),
        (["completion", "interval.json"], 2),
        (["homotopy", "two_strings.json"], 0),
        (["homotopy", "two_strings.json", "--path", "ht"], 0),
        (["homotopy", "one_string.json", "--path", "vanish"], 0),
        (["homotopy", "colliding_isotopy.json", "--path", "isotopy"], 1),
        (["homotopy", "one_string.json", "--path", "lambda-gamma"], 2),
        (["homotopy", "two_strings.json", "--lipschitz", "1/1000"], 1),
        (["homotopy", "two_strings.json", "--lipschitz", "abc"], 2),
        (["certify-inverse", "one_string.json"], 0),
        (["orbit", "orbit_swap.json", "group_z2.json"], 0),
        (["orbit", "orbit_empty.json", "group_s3.json"], 0),
        (["orbit", "orbit_swap.json", "group_s3.json"], 2),
        (["nerve", "trivial_monoid.json"], 0),
        (["nerve", "bar_z2.json"], 0),
        (["snf", "matrix_2468.json"], 0),
        (["snf", "missing.json"], 2),
    ],
)
def test_exit_codes(capsys, args, expected):
    code, _ = invoke(capsys, *args)
    assert code == expected


def test_manifest(capsys):
    _, rep = invoke(capsys, "snf", "matrix_2468.json")
    man = rep["manifest"]
    assert man["command"] == "snf" and man["version"]
    assert man["inputs"][0]["path"].endswith("matrix_2468.json") and len(man["inputs"][0]["sha256"]) == 64
    assert rep["result"]["diagonal"] == [2, 4] and rep["result"]["problems"] == []
    assert "generated_at" in rep


def test_orbit_verdicts(capsys):
    _, rep = invoke(capsys, "orbit", "orbit_swap.json", "group_z2.json")
    assert rep["result"]["orbit_size"] == 1
    assert all(v["fixed"] for v in rep["result"]["fixed"])
    _, rep = invoke(capsys, "orbit", "orbit_noninvariant.json", "group_z2.json", "--subgroup", "0,1")
    assert rep["result"]["orbit_size"] == 2
    assert rep["result"]["fixed"] == [{"fixed": False, "subgroup": ["0", "1"]}]
    code, _ = invoke(capsys, "orbit", "orbit_swap.json", "group_z2.json", "--subgroup", "1")
    assert code == 2


def test_completion_report(capsys):
    _, rep = invoke(capsys, "completion", "cyclic_2.json")
    res = rep["result"]
    assert (res["rank"], res["torsion"], res["arity_bound"]) == (0, [2], 4)
    assert res["stable_under_bound_increase"]


def test_homotopy_report(capsys):
    _, rep = invoke(capsys, "certify-inverse", "one_string.json")
    res = rep["result"]
    assert res["passed"] and res["reaches_empty"] and all(res["junctions"].values())
    _, rep = invoke(capsys, "homotopy", "colliding_isotopy.json", "--path", "isotopy")
    assert rep["result"]["collision"]


def test_nerve_reports(capsys):
    _, rep = invoke(capsys, "nerve", "bar_z2.json")
    res = rep["result"]
    assert res["H1_BA"] == {"rank": 0, "torsion": [2]} and res["H1_matches_grothendieck"]
    _, rep = invoke(capsys, "nerve", "trivial_monoid.json")
    assert rep["result"]["H0"] == {"rank": 1, "torsion": []}


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code = cli.main(["--out", str(target), "snf", str(FIXTURES / "matrix_2468.json")])
    printed = capsys.readouterr().out
    assert code == 0 and target.read_text() == printed


def test_reports_do_not_depend_on_hash_seed():
    for run in CLI_RUNS[:3]:
        c1, r1 = run_cli(run, "1")
        c2, r2 = run_cli(run, "12345")
        r1.pop(cli.TIMESTAMP_FIELD)
        r2.pop(cli.TIMESTAMP_FIELD)
        assert c1 == c2 and r1 == r2


def test_group_file_with_multiplication_table(capsys, tmp_path):
    group = tmp_path / "g.json"
    group.write_text(json.dumps({"elements": ["e", "s"], "mul": [["e", "s"], ["s", "e"]], "name": "C2"}))
    code, rep = invoke(capsys, "orbit", str(FIXTURES / "orbit_swap.json"), str(group), "--subgroup", "0,1")
    assert code == 0 and rep["result"]["fixed"][0]["fixed"]
    group.write_text(json.dumps({"elements": ["e", "s"], "mul": [["e", "s"], ["s", "x"]]}))
    code, _ = invoke(capsys, "orbit", str(FIXTURES / "orbit_swap.json"), str(group))
    assert code == 2
