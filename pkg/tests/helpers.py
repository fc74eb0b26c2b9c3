"""Random generators shared by the test modules."""

from __future__ import annotations

import json
import os
import random
import subprocess
import sys
from pathlib import Path
from fractions import Fraction

from pstrings import intervals as iv
from pstrings.configuration import Gadget, LabeledConfig, make_config
from pstrings.group_rep import FiniteGroup, regular_rep
from pstrings.monoids import GroupSubsetPM, random_interval_set, string_labels
from pstrings.strings import make_strings


def random_point(rng: random.Random, dim: int, span: int = 3) -> tuple:
    return tuple(Fraction(rng.randint(-span * 2, span * 2), 2) for _ in range(dim))


def random_points(rng, dim, n, span=3) -> list:
    seen = set()
    while len(seen) < n:
        seen.add(random_point(rng, dim, span))
    return sorted(seen)


def random_particles(rng, stage, m, max_n=4, span=3) -> LabeledConfig:
    nonzero = [a for a in m.elements() if not m.is_zero(a)]
    n = rng.randint(0, max_n)
    return make_config(stage, m, [(v, rng.choice(nonzero)) for v in random_points(rng, stage.dim, n, span)])


def random_closed_set(rng, max_components=2) -> iv.IntervalSet:
    k = rng.randint(1, max_components)
    pts = sorted(rng.sample(range(-8, 9), 2 * k))
    return iv.IntervalSet(tuple(iv.Interval(Fraction(a, 2), Fraction(b, 2)) for a, b in zip(pts[::2], pts[1::2])))


def random_nonempty_set(rng, max_components=2) -> iv.IntervalSet:
    while True:
        p = random_interval_set(rng, max_components, general_position=True)
        if p:
            return p


def random_strings(rng, stage, m, max_n=3, plus=False, span=3):
    nonzero = [a for a in m.elements() if not m.is_zero(a)]
    n = rng.randint(0, max_n)
    gen = random_closed_set if plus else random_nonempty_set
    return make_strings(stage, m, [(v, gen(rng), rng.choice(nonzero)) for v in random_points(rng, stage.dim, n, span)])


def setting(order: int, copies: int = 2, modulus: int = 3):
    g = FiniteGroup.cyclic(order) if order > 1 else FiniteGroup.trivial()
    stage = regular_rep(g, copies)
    return stage, Gadget(stage), GroupSubsetPM.cyclic_group(modulus)


FIXTURES = Path(__file__).resolve().parents[1] / "src" / "pstrings" / "data" / "fixtures"

# one representative invocation per command
CLI_RUNS = [
    ["axioms", "group_subset_0123.json"],
    ["completion", "absorbing.json"],
    ["homotopy", "two_strings.json", "--path", "gamma-lambda"],
    ["homotopy", "one_string.json", "--path", "vanish"],
    ["certify-inverse", "one_string.json"],
    ["orbit", "orbit_swap.json", "group_z2.json"],
    ["nerve", "trivial_monoid.json"],
    ["nerve", "bar_z2.json"],
    ["snf", "matrix_2468.json"],
]


def cli_argv(run: list[str]) -> list[str]:
    return [str(FIXTURES / a) if a.endswith(".json") else a for a in run]


def run_cli(run: list[str], hashseed: str = "0") -> tuple[int, dict]:
    """Run the CLI in a fresh interpreter; returns (exit code, report)."""
    env = {**os.environ, "PYTHONHASHSEED": hashseed}
    proc = subprocess.run([sys.executable, "-m", "pstrings", *cli_argv(run)], capture_output=True, text=True, env=env)
    return proc.returncode, json.loads(proc.stdout)
