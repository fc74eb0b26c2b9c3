"""Command line front end.

Every command prints one JSON report (with its run manifest) to stdout.
Exit codes: 0 success, 1 mathematical failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from . import completion as cp
from .configuration import DuplicatePoint, Gadget, StageMismatch, UndefinedSum, is_fixed, orbit
from .group_rep import NotASubgroup, subgroups
from .io import (
    InputError,
    config_to_json,
    load_commutative,
    load_config,
    load_group,
    load_matrix,
    load_monoid,
    load_targets,
    read_json,
    to_jsonable,
)
from .monoids import check_axioms, equivariance_check, is_string_labels
from .snf import check_smith, smith_normal_form
from . import strings as st

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
TIMESTAMP_FIELD = "generated_at"


def _digest(path: str) -> str:
    try:
        return hashlib.sha256(Path(path).read_bytes()).hexdigest()
    except OSError:
        return ""


def manifest(command: str, inputs: list[str], params: dict) -> dict:
    return {
        "command": command,
        "inputs": [{"path": p, "sha256": _digest(p)} for p in inputs],
        "parameters": params,
        "version": __version__,
    }


def cmd_axioms(args) -> tuple[int, dict]:
    m = load_monoid(read_json(args.monoid_file))
    rep = check_axioms(m, max_arity=args.arity, budget=args.budget, samples=args.samples, seed=args.seed)
    eq = equivariance_check(m, max_arity=min(args.arity, 3), budget=args.budget, seed=args.seed)
    ok = rep.passed and eq.passed
    return (EXIT_OK if ok else EXIT_FAIL), {"axioms": rep.to_json(), "equivariance": eq.to_json(), "passed": ok}


def cmd_completion(args) -> tuple[int, dict]:
    m = load_monoid(read_json(args.monoid_file))
    try:
        return EXIT_OK, cp.completion_report(m, args.arity)
    except cp.InfiniteCarrier as exc:
        raise InputError(str(exc)) from exc


def _path_spec(kind: str, obj: dict, config) -> st.PathSpec:
    gadget = Gadget(config.stage)
    strings = is_string_labels(config.monoid)
    if kind == "lambda-gamma":
        if strings:
            raise InputError("lambda-gamma expects a configuration of labeled particles")
        return st.LambdaGamma(config, gadget)
    if not strings:
        raise InputError(f"{kind} expects a string configuration")
    if kind == "gamma-lambda":
        return st.GammaLambda(config, gadget)
    if kind == "ht":
        return st.Ht(config, gadget)
    if kind == "vanish":
        return st.Vanish(config)
    if kind == "inverse":
        return st.grouplike_certificate(config, gadget)
    if kind == "isotopy":
        return st.LinearIsotopy(config, load_targets(obj), merge_at_end=bool(obj.get("merge_at_end", False)))
    raise InputError(f"unknown path kind {kind!r}")


def cmd_homotopy(args) -> tuple[int, dict]:
    obj = read_json(args.config_file)
    config = load_config(obj)
    try:
        spec = _path_spec(args.path, obj, config)
    except st.DomainError as exc:
        raise InputError(str(exc)) from exc
    report = st.certify_continuity(spec, args.samples, args.lipschitz)
    out = report.to_json()
    if isinstance(spec, st.InverseCertificate):
        out["junctions"] = spec.junctions()
        out["reaches_empty"] = len(spec.evaluate(1)) == 0
    return (EXIT_OK if report.passed else EXIT_FAIL), out


def cmd_certify_inverse(args) -> tuple[int, dict]:
    args.path = "inverse"
    return cmd_homotopy(args)


def _parse_name(token: str):
    try:
        val = json.loads(token)
    except json.JSONDecodeError:
        return token
    return tuple(val) if isinstance(val, list) else val


def _member(token: str, index: dict, order: int) -> int:
    """An element name, or failing that an integer index into the element list."""
    name = _parse_name(token)
    if name in index:
        return index[name]
    if isinstance(name, int) and 0 <= name < order:
        return name
    raise InputError(f"unknown group element {token!r}")


def cmd_orbit(args) -> tuple[int, dict]:
    group = load_group(read_json(args.group_file))
    try:
        config = load_config(read_json(args.config_file), group)
    except StageMismatch as exc:
        raise InputError(str(exc)) from exc
    index = {n: i for i, n in enumerate(group.names)}
    if args.subgroup:
        subs = [frozenset(_member(t.strip(), index, group.order) for t in s.split(",") if t.strip()) for s in args.subgroup]
    else:
        subs = subgroups(group)
    verdicts = []
    for h in subs:
        try:
            fixed = is_fixed(config, h)
        except NotASubgroup as exc:
            raise InputError(str(exc)) from exc
        verdicts.append({"subgroup": [repr(group.names[i]) for i in sorted(h)], "fixed": fixed})
    orb = orbit(config)
    return EXIT_OK, {
        "group": group.name,
        "orbit_size": len(orb),
        "orbit": [config_to_json(c) for c in orb],
        "fixed": verdicts,
    }


def cmd_nerve(args) -> tuple[int, dict]:
    obj = read_json(args.monoid_file)
    if obj.get("type") == "commutative":
        rep = cp.bar_homology(load_commutative(obj))
        ok = rep.contractible and rep.agrees
        return (EXIT_OK if ok else EXIT_FAIL), rep.to_json()
    m = load_monoid(obj)
    try:
        h0, h1 = cp.nerve_Q_homology(m, args.p_bound)
    except (cp.BoundExceeded, cp.InfiniteCarrier) as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK, {"H0": h0.to_json(), "H1": h1.to_json(), "p_bound": args.p_bound, "chain_degrees": 2}


def cmd_snf(args) -> tuple[int, dict]:
    rows = load_matrix(read_json(args.matrix_file))
    if not rows:
        raise InputError("empty matrix")
    res = smith_normal_form(rows)
    problems = check_smith(rows, res)
    return (EXIT_OK if not problems else EXIT_FAIL), {**res.to_json(), "diagonal": res.diagonal, "problems": problems}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pstrings", description="Partial monoids, string spaces and group completion checks.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--out", help="also write the report to this file")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("axioms", help="check the partial-monoid axioms")
    a.add_argument("monoid_file")
    a.add_argument("--arity", type=int, default=4)
    a.add_argument("--budget", type=int, default=100_000)
    a.add_argument("--samples", type=int, default=10_000)
    a.add_argument("--seed", type=int, default=0)
    a.set_defaults(func=cmd_axioms)

    c = sub.add_parser("completion", help="Grothendieck group of the component monoid")
    c.add_argument("monoid_file")
    c.add_argument("--arity", type=int, default=cp.DEFAULT_ARITY)
    c.set_defaults(func=cmd_completion)

    h = sub.add_parser("homotopy", help="certify a catalog homotopy")
    h.add_argument("config_file")
    h.add_argument("--path", default="gamma-lambda", choices=["gamma-lambda", "lambda-gamma", "ht", "vanish", "inverse", "isotopy"])
    h.add_argument("--samples", type=int, default=64)
    h.add_argument("--lipschitz", default=None, help="bound L as a rational; default from the path kind")
    h.set_defaults(func=cmd_homotopy)

    ci = sub.add_parser("certify-inverse", help="certify mu(x, tau x) ~ empty")
    ci.add_argument("config_file")
    ci.add_argument("--samples", type=int, default=64)
    ci.add_argument("--lipschitz", default=None)
    ci.set_defaults(func=cmd_certify_inverse)

    o = sub.add_parser("orbit", help="orbit and fixed-point verdicts of a configuration")
    o.add_argument("config_file")
    o.add_argument("group_file")
    o.add_argument("--subgroup", action="append", help="comma-separated element names or indices; repeatable")
    o.set_defaults(func=cmd_orbit)

    n = sub.add_parser("nerve", help="H0 and H1 of the nerve of Q(M), or bar constructions")
    n.add_argument("monoid_file")
    n.add_argument("--p-bound", type=int, default=2)
    n.set_defaults(func=cmd_nerve)

    s = sub.add_parser("snf", help="Smith normal form with certificates")
    s.add_argument("matrix_file")
    s.set_defaults(func=cmd_snf)
    return p


def _params(args) -> dict:
    skip = {"func", "command", "out"}
    params = {}
    for k, v in sorted(vars(args).items()):
        if k in skip or k.endswith("_file"):
            continue
        params[k] = v
    return params


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = [v for k, v in sorted(vars(args).items()) if k.endswith("_file")]
    man = manifest(args.command, inputs, _params(args))
    try:
        if getattr(args, "lipschitz", None) is not None:
            from fractions import Fraction

            try:
                args.lipschitz = Fraction(args.lipschitz)
            except ValueError as exc:
                raise InputError(f"bad Lipschitz bound {args.lipschitz!r}") from exc
        code, result = args.func(args)
    except (InputError, StageMismatch, DuplicatePoint, UndefinedSum, NotASubgroup) as exc:
        code, result = EXIT_INPUT, {"error": str(exc)}
    report = {
        "manifest": man,
        "exit_code": code,
        "result": to_jsonable(result),
        TIMESTAMP_FIELD: datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
