"""JSON loaders for groups, partial monoids, configurations and matrices.

Rationals are written as strings (``"3/4"``) or integers.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import intervals as iv
from .completion import CommutativeMonoid
from .configuration import LabeledConfig, make_config
from .group_rep import FiniteGroup, PointedGSet, UniverseStage, regular_rep
from .linalg import as_fraction
from .monoids import (
    GrassmannQ,
    GroupSubsetPM,
    IntervalMonoid,
    PartialMonoid,
    PointedSetPM,
    TablePM,
    WedgeLabelPM,
    string_labels,
)


class InputError(ValueError):
    """Malformed or inconsistent input file."""


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def data_path(name: str) -> Path:
    return Path(str(resources.files("pstrings") / "data" / name))


def _hashable(x):
    return tuple(_hashable(y) for y in x) if isinstance(x, list) else x


def load_group(obj) -> FiniteGroup:
    try:
        return _load_group(obj)
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad group: {exc}") from exc


def _load_group(obj) -> FiniteGroup:
    if obj is None:
        return FiniteGroup.trivial()
    if "cyclic" in obj:
        return FiniteGroup.cyclic(int(obj["cyclic"]))
    if "symmetric" in obj:
        return FiniteGroup.symmetric(int(obj["symmetric"]))
    if "product" in obj:
        a, b = (_load_group(x) for x in obj["product"])
        return FiniteGroup.product(a, b)
    if "elements" in obj and ("table" in obj or "mul" in obj):
        elems = [_hashable(e) for e in obj["elements"]]
        table = [[_hashable(x) for x in row] for row in obj.get("mul", obj.get("table"))]
        return FiniteGroup.from_table(elems, table, obj.get("name", ""))
    if obj.get("trivial"):
        return FiniteGroup.trivial()
    raise InputError(f"cannot read group from {obj!r}")


def load_pset(obj) -> PointedGSet:
    if "wedge" in obj:
        a, b = (load_pset(x) for x in obj["wedge"])
        return a.wedge(b)
    if "smash" in obj:
        a, b = (load_pset(x) for x in obj["smash"])
        return a.smash(b)
    if obj.get("sphere0"):
        return PointedGSet.plain(("*", "s"), "*")
    elems = tuple(_hashable(e) for e in obj["elements"])
    return PointedGSet.plain(elems, _hashable(obj["basepoint"]))


def _elem(a) -> tuple:
    return tuple(a) if isinstance(a, list) else (a,)


def _action(obj, group: FiniteGroup, convert) -> dict:
    """``{"g": [[a, g.a], ...]}`` keyed by group element names; elements not listed are fixed."""
    index = {repr(n): i for i, n in enumerate(group.names)} | {str(n): i for i, n in enumerate(group.names)}
    out = {g: {} for g in group.elements}
    for name, pairs in obj.items():
        if name not in index:
            raise InputError(f"unknown group element {name!r} in action")
        out[index[name]] = {convert(a): convert(b) for a, b in pairs}
    return out


class _Total(dict):
    def __missing__(self, key):
        return key


def load_monoid(obj) -> PartialMonoid:
    if not isinstance(obj, dict):
        raise InputError("monoid description must be a JSON object")
    kind = obj.get("kind", obj.get("type"))
    try:
        if kind == "group_subset":
            group = load_group(obj["group"]) if "group" in obj else None
            action = None
            if group is not None and "action" in obj:
                action = {g: _Total(t) for g, t in _action(obj["action"], group, _elem).items()}
            return GroupSubsetPM(
                int(obj.get("rank", 0)),
                tuple(obj.get("moduli", ())),
                tuple(_elem(a) for a in obj["subset"]),
                group=group,
                action=action,
            )
        if kind == "smash":
            from .monoids import SmashPM

            return SmashPM(load_monoid(obj["left"]), load_monoid(obj["right"]))
        if kind == "cyclic":
            return GroupSubsetPM.cyclic_group(int(obj["n"]))
        if kind == "abelian":
            return GroupSubsetPM.finite_abelian([int(m) for m in obj["moduli"]])
        if kind == "pointed_set":
            return PointedSetPM(load_pset(obj))
        if kind == "grassmann":
            return GrassmannQ(int(obj["n"]))
        if kind == "interval":
            return IntervalMonoid(int(obj.get("grid", 2)), int(obj.get("span", 6)))
        if kind == "wedge_label":
            return WedgeLabelPM(load_pset(obj["pset"]), load_monoid(obj["inner"]))
        if kind == "strings":
            return string_labels(load_monoid(obj["inner"]))
        if kind == "table":
            carrier = tuple(_hashable(a) for a in obj["carrier"])
            zero = _hashable(obj["zero"])
            if "binary" in obj:
                add = {(_hashable(a), _hashable(b)): _hashable(s) for a, b, s in obj["binary"]}
                return TablePM.from_binary(carrier, zero, add, int(obj.get("max_arity", 6)))
            sums = {}
            for tup, s in obj["sums"]:
                key = tuple(sorted((_hashable(a) for a in tup), key=repr))
                sums[key] = _hashable(s)
            return TablePM(carrier, zero, sums)
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad {kind} monoid: {exc}") from exc
    raise InputError(f"unknown monoid type {kind!r}")


def load_commutative(obj) -> CommutativeMonoid:
    """``{"type": "commutative", "cyclic": n}`` or an explicit table."""
    try:
        if "cyclic" in obj:
            return CommutativeMonoid.cyclic(int(obj["cyclic"]))
        names = [_hashable(x) for x in obj["elements"]]
        table = {a: {b: _hashable(row[j]) for j, b in enumerate(names)} for a, row in zip(names, obj["table"])}
        return CommutativeMonoid.from_table(names, _hashable(obj["unit"]), table)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad commutative monoid: {exc}") from exc


def load_stage(obj, group: FiniteGroup | None = None) -> UniverseStage:
    g = group if group is not None else load_group(obj.get("group"))
    return regular_rep(g, int(obj.get("copies", 1)))


def _point(raw) -> tuple:
    return tuple(as_fraction(x) for x in raw)


def load_config(obj, group: FiniteGroup | None = None) -> LabeledConfig:
    """Particles carry ``point`` and ``label``; with ``intervals`` the result is a string configuration."""
    try:
        stage = load_stage(obj, group)
        m = load_monoid(obj["monoid"])
        parts = obj.get("particles", [])
        strings = obj.get("strings", any("intervals" in p for p in parts))
        if strings:
            lm = string_labels(m)
            raw = [
                (_point(p["point"]), lm.pair(iv.normalize([iv.Interval.from_json(j) for j in p["intervals"]]), m.label_from_json(p["label"])))
                for p in parts
            ]
            return make_config(stage, lm, raw)
        return make_config(stage, m, [(_point(p["point"]), m.label_from_json(p["label"])) for p in parts])
    except InputError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad configuration: {exc}") from exc


def load_targets(obj) -> dict:
    try:
        return {_point(p["point"]): _point(p["target"]) for p in obj.get("particles", [])}
    except KeyError as exc:
        raise InputError(f"isotopy needs a target for every particle ({exc})") from exc


def load_matrix(obj) -> list[list[int]]:
    rows = obj.get("rows") if isinstance(obj, dict) else None
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise InputError("matrix file needs {'rows': [[ints]]}")
    if rows and len({len(r) for r in rows}) != 1:
        raise InputError("matrix rows have different lengths")
    if any(isinstance(x, bool) or not isinstance(x, int) for r in rows for x in r):
        raise InputError("matrix entries must be integers")
    return rows


def config_to_json(c: LabeledConfig) -> list:
    from .monoids import is_string_labels

    out = []
    for v, a in c:
        rec = {"point": [str(x) for x in v]}
        if is_string_labels(c.monoid):
            rec["intervals"] = [str(j) for j in a[0]]
            rec["label"] = c.monoid.right.label_json(a[1])
        else:
            rec["label"] = c.monoid.label_json(a)
        out.append(rec)
    return out


def to_jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    return x


def load_corpus() -> list[LabeledConfig]:
    """The bundled regression corpus of string configurations."""
    return [load_config(obj) for obj in read_json(data_path("corpus.json"))["configs"]]


def corpus_settings() -> list[tuple[str, list[LabeledConfig]]]:
    """Corpus entries grouped by (group, copies, label monoid), loaded against one shared monoid."""
    groups: dict[str, list] = {}
    for obj in read_json(data_path("corpus.json"))["configs"]:
        key = json.dumps({k: obj.get(k) for k in ("group", "copies", "monoid")}, sort_keys=True)
        groups.setdefault(key, []).append(obj)
    return [(key, [load_config(o) for o in objs]) for key, objs in sorted(groups.items())]
