"""File formats: point sets, groups, actions, lifts, traces, reports.

Point sets travel as plain CSV (one point per row) or JSON arrays.  Groups
are JSON {order, mult row-major, gens}; actions are JSON {dim, generators:
[{label, matrix, vector}], relations}; lifts are JSON {breakpoints:
[[num, den], ...], values: [[num, den], ...]}.  Reports are written with
sorted keys and a fixed layout so that identical runs produce identical
bytes.
"""

from __future__ import annotations

import csv
import dataclasses
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .actions import AffineAction
from .errors import InputError
from .groups import FiniteGroup
from .homeo import PLLift
from .spaces import hilbert

__all__ = [
    "load_points",
    "save_points",
    "load_group",
    "save_group",
    "load_action",
    "save_action",
    "load_lift",
    "save_lift",
    "write_csv",
    "to_jsonable",
    "write_report",
]


def load_points(path) -> np.ndarray:
    """Point set from CSV (one point per row) or a JSON array of arrays."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from exc
        try:
            pts = np.asarray(data, dtype=float)
        except (TypeError, ValueError) as exc:
            raise InputError(f"{path}: not a rectangular numeric array") from exc
        if pts.ndim == 1:
            pts = pts[None, :]
        if pts.ndim != 2 or pts.size == 0 or not np.all(np.isfinite(pts)):
            raise InputError(f"{path}: expected a nonempty 2d finite array")
        return pts
    rows = []
    width = None
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                vals = [float(c) for c in row]
            except ValueError:
                bad = next(c for c in row if not _is_float(c))
                raise InputError(f"{path}:{lineno}: bad number {bad.strip()!r}")
            if width is None:
                width = len(vals)
            elif len(vals) != width:
                raise InputError(
                    f"{path}:{lineno}: expected {width} columns, found {len(vals)}"
                )
            if not all(np.isfinite(v) for v in vals):
                raise InputError(f"{path}:{lineno}: non-finite value")
            rows.append(vals)
    if not rows:
        raise InputError(f"{path}: no points found")
    return np.asarray(rows, dtype=float)


def _is_float(tok: str) -> bool:
    try:
        float(tok)
        return True
    except ValueError:
        return False


def save_points(path, points) -> None:
    pts = np.asarray(points, dtype=float)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        for row in pts:
            w.writerow([repr(float(v)) for v in row])


def load_group(path) -> FiniteGroup:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    try:
        order = int(data["order"])
        flat = list(data["mult"])
        gens = tuple(int(s) for s in data["gens"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: group file needs order, mult, gens") from exc
    if len(flat) != order * order:
        raise InputError(f"{path}: mult table has {len(flat)} entries, need order^2")
    mult = np.asarray(flat, dtype=np.int32).reshape(order, order)
    if np.any(mult < 0) or np.any(mult >= order):
        raise InputError(f"{path}: mult entries out of range")
    idx = np.arange(order)
    ident = [e for e in range(order) if np.array_equal(mult[e], idx) and np.array_equal(mult[:, e], idx)]
    if len(ident) != 1:
        raise InputError(f"{path}: table has no unique identity")
    e = ident[0]
    inv = np.full(order, -1, dtype=np.int32)
    for g in range(order):
        hits = np.nonzero(mult[g] == e)[0]
        if hits.size != 1 or mult[hits[0], g] != e:
            raise InputError(f"{path}: element {g} lacks a two-sided inverse")
        inv[g] = hits[0]
    name = str(data.get("name", path.stem))
    return FiniteGroup(order, mult, inv, e, gens, name=name)


def save_group(path, G: FiniteGroup) -> None:
    payload = {
        "order": G.order,
        "mult": [int(v) for v in G.mult.ravel()],
        "gens": [int(s) for s in G.gens],
        "name": G.name,
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True) + "\n")


def load_action(path) -> AffineAction:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    try:
        dim = int(data["dim"])
        gens = list(data["generators"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: action file needs dim and generators") from exc
    linear = {}
    translation = {}
    for i, g in enumerate(gens):
        try:
            label = str(g["label"])
            linear[label] = np.asarray(g["matrix"], dtype=float)
            translation[label] = np.asarray(g["vector"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{path}: generator {i} needs label, matrix, vector") from exc
    relations = tuple(data.get("relations", ()))
    return AffineAction(hilbert(dim), linear, translation, relations)


def save_action(path, a: AffineAction) -> None:
    payload = {
        "dim": a.space.dim,
        "generators": [
            {
                "label": s,
                "matrix": [[float(v) for v in row] for row in a.linear[s]],
                "vector": [float(v) for v in a.translation[s]],
            }
            for s in a.labels
        ],
        "relations": [" ".join(l if p == 1 else f"{l}^-1" for l, p in w) for w in a.relations],
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True) + "\n")


def _pairs_to_fracs(pairs, what, path):
    out = []
    for p in pairs:
        try:
            num, den = p
            out.append(Fraction(int(num), int(den)))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{path}: bad rational in {what}: {p!r}") from exc
    return tuple(out)


def load_lift(path) -> PLLift:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    if "breakpoints" not in data or "values" not in data:
        raise InputError(f"{path}: lift file needs breakpoints and values")
    bps = _pairs_to_fracs(data["breakpoints"], "breakpoints", path)
    vals = _pairs_to_fracs(data["values"], "values", path)
    return PLLift(bps, vals)


def save_lift(path, f: PLLift) -> None:
    payload = {
        "breakpoints": [[x.numerator, x.denominator] for x in f.breakpoints],
        "values": [[v.numerator, v.denominator] for v in f.values],
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True) + "\n")


def write_csv(path, header, rows) -> None:
    """Rows of numbers (or strings) with a one-line header."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])


def _cell(v):
    if isinstance(v, (np.floating, float)):
        return repr(float(v))
    if isinstance(v, (np.integer, int)):
        return int(v)
    return v


def to_jsonable(obj):
    """Recursively convert reports to JSON-serializable structures.

    Fractions become exact rational strings; arrays become lists; +-inf
    becomes the strings "inf"/"-inf" so reports stay valid strict JSON.
    """
    if isinstance(obj, np.bool_):
        return bool(obj)
    if obj is None or isinstance(obj, (bool, str, int)):
        return obj
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        if f != f:
            return "nan"
        if f == float("inf"):
            return "inf"
        if f == float("-inf"):
            return "-inf"
        return f
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {k: to_jsonable(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set)):
        return [to_jsonable(v) for v in obj]
    return str(obj)


def write_report(path, payload: dict) -> None:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    text = json.dumps(to_jsonable(payload), sort_keys=True, indent=2)
    Path(path).write_text(text + "\n")
