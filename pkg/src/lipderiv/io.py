"""CSV/text serialization for spaces, fields, profiles and reports.

All floating-point output uses 17 significant digits so that identical runs
produce byte-identical files; files are written atomically (temp + rename).
"""
from __future__ import annotations

import csv
import io as _io
import json
import math
import os
import tempfile

import numpy as np

from .errors import InputError
from .envelopes import ScalarField
from .metric import FiniteMetricSpace
from .scales import SampledMap, ScaleProfile


def fmt_float(x) -> str:
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def parse_float(s: str, where: str = "value") -> float:
    try:
        x = float(s)
    except ValueError:
        raise InputError(f"malformed {where}: {s!r}") from None
    if math.isnan(x):
        raise InputError(f"NaN is not a valid {where}")
    return x


def fmt_id(point) -> str:
    if isinstance(point, tuple):
        return ";".join(fmt_float(c) for c in point)
    if isinstance(point, (float, np.floating)):
        return fmt_float(point)
    return str(point)


def atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_rows(path: str):
    try:
        with open(path, newline="") as handle:
            return list(csv.reader(handle))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def load_point_cloud(path: str):
    """Read `id,x1,...,xn[,val...]` CSV; returns (ids, coords, values).

    coords is an (n_points, n_dims) array; values is None, a vector (single
    val column) or a matrix (val1..valm columns).
    """
    rows = _read_rows(path)
    if not rows or [c.strip() for c in rows[0][:1]] != ["id"]:
        raise InputError(f"{path}: expected an 'id,...' header")
    header = [c.strip() for c in rows[0]]
    coord_cols = [i for i, c in enumerate(header) if c.startswith("x")]
    val_cols = [i for i, c in enumerate(header) if c.startswith("val")]
    extra = [c for i, c in enumerate(header[1:], start=1)
             if i not in coord_cols and i not in val_cols]
    if extra:
        raise InputError(f"{path}: unknown columns {extra}")
    if not coord_cols:
        raise InputError(f"{path}: no coordinate columns")
    ids, coords, values = [], [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise InputError(f"{path}: row {lineno} has {len(row)} fields, "
                             f"expected {len(header)}")
        ids.append(row[0].strip())
        coords.append([parse_float(row[i], f"coordinate at row {lineno}")
                       for i in coord_cols])
        if val_cols:
            values.append([parse_float(row[i], f"value at row {lineno}")
                           for i in val_cols])
    if len(set(ids)) != len(ids):
        raise InputError(f"{path}: duplicate point ids")
    coords = np.asarray(coords, dtype=float)
    vals = None
    if val_cols:
        vals = np.asarray(values, dtype=float)
        if vals.shape[1] == 1:
            vals = vals[:, 0]
    return ids, coords, vals


def save_point_cloud(path: str, ids, coords, values=None):
    coords = np.atleast_2d(np.asarray(coords, dtype=float))
    out = _io.StringIO()
    w = csv.writer(out)
    header = ["id"] + [f"x{k + 1}" for k in range(coords.shape[1])]
    if values is not None:
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            header += ["val"]
        else:
            header += [f"val{k + 1}" for k in range(values.shape[1])]
    w.writerow(header)
    for i, pid in enumerate(ids):
        row = [fmt_id(pid)] + [fmt_float(c) for c in coords[i]]
        if values is not None:
            v = values[i] if values.ndim > 1 else [values[i]]
            row += [fmt_float(c) for c in np.atleast_1d(v)]
        w.writerow(row)
    atomic_write(path, out.getvalue())


def load_distance_matrix(path: str) -> FiniteMetricSpace:
    """Read a CSV distance matrix with ids in the first row and column."""
    rows = _read_rows(path)
    if not rows:
        raise InputError(f"{path}: empty file")
    ids = [c.strip() for c in rows[0][1:]]
    if not ids:
        raise InputError(f"{path}: no point ids in the header row")
    table = np.zeros((len(ids), len(ids)))
    if len(rows) != len(ids) + 1:
        raise InputError(f"{path}: expected {len(ids)} data rows")
    for i, row in enumerate(rows[1:], start=0):
        if len(row) != len(ids) + 1 or row[0].strip() != ids[i]:
            raise InputError(f"{path}: row {i + 2} does not match the header")
        table[i] = [parse_float(c, f"distance at row {i + 2}")
                    for c in row[1:]]
    return FiniteMetricSpace(ids, table=table)


_METRICS = {"euclidean": 2.0, "manhattan": 1.0, "chebyshev": np.inf}


def metric_order(name: str) -> float:
    """Resolve a metric name like 'euclidean' or 'euclidean-2' to a p-norm."""
    base = name.split("-")[0].lower()
    try:
        return _METRICS[base]
    except KeyError:
        raise InputError(f"unknown metric {name!r}") from None


def load_sampled_map(path: str, metric: str = "euclidean") -> SampledMap:
    """Point-cloud CSV with value columns, as a map on an embedded space."""
    ids, coords, values = load_point_cloud(path)
    if values is None:
        raise InputError(f"{path}: no value columns")
    space = FiniteMetricSpace(ids, coords=coords, p=metric_order(metric))
    if values.ndim == 1:
        return SampledMap.real(space, values)
    return SampledMap.vector(space, values, p=2.0)


def load_scalar_field_values(path: str):
    """Read `id,value` CSV; returns (ids, values) with inf literals parsed."""
    rows = _read_rows(path)
    if not rows or [c.strip() for c in rows[0]] != ["id", "value"]:
        raise InputError(f"{path}: expected an 'id,value' header")
    ids, values = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise InputError(f"{path}: row {lineno} needs exactly two fields")
        ids.append(row[0].strip())
        values.append(parse_float(row[1], f"value at row {lineno}"))
    return ids, np.asarray(values)


def save_scalar_field(path: str, field: ScalarField):
    out = _io.StringIO()
    w = csv.writer(out)
    w.writerow(["id", "value"])
    for pid, v in zip(field.space.ids, field.values):
        w.writerow([fmt_id(pid), fmt_float(v)])
    atomic_write(path, out.getvalue())


PROFILE_COLUMNS = ("lip_upper", "lip_upper_closed", "big_below",
                   "little_below", "loc")


def save_profile(path: str, profile: ScaleProfile):
    """One row per (point, radius) with the five functional columns."""
    out = _io.StringIO()
    w = csv.writer(out)
    w.writerow(["point", "radius"] + list(PROFILE_COLUMNS))
    for pi, point in enumerate(profile.points):
        for ri, r in enumerate(profile.radii):
            w.writerow([fmt_id(point), fmt_float(r)]
                       + [fmt_float(profile.table[c][pi, ri])
                          for c in PROFILE_COLUMNS])
    atomic_write(path, out.getvalue())


def save_summary(path: str, profile: ScaleProfile):
    """Per-point limit estimates and flags."""
    out = _io.StringIO()
    w = csv.writer(out)
    w.writerow(["point", "lip_hat", "big_hat", "loc_hat",
                "unresolved", "divergent"])
    for s in profile.summaries:
        w.writerow([fmt_id(s.point), fmt_float(s.lip_hat),
                    fmt_float(s.big_hat), fmt_float(s.loc_hat),
                    int(s.unresolved), int(s.divergent)])
    atomic_write(path, out.getvalue())


def save_set_flags(path: str, profile: ScaleProfile, gamma: float):
    """Per-point threshold membership flags for the three estimates."""
    out = _io.StringIO()
    w = csv.writer(out)
    w.writerow(["point", "lip_le_gamma", "big_le_gamma", "loc_le_gamma",
                "lip_gt_gamma", "big_gt_gamma", "loc_gt_gamma"])
    for s in profile.summaries:
        le = [s.lip_hat <= gamma, s.big_hat <= gamma, s.loc_hat <= gamma]
        w.writerow([fmt_id(s.point)] + [int(b) for b in le]
                   + [int(not b) for b in le])
    atomic_write(path, out.getvalue())


def load_set_family(path: str):
    """Text format: `ground: a,b,c` header, one subset per line, `-` empty.

    Returns (ground tuple, list of member element-tuples).
    """
    try:
        with open(path) as handle:
            lines = [ln.strip() for ln in handle]
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("ground:"):
        raise InputError(f"{path}: missing 'ground:' header")
    ground = tuple(e.strip() for e in lines[0][len("ground:"):].split(",")
                   if e.strip())
    members = []
    for lineno, ln in enumerate(lines[1:], start=2):
        if ln == "-":
            members.append(())
            continue
        elems = tuple(e.strip() for e in ln.split(","))
        bad = [e for e in elems if e not in ground]
        if bad:
            raise InputError(f"{path}: line {lineno} has unknown "
                             f"elements {bad}")
        members.append(elems)
    return ground, members


def save_set_family(path: str, ground, members):
    lines = ["ground: " + ",".join(str(e) for e in ground)]
    for member in members:
        member = sorted(member, key=lambda e: ground.index(e)
                        if e in ground else -1)
        lines.append(",".join(str(e) for e in member) if member else "-")
    atomic_write(path, "\n".join(lines) + "\n")


def report_document(results) -> dict:
    ok = all(r.passed for r in results)
    return {"overall": "pass" if ok else "fail",
            "checks": [r.to_dict() for r in results]}


def save_report(path: str, results):
    atomic_write(path, json.dumps(report_document(results), indent=2,
                                  default=_json_default) + "\n")


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, float) and math.isinf(obj):
        return "inf" if obj > 0 else "-inf"
    return str(obj)


def summary_table(results) -> str:
    """Human-readable fixed-width listing of check results."""
    width = max([len(r.name) for r in results], default=4)
    lines = [f"{'name'.ljust(width)}  status   discrepancy    tolerance"]
    for r in results:
        lines.append(f"{r.name.ljust(width)}  {r.status:<8} "
                     f"{r.discrepancy:<13.6g}  {r.tolerance:.6g}")
    ok = all(r.passed for r in results)
    lines.append(f"overall: {'pass' if ok else 'fail'}")
    return "\n".join(lines)
