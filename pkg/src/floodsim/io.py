"""
Text formats.

Degree spec::

    # comment
    d11: 3 3 3 3
    d12: 0 0 0 0
    d21:
    d22:

Edge list: a header ``n1=<int> n2=<int> seed=<int> attempts=<int>`` then one
``u v type [weight]`` line per edge in canonical order. Floats are written
with ``repr`` so they round-trip exactly, and ``inf`` stands for infinity in
every CSV.

Plan: ``key = value`` lines; see :data:`PLAN_KEYS`.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import fields
from pathlib import Path

import numpy as np

from .degree_model import DegreeSpec
from .errors import FormatError, SpecStructureError
from .experiment import ExperimentPlan, ReplicateRecord
from .fpp import FppResult, WeightedGraph
from .graph_gen import TypedMultigraph
from .seeding import DEFAULT_SEED

SPEC_KEYS = ("d11", "d12", "d21", "d22")
RECORD_COLUMNS = tuple(f.name for f in fields(ReplicateRecord) if f.name != "wall_time")
TIMING_COLUMNS = ("kappa", "replicate", "wall_time")
SUMMARY_COLUMNS = ("kappa", "n_success", "median_norm", "mean_norm", "q10", "q90", "limit", "abs_gap")
FPP_COLUMNS = ("source", "flood1", "flood2", "flood", "unreachable_count")

# key -> (parser, required)
PLAN_KEYS = {
    "family": (str, True),
    "kappa_grid": (lambda s: tuple(int(x) for x in s.replace(",", " ").split()), True),
    "replicates": (int, True),
    "lambda11": (float, False),
    "lambda12": (float, False),
    "base_seed": (int, False),
    "discard_unreachable": (lambda s: _parse_bool(s), False),
    "max_attempts": (int, False),
    "erased": (lambda s: _parse_bool(s), False),
    "band": (float, False),
    # family parameters
    "a": (int, False),
    "c1": (int, False),
    "c2": (int, False),
    "e": (int, False),
    "n1_ratio": (float, False),
    "exponent": (float, False),
    "j_max": (int, False),
}
FAMILY_PARAM_KEYS = ("a", "c1", "c2", "e", "n1_ratio", "exponent", "j_max")


def _parse_bool(s):
    low = s.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def fmt_float(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def _read_text(source):
    if isinstance(source, str) and "\n" in source:
        return source
    if isinstance(source, (str, Path)) and Path(source).exists():
        return Path(source).read_text(encoding="utf-8")
    if hasattr(source, "read"):
        return source.read()
    if isinstance(source, Path):
        raise FileNotFoundError(source)
    return source


# -- degree spec --------------------------------------------------------------


def parse_spec(text: str, theorem_regime: bool = False) -> DegreeSpec:
    seqs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in SPEC_KEYS:
            raise FormatError(f"expected one of {', '.join(k + ':' for k in SPEC_KEYS)}", lineno)
        if key in seqs:
            raise FormatError(f"duplicate {key}", lineno)
        try:
            seqs[key] = [int(tok) for tok in rest.split()]
        except ValueError as exc:
            raise FormatError(f"bad integer in {key}: {exc}", lineno) from None
    missing = [k for k in SPEC_KEYS if k not in seqs]
    if missing:
        raise FormatError(f"missing {', '.join(missing)}")
    try:
        return DegreeSpec(*(seqs[k] for k in SPEC_KEYS), theorem_regime=theorem_regime)
    except SpecStructureError as exc:
        raise FormatError(str(exc)) from None


def read_spec(path, theorem_regime: bool = False) -> DegreeSpec:
    return parse_spec(Path(path).read_text(encoding="utf-8"), theorem_regime)


def format_spec(spec: DegreeSpec) -> str:
    return "".join(
        f"{k}:" + "".join(f" {x}" for x in getattr(spec, k).tolist()) + "\n" for k in SPEC_KEYS
    )


def write_spec(spec: DegreeSpec, path) -> None:
    Path(path).write_text(format_spec(spec), encoding="utf-8")


# -- edge list ----------------------------------------------------------------


def format_edge_list(g: TypedMultigraph, seed: int, weights=None) -> str:
    out = io.StringIO()
    out.write(f"n1={g.n1} n2={g.n2} seed={seed} attempts={g.attempts}\n")
    ws = None if weights is None else np.asarray(weights, dtype=np.float64).tolist()
    for i, (u, v, t) in enumerate(g.edges()):
        if ws is not None and t != 22:
            out.write(f"{u} {v} {t} {fmt_float(ws[i])}\n")
        else:
            out.write(f"{u} {v} {t}\n")
    return out.getvalue()


def write_edge_list(path, g: TypedMultigraph, seed: int, weights=None) -> None:
    Path(path).write_text(format_edge_list(g, seed, weights), encoding="utf-8")


def parse_edge_list(text: str):
    """Returns ``(graph, weighted_graph_or_None, header)``.

    A weighted graph is returned only when every type-11/12 edge carries a
    weight.
    """
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty edge list", 1)
    header = {}
    for tok in lines[0].split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise FormatError(f"bad header token {tok!r}", 1)
        try:
            header[key] = int(val)
        except ValueError:
            raise FormatError(f"header value {tok!r} is not an integer", 1) from None
    for key in ("n1", "n2", "seed"):
        if key not in header:
            raise FormatError(f"header lacks {key}", 1)
    us, vs, ts, ws = [], [], [], []
    for lineno, raw in enumerate(lines[1:], 2):
        parts = raw.split()
        if not parts:
            continue
        if len(parts) not in (3, 4):
            raise FormatError("expected 'u v type [weight]'", lineno)
        try:
            u, v, t = int(parts[0]), int(parts[1]), int(parts[2])
            w = float(parts[3]) if len(parts) == 4 else None
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from None
        us.append(u)
        vs.append(v)
        ts.append(t)
        ws.append(w)
    try:
        g = TypedMultigraph(header["n1"], header["n2"], us, vs, ts,
                            attempts=header.get("attempts", 1))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    # canonical input keeps its order; otherwise realign weights with the sorted edges
    order = np.lexsort((np.array(ts), np.maximum(us, vs), np.minimum(us, vs))) if us else []
    ws = [ws[i] for i in order]
    wg = None
    live = [w for w, t in zip(ws, g.etype.tolist()) if t != 22]
    if live and all(w is not None for w in live):
        wg = WeightedGraph(g, [math.nan if w is None else w for w in ws])
    elif not live and g.num_edges == 0:
        wg = WeightedGraph(g, [])
    return g, wg, header


def read_edge_list(path):
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


# -- CSV ----------------------------------------------------------------------


def _csv_cell(x):
    if isinstance(x, float):
        return fmt_float(x)
    return str(x)


def _write_csv(path, columns, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_csv_cell(x) for x in row])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def fpp_csv(result: FppResult, path=None) -> str:
    row = (result.source, result.flood1, result.flood2, result.flood, result.unreachable_count)
    return _write_csv(path, FPP_COLUMNS, [row])


def reach_curve_csv(result: FppResult, path=None) -> str:
    if result.reach_curve is None:
        raise ValueError("result has no reach curve")
    rows = [(k, float(t)) for k, t in enumerate(result.reach_curve.tolist(), 1)]
    return _write_csv(path, ("k", "T(k)"), rows)


def records_csv(records, path=None) -> str:
    rows = [tuple(getattr(r, c) for c in RECORD_COLUMNS) for r in records]
    return _write_csv(path, RECORD_COLUMNS, rows)


def timings_csv(records, path=None) -> str:
    return _write_csv(path, TIMING_COLUMNS, [(r.kappa, r.replicate, r.wall_time) for r in records])


def summary_csv(summary, path=None) -> str:
    rows = [(s.kappa, s.n_success, s.median_norm, s.mean_norm, s.q10, s.q90, s.limit, s.abs_gap)
            for s in summary]
    return _write_csv(path, SUMMARY_COLUMNS, rows)


def read_records(source):
    text = _read_text(source)
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("empty records file", 1) from None
    if tuple(header) != RECORD_COLUMNS:
        raise FormatError(f"records header must be {','.join(RECORD_COLUMNS)}", 1)
    kinds = {f.name: f.type for f in fields(ReplicateRecord)}
    out = []
    for lineno, row in enumerate(reader, 2):
        if not row:
            continue
        if len(row) != len(RECORD_COLUMNS):
            raise FormatError("wrong number of columns", lineno)
        vals = {}
        for col, cell in zip(RECORD_COLUMNS, row):
            kind = kinds[col]
            try:
                vals[col] = int(cell) if kind == "int" else float(cell) if kind == "float" else cell
            except ValueError:
                raise FormatError(f"bad value {cell!r} for {col}", lineno) from None
        out.append(ReplicateRecord(**vals))
    return out


# -- plan -----------------------------------------------------------------------


def parse_plan(text: str) -> ExperimentPlan:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if not sep:
            raise FormatError("expected 'key = value'", lineno)
        if key not in PLAN_KEYS:
            raise FormatError(f"unknown plan key {key!r}", lineno)
        if key in values:
            raise FormatError(f"duplicate plan key {key!r}", lineno)
        try:
            values[key] = PLAN_KEYS[key][0](val)
        except ValueError as exc:
            raise FormatError(f"bad value for {key}: {exc}", lineno) from None
    for key, (_, required) in PLAN_KEYS.items():
        if required and key not in values:
            raise FormatError(f"missing required plan key {key!r}")
    params = {k: values.pop(k) for k in FAMILY_PARAM_KEYS if k in values}
    values.setdefault("base_seed", DEFAULT_SEED)
    try:
        return ExperimentPlan(params=params, **values)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_plan(path) -> ExperimentPlan:
    return parse_plan(Path(path).read_text(encoding="utf-8"))


def format_plan(plan: ExperimentPlan) -> str:
    lines = [
        f"family = {plan.family}",
        "kappa_grid = " + ", ".join(str(k) for k in plan.kappa_grid),
        f"replicates = {plan.replicates}",
        f"lambda11 = {fmt_float(plan.lambda11)}",
        f"lambda12 = {fmt_float(plan.lambda12)}",
        f"base_seed = {plan.base_seed}",
        f"discard_unreachable = {str(plan.discard_unreachable).lower()}",
        f"max_attempts = {plan.max_attempts}",
        f"erased = {str(plan.erased).lower()}",
    ]
    if plan.band is not None:
        lines.append(f"band = {fmt_float(plan.band)}")
    lines += [f"{k} = {v}" for k, v in plan.params.items()]
    return "\n".join(lines) + "\n"
