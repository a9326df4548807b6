"""Reading and aggregating benchmark results CSVs.

The input format is the benchmark harness ResultsFile: a CSV with the
fixed header below, absent fields empty.  This package talks to the
estimation library only through that file format, so the parsing and
aggregation rules are restated here: group rows by (experiment, method,
p, n, epsilon, beta, sigma, iter) and report the mean and population
standard deviation of each metric over trials.
"""

from __future__ import annotations

import numpy as np

RESULT_FIELDS = ["experiment", "method", "p", "n", "epsilon", "beta", "sigma",
                 "trial", "iter", "param_error", "zero_one_error",
                 "rel_eff_vs_ols", "runtime_ms"]

GROUP_KEYS = ["experiment", "method", "p", "n", "epsilon", "beta", "sigma", "iter"]
METRIC_KEYS = ["param_error", "zero_one_error", "rel_eff_vs_ols"]

REPORT_FIELDS = ["experiment", "method", "p", "n", "epsilon", "beta", "sigma",
                 "iter", "trials",
                 "param_error_mean", "param_error_std",
                 "zero_one_error_mean", "zero_one_error_std",
                 "rel_eff_vs_ols_mean", "rel_eff_vs_ols_std"]

_INT_FIELDS = {"p", "n", "trial", "iter"}
_STR_FIELDS = {"experiment", "method"}

__all__ = ["RESULT_FIELDS", "GROUP_KEYS", "METRIC_KEYS", "REPORT_FIELDS",
           "read_results", "filter_rows", "aggregate_rows", "format_series"]


def read_results(path) -> list[dict]:
    """Parse a results CSV into typed row dicts; the header must match
    the ResultsFile schema exactly."""
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().strip().split(",")
        missing = [c for c in RESULT_FIELDS if c not in header]
        if missing:
            raise ValueError(f"results file missing column {missing[0]!r}")
        if header != RESULT_FIELDS:
            raise ValueError(f"unexpected results header: {header}")
        rows = []
        for line in f:
            if not line.strip():
                continue
            vals = line.rstrip("\n").split(",")
            row = {}
            for key, val in zip(RESULT_FIELDS, vals):
                if val == "":
                    row[key] = None
                elif key in _STR_FIELDS:
                    row[key] = val
                elif key in _INT_FIELDS:
                    row[key] = int(val)
                else:
                    row[key] = float(val)
            rows.append(row)
    return rows


def _coerce(key: str, value: str):
    if key in _STR_FIELDS:
        return value
    if key in _INT_FIELDS:
        return int(value)
    return float(value)


def filter_rows(rows: list[dict], methods: list[str] | None = None,
                fix: dict | None = None) -> list[dict]:
    """Restrict rows to the chosen methods and to fixed grid values
    (fix maps column name -> raw string value)."""
    out = rows
    if methods:
        out = [r for r in out if r["method"] in methods]
    for key, raw in (fix or {}).items():
        if key not in RESULT_FIELDS:
            raise ValueError(f"results file missing column {key!r}")
        want = _coerce(key, raw)
        out = [r for r in out if r.get(key) == want]
    if not out:
        raise ValueError("no rows match the requested filters")
    return out


def aggregate_rows(rows: list[dict]) -> list[dict]:
    """Mean and population stddev of every metric per group."""
    groups: dict[tuple, list[dict]] = {}
    for row in rows:
        key = tuple(row.get(k) for k in GROUP_KEYS)
        groups.setdefault(key, []).append(row)
    out = []
    for key in sorted(groups, key=lambda k: tuple(str(x) for x in k)):
        members = groups[key]
        agg = dict(zip(GROUP_KEYS, key))
        agg["trials"] = len(members)
        for mk in METRIC_KEYS:
            vals = [m[mk] for m in members if m.get(mk) is not None]
            if vals:
                agg[f"{mk}_mean"] = float(np.mean(vals))
                agg[f"{mk}_std"] = float(np.std(vals))
            else:
                agg[f"{mk}_mean"] = None
                agg[f"{mk}_std"] = None
        out.append(agg)
    return out


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def format_series(aggs: list[dict]) -> str:
    """Serialize aggregated rows in the report CSV layout."""
    lines = [",".join(REPORT_FIELDS)]
    for a in aggs:
        lines.append(",".join(_fmt(a.get(k)) for k in REPORT_FIELDS))
    return "\n".join(lines) + "\n"
