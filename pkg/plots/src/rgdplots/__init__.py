"""Figure rendering for robust-gradient-descent benchmark results CSVs.

Consumes results files produced by the benchmark harness (the
ResultsFile CSV schema) and renders comparison figures; it does not
import the estimation library itself.
"""

from .figures import KINDS, FigureSpec, extract_series, render
from .results import (
    GROUP_KEYS,
    METRIC_KEYS,
    REPORT_FIELDS,
    RESULT_FIELDS,
    aggregate_rows,
    filter_rows,
    format_series,
    read_results,
)

__all__ = [
    "KINDS",
    "FigureSpec",
    "extract_series",
    "render",
    "GROUP_KEYS",
    "METRIC_KEYS",
    "REPORT_FIELDS",
    "RESULT_FIELDS",
    "aggregate_rows",
    "filter_rows",
    "format_series",
    "read_results",
]

__version__ = "0.1.0"
