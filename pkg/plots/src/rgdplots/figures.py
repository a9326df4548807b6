"""Figure specifications and rendering.

Four figure kinds are supported, each one line per method with a shaded
±1 stddev band:

  error-vs-p    final parameter error against the dimension p
  error-vs-eps  final parameter error against the contamination level
  convergence   mean parameter error against the iteration, log-scale y
  releff        relative efficiency against the varying grid value
"""

from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .results import aggregate_rows, filter_rows, read_results

KINDS = ("error-vs-p", "error-vs-eps", "convergence", "releff")

# (x column, y metric) per kind; releff picks its x column dynamically
_KIND_AXES = {
    "error-vs-p": ("p", "param_error"),
    "error-vs-eps": ("epsilon", "param_error"),
    "convergence": ("iter", "param_error"),
    "releff": (None, "rel_eff_vs_ols"),
}

__all__ = ["KINDS", "FigureSpec", "extract_series", "render"]


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    kind: str
    output_path: str
    methods: list[str] | None = None
    fix: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}")


def _final_iter_rows(aggs: list[dict]) -> list[dict]:
    """One aggregate per (method, grid point): the largest recorded
    iteration."""
    best: dict[tuple, dict] = {}
    for a in aggs:
        key = tuple(a[k] for k in ("experiment", "method", "p", "n",
                                   "epsilon", "beta", "sigma"))
        if key not in best or a["iter"] > best[key]["iter"]:
            best[key] = a
    return list(best.values())


def _releff_x_column(aggs: list[dict]) -> str:
    for col in ("beta", "sigma", "p", "n", "epsilon"):
        values = {a[col] for a in aggs if a[col] is not None}
        if len(values) > 1:
            return col
    return "beta"


def extract_series(spec: FigureSpec) -> tuple[list[dict], dict]:
    """Aggregates for the filtered rows, plus per-method plot series
    {method: (x, mean, std)}; the aggregates are what --dump-series
    writes."""
    rows = filter_rows(read_results(spec.input_csv), spec.methods, spec.fix)
    aggs = aggregate_rows(rows)
    x_col, metric = _KIND_AXES[spec.kind]

    if spec.kind == "convergence":
        plot_aggs = aggs
    else:
        plot_aggs = _final_iter_rows(aggs)
    if x_col is None:
        x_col = _releff_x_column(plot_aggs)

    series: dict[str, tuple[list, list, list]] = {}
    for a in sorted(plot_aggs, key=lambda a: (a["method"], str(a[x_col]))):
        if a.get(f"{metric}_mean") is None:
            continue
        xs, means, stds = series.setdefault(a["method"], ([], [], []))
        xs.append(a[x_col])
        means.append(a[f"{metric}_mean"])
        stds.append(a[f"{metric}_std"])
    if not series:
        raise ValueError(f"results file missing column {metric!r} values "
                         f"for kind {spec.kind!r}")
    for method in series:
        xs, means, stds = series[method]
        order = sorted(range(len(xs)), key=lambda i: xs[i])
        series[method] = ([xs[i] for i in order], [means[i] for i in order],
                          [stds[i] for i in order])
    return aggs, {"x_col": x_col, "metric": metric, "series": series}


def render(spec: FigureSpec) -> list[dict]:
    """Write the figure; returns the aggregates used (for --dump-series)."""
    aggs, extracted = extract_series(spec)
    x_col, metric = extracted["x_col"], extracted["metric"]

    fig, ax = plt.subplots(figsize=(6, 4))
    for method, (xs, means, stds) in sorted(extracted["series"].items()):
        ax.plot(xs, means, marker="o", label=method)
        lo = [m - s for m, s in zip(means, stds)]
        hi = [m + s for m, s in zip(means, stds)]
        ax.fill_between(xs, lo, hi, alpha=0.2)
    if spec.kind == "convergence":
        ax.set_yscale("log")
    ax.set_xlabel(x_col)
    ax.set_ylabel(metric)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=120)
    plt.close(fig)
    return aggs
