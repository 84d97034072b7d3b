"""Report persistence: CSV + JSON records and the figure rendering path.

CSV files are gnuplot-consumable: comment lines start with ``#`` and carry the
schema version, the fully resolved configuration, derived constants and
verdicts; the data table has the columns
``experiment, params, t, n, measured_quantity, value`` with numbers printed to
17 significant digits.  JSON mirrors the record exactly and round-trips
losslessly.  Figures (PNG) are rendered next to the delimited output.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .config import SCHEMA_VERSION, RunConfig
from .experiments import ExperimentReport

__all__ = ["ReportRecord", "write_csv", "write_json", "render_figures", "persist_report"]


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


@dataclass
class ReportRecord:
    """Serializable wrapper: experiment report plus the resolved config echo."""

    schema: int
    experiment: str
    config: dict
    params: dict
    measurements: list[dict]
    derived: dict
    verdicts: list[dict]
    notes: list[str] = field(default_factory=list)

    @classmethod
    def from_report(cls, report: ExperimentReport,
                    config: RunConfig | None = None) -> "ReportRecord":
        cfg_echo = (config or RunConfig()).resolved()
        cfg_echo = {k: (None if v is None else v) for k, v in cfg_echo.items()}
        return cls(
            schema=SCHEMA_VERSION,
            experiment=report.name,
            config=_jsonable(cfg_echo),
            params=_jsonable(report.params),
            measurements=[_jsonable(asdict(m)) for m in report.measurements],
            derived=_jsonable(report.derived),
            verdicts=[_jsonable(asdict(v)) for v in report.verdicts],
            notes=list(report.notes),
        )

    @property
    def passed(self) -> bool:
        return all(v["passed"] for v in self.verdicts)


def _jsonable(obj):
    """Coerce numpy scalars/arrays and infinities into JSON-safe values."""
    import math

    import numpy as np

    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        obj = float(obj)
    if isinstance(obj, float) and math.isinf(obj):
        return "inf" if obj > 0 else "-inf"
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def write_csv(record: ReportRecord, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# schema={record.schema}", f"# experiment={record.experiment}"]
    for key, value in record.config.items():
        lines.append(f"# config {key}={value}")
    for key, value in record.params.items():
        lines.append(f"# param {key}={value}")
    for key, value in record.derived.items():
        lines.append(f"# derived {key}={_fmt(value) if isinstance(value, float) else value}")
    for v in record.verdicts:
        lines.append(
            f"# verdict {v['name']}: {'PASS' if v['passed'] else 'FAIL'} "
            f"(measured={_fmt(v['measured'])}; {v['tolerance']}; {v['provenance']})")
    for note in record.notes:
        lines.append(f"# note {note}")
    lines.append("experiment,params,t,n,measured_quantity,value")
    for m in record.measurements:
        extras = ";".join(f"{k}={_fmt(v)}" for k, v in sorted(m.get("params", {}).items()))
        t = "" if m.get("t") is None else _fmt(m["t"])
        n = "" if m.get("n") is None else str(m["n"])
        lines.append(
            f"{record.experiment},{extras},{t},{n},{m['label']},{_fmt(m['value'])}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_json(record: ReportRecord, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(asdict(record), indent=2, sort_keys=False) + "\n",
                    encoding="utf-8")
    return path


def _measurement_groups(record: ReportRecord) -> dict[str, list[dict]]:
    groups: dict[str, list[dict]] = {}
    for m in record.measurements:
        groups.setdefault(m["label"], []).append(m)
    return groups


def render_figures(record: ReportRecord, outdir: str | Path) -> list[Path]:
    """Render one PNG per experiment summarizing every measured series.

    Each measured quantity becomes a panel plotted against t (if present) or
    n, split into one line per distinct per-row parameter annotation; both
    axes switch to log scale when the data allows it.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    groups = _measurement_groups(record)
    if not groups:
        return []
    ncols = min(3, len(groups))
    nrows = (len(groups) + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(4.6 * ncols, 3.4 * nrows),
                             squeeze=False)
    for ax in axes.flat[len(groups):]:
        ax.set_visible(False)
    for ax, (label, rows) in zip(axes.flat, groups.items()):
        series: dict[str, list[tuple[float, float]]] = {}
        for m in rows:
            key = ";".join(f"{k}={v}" for k, v in sorted(m.get("params", {}).items()))
            x = m.get("t") if m.get("t") is not None else m.get("n")
            if x is None:
                x = len(series.get(key, []))
            series.setdefault(key, []).append((float(x), float(m["value"])))
        for key, pts in sorted(series.items()):
            pts.sort()
            xs = [p[0] for p in pts]
            ys = [p[1] for p in pts]
            style = "o-" if len(pts) > 1 else "o"
            ax.plot(xs, ys, style, label=key or None, markersize=3.5, linewidth=1.2)
        xlab = "t" if any(m.get("t") is not None for m in rows) else "n"
        ax.set_xlabel(xlab)
        ax.set_title(label, fontsize=10)
        allpts = [p for pts in series.values() for p in pts]
        if allpts and all(y > 0 for _, y in allpts) and len(allpts) > 1:
            ax.set_yscale("log")
            if xlab == "t" and all(x > 0 for x, _ in allpts):
                ax.set_xscale("log")
        if any(series) and any(k for k in series):
            ax.legend(fontsize=7)
        ax.grid(True, which="both", alpha=0.3)
    status = "PASS" if record.passed else ("FAIL" if record.verdicts else "no verdict")
    fig.suptitle(f"{record.experiment} [{status}]", fontsize=12)
    fig.tight_layout(rect=(0, 0, 1, 0.96))
    out = outdir / f"{record.experiment}.png"
    fig.savefig(out, dpi=130)
    plt.close(fig)
    return [out]


def persist_report(report: ExperimentReport, outdir: str | Path,
                   config: RunConfig | None = None, figures: bool = True,
                   stem: str | None = None) -> list[Path]:
    """Write CSV + JSON (and figures unless disabled); returns written paths."""
    outdir = Path(outdir)
    record = ReportRecord.from_report(report, config)
    stem = stem or report.name
    written = [
        write_csv(record, outdir / f"{stem}.csv"),
        write_json(record, outdir / f"{stem}.json"),
    ]
    if figures:
        written += render_figures(record, outdir)
    return written
