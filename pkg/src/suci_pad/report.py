"""Serialize sweep reports as CSV, JSON, or SVG scatter plots."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Optional
from xml.sax.saxutils import escape

from .errors import SweepError
from .freqdist import FrequencyTable
from .metrics import EvalRecord
from .padding import KINDS, parse
from .sweep import Skipped, SweepReport

__all__ = ["FORMATS", "emit", "report_from_json", "summary", "svg_scatter"]

FORMATS = ("csv", "json", "svg-scatter")
CSV_COLUMNS = ("dataset", "scheme", "alpha1", "alpha2", "beta", "delta", "hU")

WIDTH, HEIGHT = 800, 600
MARGIN = dict(left=70, right=150, top=40, bottom=60)
KIND_COLORS = {
    "identity": "#000000",
    "blk": "#1f77b4",
    "pwr": "#ff7f0e",
    "rndBlk": "#2ca02c",
    "rndLen": "#9467bd",
    "taBlk": "#d62728",
    "maxL": "#8c564b",
}
DATASET_SHAPES = ("circle", "square", "diamond", "triangle")


def _num(x: float) -> str:
    return repr(float(x))


def _emit_csv(report: SweepReport) -> bytes:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in report.records:
        w.writerow([r.dataset, r.scheme.code, _num(r.alpha1), r.alpha2,
                    _num(r.beta), _num(r.delta), _num(r.hU)])
    return out.getvalue().encode("utf-8")


def _dataset_summary(label: str, t: FrequencyTable) -> dict:
    return {
        "label": label,
        "population": t.population(),
        "max_length": t.max_length,
        "entries": [[u, c] for u, c in t],
    }


def _as_json_obj(report: SweepReport) -> dict:
    winners = report.winners()
    return {
        "datasets": [_dataset_summary(label, t) for label, t in report.datasets],
        "beta_cap": report.beta_cap,
        "k_threshold": report.k_threshold,
        "records": [r.as_dict() for r in report.records],
        "winners": {
            kind: {label: (rec.as_dict() if rec else None) for label, rec in picks.items()}
            for kind, picks in winners.items()
        },
        "pareto": [r.as_dict() for r in report.pareto()],
        "skipped": [{"dataset": s.dataset, "scheme": s.scheme, "reason": s.reason}
                    for s in report.skipped],
    }


def _emit_json(report: SweepReport) -> bytes:
    return (json.dumps(_as_json_obj(report), indent=2, sort_keys=False) + "\n").encode("utf-8")


def _record_from_dict(d: dict) -> EvalRecord:
    return EvalRecord(
        scheme=parse(d["scheme"]),
        dataset=d["dataset"],
        alpha1=float(d["alpha1"]),
        alpha2=int(d["alpha2"]),
        beta=float(d["beta"]),
        delta=float(d["delta"]),
        hU=float(d["hU"]),
    )


def report_from_json(data: bytes | str) -> SweepReport:
    """Rebuild a :class:`SweepReport` from :func:`emit` JSON output."""
    try:
        obj = json.loads(data)
        datasets = [
            (d["label"], FrequencyTable([tuple(e) for e in d["entries"]], d["label"]))
            for d in obj.get("datasets", [])
        ]
        return SweepReport(
            records=[_record_from_dict(r) for r in obj["records"]],
            datasets=datasets,
            skipped=[Skipped(**s) for s in obj.get("skipped", [])],
            beta_cap=obj.get("beta_cap"),
            k_threshold=obj.get("k_threshold"),
        )
    except (ValueError, KeyError, TypeError) as exc:
        raise SweepError(f"not a sweep report: {exc}") from None


# -- SVG ---------------------------------------------------------------------


def _ticks(lo: float, hi: float, n: int = 6) -> list[float]:
    span = hi - lo
    raw = span / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=raw)
    start = math.ceil(lo / step) * step
    ticks, v = [], start
    while v <= hi + 1e-12:
        ticks.append(round(v, 10))
        v += step
    return ticks


def _marker(shape: str, x: float, y: float, color: str, title: str) -> str:
    t = f"<title>{escape(title)}</title>"
    attrs = f'class="marker" fill="{color}" fill-opacity="0.7"'
    if shape == "circle":
        return f'<circle {attrs} cx="{x:.2f}" cy="{y:.2f}" r="3">{t}</circle>'
    if shape == "square":
        return f'<rect {attrs} x="{x - 3:.2f}" y="{y - 3:.2f}" width="6" height="6">{t}</rect>'
    if shape == "diamond":
        pts = f"{x:.2f},{y - 4:.2f} {x + 4:.2f},{y:.2f} {x:.2f},{y + 4:.2f} {x - 4:.2f},{y:.2f}"
    else:
        pts = f"{x:.2f},{y - 4:.2f} {x + 4:.2f},{y + 3:.2f} {x - 4:.2f},{y + 3:.2f}"
    return f'<polygon {attrs} points="{pts}">{t}</polygon>'


def svg_scatter(report: SweepReport, metric: str = "alpha1") -> bytes:
    """Scatter of ``alpha1`` (or ``log10 alpha2``) against ``beta``.

    Each dataset gets a dashed horizontal reference line at its ceiling:
    H(U) for ``alpha1``, log10(population) for ``alpha2``.
    """
    if metric not in ("alpha1", "alpha2"):
        raise SweepError(f"unknown scatter metric {metric!r}")
    if not report.records:
        raise SweepError("cannot plot an empty report")

    def yval(r: EvalRecord) -> float:
        return r.alpha1 if metric == "alpha1" else math.log10(r.alpha2)

    refs: dict[str, float] = {}
    for label in report.labels:
        recs = report.for_dataset(label)
        if not recs:
            continue
        if metric == "alpha1":
            refs[label] = recs[0].hU
        else:
            table = dict(report.datasets).get(label)
            pop = table.population() if table is not None else max(r.alpha2 for r in recs)
            refs[label] = math.log10(pop)

    xs = [r.beta for r in report.records]
    ys = [yval(r) for r in report.records] + list(refs.values())
    x_lo, x_hi = min(1.0, min(xs)), max(xs)
    y_lo, y_hi = 0.0, max(ys)
    if x_hi - x_lo < 1e-9:
        x_hi = x_lo + 1.0
    if y_hi - y_lo < 1e-9:
        y_hi = y_lo + 1.0
    x_hi += 0.03 * (x_hi - x_lo)
    y_hi += 0.05 * (y_hi - y_lo)

    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(v: float) -> float:
        return MARGIN["left"] + (v - x_lo) / (x_hi - x_lo) * pw

    def sy(v: float) -> float:
        return MARGIN["top"] + ph - (v - y_lo) / (y_hi - y_lo) * ph

    ylabel = "alpha1 = H(U|P) [bits]" if metric == "alpha1" else "log10(alpha2)"
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="22" text-anchor="middle" font-size="14">'
        f"{escape(ylabel)} vs beta</text>",
    ]
    x0, y0 = MARGIN["left"], MARGIN["top"] + ph
    parts.append(f'<line x1="{x0}" y1="{y0}" x2="{x0 + pw}" y2="{y0}" stroke="black"/>')
    parts.append(f'<line x1="{x0}" y1="{MARGIN["top"]}" x2="{x0}" y2="{y0}" stroke="black"/>')
    for v in _ticks(x_lo, x_hi):
        parts.append(
            f'<text x="{sx(v):.2f}" y="{y0 + 16}" text-anchor="middle">{v:g}</text>'
        )
    for v in _ticks(y_lo, y_hi):
        parts.append(
            f'<text x="{x0 - 6}" y="{sy(v) + 4:.2f}" text-anchor="end">{v:g}</text>'
        )
    parts.append(
        f'<text x="{x0 + pw / 2:.0f}" y="{HEIGHT - 15}" text-anchor="middle">'
        "beta (expected padded / unpadded length)</text>"
    )
    parts.append(
        f'<text x="18" y="{MARGIN["top"] + ph / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {MARGIN["top"] + ph / 2:.0f})">{escape(ylabel)}</text>'
    )

    shapes = {label: DATASET_SHAPES[i % len(DATASET_SHAPES)] for i, label in enumerate(refs)}
    for label, ref in refs.items():
        parts.append(
            f'<line class="reference" data-dataset="{escape(label)}" x1="{x0}" '
            f'y1="{sy(ref):.2f}" x2="{x0 + pw}" y2="{sy(ref):.2f}" stroke="gray" '
            f'stroke-dasharray="6,4"/>'
        )
    for r in report.records:
        title = f"{r.dataset} {r.scheme.code}: beta={r.beta:.4f} alpha1={r.alpha1:.4f} alpha2={r.alpha2}"
        parts.append(_marker(shapes.get(r.dataset, "circle"), sx(r.beta), sy(yval(r)),
                             KIND_COLORS[r.scheme.kind], title))

    # legend: kinds by color, datasets by shape
    lx, ly = WIDTH - MARGIN["right"] + 15, MARGIN["top"] + 10
    present = [k for k in KINDS if any(r.scheme.kind == k for r in report.records)]
    for k in present:
        parts.append(f'<rect x="{lx}" y="{ly - 8}" width="10" height="10" fill="{KIND_COLORS[k]}"/>')
        parts.append(f'<text x="{lx + 15}" y="{ly + 1}">{k}</text>')
        ly += 16
    ly += 8
    for label, shape in shapes.items():
        parts.append(f'<g class="legend">{_legend_marker(shape, lx + 5, ly - 3)}</g>')
        parts.append(f'<text x="{lx + 15}" y="{ly + 1}">{escape(label)}</text>')
        ly += 16
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def _legend_marker(shape: str, x: float, y: float) -> str:
    return _marker(shape, x, y, "#555555", shape).replace('class="marker"', 'class="legend-marker"')


def emit(report: SweepReport, fmt: str, metric: str = "alpha1") -> bytes:
    """Render ``report`` as ``csv``, ``json`` or ``svg-scatter`` bytes."""
    if not report.records:
        raise SweepError("cannot emit an empty report")
    if fmt == "csv":
        return _emit_csv(report)
    if fmt == "json":
        return _emit_json(report)
    if fmt == "svg-scatter":
        return svg_scatter(report, metric)
    raise SweepError(f"unknown format {fmt!r} (expected one of {', '.join(FORMATS)})")


def _fmt_record(r: Optional[EvalRecord]) -> str:
    if r is None:
        return "none qualifies"
    return (f"{r.scheme.code}  alpha1={r.alpha1:.4f}  alpha2={r.alpha2}  "
            f"beta={r.beta:.4f}  delta={r.delta:.4f}")


def summary(report: SweepReport) -> str:
    """Plain-text winners summary, one block per dataset."""
    win = report.winners()
    cap = "inf" if report.beta_cap is None else f"{report.beta_cap:g}"
    lines = []
    for label in report.labels:
        recs = report.for_dataset(label)
        lines.append(f"[{label}] {len(recs)} instances evaluated")
        lines.append(f"  lowest delta (beta <= {cap}): {_fmt_record(win['by_delta'].get(label))}")
        if report.k_threshold is not None:
            lines.append(
                f"  lowest beta (alpha2 >= {report.k_threshold}): "
                f"{_fmt_record(win['by_threshold'].get(label))}"
            )
    if report.skipped:
        lines.append(f"{len(report.skipped)} (dataset, scheme) pairs skipped")
    return "\n".join(lines) + "\n"
