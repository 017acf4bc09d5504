"""Cross-run comparison of sensitivity/latency trade-offs."""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from .attention import StrategyConfig, StrategyKind
from .pipeline import SimulationConfig


@dataclass(frozen=True)
class ComparisonRow:
    label: str
    sensitivity: float | None
    apt: float | None
    false_positives: int
    d_sensitivity: float | None
    apt_ratio: float | None


def _label(report: dict) -> str:
    cfg = report.get("config", {})
    strat = cfg.get("strategy", {}).get("kind", "?")
    size = cfg.get("cnn_size", "?")
    suffix = "-resize" if cfg.get("resize_baseline") else ""
    return f"{strat}{suffix}@{size}"


def compare(reports: list[dict], baseline: int = 0) -> list[ComparisonRow]:
    """Tabulate each run against a designated baseline run.

    All reports must describe the same scenario. d_sensitivity is the
    difference to the baseline and apt_ratio the multiplicative cost,
    so swapping subject and baseline flips the sign of the former.
    """
    if len(reports) < 2:
        raise ValueError("compare needs at least two reports")
    if not 0 <= baseline < len(reports):
        raise ValueError(f"baseline index {baseline} out of range")
    ident = reports[baseline]["scenario"]
    for r in reports:
        if r["scenario"] != ident:
            raise ValueError(
                f"scenario mismatch: {r['scenario']} vs baseline {ident}"
            )
    base = reports[baseline]["summary"]
    rows = []
    for r in reports:
        s = r["summary"]
        d_sen = None
        if s["sensitivity"] is not None and base["sensitivity"] is not None:
            d_sen = s["sensitivity"] - base["sensitivity"]
        ratio = None
        if s["apt"] is not None and base["apt"] not in (None, 0):
            ratio = s["apt"] / base["apt"]
        rows.append(
            ComparisonRow(
                label=_label(r),
                sensitivity=s["sensitivity"],
                apt=s["apt"],
                false_positives=s["fp"],
                d_sensitivity=d_sen,
                apt_ratio=ratio,
            )
        )
    return rows


def format_comparison(rows: list[ComparisonRow]) -> str:
    def fmt(v, spec=".4f"):
        return "-" if v is None else format(v, spec)

    lines = ["label\tsensitivity\tapt\tfp\td_sensitivity\tapt_ratio"]
    for r in rows:
        lines.append(
            f"{r.label}\t{fmt(r.sensitivity)}\t{fmt(r.apt, '.6f')}\t"
            f"{r.false_positives}\t{fmt(r.d_sensitivity, '+.4f')}\t{fmt(r.apt_ratio)}"
        )
    return "\n".join(lines) + "\n"


def write_comparison(rows: list[ComparisonRow], path: str | Path) -> None:
    Path(path).write_text(format_comparison(rows))


def scaled_miss_rate(base_miss: float, downscale: float, exponent: float = 1.0) -> float:
    """Synthetic penalty for detecting shrunken objects.

    Keeping the per-object hit rate proportional to the remaining object
    resolution: hit = (1 - base_miss) / downscale**exponent. A stand-in
    for a real detector's degradation curve, not a measurement.
    """
    if downscale < 1.0:
        raise ValueError("downscale must be >= 1")
    return 1.0 - (1.0 - base_miss) / downscale**exponent


def resize_baseline_config(
    cfg: SimulationConfig, frame_w: int, frame_h: int, exponent: float = 1.0
) -> SimulationConfig:
    """Derive the one-tile full-frame baseline from a tiled configuration.

    The whole frame becomes a single tile processed every frame, and the
    detector's miss rate is raised by the downscale factor the resize
    would impose on object resolution.
    """
    downscale = max(frame_w, frame_h) / cfg.cnn_size
    detector = replace(
        cfg.detector,
        miss_rate=scaled_miss_rate(cfg.detector.miss_rate, downscale, exponent),
    )
    return replace(
        cfg,
        strategy=StrategyConfig(kind=StrategyKind.TA),
        detector=detector,
        resize_baseline=True,
    )
