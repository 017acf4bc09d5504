"""Run reports: canonical serialization, recomputable aggregates, telemetry export."""

from __future__ import annotations

import csv
import json
from dataclasses import asdict
from pathlib import Path

from .geometry import Box, TileGrid
from .pipeline import RunSummary, ScenarioRun, SimulationConfig
from .scenario import Scenario

REPORT_SCHEMA_VERSION = 1


class ReportError(Exception):
    """Report file problem; `code` is "parse" or "schema"."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


def _box_to_list(b: Box) -> list:
    return [b.x, b.y, b.w, b.h, b.confidence, b.class_id]


def config_to_dict(cfg: SimulationConfig) -> dict:
    data = asdict(cfg)
    data["strategy"]["kind"] = cfg.strategy.kind.value
    data["detector"]["confidence_range"] = list(cfg.detector.confidence_range)
    return data


def build_report(scenario: Scenario, cfg: SimulationConfig, grid: TileGrid, run: ScenarioRun) -> dict:
    """Assemble the machine-readable report for one run.

    Only simulated quantities go in: the report must be byte-identical
    across repeats of the same seed and config, so wall-clock timing is
    deliberately left out.
    """
    frames = []
    for res, ev in zip(run.results, run.frame_eval):
        frames.append(
            {
                "frame": res.frame,
                "selected_tiles": list(res.selected_tiles),
                "detections": [_box_to_list(b) for b in res.detections],
                "sim_time": res.processing_time,
                "tp": ev.true_positives,
                "fn": ev.false_negatives,
                "fp": ev.false_positives,
                "tile_objects": [s.objects for s in res.per_tile_stats],
            }
        )
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "scenario": {
            "name": scenario.name,
            "frame_w": scenario.frame_w,
            "frame_h": scenario.frame_h,
            "n_frames": scenario.n_frames,
        },
        "config": config_to_dict(cfg),
        "grid": {
            "cols": grid.cols,
            "rows": grid.rows,
            "n_tiles": grid.n_tiles,
            "overlap_x": grid.overlap_x,
            "overlap_y": grid.overlap_y,
        },
        "frames": frames,
        "per_tile": {"times_selected": times_selected_from_frames(frames, grid.n_tiles)},
        "summary": summary_to_dict(run.summary),
    }


def summary_to_dict(summary: RunSummary) -> dict:
    return {
        "frames": summary.frames,
        "tp": summary.true_positives,
        "fn": summary.false_negatives,
        "fp": summary.false_positives,
        "sensitivity": summary.sensitivity,
        "apt": summary.apt,
        "mean_selected_tiles": summary.mean_selected_tiles,
    }


def summary_from_frames(frames: list[dict]) -> dict:
    """Recompute the summary block from per-frame records.

    Shares arithmetic with the pipeline summary, so a well-formed report
    satisfies summary == summary_from_frames(report["frames"]) exactly.
    """
    summary = RunSummary.from_frame_data(
        tp=[f["tp"] for f in frames],
        fn=[f["fn"] for f in frames],
        fp=[f["fp"] for f in frames],
        times=[f["sim_time"] for f in frames],
        selected_counts=[len(f["selected_tiles"]) for f in frames],
    )
    return summary_to_dict(summary)


def times_selected_from_frames(frames: list[dict], n_tiles: int) -> list[int]:
    counts = [0] * n_tiles
    for f in frames:
        for t in f["selected_tiles"]:
            counts[t] += 1
    return counts


def write_report(report: dict, path: str | Path) -> None:
    """Write canonical JSON: sorted keys, fixed layout, trailing newline."""
    payload = json.dumps(report, sort_keys=True, indent=2)
    Path(path).write_text(payload + "\n")


def load_report(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ReportError("parse", f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReportError("parse", f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict) or "frames" not in data or "summary" not in data:
        raise ReportError("schema", f"{path} does not look like a run report")
    return data


def tile_telemetry_rows(report: dict) -> list[tuple[int, int, int, int, int]]:
    """Flatten a report into (frame, tile, objects, selected, cum_selected) rows.

    One row per tile per frame, suitable for plotting object counts and
    selection pressure over time.
    """
    try:
        n_tiles = report["grid"]["n_tiles"]
        frames = report["frames"]
    except (KeyError, TypeError) as exc:
        raise ReportError("schema", f"report missing grid/frames: {exc}") from exc
    rows = []
    cumulative = [0] * n_tiles
    for f in frames:
        selected = set(f["selected_tiles"])
        for tile in range(n_tiles):
            if tile in selected:
                cumulative[tile] += 1
            rows.append(
                (f["frame"], tile, f["tile_objects"][tile], int(tile in selected), cumulative[tile])
            )
    return rows


def write_telemetry_csv(rows: list[tuple], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["frame", "tile", "objects", "selected", "cum_selected"])
        writer.writerows(rows)
