"""Tile-based selective processing simulator for object detection on large frames.

Splits a frame into detector-sized tiles, picks which tiles to process
each frame with a pluggable attention policy, carries detections for the
skipped tiles in a track memory, and measures the resulting
sensitivity/latency trade-off.
"""

from .analysis import (
    ComparisonRow,
    compare,
    format_comparison,
    resize_baseline_config,
    scaled_miss_rate,
    write_comparison,
)
from .attention import (
    SelectionState,
    StrategyConfig,
    StrategyKind,
    TileStats,
    criteria_maxima,
    resolve_budget,
    select_t1,
    select_ta,
    select_tiles,
    select_to,
    select_tsm,
    tile_value,
    update_stats,
)
from .detector import Detection, DetectorModel, OracleDetector, TileDetector, detect
from .geometry import (
    Box,
    GridConfig,
    OverlapPolicy,
    TileGrid,
    compute_grid,
    degenerate_grid,
    iou,
    tile_index_of,
)
from .memory import MatchReport, MemoryConfig, TrackedBox, TrackStore
from .metrics import EvalCounts, TimingRecord, apt, match_detections, sensitivity
from .pipeline import (
    FrameResult,
    RunSummary,
    ScenarioRun,
    SimulationConfig,
    make_grid,
    merge_overlapping,
    run_frame,
    run_scenario,
)
from .report import (
    ReportError,
    build_report,
    load_report,
    summary_from_frames,
    tile_telemetry_rows,
    times_selected_from_frames,
    write_report,
    write_telemetry_csv,
)
from .scenario import (
    FrameGt,
    GeneratorParams,
    GtObject,
    Scenario,
    ScenarioError,
    generate_scenario,
    load_scenario,
    save_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "ComparisonRow",
    "Detection",
    "DetectorModel",
    "EvalCounts",
    "FrameGt",
    "FrameResult",
    "GeneratorParams",
    "GridConfig",
    "GtObject",
    "MatchReport",
    "MemoryConfig",
    "OracleDetector",
    "OverlapPolicy",
    "ReportError",
    "RunSummary",
    "Scenario",
    "ScenarioError",
    "ScenarioRun",
    "SelectionState",
    "SimulationConfig",
    "StrategyConfig",
    "StrategyKind",
    "TileDetector",
    "TileGrid",
    "TileStats",
    "TimingRecord",
    "TrackStore",
    "TrackedBox",
    "apt",
    "build_report",
    "compare",
    "compute_grid",
    "criteria_maxima",
    "degenerate_grid",
    "detect",
    "format_comparison",
    "generate_scenario",
    "iou",
    "load_report",
    "load_scenario",
    "make_grid",
    "match_detections",
    "merge_overlapping",
    "resize_baseline_config",
    "resolve_budget",
    "run_frame",
    "run_scenario",
    "save_scenario",
    "scaled_miss_rate",
    "select_t1",
    "select_ta",
    "select_tiles",
    "select_to",
    "select_tsm",
    "sensitivity",
    "summary_from_frames",
    "tile_index_of",
    "tile_telemetry_rows",
    "tile_value",
    "times_selected_from_frames",
    "update_stats",
    "write_comparison",
    "write_report",
    "write_telemetry_csv",
]
