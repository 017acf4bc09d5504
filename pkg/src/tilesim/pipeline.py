"""Per-frame orchestration: select tiles, detect, remember, fuse outputs."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .attention import (
    SelectionState,
    StrategyConfig,
    TileStats,
    select_tiles,
    update_stats,
)
from .detector import DetectorModel, OracleDetector, TileDetector
from .geometry import Box, GridConfig, TileGrid, compute_grid, degenerate_grid, iou
from .memory import MemoryConfig, TrackStore
from .metrics import EvalCounts, TimingRecord, apt, match_detections, sensitivity
from .scenario import FrameGt, Scenario


@dataclass
class SimulationConfig:
    """Everything one run needs besides the scenario itself."""

    cnn_size: int
    strategy: StrategyConfig
    memory: MemoryConfig = field(default_factory=MemoryConfig)
    detector: DetectorModel = field(default_factory=DetectorModel)
    frame_overhead: float = 0.0
    dedup_iou: float = 0.5
    eval_iou: float = 0.5
    resize_baseline: bool = False

    def __post_init__(self) -> None:
        if self.frame_overhead < 0:
            raise ValueError("frame_overhead must be >= 0")
        if not 0.0 < self.dedup_iou <= 1.0 or not 0.0 < self.eval_iou <= 1.0:
            raise ValueError("IoU thresholds must be in (0, 1]")


@dataclass
class FrameResult:
    """Outcome of processing one frame."""

    frame: int
    selected_tiles: list[int]
    detections: list[Box]
    processing_time: float
    wall_time: float
    per_tile_stats: list[TileStats]


@dataclass
class RunSummary:
    """Pooled metrics over a whole run."""

    frames: int
    true_positives: int
    false_negatives: int
    false_positives: int
    sensitivity: float | None
    apt: float | None
    mean_selected_tiles: float | None

    @classmethod
    def from_frame_data(
        cls,
        tp: list[int],
        fn: list[int],
        fp: list[int],
        times: list[float],
        selected_counts: list[int],
    ) -> RunSummary:
        pooled = EvalCounts(
            true_positives=sum(tp), false_negatives=sum(fn), false_positives=sum(fp)
        )
        n = len(times)
        return cls(
            frames=n,
            true_positives=pooled.true_positives,
            false_negatives=pooled.false_negatives,
            false_positives=pooled.false_positives,
            sensitivity=sensitivity(pooled),
            apt=apt(TimingRecord(times)),
            mean_selected_tiles=(sum(selected_counts) / n) if n else None,
        )


@dataclass
class ScenarioRun:
    """Frame results, per-frame evaluation, and the pooled summary."""

    results: list[FrameResult]
    frame_eval: list[EvalCounts]
    summary: RunSummary


def merge_overlapping(boxes: list[Box], iou_threshold: float = 0.5) -> list[Box]:
    """Collapse duplicate reports of one object seen from overlapping tiles.

    Keeps the higher-confidence box of any pair at or above the threshold;
    boxes below it are never removed. Deterministic regardless of input
    order.
    """
    ordered = sorted(boxes, key=lambda b: (-b.confidence, b.x, b.y, b.w, b.h, b.class_id))
    kept: list[Box] = []
    for b in ordered:
        if all(iou(b, k) < iou_threshold for k in kept):
            kept.append(b)
    return kept


def make_grid(cfg: SimulationConfig, frame_w: int, frame_h: int) -> TileGrid:
    if cfg.resize_baseline:
        return degenerate_grid(frame_w, frame_h)
    return compute_grid(GridConfig(frame_w, frame_h, cfg.cnn_size))


def run_frame(
    frame: FrameGt,
    grid: TileGrid,
    cfg: SimulationConfig,
    state: SelectionState,
    store: TrackStore,
    detector: TileDetector,
) -> FrameResult:
    """Process one frame: select, detect, ingest, evict, fuse, update stats."""
    if frame.frame != state.frame:
        raise ValueError(f"frame {frame.frame} does not match state frame {state.frame}")
    t0 = time.perf_counter()
    selected = select_tiles(state, grid, cfg.strategy)
    gt_boxes = [o.box for o in frame.objects]

    sim_time = cfg.frame_overhead
    reports = {}
    for tile_idx in selected:
        detections, elapsed = detector.detect(
            gt_boxes, grid.tiles[tile_idx], frame.frame, tile_idx
        )
        sim_time += elapsed
        confident = [
            d.box for d in detections if d.box.confidence >= cfg.memory.confidence_floor
        ]
        reports[tile_idx] = store.ingest(tile_idx, confident, frame.frame, cfg.memory)
    store.evict_stale(frame.frame, cfg.memory)

    selected_set = set(selected)
    for i in range(grid.n_tiles):
        update_stats(state, i, store.remembered(i), reports.get(i), i in selected_set)

    fused = merge_overlapping(
        [b for i in range(grid.n_tiles) for b in store.remembered(i)], cfg.dedup_iou
    )
    snapshot = state.snapshot()
    state.advance_frame()
    return FrameResult(
        frame=frame.frame,
        selected_tiles=selected,
        detections=fused,
        processing_time=sim_time,
        wall_time=time.perf_counter() - t0,
        per_tile_stats=snapshot,
    )


def run_scenario(
    scenario: Scenario,
    cfg: SimulationConfig,
    grid: TileGrid | None = None,
    detector: TileDetector | None = None,
) -> ScenarioRun:
    """Run every frame sequentially with persistent memory and strategy state."""
    if grid is None:
        grid = make_grid(cfg, scenario.frame_w, scenario.frame_h)
    elif (grid.frame_w, grid.frame_h) != (scenario.frame_w, scenario.frame_h):
        raise ValueError(
            f"grid covers {grid.frame_w}x{grid.frame_h} but scenario frames are "
            f"{scenario.frame_w}x{scenario.frame_h}"
        )
    if detector is None:
        detector = OracleDetector(cfg.detector)
    store = TrackStore(grid.n_tiles)
    state = SelectionState(grid.n_tiles, cum_iou_window=cfg.strategy.cum_iou_window)

    results: list[FrameResult] = []
    evals: list[EvalCounts] = []
    for frame in scenario.frames:
        res = run_frame(frame, grid, cfg, state, store, detector)
        counts = match_detections(
            [o.box for o in frame.objects], res.detections, cfg.eval_iou
        )
        results.append(res)
        evals.append(counts)

    summary = RunSummary.from_frame_data(
        tp=[e.true_positives for e in evals],
        fn=[e.false_negatives for e in evals],
        fp=[e.false_positives for e in evals],
        times=[r.processing_time for r in results],
        selected_counts=[len(r.selected_tiles) for r in results],
    )
    return ScenarioRun(results=results, frame_eval=evals, summary=summary)
