"""Tile-selection policies: all tiles, round robin, object-driven, and scored top-N."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from enum import Enum

from .geometry import TileGrid
from .memory import MatchReport
from .geometry import Box


class StrategyKind(Enum):
    TA = "ta"  # process every tile
    T1 = "t1"  # one tile per frame, round robin
    TO = "to"  # tiles with objects, plus periodic reset sweep
    TSM = "tsm"  # top-N tiles by value score


@dataclass
class StrategyConfig:
    kind: StrategyKind
    reset_time: int = 10
    budget_n: int | None = None
    target_apt: float | None = None
    per_tile_cost: float | None = None
    cum_iou_window: int = 1

    def __post_init__(self) -> None:
        if self.reset_time < 1:
            raise ValueError("reset_time must be >= 1")
        if self.budget_n is not None and self.budget_n < 1:
            raise ValueError("budget_n must be >= 1")
        if self.target_apt is not None and self.target_apt <= 0:
            raise ValueError("target_apt must be positive")
        if self.per_tile_cost is not None and self.per_tile_cost <= 0:
            raise ValueError("per_tile_cost must be positive")
        if self.cum_iou_window < 1:
            raise ValueError("cum_iou_window must be >= 1")


def resolve_budget(cfg: StrategyConfig, n_tiles: int) -> int:
    """Number of tiles a scored selection may process per frame.

    An explicit budget wins; otherwise the budget is how many tiles fit
    into the target per-frame time at the given per-tile cost. Clamped
    to [1, n_tiles].
    """
    if cfg.budget_n is not None:
        n = cfg.budget_n
    elif cfg.target_apt is not None and cfg.per_tile_cost is not None:
        n = int(cfg.target_apt / cfg.per_tile_cost)
    else:
        raise ValueError("scored selection needs budget_n or target_apt + per_tile_cost")
    return max(1, min(n, n_tiles))


@dataclass
class TileStats:
    """Per-tile selection criteria.

    objects: live remembered tracks in the tile.
    cum_iou: sum of match IoUs from the most recent processing window.
    not_selected: consecutive frames the tile was passed over.
    frames_since_detection: frames since the tile last produced a detection.
    """

    objects: int = 0
    cum_iou: float = 0.0
    not_selected: int = 0
    frames_since_detection: int = 0


class SelectionState:
    """Mutable per-run state shared by all strategies."""

    def __init__(self, n_tiles: int, cum_iou_window: int = 1):
        if n_tiles < 1:
            raise ValueError("n_tiles must be >= 1")
        self.n_tiles = n_tiles
        self.round_robin_cursor = 0
        self.stats = [TileStats() for _ in range(n_tiles)]
        self.frame = 0
        self.last_reset_frame = 0
        self.last_processed = [-1] * n_tiles
        self._iou_history: list[deque] = [
            deque(maxlen=cum_iou_window) for _ in range(n_tiles)
        ]

    @property
    def frames_since_full_sweep(self) -> int:
        return self.frame - self.last_reset_frame

    def advance_frame(self) -> None:
        self.frame += 1

    def snapshot(self) -> list[TileStats]:
        return [replace(s) for s in self.stats]


def select_ta(state: SelectionState, grid: TileGrid) -> list[int]:
    """Process every tile; the accuracy ceiling and worst-case workload."""
    return list(range(grid.n_tiles))


def select_t1(state: SelectionState, grid: TileGrid) -> int:
    """One tile per frame, cycling round robin."""
    idx = state.round_robin_cursor
    state.round_robin_cursor = (idx + 1) % grid.n_tiles
    return idx


def select_to(state: SelectionState, grid: TileGrid, cfg: StrategyConfig) -> list[int]:
    """Tiles that currently hold objects, with a periodic reset sweep.

    The first frame processes everything. Afterwards only tiles whose
    stats show live objects are selected, and every reset_time frames the
    tiles left unsearched since the previous reset are added back so new
    arrivals are not missed forever.
    """
    n = grid.n_tiles
    if state.frame == 0:
        state.last_reset_frame = 0
        return list(range(n))
    selected = {i for i in range(n) if state.stats[i].objects > 0}
    if state.frame - state.last_reset_frame >= cfg.reset_time:
        selected |= {i for i in range(n) if state.last_processed[i] <= state.last_reset_frame}
        state.last_reset_frame = state.frame
    return sorted(selected)


def criteria_maxima(stats: list[TileStats]) -> TileStats:
    """Per-criterion maxima across tiles, used to normalize scores."""
    return TileStats(
        objects=max(s.objects for s in stats),
        cum_iou=max(s.cum_iou for s in stats),
        not_selected=max(s.not_selected for s in stats),
        frames_since_detection=max(s.frames_since_detection for s in stats),
    )


def _ratio(value: float, maximum: float) -> float:
    # A criterion that is zero everywhere contributes a constant; define
    # the ratio as 0 so scores stay finite and the ranking is untouched.
    return value / maximum if maximum > 0 else 0.0


def tile_value(stats: TileStats, maxima: TileStats) -> float:
    """Value score of a tile from its max-normalized criteria, in [0, 4].

    High object count, low overlap with remembered positions (movement),
    long non-selection, and long silence all push the score up.
    """
    return (
        _ratio(stats.objects, maxima.objects)
        + (1.0 - _ratio(stats.cum_iou, maxima.cum_iou))
        + _ratio(stats.not_selected, maxima.not_selected)
        + _ratio(stats.frames_since_detection, maxima.frames_since_detection)
    )


def select_tsm(state: SelectionState, grid: TileGrid, cfg: StrategyConfig) -> list[int]:
    """Top-N tiles by value score, ties broken by lower tile index."""
    n = grid.n_tiles
    maxima = criteria_maxima(state.stats)
    values = [tile_value(state.stats[i], maxima) for i in range(n)]
    budget = resolve_budget(cfg, n)
    ranked = sorted(range(n), key=lambda i: (-values[i], i))
    return sorted(ranked[:budget])


def select_tiles(state: SelectionState, grid: TileGrid, cfg: StrategyConfig) -> list[int]:
    """Dispatch to the configured strategy; always a sorted index list."""
    if grid.n_tiles != state.n_tiles:
        raise ValueError(f"state covers {state.n_tiles} tiles, grid has {grid.n_tiles}")
    if cfg.kind is StrategyKind.TA:
        return select_ta(state, grid)
    if cfg.kind is StrategyKind.T1:
        return [select_t1(state, grid)]
    if cfg.kind is StrategyKind.TO:
        return select_to(state, grid, cfg)
    return select_tsm(state, grid, cfg)


def update_stats(
    state: SelectionState,
    tile: int,
    live_boxes: list[Box],
    report: MatchReport | None,
    selected: bool,
) -> TileStats:
    """Fold one frame's outcome for one tile into its stats.

    Called exactly once per tile per frame, after ingest and eviction.
    live_boxes are the tile's remembered tracks; report is the ingest
    outcome for processed tiles and None otherwise.
    """
    s = state.stats[tile]
    if selected:
        s.not_selected = 0
        s.objects = len(live_boxes)
        hist = state._iou_history[tile]
        hist.append(sum(report.matched_ious) if report else 0.0)
        s.cum_iou = sum(hist)
        if report is not None and report.detections > 0:
            s.frames_since_detection = 0
        else:
            s.frames_since_detection += 1
        state.last_processed[tile] = state.frame
    else:
        s.not_selected += 1
        s.frames_since_detection += 1
    return s
