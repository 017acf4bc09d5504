"""Axis-aligned boxes, IoU, and tile-grid layout."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


@dataclass(frozen=True)
class Box:
    """Axis-aligned rectangle in pixel coordinates, top-left origin."""

    x: float
    y: float
    w: float
    h: float
    confidence: float = 1.0
    class_id: int = 0

    def __post_init__(self) -> None:
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"box size must be positive, got {self.w}x{self.h}")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence must be in [0, 1], got {self.confidence}")

    @property
    def x2(self) -> float:
        return self.x + self.w

    @property
    def y2(self) -> float:
        return self.y + self.h

    @property
    def center(self) -> tuple[float, float]:
        return (self.x + self.w / 2.0, self.y + self.h / 2.0)

    @property
    def area(self) -> float:
        return self.w * self.h


def iou(a: Box, b: Box) -> float:
    """Intersection over union of two boxes; 0.0 when disjoint."""
    iw = min(a.x2, b.x2) - max(a.x, b.x)
    ih = min(a.y2, b.y2) - max(a.y, b.y)
    if iw <= 0 or ih <= 0:
        return 0.0
    inter = iw * ih
    return inter / (a.area + b.area - inter)


class OverlapPolicy(Enum):
    """How tile overlap is chosen along each axis."""

    UNIFORM_STRETCH = "uniform-stretch"


@dataclass(frozen=True)
class GridConfig:
    """Frame dimensions plus the square detector input size."""

    input_w: int
    input_h: int
    cnn_size: int
    overlap_policy: OverlapPolicy = OverlapPolicy.UNIFORM_STRETCH

    def __post_init__(self) -> None:
        for name in ("input_w", "input_h", "cnn_size"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        if self.cnn_size > self.input_w or self.cnn_size > self.input_h:
            raise ValueError(
                f"cnn_size {self.cnn_size} exceeds frame {self.input_w}x{self.input_h}"
            )


@dataclass(frozen=True)
class TileGrid:
    """Row-major layout of tiles covering a frame, constant pitch per axis."""

    tiles: tuple[Box, ...]
    cols: int
    rows: int
    overlap_x: int
    overlap_y: int
    frame_w: int
    frame_h: int

    @property
    def n_tiles(self) -> int:
        return len(self.tiles)


def _axis_offsets(length: int, size: int, n: int) -> list[int]:
    # Uniform pitch (length - size) / (n - 1), offsets rounded per tile;
    # last tile clamped flush with the far edge so coverage is exact.
    if n == 1:
        return [0]
    pitch = (length - size) / (n - 1)
    offsets = [int(round(i * pitch)) for i in range(n)]
    offsets[-1] = length - size
    return offsets


def compute_grid(cfg: GridConfig) -> TileGrid:
    """Lay out ceil(W/s) x ceil(H/s) square tiles of side s over the frame.

    Tiles are spread with uniform pitch so the first tile touches the
    near edge, the last one the far edge, and every frame pixel falls
    inside at least one tile. Ordering is row-major from the top left.
    """
    s = cfg.cnn_size
    cols = math.ceil(cfg.input_w / s)
    rows = math.ceil(cfg.input_h / s)
    xs = _axis_offsets(cfg.input_w, s, cols)
    ys = _axis_offsets(cfg.input_h, s, rows)
    tiles = tuple(Box(x, y, s, s) for y in ys for x in xs)
    overlap_x = s - (xs[1] - xs[0]) if cols > 1 else 0
    overlap_y = s - (ys[1] - ys[0]) if rows > 1 else 0
    return TileGrid(tiles, cols, rows, overlap_x, overlap_y, cfg.input_w, cfg.input_h)


def degenerate_grid(frame_w: int, frame_h: int) -> TileGrid:
    """Single tile spanning the whole frame.

    Emulates feeding a downscaled full frame to the detector instead of
    tiling; used as the resize comparison baseline.
    """
    if frame_w <= 0 or frame_h <= 0:
        raise ValueError("frame dimensions must be positive")
    tile = Box(0, 0, frame_w, frame_h)
    return TileGrid((tile,), 1, 1, 0, 0, frame_w, frame_h)


def tile_index_of(grid: TileGrid, b: Box) -> int:
    """Index of the tile whose center is nearest the box center.

    Ties break toward the lowest index, which the row-major ordering
    makes stable.
    """
    cx, cy = b.center
    best = 0
    best_d2 = math.inf
    for i, t in enumerate(grid.tiles):
        tx, ty = t.center
        d2 = (tx - cx) ** 2 + (ty - cy) ** 2
        if d2 < best_d2:
            best = i
            best_d2 = d2
    return best
