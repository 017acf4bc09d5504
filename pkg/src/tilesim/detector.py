"""Detector interface and a seeded synthetic oracle standing in for a real CNN."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from .geometry import Box


@dataclass(frozen=True)
class DetectorModel:
    """Behavior knobs of the synthetic detector.

    miss_rate: probability of dropping each visible ground-truth object.
    position_noise: half-range in pixels of the uniform jitter applied to
        each box corner coordinate.
    confidence_range: detections draw their confidence uniformly from here.
    per_tile_latency: simulated seconds charged per processed tile.
    """

    miss_rate: float = 0.0
    position_noise: float = 0.0
    confidence_range: tuple[float, float] = (0.5, 1.0)
    per_tile_latency: float = 0.025
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.miss_rate <= 1.0:
            raise ValueError("miss_rate must be in [0, 1]")
        if self.position_noise < 0:
            raise ValueError("position_noise must be >= 0")
        lo, hi = self.confidence_range
        if not 0.0 <= lo <= hi <= 1.0:
            raise ValueError("confidence_range must satisfy 0 <= lo <= hi <= 1")
        if self.per_tile_latency < 0:
            raise ValueError("per_tile_latency must be >= 0")
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be >= 0")


@dataclass(frozen=True)
class Detection:
    """One detector output box, clipped to the tile it came from."""

    box: Box
    source_tile: int


class TileDetector(Protocol):
    """Contract for detector backends.

    A backend receives the view of one tile (here, the frame ground truth
    plus the tile rectangle; a real backend would take an image crop) and
    returns detections in frame coordinates along with the elapsed seconds.
    """

    def detect(
        self, frame_gt: Sequence[Box], tile: Box, frame_index: int, tile_index: int
    ) -> tuple[list[Detection], float]: ...


def detect(
    model: DetectorModel,
    frame_gt: Sequence[Box],
    tile: Box,
    frame_index: int,
    tile_index: int,
) -> tuple[list[Detection], float]:
    """Synthesize detections for one tile from ground truth.

    Every ground-truth box whose center lies inside the tile is emitted
    with probability 1 - miss_rate, corners jittered by +-position_noise,
    confidence drawn from confidence_range, and the result clipped to the
    tile. Randomness is keyed on (seed, frame, tile, object), so the same
    tile yields identical detections no matter which other tiles run.
    """
    out: list[Detection] = []
    for oi, gt in enumerate(frame_gt):
        cx, cy = gt.center
        if not (tile.x <= cx <= tile.x2 and tile.y <= cy <= tile.y2):
            continue
        rng = np.random.default_rng([model.rng_seed, frame_index, tile_index, oi])
        if rng.random() < model.miss_rate:
            continue
        noise = model.position_noise
        dx1, dy1, dx2, dy2 = rng.uniform(-noise, noise, 4) if noise > 0 else (0.0,) * 4
        conf = float(rng.uniform(*model.confidence_range))
        x1 = max(gt.x + dx1, tile.x)
        y1 = max(gt.y + dy1, tile.y)
        x2 = min(gt.x2 + dx2, tile.x2)
        y2 = min(gt.y2 + dy2, tile.y2)
        if x2 - x1 <= 0 or y2 - y1 <= 0:
            continue
        out.append(
            Detection(
                box=Box(x1, y1, x2 - x1, y2 - y1, confidence=conf, class_id=gt.class_id),
                source_tile=tile_index,
            )
        )
    return out, model.per_tile_latency


class OracleDetector:
    """TileDetector backed by the synthetic model; counts invocations."""

    def __init__(self, model: DetectorModel):
        self.model = model
        self.calls = 0

    def detect(
        self, frame_gt: Sequence[Box], tile: Box, frame_index: int, tile_index: int
    ) -> tuple[list[Detection], float]:
        self.calls += 1
        return detect(self.model, frame_gt, tile, frame_index, tile_index)
