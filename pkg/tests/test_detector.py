from __future__ import annotations

import random

from scipy.stats import binom

from tilesim import Box, DetectorModel, OracleDetector, detect


TILE = Box(0, 0, 352, 352)


def test_perfect_oracle_reproduces_gt():
    model = DetectorModel(miss_rate=0.0, position_noise=0.0)
    gt = [Box(10, 10, 30, 30), Box(200, 100, 40, 40), Box(500, 500, 20, 20)]
    dets, elapsed = detect(model, gt, TILE, frame_index=0, tile_index=0)
    assert elapsed == model.per_tile_latency
    assert len(dets) == 2  # third box is centered outside the tile
    for d, g in zip(dets, gt[:2]):
        assert (d.box.x, d.box.y, d.box.w, d.box.h) == (g.x, g.y, g.w, g.h)
        assert d.source_tile == 0


def test_full_miss_rate_outputs_nothing():
    model = DetectorModel(miss_rate=1.0)
    gt = [Box(10, 10, 30, 30), Box(50, 50, 30, 30)]
    dets, _ = detect(model, gt, TILE, frame_index=3, tile_index=1)
    assert dets == []


def test_miss_rate_within_binomial_bounds():
    model = DetectorModel(miss_rate=0.5, rng_seed=42)
    rng = random.Random(0)
    gt = [
        Box(rng.uniform(0, 300), rng.uniform(0, 300), 10, 10) for _ in range(1000)
    ]
    dets, _ = detect(model, gt, TILE, frame_index=0, tile_index=0)
    lo, hi = binom.interval(0.99, 1000, 0.5)
    assert lo <= len(dets) <= hi


def test_detections_reproducible():
    model = DetectorModel(miss_rate=0.3, position_noise=2.0, rng_seed=9)
    gt = [Box(20 * i + 5, 15, 14, 14) for i in range(12)]
    first, _ = detect(model, gt, TILE, frame_index=4, tile_index=2)
    second, _ = detect(model, gt, TILE, frame_index=4, tile_index=2)
    assert first == second


def test_detections_keyed_per_frame_and_tile():
    model = DetectorModel(miss_rate=0.3, position_noise=2.0, rng_seed=9)
    gt = [Box(20 * i + 5, 15, 14, 14) for i in range(12)]
    a, _ = detect(model, gt, TILE, frame_index=4, tile_index=2)
    b, _ = detect(model, gt, TILE, frame_index=5, tile_index=2)
    c, _ = detect(model, gt, TILE, frame_index=4, tile_index=3)
    assert a != b and a != c


def test_jittered_boxes_stay_inside_tile():
    tile = Box(100, 100, 200, 200)
    model = DetectorModel(position_noise=25.0, rng_seed=5)
    rng = random.Random(2)
    for frame in range(50):
        gt = [
            Box(rng.uniform(90, 280), rng.uniform(90, 280), 20, 20) for _ in range(5)
        ]
        dets, _ = detect(model, gt, tile, frame_index=frame, tile_index=0)
        for d in dets:
            assert d.box.x >= tile.x and d.box.y >= tile.y
            assert d.box.x2 <= tile.x2 and d.box.y2 <= tile.y2


def test_confidence_drawn_from_range():
    model = DetectorModel(confidence_range=(0.6, 0.8), rng_seed=1)
    gt = [Box(30 * i + 5, 40, 16, 16) for i in range(10)]
    dets, _ = detect(model, gt, TILE, frame_index=0, tile_index=0)
    assert len(dets) == 10
    assert all(0.6 <= d.box.confidence <= 0.8 for d in dets)


def test_oracle_detector_counts_calls():
    det = OracleDetector(DetectorModel())
    gt = [Box(10, 10, 12, 12)]
    det.detect(gt, TILE, 0, 0)
    det.detect(gt, TILE, 1, 0)
    assert det.calls == 2
