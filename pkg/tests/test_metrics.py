from __future__ import annotations

import random
from itertools import permutations

import pytest

from tilesim import (
    Box,
    EvalCounts,
    TimingRecord,
    apt,
    iou,
    match_detections,
    sensitivity,
)


def optimal_tp(gt, pred, thr):
    """Exhaustive best one-to-one matching count."""
    if not gt or not pred:
        return 0
    if len(gt) <= len(pred):
        return max(
            sum(iou(gt[i], pred[j]) >= thr for i, j in enumerate(perm))
            for perm in permutations(range(len(pred)), len(gt))
        )
    return max(
        sum(iou(gt[i], pred[j]) >= thr for j, i in enumerate(perm))
        for perm in permutations(range(len(gt)), len(pred))
    )


def _random_boxes(rng, n):
    return [
        Box(rng.uniform(0, 70), rng.uniform(0, 70), rng.uniform(8, 30), rng.uniform(8, 30))
        for _ in range(n)
    ]


def test_exact_predictions():
    gt = [Box(0, 0, 10, 10), Box(40, 40, 12, 12), Box(80, 10, 8, 8)]
    counts = match_detections(gt, list(gt))
    assert counts.true_positives == 3
    assert counts.false_negatives == 0
    assert counts.false_positives == 0


def test_empty_predictions():
    gt = [Box(10 * i, 0, 5, 5) for i in range(4)]
    counts = match_detections(gt, [])
    assert counts.true_positives == 0
    assert counts.false_negatives == 4
    assert counts.false_positives == 0


def test_sub_threshold_pair_matches_exhaustive():
    gt = [Box(0, 0, 10, 10), Box(30, 0, 10, 10), Box(60, 0, 10, 10)]
    pred = [
        Box(1, 0, 10, 10),   # good match for gt[0]
        Box(31, 0, 10, 10),  # good match for gt[1]
        Box(60, 8, 10, 10),  # IoU 2/18 with gt[2], below threshold
    ]
    counts = match_detections(gt, pred, iou_threshold=0.5)
    assert counts.true_positives == optimal_tp(gt, pred, 0.5) == 2
    assert counts.false_negatives == 1
    assert counts.false_positives == 1


def test_greedy_equals_exhaustive_on_random_instances():
    rng = random.Random(101)
    for trial in range(100):
        gt = _random_boxes(rng, rng.randint(0, 5))
        pred = _random_boxes(rng, rng.randint(0, 5))
        counts = match_detections(gt, pred, iou_threshold=0.5)
        assert counts.true_positives == optimal_tp(gt, pred, 0.5), f"trial {trial}"


def test_matching_invariant_to_prediction_order():
    rng = random.Random(55)
    for _ in range(50):
        gt = _random_boxes(rng, rng.randint(1, 5))
        pred = _random_boxes(rng, rng.randint(1, 5))
        base = match_detections(gt, pred)
        shuffled = pred[:]
        rng.shuffle(shuffled)
        other = match_detections(gt, shuffled)
        assert (base.true_positives, base.false_negatives, base.false_positives) == (
            other.true_positives,
            other.false_negatives,
            other.false_positives,
        )


def test_sensitivity_values():
    assert sensitivity(EvalCounts(true_positives=3, false_negatives=1)) == 0.75
    assert sensitivity(EvalCounts(true_positives=0, false_negatives=5)) == 0.0
    assert sensitivity(EvalCounts()) is None


def test_pooled_equals_per_frame_recomputation():
    rng = random.Random(77)
    frames = []
    for _ in range(20):
        gt = _random_boxes(rng, rng.randint(0, 4))
        pred = _random_boxes(rng, rng.randint(0, 4))
        frames.append(match_detections(gt, pred))
    pooled = EvalCounts()
    for c in frames:
        pooled.add(c)
    tp = sum(c.true_positives for c in frames)
    fn = sum(c.false_negatives for c in frames)
    assert pooled.true_positives == tp and pooled.false_negatives == fn
    assert sensitivity(pooled) == pytest.approx(tp / (tp + fn))


def test_apt_values():
    assert apt(TimingRecord([0.1])) == pytest.approx(0.1)
    assert apt(TimingRecord([0.1, 0.3])) == pytest.approx(0.2)
    assert apt(TimingRecord([])) is None


def test_apt_non_negative_random():
    rng = random.Random(3)
    times = [rng.uniform(0, 2) for _ in range(30)]
    assert apt(TimingRecord(times)) >= 0.0
