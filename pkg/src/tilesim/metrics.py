"""Sensitivity and average-processing-time metrics with GT-detection matching."""

from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import Box, iou


@dataclass
class EvalCounts:
    """Matching outcome for one frame or pooled over many."""

    true_positives: int = 0
    false_negatives: int = 0
    false_positives: int = 0
    matches: list[tuple[int, int, float]] = field(default_factory=list)

    def add(self, other: EvalCounts) -> None:
        self.true_positives += other.true_positives
        self.false_negatives += other.false_negatives
        self.false_positives += other.false_positives


@dataclass
class TimingRecord:
    """Per-frame processing times in seconds."""

    times: list[float] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.times)


def _box_key(b: Box) -> tuple:
    return (b.x, b.y, b.w, b.h, b.confidence, b.class_id)


def match_detections(
    gt: list[Box], pred: list[Box], iou_threshold: float = 0.5
) -> EvalCounts:
    """Greedy highest-IoU-first one-to-one matching of predictions to GT.

    Pairs at or above the threshold become true positives; leftover GT are
    false negatives and leftover predictions false positives. Ties break
    on GT index and then on prediction coordinates, so the counts do not
    depend on the order predictions arrive in.
    """
    pairs = []
    for gi, g in enumerate(gt):
        for pi, p in enumerate(pred):
            v = iou(g, p)
            if v >= iou_threshold:
                pairs.append((v, gi, pi))
    pairs.sort(key=lambda t: (-t[0], t[1], _box_key(pred[t[2]]), t[2]))

    used_g: set[int] = set()
    used_p: set[int] = set()
    matches: list[tuple[int, int, float]] = []
    for v, gi, pi in pairs:
        if gi in used_g or pi in used_p:
            continue
        used_g.add(gi)
        used_p.add(pi)
        matches.append((gi, pi, v))

    tp = len(matches)
    return EvalCounts(
        true_positives=tp,
        false_negatives=len(gt) - tp,
        false_positives=len(pred) - tp,
        matches=matches,
    )


def sensitivity(counts: EvalCounts) -> float | None:
    """Fraction of ground-truth objects detected; None when there is no GT."""
    total = counts.true_positives + counts.false_negatives
    if total == 0:
        return None
    return counts.true_positives / total


def apt(record: TimingRecord) -> float | None:
    """Mean per-frame processing time; None for an empty record."""
    if not record.times:
        return None
    return sum(record.times) / len(record.times)
