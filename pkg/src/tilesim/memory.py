"""Per-tile track memory: remember detections, match by IoU, evict stale tracks."""

from __future__ import annotations

from bisect import bisect_right
from collections import deque
from dataclasses import dataclass, field

from .geometry import Box, iou


@dataclass
class MemoryConfig:
    buffer_len: int = 3
    match_iou_threshold: float = 0.5
    evict_after: int = 3
    confidence_floor: float = 0.5

    def __post_init__(self) -> None:
        if self.buffer_len < 1:
            raise ValueError("buffer_len must be >= 1")
        if self.evict_after < 1:
            raise ValueError("evict_after must be >= 1")
        if not 0.0 < self.match_iou_threshold < 1.0:
            raise ValueError("match_iou_threshold must be in (0, 1)")
        if not 0.0 <= self.confidence_floor <= 1.0:
            raise ValueError("confidence_floor must be in [0, 1]")


@dataclass
class TrackedBox:
    """A remembered detection with its bookkeeping counters."""

    box: Box
    detection_count: int
    last_tile: int
    class_id: int
    last_seen_frame: int
    history: deque = field(default_factory=deque)


@dataclass
class MatchReport:
    """Outcome of one ingest call."""

    updated: int
    created: int
    matched_ious: list[float] = field(default_factory=list)

    @property
    def detections(self) -> int:
        return self.updated + self.created


class TrackStore:
    """Per-tile collections of TrackedBox plus a processed-frame log.

    The eviction clock of a track only advances at frames where its tile
    was actually processed, so tracks in unvisited tiles persist and keep
    standing in for detections there.
    """

    def __init__(self, n_tiles: int):
        if n_tiles < 1:
            raise ValueError("n_tiles must be >= 1")
        self._tracks: list[list[TrackedBox]] = [[] for _ in range(n_tiles)]
        self._processed: list[list[int]] = [[] for _ in range(n_tiles)]
        self.current_frame = -1

    @property
    def n_tiles(self) -> int:
        return len(self._tracks)

    def _check_tile(self, tile: int) -> None:
        if not 0 <= tile < len(self._tracks):
            raise ValueError(f"tile index {tile} out of range [0, {len(self._tracks)})")

    def tracks(self, tile: int) -> list[TrackedBox]:
        self._check_tile(tile)
        return list(self._tracks[tile])

    def all_tracks(self) -> list[TrackedBox]:
        return [t for tile in self._tracks for t in tile]

    def processed_frames(self, tile: int) -> tuple[int, ...]:
        self._check_tile(tile)
        return tuple(self._processed[tile])

    def ingest(
        self, tile: int, detections: list[Box], frame: int, cfg: MemoryConfig
    ) -> MatchReport:
        """Match detections of a processed tile against its stored tracks.

        Greedy highest-IoU-first, one-to-one: a detection whose best free
        match reaches the threshold updates that track's position and
        counter; the rest start new tracks with detection_count 1.
        Detections are expected to be pre-filtered to confidences at or
        above cfg.confidence_floor.
        """
        self._check_tile(tile)
        log = self._processed[tile]
        if not log or log[-1] != frame:
            log.append(frame)
        self.current_frame = max(self.current_frame, frame)

        tracks = self._tracks[tile]
        pairs = []
        for di, det in enumerate(detections):
            for ti, tr in enumerate(tracks):
                v = iou(det, tr.box)
                if v >= cfg.match_iou_threshold:
                    pairs.append((v, di, ti))
        pairs.sort(key=lambda p: (-p[0], p[1], p[2]))

        used_d: set[int] = set()
        used_t: set[int] = set()
        matched_ious: list[float] = []
        for v, di, ti in pairs:
            if di in used_d or ti in used_t:
                continue
            used_d.add(di)
            used_t.add(ti)
            tr = tracks[ti]
            tr.box = detections[di]
            tr.detection_count += 1
            tr.last_seen_frame = frame
            tr.history.append(detections[di])
            while len(tr.history) > cfg.buffer_len:
                tr.history.popleft()
            matched_ious.append(v)

        created = 0
        for di, det in enumerate(detections):
            if di not in used_d:
                tracks.append(
                    TrackedBox(
                        box=det,
                        detection_count=1,
                        last_tile=tile,
                        class_id=det.class_id,
                        last_seen_frame=frame,
                        history=deque([det], maxlen=cfg.buffer_len),
                    )
                )
                created += 1
        return MatchReport(updated=len(used_t), created=created, matched_ious=matched_ious)

    def evict_stale(self, frame: int, cfg: MemoryConfig) -> int:
        """Drop tracks unmatched for more than evict_after processed frames.

        A frame counts against a track only if its tile was processed at
        that frame after the track was last seen.
        """
        if frame < self.current_frame:
            raise ValueError(f"frame {frame} precedes store frame {self.current_frame}")
        self.current_frame = frame
        evicted = 0
        for tile, tracks in enumerate(self._tracks):
            log = self._processed[tile]
            kept = []
            for tr in tracks:
                misses = bisect_right(log, frame) - bisect_right(log, tr.last_seen_frame)
                if misses > cfg.evict_after:
                    evicted += 1
                else:
                    kept.append(tr)
            self._tracks[tile] = kept
        return evicted

    def remembered(self, tile: int) -> list[Box]:
        """Current positions of all live tracks in a tile."""
        self._check_tile(tile)
        return [tr.box for tr in self._tracks[tile]]
