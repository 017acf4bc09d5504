"""Scenario files: ground-truth-annotated frame sequences plus a synthetic generator."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Literal

import numpy as np

from .geometry import Box

SCENARIO_SCHEMA_VERSION = 1


class ScenarioError(Exception):
    """Scenario problem; `code` distinguishes the failure class.

    Codes: "parse" (unreadable file), "schema" (missing/ill-typed fields),
    "bounds" (box outside the frame), "frames" (non-contiguous indices),
    "ids" (duplicate object id within a frame).
    """

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


@dataclass(frozen=True)
class GtObject:
    """One annotated object in one frame; ids are stable across frames."""

    object_id: int
    box: Box


@dataclass(frozen=True)
class FrameGt:
    frame: int
    objects: tuple[GtObject, ...]


@dataclass
class Scenario:
    """A frame sequence with ground truth, the unit of simulation input."""

    frame_w: int
    frame_h: int
    frames: list[FrameGt]
    metadata: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return str(self.metadata.get("name", ""))

    @property
    def n_frames(self) -> int:
        return len(self.frames)

    def validate(self) -> None:
        if self.frame_w <= 0 or self.frame_h <= 0:
            raise ScenarioError("schema", "frame dimensions must be positive")
        for pos, fr in enumerate(self.frames):
            if fr.frame != pos:
                raise ScenarioError(
                    "frames", f"frame indices must be contiguous from 0; position {pos} holds frame {fr.frame}"
                )
            seen: set[int] = set()
            for obj in fr.objects:
                if obj.object_id in seen:
                    raise ScenarioError(
                        "ids", f"duplicate object id {obj.object_id} in frame {fr.frame}"
                    )
                seen.add(obj.object_id)
                b = obj.box
                if b.x < 0 or b.y < 0 or b.x2 > self.frame_w or b.y2 > self.frame_h:
                    raise ScenarioError(
                        "bounds",
                        f"object {obj.object_id} in frame {fr.frame} exceeds "
                        f"{self.frame_w}x{self.frame_h}: ({b.x}, {b.y}, {b.w}, {b.h})",
                    )


def _box_to_dict(b: Box) -> dict:
    return {"x": b.x, "y": b.y, "w": b.w, "h": b.h, "class_id": b.class_id}


def scenario_to_dict(s: Scenario) -> dict:
    return {
        "schema_version": SCENARIO_SCHEMA_VERSION,
        "frame_w": s.frame_w,
        "frame_h": s.frame_h,
        "metadata": s.metadata,
        "frames": [
            {
                "frame": fr.frame,
                "objects": [
                    {"id": o.object_id, **_box_to_dict(o.box)} for o in fr.objects
                ],
            }
            for fr in s.frames
        ],
    }


def scenario_from_dict(data: dict) -> Scenario:
    try:
        if data["schema_version"] != SCENARIO_SCHEMA_VERSION:
            raise ScenarioError(
                "schema", f"unsupported schema_version {data['schema_version']!r}"
            )
        frames = []
        for fr in data["frames"]:
            objects = tuple(
                GtObject(
                    object_id=int(o["id"]),
                    box=Box(o["x"], o["y"], o["w"], o["h"], class_id=int(o.get("class_id", 0))),
                )
                for o in fr["objects"]
            )
            frames.append(FrameGt(frame=int(fr["frame"]), objects=objects))
        scenario = Scenario(
            frame_w=int(data["frame_w"]),
            frame_h=int(data["frame_h"]),
            frames=frames,
            metadata=dict(data.get("metadata", {})),
        )
    except ScenarioError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError("schema", f"malformed scenario structure: {exc}") from exc
    scenario.validate()
    return scenario


def load_scenario(path: str | Path) -> Scenario:
    """Load and validate a scenario file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioError("parse", f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError("parse", f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ScenarioError("schema", f"scenario root must be an object, got {type(data).__name__}")
    return scenario_from_dict(data)


def save_scenario(scenario: Scenario, path: str | Path) -> None:
    """Write a scenario canonically so identical inputs give identical bytes."""
    scenario.validate()
    payload = json.dumps(scenario_to_dict(scenario), sort_keys=True, indent=2)
    Path(path).write_text(payload + "\n")


@dataclass(frozen=True)
class GeneratorParams:
    """Knobs for the synthetic scenario generator.

    Velocities default to at most 3 px/frame so objects drift slowly
    relative to the revisit period of any reasonable tile schedule.
    """

    n_objects: int
    n_frames: int
    frame_w: int = 960
    frame_h: int = 544
    seed: int = 0
    motion: Literal["static", "linear"] = "linear"
    max_speed: float = 3.0
    velocity: tuple[float, float] | None = None
    size_range: tuple[int, int] = (16, 48)
    enter_exit: bool = False
    name: str = "generated"

    def __post_init__(self) -> None:
        if self.n_objects < 0 or self.n_frames < 0:
            raise ValueError("n_objects and n_frames must be >= 0")
        if self.frame_w <= 0 or self.frame_h <= 0:
            raise ValueError("frame dimensions must be positive")
        if self.motion not in ("static", "linear"):
            raise ValueError(f"unknown motion model {self.motion!r}")
        lo, hi = self.size_range
        if not 0 < lo <= hi:
            raise ValueError("size_range must satisfy 0 < lo <= hi")
        if hi >= min(self.frame_w, self.frame_h):
            raise ValueError("object sizes must fit inside the frame")
        if self.max_speed < 0:
            raise ValueError("max_speed must be >= 0")


def generate_scenario(params: GeneratorParams) -> Scenario:
    """Build a deterministic scenario of moving objects from seeded draws.

    Objects spawn uniformly, move linearly (clamped at the frame edges),
    and optionally enter/exit partway through the sequence.
    """
    rng = np.random.default_rng(params.seed)
    lo, hi = params.size_range

    spawned = []
    for oid in range(params.n_objects):
        w = int(rng.integers(lo, hi + 1))
        h = int(rng.integers(lo, hi + 1))
        x0 = int(rng.integers(0, params.frame_w - w + 1))
        y0 = int(rng.integers(0, params.frame_h - h + 1))
        if params.motion == "static":
            vx, vy = 0.0, 0.0
        elif params.velocity is not None:
            vx, vy = params.velocity
        else:
            vx = float(rng.uniform(-params.max_speed, params.max_speed))
            vy = float(rng.uniform(-params.max_speed, params.max_speed))
        if params.enter_exit and params.n_frames > 1:
            first = int(rng.integers(0, params.n_frames))
            last = int(rng.integers(first, params.n_frames))
        else:
            first, last = 0, max(params.n_frames - 1, 0)
        spawned.append((oid, w, h, x0, y0, vx, vy, first, last))

    frames = []
    for t in range(params.n_frames):
        objects = []
        for oid, w, h, x0, y0, vx, vy, first, last in spawned:
            if not first <= t <= last:
                continue
            x = min(max(x0 + vx * t, 0.0), float(params.frame_w - w))
            y = min(max(y0 + vy * t, 0.0), float(params.frame_h - h))
            objects.append(GtObject(oid, Box(x, y, w, h)))
        frames.append(FrameGt(frame=t, objects=tuple(objects)))

    # Tuples become lists so the metadata round-trips through JSON unchanged.
    gen = {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(params).items()}
    scenario = Scenario(
        frame_w=params.frame_w,
        frame_h=params.frame_h,
        frames=frames,
        metadata={"name": params.name, "seed": params.seed, "generator": gen},
    )
    scenario.validate()
    return scenario
