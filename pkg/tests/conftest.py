from __future__ import annotations

from pathlib import Path

import pytest

from tilesim import Scenario, load_scenario

REPO_ROOT = Path(__file__).resolve().parent.parent
SCENARIO_DIR = REPO_ROOT / "scenarios"
GOLDEN_DIR = Path(__file__).resolve().parent / "data"


def shipped_scenario_paths() -> list[Path]:
    return sorted(SCENARIO_DIR.glob("*.json"))


@pytest.fixture
def static_small() -> Scenario:
    return load_scenario(SCENARIO_DIR / "static_small.json")


@pytest.fixture
def drift_slow() -> Scenario:
    return load_scenario(SCENARIO_DIR / "drift_slow.json")


@pytest.fixture
def static_sentries() -> Scenario:
    return load_scenario(SCENARIO_DIR / "static_sentries.json")
