"""Bundled 50-sense example data (fruits, programming languages, animals, cars)."""
from pathlib import Path

FIXTURE_DIR = Path(__file__).parent / "fixture"


def fixture_path(name: str = "") -> Path:
    return FIXTURE_DIR / name
