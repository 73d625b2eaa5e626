"""Bundled StateFiles for the two worked example pairs."""

from __future__ import annotations

import json
from pathlib import Path

from ..states import DensityMatrix
from ..statefile import parse_state

FIXTURE_NAMES = ("rho1", "rho2", "sigma1", "sigma2")


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled StateFile."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {FIXTURE_NAMES}")
    return Path(__file__).resolve().parent / f"{name}.json"


def load_fixture(name: str) -> DensityMatrix:
    """Parse and validate one of the bundled example states."""
    doc = json.loads(fixture_path(name).read_text(encoding="utf-8"))
    return parse_state(doc)
