"""Published lower bounds on M(n, t), bundled as a data file."""

from __future__ import annotations

import csv
from functools import lru_cache
from importlib import resources
from typing import Optional


@lru_cache(maxsize=None)
def lower_bounds() -> dict[tuple[int, int], int]:
    text = resources.files("grainbound").joinpath("data/reference_lower_bounds.csv").read_text()
    rows = csv.DictReader(line for line in text.splitlines() if line and not line.startswith("#"))
    return {(int(r["n"]), int(r["t"])): int(r["lower"]) for r in rows}


def lower_bound(n: int, t: int) -> Optional[int]:
    return lower_bounds().get((n, t))
