from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Range:
    """Closed grid min..max with `steps` points"""

    min: float
    max: float
    steps: int

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError(f"range needs at least 2 steps, got {self.steps}")
        if not self.max > self.min:
            raise ValueError(f"range max ({self.max}) must exceed min ({self.min})")

    def values(self, endpoint: bool = True) -> np.ndarray:
        return np.linspace(self.min, self.max, self.steps, endpoint=endpoint)


def parse_range(text: str) -> Range:
    """Parse 'min:max:steps' (e.g. '0:7.53:200')"""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected min:max:steps, got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise ValueError(f"bad range {text!r}: {e}") from e
    return Range(lo, hi, steps)


def parse_int_list(text: str) -> list:
    """Parse '1,2,3' or '1-5' into a list of integers"""
    text = text.strip()
    if "-" in text and "," not in text and not text.startswith("-"):
        lo, hi = text.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(tok) for tok in text.split(",") if tok.strip()]
