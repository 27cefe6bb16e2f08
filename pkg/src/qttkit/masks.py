"""Observation masks: seeded uniform sampling or a mask image from disk."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from PIL import Image

__all__ = ["MaskSpec", "make_mask"]


@dataclass
class MaskSpec:
    """Either kind="random" with a sampling rate and seed, or kind="file"
    with a grayscale mask image where pixel value 0 means missing."""

    kind: str = "random"
    sr: float = 0.5
    seed: int = 0
    path: str | None = None

    def __post_init__(self):
        if self.kind not in ("random", "file"):
            raise ValueError(f"unknown mask kind {self.kind!r}")
        if self.kind == "random" and not 0.0 < self.sr <= 1.0:
            raise ValueError("sampling rate must lie in (0, 1]")
        if self.kind == "file" and not self.path:
            raise ValueError("file masks need a path")


def make_mask(dims, spec: MaskSpec) -> np.ndarray:
    """Boolean observation mask of the given shape (True = observed)."""
    dims = tuple(int(d) for d in dims)
    if spec.kind == "random":
        rng = np.random.default_rng(spec.seed)
        if spec.sr >= 1.0:
            return np.ones(dims, dtype=bool)
        return rng.random(dims) < spec.sr
    with Image.open(spec.path) as img:
        mask = np.asarray(img.convert("L"))
    if mask.shape != dims:
        raise ValueError(f"mask image shape {mask.shape} does not match dims {dims}")
    return mask > 0
