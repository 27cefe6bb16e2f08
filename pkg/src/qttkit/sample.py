"""Deterministic natural-looking test image.

Smooth low-frequency color fields plus a sun disk and a soft horizon; the
output is reproducible (fixed seed) and exhibits the statistics the rest of
the package cares about: smooth channels, strong inter-channel correlation,
fast-decaying singular values, and a sparse transform domain.
"""

from __future__ import annotations

import numpy as np

from .image import ColorImage

__all__ = ["sample_image"]


def sample_image(side: int = 64, seed: int = 7) -> ColorImage:
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:side, 0:side] / float(side)

    luma = np.zeros((side, side))
    for _ in range(6):
        fx, fy = rng.integers(1, 4, size=2)
        phase = rng.uniform(0, 2 * np.pi)
        amp = rng.uniform(10, 28)
        luma += amp * np.cos(2 * np.pi * (fx * xx + fy * yy) + phase)

    sky = 60.0 * (1.0 - yy)
    r = 135.0 + luma + 0.55 * sky
    g = 120.0 + 0.9 * luma + 0.75 * sky
    b = 105.0 + 0.8 * luma + 1.0 * sky

    # sun disk with a soft edge
    dist = np.sqrt((xx - 0.68) ** 2 + (yy - 0.27) ** 2)
    disk = np.clip(1.0 - dist / 0.16, 0.0, 1.0) ** 1.5
    r = r + 70.0 * disk
    g = g + 55.0 * disk
    b = b + 20.0 * disk

    # darker rolling ground below a soft horizon
    horizon = 0.62 + 0.05 * np.sin(2 * np.pi * 1.5 * xx)
    ground = 1.0 / (1.0 + np.exp(-(yy - horizon) * 24.0))
    r = r - 45.0 * ground
    g = g - 25.0 * ground
    b = b - 50.0 * ground

    rgb = np.stack([r, g, b], axis=-1)
    return ColorImage.from_rgb(np.rint(np.clip(rgb, 8.0, 247.0)))
