"""PSNR and single-scale SSIM for 8-bit color images.

PSNR uses peak 255 with the squared error averaged over all pixels and all
three channels; identical inputs yield +inf. SSIM is the uniform-window
single-scale index (8 x 8 windows, K1 = 0.01, K2 = 0.03, dynamic range 255,
unbiased moment normalization), averaged over the three channels.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .image import ColorImage

__all__ = ["psnr", "ssim"]

_PEAK = 255.0


def _pair(ref: ColorImage, test: ColorImage):
    if (ref.height, ref.width) != (test.height, test.width):
        raise ValueError("images must have matching dimensions")
    return ref.channels(), test.channels()


def psnr(ref: ColorImage, test: ColorImage) -> float:
    a, b = _pair(ref, test)
    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return float("inf")
    return float(10.0 * np.log10(_PEAK**2 / mse))


def ssim(ref: ColorImage, test: ColorImage, window: int = 8,
         k1: float = 0.01, k2: float = 0.03) -> float:
    a, b = _pair(ref, test)
    win = min(window, ref.height, ref.width)
    n = win * win
    if n < 2:
        raise ValueError("image too small for SSIM windows")
    c1 = (k1 * _PEAK) ** 2
    c2 = (k2 * _PEAK) ** 2
    scores = []
    for ch in range(3):
        x = sliding_window_view(a[..., ch], (win, win)).reshape(-1, n)
        y = sliding_window_view(b[..., ch], (win, win)).reshape(-1, n)
        mx = x.mean(axis=1)
        my = y.mean(axis=1)
        # unbiased second moments over each window
        vx = ((x - mx[:, None]) ** 2).sum(axis=1) / (n - 1)
        vy = ((y - my[:, None]) ** 2).sum(axis=1) / (n - 1)
        cov = ((x - mx[:, None]) * (y - my[:, None])).sum(axis=1) / (n - 1)
        score = ((2 * mx * my + c1) * (2 * cov + c2)) / ((mx**2 + my**2 + c1) * (vx + vy + c2))
        scores.append(score.mean())
    return float(np.mean(scores))
