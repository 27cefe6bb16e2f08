"""Ket augmentation: recursive block addressing of images and videos.

A b^N x b^N quaternion matrix is mapped, bijectively and without touching
any value, onto an order-N tensor with every dimension c = b*b. The first
tensor index addresses the position inside the innermost b x b block in
row-major order (for b = 2: up-left, up-right, down-left, down-right), the
second index the next block level, and so on up to the coarsest level.
Videos keep their frame axis as one extra trailing mode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import QArray

__all__ = ["QkaPlan", "qka_forward", "qka_inverse", "qka_video_forward", "qka_video_inverse"]


def _levels_for(side: int, base: int) -> int:
    levels = 0
    acc = 1
    while acc < side:
        acc *= base
        levels += 1
    if acc != side:
        raise ValueError(f"side {side} is not a power of block factor {base}")
    return max(levels, 1)


@dataclass(frozen=True)
class QkaPlan:
    """Block-addressing plan for a square source of side base**levels."""

    source_dims: tuple
    base: int
    levels: int
    frames: int | None = None

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("block factor must be >= 2")
        side = self.base**self.levels
        if self.source_dims[0] != side or self.source_dims[1] != side:
            raise ValueError(f"source {self.source_dims} does not match {side} x {side}")

    @classmethod
    def for_image(cls, shape, base: int = 2, levels: int | None = None) -> "QkaPlan":
        rows, cols = (int(shape[0]), int(shape[1]))
        if rows != cols:
            raise ValueError(f"source must be square, got {rows} x {cols}")
        levels = _levels_for(rows, base) if levels is None else int(levels)
        return cls((rows, cols), base, levels)

    @classmethod
    def for_video(cls, shape, base: int = 4, levels: int | None = None) -> "QkaPlan":
        rows, cols, frames = (int(shape[0]), int(shape[1]), int(shape[2]))
        if rows != cols:
            raise ValueError(f"frames must be square, got {rows} x {cols}")
        if frames < 1:
            raise ValueError("at least one frame is required")
        levels = _levels_for(rows, base) if levels is None else int(levels)
        return cls((rows, cols), base, levels, frames=frames)

    @property
    def block_size(self) -> int:
        return self.base * self.base

    @property
    def target_dims(self) -> tuple:
        dims = (self.block_size,) * self.levels
        return dims + (self.frames,) if self.frames is not None else dims

    # -- raw array transport (used for masks as well as quaternion planes) --

    def apply_to_array(self, arr: np.ndarray) -> np.ndarray:
        """Rearrange one real/boolean array of the source shape to target_dims."""
        b, n = self.base, self.levels
        tail = (self.frames,) if self.frames is not None else ()
        expect = self.source_dims + tail
        if arr.shape != expect:
            raise ValueError(f"array shape {arr.shape} does not match plan {expect}")
        split = arr.reshape((b,) * (2 * n) + tail, order="F")
        perm = []
        for level in range(n):
            perm += [n + level, level]  # column digit varies fastest inside a block row
        perm += list(range(2 * n, split.ndim))
        return split.transpose(perm).reshape(self.target_dims, order="F")

    def invert_array(self, arr: np.ndarray) -> np.ndarray:
        b, n = self.base, self.levels
        tail = (self.frames,) if self.frames is not None else ()
        if arr.shape != self.target_dims:
            raise ValueError(f"array shape {arr.shape} does not match plan {self.target_dims}")
        split = arr.reshape((b,) * (2 * n) + tail, order="F")
        perm = []
        for level in range(n):
            perm += [n + level, level]
        perm += list(range(2 * n, split.ndim))
        inv = np.argsort(perm)
        return split.transpose(inv).reshape(self.source_dims + tail, order="F")


def _transport(x: QArray, plan: QkaPlan, forward: bool) -> QArray:
    move = plan.apply_to_array if forward else plan.invert_array
    return QArray(np.stack([move(c) for c in x.planes]))


def qka_forward(g: QArray, plan: QkaPlan) -> QArray:
    """Image (2-D quaternion matrix) to order-N tensor with dims (c, ..., c)."""
    if plan.frames is not None:
        raise ValueError("plan describes a video; use qka_video_forward")
    if g.ndim != 2:
        raise ValueError("qka_forward expects a quaternion matrix")
    return _transport(g, plan, forward=True)


def qka_inverse(q: QArray, plan: QkaPlan) -> QArray:
    """Exact inverse of :func:`qka_forward`."""
    if plan.frames is not None:
        raise ValueError("plan describes a video; use qka_video_inverse")
    return _transport(q, plan, forward=False)


def qka_video_forward(v: QArray, plan: QkaPlan) -> QArray:
    """Video (rows x cols x frames) to dims (c, ..., c, frames)."""
    if plan.frames is None:
        raise ValueError("plan describes an image; use qka_forward")
    if v.ndim != 3:
        raise ValueError("qka_video_forward expects a third-order quaternion tensor")
    return _transport(v, plan, forward=True)


def qka_video_inverse(q: QArray, plan: QkaPlan) -> QArray:
    """Exact inverse of :func:`qka_video_forward`."""
    if plan.frames is None:
        raise ValueError("plan describes an image; use qka_inverse")
    return _transport(q, plan, forward=False)
