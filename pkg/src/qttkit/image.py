"""Color images as pure quaternion matrices.

Channels map onto the imaginary units: red -> i, green -> j, blue -> k; the
real plane stays zero. Pixel values are carried as float64 in [0, 255] and
only clamped and rounded when written back to disk.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from PIL import Image

from .core import QArray

__all__ = ["ColorImage", "load_image", "save_image", "center_crop", "largest_power_side"]


@dataclass
class ColorImage:
    """A height x width color image held as a pure quaternion matrix."""

    qmatrix: QArray

    def __post_init__(self):
        if self.qmatrix.ndim != 2:
            raise ValueError("a color image is a 2-D quaternion array")
        if self.qmatrix.planes[0].any():
            raise ValueError("image quaternions must be pure (zero real plane)")

    @classmethod
    def from_rgb(cls, rgb) -> "ColorImage":
        rgb = np.asarray(rgb, dtype=np.float64)
        if rgb.ndim != 3 or rgb.shape[2] != 3:
            raise ValueError("expected an array of shape (H, W, 3)")
        return cls(QArray.from_parts(q1=rgb[..., 0], q2=rgb[..., 1], q3=rgb[..., 2]))

    @property
    def height(self) -> int:
        return self.qmatrix.dims[0]

    @property
    def width(self) -> int:
        return self.qmatrix.dims[1]

    def channels(self) -> np.ndarray:
        """Float (H, W, 3) view of the R, G, B planes."""
        return np.stack([self.qmatrix.q1, self.qmatrix.q2, self.qmatrix.q3], axis=-1)

    def to_uint8(self) -> np.ndarray:
        return np.rint(np.clip(self.channels(), 0.0, 255.0)).astype(np.uint8)


def load_image(path) -> ColorImage:
    try:
        with Image.open(path) as img:
            if img.mode != "RGB":
                raise ValueError(f"{path}: expected an 8-bit RGB image, got mode {img.mode!r}")
            rgb = np.asarray(img, dtype=np.uint8)
    except FileNotFoundError:
        raise
    except OSError as exc:
        raise ValueError(f"{path}: unreadable image ({exc})") from exc
    return ColorImage.from_rgb(rgb)


def save_image(image: ColorImage, path) -> None:
    Image.fromarray(image.to_uint8(), mode="RGB").save(path, format="PNG")


def largest_power_side(height: int, width: int, base: int) -> int:
    """Largest base**n not exceeding both sides."""
    side = base
    if side > min(height, width):
        raise ValueError(f"image {height} x {width} too small for block factor {base}")
    while side * base <= min(height, width):
        side *= base
    return side


def center_crop(image: ColorImage, side: int) -> ColorImage:
    if side > min(image.height, image.width):
        raise ValueError(f"cannot crop {image.height} x {image.width} to {side}")
    top = (image.height - side) // 2
    left = (image.width - side) // 2
    planes = image.qmatrix.planes[:, top:top + side, left:left + side]
    return ColorImage(QArray(planes.copy()))
