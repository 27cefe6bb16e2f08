"""QTEN binary tensor format.

Layout: magic bytes "QTEN", uint32 version (= 1), uint32 order N, then N
uint64 dims, then the four component planes (q0, q1, q2, q3), each
prod(dims) little-endian float64 values in column-major order.
"""

from __future__ import annotations

import struct

import numpy as np

from .core import QArray

__all__ = ["save_qten", "load_qten"]

MAGIC = b"QTEN"
VERSION = 1


def save_qten(path, x: QArray) -> None:
    dims = x.dims
    with open(path, "wb") as fh:
        fh.write(struct.pack("<4sII", MAGIC, VERSION, len(dims)))
        fh.write(struct.pack(f"<{len(dims)}Q", *dims))
        flat = x.ravel_f().astype("<f8")
        for c in range(4):
            fh.write(flat[c].tobytes())


def load_qten(path) -> QArray:
    with open(path, "rb") as fh:
        head = fh.read(12)
        if len(head) != 12:
            raise ValueError(f"{path}: truncated QTEN header")
        magic, version, order = struct.unpack("<4sII", head)
        if magic != MAGIC:
            raise ValueError(f"{path}: not a QTEN file")
        if version != VERSION:
            raise ValueError(f"{path}: unsupported QTEN version {version}")
        raw_dims = fh.read(8 * order)
        if len(raw_dims) != 8 * order:
            raise ValueError(f"{path}: truncated dims block")
        dims = struct.unpack(f"<{order}Q", raw_dims)
        if any(d == 0 for d in dims):
            raise ValueError(f"{path}: zero dimension in {dims}")
        count = int(np.prod(dims, dtype=np.int64))
        payload = fh.read(4 * 8 * count)
        if len(payload) != 4 * 8 * count:
            raise ValueError(f"{path}: truncated data block")
        if fh.read(1):
            raise ValueError(f"{path}: trailing bytes after data block")
    flat = np.frombuffer(payload, dtype="<f8").reshape(4, count)
    planes = np.stack([flat[c].reshape(dims, order="F") for c in range(4)])
    return QArray(planes)
