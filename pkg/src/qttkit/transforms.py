"""Unitary multi-mode transforms for quaternion tensors.

A transform is a per-mode chain of unitary quaternion matrices applied with
the n-mode product; the inverse applies the conjugate transposes. Concrete
mode matrices: orthonormal DCT-II, scaled Walsh-Hadamard, a quaternion lift
of the unitary DFT (the complex unit replaced by a pure unit quaternion),
and the identity. A Cayley-Dickson lift of arbitrary classical transforms
is provided as a standalone operation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import QArray, Quaternion, cd_join, cd_split, fro_norm, hermitian, matmul
from .tensor_train import n_mode_product

__all__ = [
    "DEFAULT_MU",
    "TRANSFORM_KINDS",
    "dct_matrix",
    "walsh_hadamard_matrix",
    "lifted_dft_matrix",
    "TransformSpec",
    "make_transform",
    "apply_transform",
    "inverse_transform",
    "lift_classical",
]

TRANSFORM_KINDS = ("dct", "wht", "dft", "identity")

_SQRT3 = float(np.sqrt(3.0))
# Grayscale axis; any pure unit quaternion (mu^2 = -1) works.
DEFAULT_MU = Quaternion(0.0, 1.0 / _SQRT3, 1.0 / _SQRT3, 1.0 / _SQRT3)


def _check_mu(mu: Quaternion) -> Quaternion:
    if abs(mu.q0) > 1e-12:
        raise ValueError("mu must be a pure quaternion (zero real part)")
    if abs(abs(mu) - 1.0) > 1e-12:
        raise ValueError("mu must have unit modulus")
    return mu


def dct_matrix(n: int) -> np.ndarray:
    """Orthonormal DCT-II matrix: row u, column x."""
    if n < 1:
        raise ValueError("size must be >= 1")
    u = np.arange(n)[:, None]
    x = np.arange(n)[None, :]
    mat = np.cos(np.pi * (2 * x + 1) * u / (2 * n))
    mat *= np.sqrt(2.0 / n)
    mat[0] *= np.sqrt(0.5)
    return mat


def walsh_hadamard_matrix(n: int) -> np.ndarray:
    """Sylvester-ordered Walsh-Hadamard matrix scaled by 1/sqrt(n)."""
    if n < 1 or (n & (n - 1)) != 0:
        raise ValueError(f"Walsh-Hadamard size must be a power of two, got {n}")
    h = np.ones((1, 1))
    while h.shape[0] < n:
        h = np.block([[h, h], [h, -h]])
    return h / np.sqrt(n)


def lifted_dft_matrix(n: int, mu: Quaternion = DEFAULT_MU) -> QArray:
    """Unitary DFT with the complex unit replaced by the pure unit mu."""
    mu = _check_mu(mu)
    theta = -2.0 * np.pi * np.outer(np.arange(n), np.arange(n)) / n
    c = np.cos(theta) / np.sqrt(n)
    s = np.sin(theta) / np.sqrt(n)
    return QArray(np.stack([c, mu.q1 * s, mu.q2 * s, mu.q3 * s]))


@dataclass
class TransformSpec:
    """Per-mode unitary quaternion matrices defining a multi-mode transform."""

    mode_mats: list
    kinds: tuple
    mu: Quaternion = DEFAULT_MU

    def __post_init__(self):
        self.kinds = tuple(self.kinds)
        if len(self.mode_mats) != len(self.kinds):
            raise ValueError("one kind tag per mode matrix is required")
        _check_mu(self.mu)
        for t in self.mode_mats:
            if t.ndim != 2 or t.dims[0] != t.dims[1]:
                raise ValueError("mode matrices must be square")
            gram = matmul(hermitian(t), t)
            eye = QArray.from_real(np.eye(t.dims[0]))
            if fro_norm(gram - eye) > 1e-10 * max(1.0, t.dims[0]):
                raise ValueError("mode matrix is not unitary")

    @property
    def dims(self) -> tuple:
        return tuple(t.dims[0] for t in self.mode_mats)


def make_transform(dims, kinds, mu: Quaternion = DEFAULT_MU) -> TransformSpec:
    """Build a TransformSpec; ``kinds`` is one tag or a per-mode sequence."""
    dims = tuple(int(d) for d in dims)
    if isinstance(kinds, str):
        kinds = (kinds,) * len(dims)
    kinds = tuple(kinds)
    if len(kinds) != len(dims):
        raise ValueError("need one transform kind per mode")
    mats = []
    for size, kind in zip(dims, kinds):
        if kind == "dct":
            mats.append(QArray.from_real(dct_matrix(size)))
        elif kind == "wht":
            mats.append(QArray.from_real(walsh_hadamard_matrix(size)))
        elif kind == "dft":
            mats.append(lifted_dft_matrix(size, mu))
        elif kind == "identity":
            mats.append(QArray.eye(size))
        else:
            raise ValueError(f"unknown transform kind {kind!r}")
    return TransformSpec(mats, kinds, mu)


def apply_transform(spec: TransformSpec, x: QArray) -> QArray:
    """x times T_1 ... T_N along every mode."""
    if x.dims != spec.dims:
        raise ValueError(f"tensor dims {x.dims} do not match transform dims {spec.dims}")
    out = x
    for axis, t in enumerate(spec.mode_mats):
        out = n_mode_product(out, t, axis)
    return out


def inverse_transform(spec: TransformSpec, x: QArray) -> QArray:
    """Inverse chain; each T_n is unitary so T_n^{-1} = T_n^H."""
    if x.dims != spec.dims:
        raise ValueError(f"tensor dims {x.dims} do not match transform dims {spec.dims}")
    out = x
    for axis, t in enumerate(spec.mode_mats):
        out = n_mode_product(out, hermitian(t), axis)
    return out


def lift_classical(ct, a: QArray, mu: Quaternion = DEFAULT_MU, side: str = "left") -> QArray:
    """Lift a classical (complex) matrix transform to quaternion matrices.

    Splits A = C + D j, applies ``ct`` to each complex part, rejoins, and
    multiplies by the pure unit quaternion ``mu`` on the requested side.
    """
    mu = _check_mu(mu)
    if a.ndim != 2:
        raise ValueError("lift_classical operates on quaternion matrices")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    c, d = cd_split(a)
    lifted = cd_join(np.asarray(ct(c), dtype=np.complex128),
                     np.asarray(ct(d), dtype=np.complex128))
    return lifted.scale_left(mu) if side == "left" else lifted.scale_right(mu)
