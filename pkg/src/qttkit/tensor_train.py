"""Quaternion tensor reshaping algebra and the tensor-train decomposition.

Unfoldings follow the column-major convention of :mod:`qttkit.core`: the
canonical (balanced) unfolding at split ``n`` is exactly a column-major
reshape to (prod(dims[:n]), prod(dims[n:])), and the mode unfolding arranges
mode fibers as columns ordered by the remaining indices, first index fastest.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import QArray, hermitian, matmul
from .linalg import qrank, qsvd

__all__ = [
    "unfold_mode",
    "fold_mode",
    "canonical_unfold",
    "canonical_fold",
    "n_mode_product",
    "QTTCores",
    "tt_svd",
    "tt_reconstruct",
    "qtt_rank",
]


def unfold_mode(x: QArray, axis: int) -> QArray:
    """Mode unfolding: axis fibers become columns. ``axis`` is 0-based."""
    if not 0 <= axis < x.ndim:
        raise ValueError(f"axis {axis} out of range for order-{x.ndim} tensor")
    size = x.dims[axis]
    mats = [np.moveaxis(c, axis, 0).reshape(size, -1, order="F") for c in x.planes]
    return QArray(np.stack(mats))


def fold_mode(mat: QArray, dims, axis: int) -> QArray:
    """Inverse of :func:`unfold_mode` for a tensor of shape ``dims``."""
    dims = tuple(int(d) for d in dims)
    if not 0 <= axis < len(dims):
        raise ValueError(f"axis {axis} out of range for dims {dims}")
    rest = dims[:axis] + dims[axis + 1:]
    if mat.dims != (dims[axis], int(np.prod(rest, dtype=np.int64)) if rest else 1):
        raise ValueError(f"matrix of dims {mat.dims} does not fold to {dims} at axis {axis}")
    planes = [np.moveaxis(c.reshape((dims[axis],) + rest, order="F"), 0, axis)
              for c in mat.planes]
    return QArray(np.stack(planes))


def canonical_unfold(x: QArray, n: int) -> QArray:
    """Balanced unfolding: first ``n`` modes against the rest (1 <= n <= N-1)."""
    if not 1 <= n <= x.ndim - 1:
        raise ValueError(f"split {n} out of range for order-{x.ndim} tensor")
    left = int(np.prod(x.dims[:n], dtype=np.int64))
    right = int(np.prod(x.dims[n:], dtype=np.int64))
    return x.reshape_f((left, right))


def canonical_fold(mat: QArray, dims) -> QArray:
    """Inverse of :func:`canonical_unfold`."""
    dims = tuple(int(d) for d in dims)
    if mat.nelem != int(np.prod(dims, dtype=np.int64)):
        raise ValueError(f"element count {mat.nelem} does not match dims {dims}")
    return mat.reshape_f(dims)


def n_mode_product(x: QArray, u: QArray, axis: int) -> QArray:
    """Tensor-times-matrix along ``axis`` with left quaternion multiplication."""
    if u.ndim != 2:
        raise ValueError("n_mode_product requires a 2-D quaternion matrix")
    if u.dims[1] != x.dims[axis]:
        raise ValueError(f"matrix columns {u.dims[1]} do not match dim {x.dims[axis]}")
    unf = unfold_mode(x, axis)
    prod = matmul(u, unf)
    new_dims = list(x.dims)
    new_dims[axis] = u.dims[0]
    return fold_mode(prod, new_dims, axis)


@dataclass
class QTTCores:
    """Tensor-train cores; core ``n`` has shape (r_{n-1}, I_n, r_n), r_0 = r_N = 1."""

    cores: list = field(default_factory=list)

    def __post_init__(self):
        if not self.cores:
            raise ValueError("at least one core is required")
        for g in self.cores:
            if g.ndim != 3:
                raise ValueError("every core must be a third-order quaternion tensor")
        if self.cores[0].dims[0] != 1 or self.cores[-1].dims[2] != 1:
            raise ValueError("boundary ranks must be 1")
        for a, b in zip(self.cores, self.cores[1:]):
            if a.dims[2] != b.dims[0]:
                raise ValueError(f"rank chain broken between cores: {a.dims} -> {b.dims}")

    @property
    def ranks(self) -> tuple:
        return (1,) + tuple(g.dims[2] for g in self.cores)

    @property
    def dims(self) -> tuple:
        return tuple(g.dims[1] for g in self.cores)

    def __len__(self):
        return len(self.cores)


def tt_svd(x: QArray, tol: float = 1e-10) -> QTTCores:
    """Sequential rank-revealing tensor-train decomposition.

    At every step the current matricization is factored by QSVD, singular
    values at or below ``tol * sigma_max`` are truncated, the orthonormal left
    factor becomes the next core, and diag(sigma) V^H is carried forward.
    A zero remainder yields zero cores with all ranks equal to one.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    dims = x.dims
    order = len(dims)
    if order == 0:
        raise ValueError("tt_svd requires a tensor of order >= 1")
    if order == 1:
        return QTTCores([x.reshape_f((1, dims[0], 1))])

    cores = []
    r_prev = 1
    remainder = x.reshape_f((dims[0], x.nelem // dims[0]))
    for n in range(order - 1):
        res = qsvd(remainder, full_matrices=False)
        s = res.sigma
        if s.size == 0 or s[0] <= 0.0:
            cores.append(QArray.zeros((r_prev, dims[n], 1)))
            cores.extend(QArray.zeros((1, dims[p], 1)) for p in range(n + 1, order))
            return QTTCores(cores)
        r = max(1, int((s > tol * s[0]).sum()))
        cores.append(QArray(res.u.planes[:, :, :r]).reshape_f((r_prev, dims[n], r)))
        vh = hermitian(QArray(res.v.planes[:, :, :r]))
        rem = QArray(vh.planes * s[:r][np.newaxis, :, np.newaxis])
        r_prev = r
        if n < order - 2:
            remainder = rem.reshape_f((r * dims[n + 1], rem.nelem // (r * dims[n + 1])))
        else:
            remainder = rem
    cores.append(remainder.reshape_f((r_prev, dims[-1], 1)))
    return QTTCores(cores)


def tt_reconstruct(cores: QTTCores) -> QArray:
    """Contract cores back into the full tensor (left-to-right products)."""
    if not isinstance(cores, QTTCores):
        cores = QTTCores(list(cores))
    dims = cores.dims
    g0 = cores.cores[0]
    mat = g0.reshape_f((g0.dims[0] * g0.dims[1], g0.dims[2]))
    for g in cores.cores[1:]:
        r_in, size, r_out = g.dims
        rows = mat.dims[0]
        gm = g.reshape_f((r_in, size * r_out))
        mat = matmul(mat, gm).reshape_f((rows * size, r_out))
    return mat.reshape_f(dims)


def qtt_rank(x: QArray, tol: float = 1e-10) -> tuple:
    """Ranks of all canonical unfoldings (length N-1)."""
    return tuple(qrank(canonical_unfold(x, n), tol) for n in range(1, x.ndim))
