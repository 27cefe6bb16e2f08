"""Quaternion scalars and dense quaternion arrays.

A quaternion value q0 + q1*i + q2*j + q3*k is stored as four real float64
components. Arrays (matrices, tensors) keep the four component planes in a
single ndarray of shape (4, *dims), and every reshape-like operation in this
package uses the column-major (first index fastest) linearization, so entry
(i1, ..., iN) of a tensor sits at flat offset sum((i_n - 1) * prod(I_d, d < n)).

All operations return new values; nothing mutates its inputs.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "Quaternion",
    "QArray",
    "cd_split",
    "cd_join",
    "matmul",
    "hermitian",
    "modulus",
    "fro_norm",
    "l1_norm",
]


class Quaternion:
    """A single quaternion q0 + q1*i + q2*j + q3*k with Hamilton multiplication."""

    __slots__ = ("q0", "q1", "q2", "q3")

    def __init__(self, q0=0.0, q1=0.0, q2=0.0, q3=0.0):
        self.q0 = float(q0)
        self.q1 = float(q1)
        self.q2 = float(q2)
        self.q3 = float(q3)

    @property
    def components(self):
        return (self.q0, self.q1, self.q2, self.q3)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.q0, -self.q1, -self.q2, -self.q3)

    def __abs__(self) -> float:
        return float(np.sqrt(self.q0**2 + self.q1**2 + self.q2**2 + self.q3**2))

    def inverse(self) -> "Quaternion":
        n2 = self.q0**2 + self.q1**2 + self.q2**2 + self.q3**2
        if n2 == 0.0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        c = self.conjugate()
        return Quaternion(c.q0 / n2, c.q1 / n2, c.q2 / n2, c.q3 / n2)

    def __add__(self, other):
        other = _as_quaternion(other)
        return Quaternion(self.q0 + other.q0, self.q1 + other.q1,
                          self.q2 + other.q2, self.q3 + other.q3)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_quaternion(other)
        return Quaternion(self.q0 - other.q0, self.q1 - other.q1,
                          self.q2 - other.q2, self.q3 - other.q3)

    def __rsub__(self, other):
        return _as_quaternion(other) - self

    def __neg__(self):
        return Quaternion(-self.q0, -self.q1, -self.q2, -self.q3)

    def __mul__(self, other):
        # Hamilton product; not commutative.
        other = _as_quaternion(other)
        a0, a1, a2, a3 = self.components
        b0, b1, b2, b3 = other.components
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other):
        return _as_quaternion(other) * self

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.q0 / other, self.q1 / other,
                              self.q2 / other, self.q3 / other)
        return self * _as_quaternion(other).inverse()

    def __eq__(self, other):
        if isinstance(other, (int, float, Quaternion)):
            return self.components == _as_quaternion(other).components
        return NotImplemented

    def __hash__(self):
        return hash(self.components)

    def isclose(self, other, atol=1e-12) -> bool:
        other = _as_quaternion(other)
        return all(abs(a - b) <= atol for a, b in zip(self.components, other.components))

    def __repr__(self):
        return f"Quaternion({self.q0}, {self.q1}, {self.q2}, {self.q3})"


def _as_quaternion(value) -> Quaternion:
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float)):
        return Quaternion(float(value))
    raise TypeError(f"cannot interpret {type(value).__name__} as a quaternion")


class QArray:
    """Dense quaternion array holding four real component planes.

    ``planes`` has shape (4, *dims): planes[0] is the real part, planes[1..3]
    are the i, j, k parts. A 2-D QArray plays the role of a quaternion matrix.
    """

    __slots__ = ("planes",)

    def __init__(self, planes):
        planes = np.asarray(planes, dtype=np.float64)
        if planes.ndim < 1 or planes.shape[0] != 4:
            raise ValueError("planes must have shape (4, *dims)")
        self.planes = planes

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, dims) -> "QArray":
        return cls(np.zeros((4,) + tuple(int(d) for d in dims)))

    @classmethod
    def from_parts(cls, q0=None, q1=None, q2=None, q3=None) -> "QArray":
        given = [p for p in (q0, q1, q2, q3) if p is not None]
        if not given:
            raise ValueError("at least one component plane is required")
        shape = np.asarray(given[0]).shape
        parts = [np.zeros(shape) if p is None else np.asarray(p, dtype=np.float64)
                 for p in (q0, q1, q2, q3)]
        return cls(np.stack(parts))

    @classmethod
    def from_real(cls, a) -> "QArray":
        return cls.from_parts(q0=a)

    @classmethod
    def eye(cls, n) -> "QArray":
        return cls.from_real(np.eye(n))

    @classmethod
    def random(cls, dims, rng, normal=False) -> "QArray":
        """i.i.d. entries, each component uniform on [0,1) (or standard normal)."""
        shape = (4,) + tuple(int(d) for d in dims)
        return cls(rng.standard_normal(shape) if normal else rng.random(shape))

    # -- basic structure --------------------------------------------------

    @property
    def dims(self) -> tuple:
        return self.planes.shape[1:]

    @property
    def ndim(self) -> int:
        return self.planes.ndim - 1

    @property
    def nelem(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64)) if self.dims else 1

    @property
    def q0(self):
        return self.planes[0]

    @property
    def q1(self):
        return self.planes[1]

    @property
    def q2(self):
        return self.planes[2]

    @property
    def q3(self):
        return self.planes[3]

    @property
    def is_real(self) -> bool:
        return not (self.planes[1].any() or self.planes[2].any() or self.planes[3].any())

    @property
    def is_pure(self) -> bool:
        return not self.planes[0].any()

    def copy(self) -> "QArray":
        return QArray(self.planes.copy())

    def __getitem__(self, key):
        if not isinstance(key, tuple):
            key = (key,)
        picked = self.planes[(slice(None),) + key]
        if picked.ndim == 1:
            return Quaternion(*picked)
        return QArray(picked)

    def reshape_f(self, dims) -> "QArray":
        """Column-major reshape (Matlab 'reshape' semantics), per plane."""
        dims = tuple(int(d) for d in dims)
        out = np.empty((4,) + dims)
        for c in range(4):
            out[c] = self.planes[c].reshape(dims, order="F")
        return QArray(out)

    def ravel_f(self) -> np.ndarray:
        """The four planes flattened column-major; shape (4, nelem)."""
        return np.stack([c.ravel(order="F") for c in self.planes])

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        return QArray(self.planes + other.planes)

    def __sub__(self, other):
        return QArray(self.planes - other.planes)

    def __neg__(self):
        return QArray(-self.planes)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, float)):
            return NotImplemented
        return QArray(self.planes * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return QArray(self.planes / float(scalar))

    def conjugate(self) -> "QArray":
        out = self.planes.copy()
        out[1:] = -out[1:]
        return QArray(out)

    def scale_left(self, q: Quaternion) -> "QArray":
        """Entrywise left multiplication q * x (order matters)."""
        a0, a1, a2, a3 = q.components
        b0, b1, b2, b3 = self.planes
        return QArray(np.stack([
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ]))

    def scale_right(self, q: Quaternion) -> "QArray":
        """Entrywise right multiplication x * q."""
        b0, b1, b2, b3 = q.components
        a0, a1, a2, a3 = self.planes
        return QArray(np.stack([
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ]))

    def __matmul__(self, other):
        return matmul(self, other)

    def __repr__(self):
        return f"QArray(dims={self.dims})"


# -- Cayley-Dickson views -------------------------------------------------


def cd_split(x: QArray):
    """Split into the complex pair (Z1, Z2) with x = Z1 + Z2 * j."""
    return x.planes[0] + 1j * x.planes[1], x.planes[2] + 1j * x.planes[3]


def cd_join(z1, z2) -> QArray:
    """Rebuild a QArray from its Cayley-Dickson complex pair."""
    z1 = np.asarray(z1, dtype=np.complex128)
    z2 = np.asarray(z2, dtype=np.complex128)
    if z1.shape != z2.shape:
        raise ValueError("Z1 and Z2 must have the same shape")
    return QArray(np.stack([z1.real, z1.imag, z2.real, z2.imag]))


# -- matrix algebra -------------------------------------------------------


def matmul(a: QArray, b: QArray) -> QArray:
    """Quaternion matrix product, left-to-right entrywise Hamilton products."""
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("matmul requires 2-D quaternion arrays")
    if a.dims[1] != b.dims[0]:
        raise ValueError(f"inner dimensions differ: {a.dims} @ {b.dims}")
    if b.is_real:
        b0 = b.planes[0]
        return QArray(np.stack([a.planes[c] @ b0 for c in range(4)]))
    if a.is_real:
        a0 = a.planes[0]
        return QArray(np.stack([a0 @ b.planes[c] for c in range(4)]))
    a1, a2 = cd_split(a)
    b1, b2 = cd_split(b)
    # (A1 + A2 j)(B1 + B2 j) = (A1 B1 - A2 conj(B2)) + (A1 B2 + A2 conj(B1)) j
    return cd_join(a1 @ b1 - a2 @ b2.conj(), a1 @ b2 + a2 @ b1.conj())


def hermitian(a: QArray) -> QArray:
    """Conjugate transpose of a quaternion matrix."""
    if a.ndim != 2:
        raise ValueError("hermitian requires a 2-D quaternion array")
    p = a.planes
    return QArray(np.stack([p[0].T, -p[1].T, -p[2].T, -p[3].T]))


# -- entrywise maps and norms ---------------------------------------------


def modulus(x: QArray) -> np.ndarray:
    """Entrywise quaternion modulus as a real array of shape dims."""
    return np.sqrt((x.planes**2).sum(axis=0))


def fro_norm(x: QArray) -> float:
    return float(np.sqrt((x.planes**2).sum()))


def l1_norm(x: QArray) -> float:
    return float(modulus(x).sum())
