"""Quaternion SVD, rank, and the two proximal operators used by the solver.

The QSVD is computed through the complex-adjoint embedding: a quaternion
matrix A = Z1 + Z2 j maps to the 2M x 2N complex matrix

    chi(A) = [[ Z1,        Z2       ],
              [-conj(Z2),  conj(Z1) ]]

which is an algebra homomorphism, so a dense complex SVD of chi(A) carries
every singular value of A exactly twice. Quaternion singular vectors are
recovered from the paired complex vectors; degenerate singular values need
care because a complex SVD may return an arbitrary orthonormal basis of the
degenerate subspace that ignores the quaternionic pairing. We fix that with
a Gram-Schmidt pass that orthogonalizes against each chosen vector and its
structure partner phi(w), which is equivalent to quaternionic Gram-Schmidt.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import QArray, cd_split, hermitian, matmul, modulus

__all__ = [
    "complex_adjoint",
    "singular_values",
    "QSVDResult",
    "qsvd",
    "qrank",
    "ShrinkParams",
    "qwnn_shrink",
    "shrink_q",
]

# Relative gap below which paired singular values are treated as one
# degenerate cluster; keeps reconstruction error well under 1e-10.
_CLUSTER_RTOL = 1e-12
# Residual norm below which a candidate vector is considered dependent.
_DROP_TOL = 1e-6


def complex_adjoint(a: QArray) -> np.ndarray:
    """The 2M x 2N complex-adjoint matrix chi(A) of a quaternion matrix."""
    if a.ndim != 2:
        raise ValueError("complex_adjoint requires a 2-D quaternion array")
    z1, z2 = cd_split(a)
    return np.block([[z1, z2], [-z2.conj(), z1.conj()]])


def singular_values(a: QArray) -> np.ndarray:
    """Singular values of a quaternion matrix (each chi pair de-duplicated)."""
    if a.ndim != 2:
        raise ValueError("singular_values requires a 2-D quaternion array")
    if not np.isfinite(a.planes).all():
        raise ValueError("matrix contains non-finite entries")
    s = np.linalg.svd(complex_adjoint(a), compute_uv=False)
    return 0.5 * (s[0::2] + s[1::2])


def _phi(w: np.ndarray) -> np.ndarray:
    """Structure partner of a psi-space vector; w and phi(w) span one quaternion line."""
    half = w.shape[0] // 2
    return np.concatenate([w[half:].conj(), -w[:half].conj()])


def _project_out(v: np.ndarray, basis: list) -> np.ndarray:
    """Remove components of v along each basis vector and its phi partner."""
    for w, pw in basis:
        v = v - w * (w.conj() @ v) - pw * (pw.conj() @ v)
    return v


def _append_orthonormal(basis: list, candidates, need: int) -> int:
    """Greedily extend a quaternion-orthonormal psi-space basis.

    Appends up to ``need`` vectors drawn from ``candidates`` (complex columns),
    each orthogonalized against the existing basis and its phi partners.
    Returns the number of vectors actually appended.
    """
    added = 0
    for cand in candidates:
        if added == need:
            break
        v = _project_out(cand.astype(np.complex128), basis)
        v = _project_out(v, basis)  # second pass for numerical safety
        norm = np.linalg.norm(v)
        if norm <= _DROP_TOL:
            continue
        v = v / norm
        basis.append((v, _phi(v)))
        added += 1
    return added


def _psi_columns(cols: np.ndarray) -> QArray:
    """Map psi-space columns (2M x k complex) back to a quaternion M x k matrix."""
    half = cols.shape[0] // 2
    z1 = cols[:half]
    z2 = -cols[half:].conj()
    return QArray(np.stack([z1.real, z1.imag, z2.real, z2.imag]))


def _to_psi(x: QArray) -> np.ndarray:
    """psi-space representation of the columns of a quaternion matrix."""
    z1, z2 = cd_split(x)
    return np.concatenate([z1, -z2.conj()], axis=0)


def _reorthonormalize(u: QArray) -> QArray:
    """Restore column orthonormality of a nearly-orthonormal quaternion matrix.

    Columns built as A v / sigma pick up cross terms of order
    eps * sigma_1 / sigma_t, noticeable next to tiny singular values. The
    correction must leave leading (large-sigma) columns untouched, so it is
    an ordered Gram-Schmidt sweep: column t is orthogonalized against the
    earlier columns only. Skipped entirely when the Gram defect is tiny.
    """
    cols = u.dims[1]
    eye = QArray.from_real(np.eye(cols))
    gram = matmul(hermitian(u), u)
    defect = np.sqrt(((gram - eye).planes ** 2).sum())
    if defect < 1e-11:
        return u
    planes = u.planes.copy()
    for t in range(cols):
        for _ in range(2):  # classic twice-suffices re-orthogonalization
            if t:
                lead = QArray(planes[:, :, :t])
                col = QArray(planes[:, :, t:t + 1])
                coeff = matmul(hermitian(lead), col)
                planes[:, :, t:t + 1] -= matmul(lead, coeff).planes
            norm = np.sqrt((planes[:, :, t] ** 2).sum())
            if norm < 1e-8:
                raise RuntimeError("left singular vectors lost independence")
            planes[:, :, t] /= norm
    return QArray(planes)


def _rmul_column(planes: np.ndarray, t: int, q: tuple) -> None:
    """In-place right multiplication of column t by a unit quaternion."""
    b0, b1, b2, b3 = q
    a0, a1, a2, a3 = (planes[c, :, t].copy() for c in range(4))
    planes[0, :, t] = a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3
    planes[1, :, t] = a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2
    planes[2, :, t] = a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1
    planes[3, :, t] = a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0


@dataclass
class QSVDResult:
    """Unitary quaternion factors and real non-negative singular values."""

    u: QArray
    sigma: np.ndarray
    v: QArray

    def reconstruct(self) -> QArray:
        m = self.sigma.shape[0]
        scaled = QArray(self.u.planes[:, :, :m] * self.sigma[np.newaxis, np.newaxis, :])
        return matmul(scaled, hermitian(QArray(self.v.planes[:, :, :m])))


def qsvd(a: QArray, full_matrices: bool = True, canonicalize: bool = True) -> QSVDResult:
    """Quaternion singular value decomposition A = U diag(sigma) V^H.

    U and V are unitary quaternion matrices (M x M and N x N, or M x m and
    N x m with m = min(M, N) when ``full_matrices`` is False); sigma is
    non-negative and non-increasing. With ``canonicalize`` the columns are
    phase-fixed so the first significant entry of each U column is a positive
    real, which keeps singular vectors deterministic for testing.
    """
    if a.ndim != 2:
        raise ValueError("qsvd requires a 2-D quaternion array")
    if a.nelem == 0:
        raise ValueError("qsvd requires a nonempty matrix")
    if not np.isfinite(a.planes).all():
        raise ValueError("matrix contains non-finite entries")

    mrows, ncols = a.dims
    m = min(mrows, ncols)
    chi = complex_adjoint(a)
    uc, s, vch = np.linalg.svd(chi, full_matrices=full_matrices)
    vc = vch.conj().T
    sigma = 0.5 * (s[0::2] + s[1::2])[:m]

    cutoff = max(mrows, ncols) * np.finfo(np.float64).eps * (sigma[0] if sigma.size else 0.0)
    rank = int((sigma > cutoff).sum())

    # Degenerate clusters among the kept singular values. Distinct clusters
    # are automatically orthogonal (phi preserves every singular subspace),
    # so only columns inside a multi-member cluster need the phi-aware sweep.
    clusters = []
    t = 0
    while t < rank:
        lead = t
        while (t + 1 < rank
               and sigma[lead] - sigma[t + 1] <= _CLUSTER_RTOL * sigma[0]):
            t += 1
        clusters.append((lead, t + 1))
        t += 1

    if all(hi - lo == 1 for lo, hi in clusters):
        v_sel = vc[:, :2 * rank:2]  # one representative per chi pair
    else:
        cols = []
        for lo, hi in clusters:
            size = hi - lo
            if size == 1:
                cols.append(vc[:, 2 * lo])
                continue
            cluster: list = []
            cand = [vc[:, col] for col in range(2 * lo, 2 * hi)]
            if _append_orthonormal(cluster, cand, size) != size:
                raise RuntimeError("failed to recover a degenerate singular subspace")
            cols.extend(w for w, _ in cluster)
        v_sel = np.column_stack(cols) if cols else np.empty((2 * ncols, 0))

    v_cols_needed = ncols if full_matrices else m
    u_cols_needed = mrows if full_matrices else m

    if rank:
        v_r = _psi_columns(v_sel)
        u_r = matmul(a, v_r)
        u_r = QArray(u_r.planes / sigma[:rank][np.newaxis, np.newaxis, :])
        u_r = _reorthonormalize(u_r)
    else:
        v_r = QArray(np.zeros((4, ncols, 0)))
        u_r = QArray(np.zeros((4, mrows, 0)))

    # Complete each factor to its requested column count. Candidates: the
    # remaining adjoint singular vectors first, standard basis as fallback.
    def complete(kept: QArray, needed, adjoint_cols, dim2):
        if kept.dims[1] >= needed:
            return kept
        psi = _to_psi(kept)
        basis = [(psi[:, t], _phi(psi[:, t])) for t in range(kept.dims[1])]
        cands = [adjoint_cols[:, c] for c in range(adjoint_cols.shape[1])]
        cands += [np.eye(dim2)[:, c] for c in range(dim2)]
        if _append_orthonormal(basis, cands, needed - kept.dims[1]) != needed - kept.dims[1]:
            raise RuntimeError("failed to complete a unitary factor")
        return _psi_columns(np.column_stack([w for w, _ in basis]))

    v_full = complete(v_r, v_cols_needed, vc[:, 2 * rank:], 2 * ncols)
    u_full = complete(u_r, u_cols_needed, uc[:, 2 * rank:], 2 * mrows)

    if canonicalize:
        up, vp = u_full.planes.copy(), v_full.planes.copy()
        _canonicalize(up, vp, rank)
        return QSVDResult(QArray(up), sigma, QArray(vp))
    return QSVDResult(u_full, sigma, v_full)


def _canonicalize(up: np.ndarray, vp: np.ndarray, rank: int) -> None:
    """Make the first significant entry of each U column a positive real.

    Paired columns (t < rank) of U and V receive the same unit-quaternion
    factor so that U diag(sigma) V^H is unchanged; the remaining columns of
    each factor are normalized independently.
    """
    def fix(planes, t, partner=None):
        col = planes[:, :, t]
        mods = np.sqrt((col**2).sum(axis=0))
        idx = np.nonzero(mods > 1e-8)[0]
        if idx.size == 0:
            return
        lead = idx[0]
        mod = mods[lead]
        c = col[:, lead]
        p = (c[0] / mod, -c[1] / mod, -c[2] / mod, -c[3] / mod)  # conj(c)/|c|
        _rmul_column(planes, t, p)
        if partner is not None:
            _rmul_column(partner, t, p)

    for t in range(up.shape[2]):
        fix(up, t, vp if t < rank else None)
    for t in range(rank, vp.shape[2]):
        fix(vp, t)


def qrank(a: QArray, tol: float = 1e-10) -> int:
    """Number of singular values above tol * sigma_1; 0 for the zero matrix."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    s = singular_values(a)
    if s.size == 0 or s[0] <= 0.0:
        return 0
    return int((s > tol * s[0]).sum())


@dataclass
class ShrinkParams:
    """Weighted-shrinkage parameters: proximal weight tau, constant c, and eps."""

    tau: float
    c: float = 1.0
    eps: float = 1e-2

    def __post_init__(self):
        if self.tau < 0 or self.c < 0:
            raise ValueError("tau and c must be nonnegative")
        if self.eps <= 0:
            raise ValueError("eps must be positive")


def qwnn_shrink(gamma: QArray, params: ShrinkParams) -> QArray:
    """Weighted singular-value shrinkage of a quaternion matrix.

    Each singular value sigma is replaced by 0 when
    c2 = (sigma + eps)^2 - 4 * tau * c is negative, and by
    (sigma - eps + sqrt(c2)) / 2 otherwise (floored at zero so the map never
    leaves the non-negative cone). The result is the shrunken value's exact
    fixed point x = max(0, sigma - tau*c / (x + eps)).
    """
    if gamma.ndim != 2:
        raise ValueError("qwnn_shrink requires a 2-D quaternion array")
    if params.tau * params.c == 0.0:
        return gamma.copy()
    res = qsvd(gamma, full_matrices=False, canonicalize=False)
    s = res.sigma
    c2 = (s + params.eps) ** 2 - 4.0 * params.tau * params.c
    shrunk = np.where(
        c2 < 0.0,
        0.0,
        np.maximum(0.0, 0.5 * ((s - params.eps) + np.sqrt(np.maximum(c2, 0.0)))),
    )
    return QSVDResult(res.u, shrunk, res.v).reconstruct()


def shrink_q(x: QArray, gamma: float) -> QArray:
    """Quaternion soft threshold: shrink each entry's modulus, keep its direction."""
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    mod = modulus(x)
    safe = np.where(mod > 0.0, mod, 1.0)
    scale = np.where(mod > 0.0, np.maximum(mod - gamma, 0.0) / safe, 0.0)
    return QArray(x.planes * scale[np.newaxis])
