"""Dense real-symmetric eigensolvers.

``eigh`` defaults to LAPACK through numpy; ``jacobi_eigh`` is a cyclic Jacobi
solver kept as an independent route for small matrices.
"""

from __future__ import annotations

import math

import numpy as np

from casex.errors import NumericError

__all__ = ["eigh", "jacobi_eigh", "check_eigenpairs"]

RESIDUAL_TOL = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def _validate(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NumericError("matrix has non-finite entries")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    return a


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigh(a, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi diagonalization.

    Sweeps over all upper-triangle pairs until the off-diagonal Frobenius norm
    drops below ``tol`` times the full norm. Returns ascending eigenvalues and
    orthonormal eigenvectors as columns.
    """
    a = _validate(a).copy()
    n = a.shape[0]
    v = np.eye(n)
    scale = max(np.linalg.norm(a), np.finfo(float).tiny)

    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-18 * abs(diff):
                    # t ~ apq / diff; avoids overflow in theta**2
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    if theta == 0.0:
                        t = 1.0
                    else:
                        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J acting on rows/columns p and q
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        off = _off_norm(a)
        if off > tol * scale:
            raise NumericError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off:.3g})"
            )

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def check_eigenpairs(a, w, v, tol: float = RESIDUAL_TOL) -> float:
    """Largest residual ``|A v - w v|``; raises NumericError above tolerance."""
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return 0.0
    resid = np.linalg.norm(a @ v - v * w, axis=0).max()
    bound = tol * max(1.0, np.linalg.norm(a, 2))
    if resid > bound:
        raise NumericError(f"eigen residual {resid:.3g} exceeds {bound:.3g}")
    return float(resid)


def eigh(a, method: str = "lapack"):
    """Eigenvalues (ascending) and eigenvectors of a real symmetric matrix."""
    a = _validate(a)
    if method == "lapack":
        try:
            w, v = np.linalg.eigh(a)
        except np.linalg.LinAlgError as exc:
            raise NumericError(str(exc)) from exc
    elif method == "jacobi":
        w, v = jacobi_eigh(a)
    else:
        raise ValueError(f"unknown method {method!r}")
    check_eigenpairs(a, w, v)
    return w, v
