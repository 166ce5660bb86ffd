"""Dense real vectors and symmetric matrices, plus a cyclic Jacobi eigensolver.

Vectors and matrices are plain float64 numpy arrays.  The constructors
``real_vector`` and ``sym_matrix`` validate shape and finiteness; the
eigensolver is written out here rather than delegated to LAPACK so that the
spectral claims are checked by code whose convergence rule is fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NonFiniteEntry, NotSymmetric

EIG_REL_TOL = 1e-14
MAX_SWEEPS = 100
ZERO_CLAMP = 1e-10


def real_vector(entries) -> np.ndarray:
    v = np.array(entries, dtype=float)
    if v.ndim != 1:
        raise DimensionMismatch(f"expected a 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise NonFiniteEntry("vector has NaN or infinite entries")
    return v


def sym_matrix(entries) -> np.ndarray:
    """Validated square symmetric matrix; symmetry must hold exactly."""
    m = np.array(entries, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteEntry("matrix has NaN or infinite entries")
    if not np.array_equal(m, m.T):
        raise NotSymmetric("matrix is not symmetric")
    return m


def _check_same_length(s: np.ndarray, t: np.ndarray) -> None:
    if s.shape != t.shape:
        raise DimensionMismatch(f"length {s.shape[0]} vs {t.shape[0]}")


def inner(s, t) -> float:
    """``<t|s> = sum_i t_i s_i``."""
    s, t = real_vector(s), real_vector(t)
    _check_same_length(s, t)
    return math.fsum(s * t)


def outer(s, t) -> np.ndarray:
    """``|s><t|``: entry (j, k) is ``s_j * t_k``."""
    s, t = real_vector(s), real_vector(t)
    _check_same_length(s, t)
    return np.multiply.outer(s, t)


def trace(m) -> float:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"trace needs a square matrix, got shape {m.shape}")
    return math.fsum(np.diag(m))


def mat_mul(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order; ``eigenvectors[:, k]`` pairs with ``eigenvalues[k]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def vector(self, k: int) -> np.ndarray:
        return self.eigenvectors[:, k].copy()

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T

    def clamped(self, tol: float = ZERO_CLAMP) -> np.ndarray:
        """Eigenvalues with round-off noise in ``(-tol, tol)`` reported as exact zeros."""
        vals = self.eigenvalues.copy()
        vals[np.abs(vals) < tol] = 0.0
        return vals


def _off_norm(a: np.ndarray) -> float:
    off = a[~np.eye(a.shape[0], dtype=bool)]
    return float(np.sqrt(np.dot(off, off)))


def sym_eigen(m, *, max_sweeps: int = MAX_SWEEPS, rel_tol: float = EIG_REL_TOL) -> Spectrum:
    """Full eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps over all (p, q) pairs in row order until the off-diagonal Frobenius
    norm drops to ``rel_tol * ||M||_F``.  Raises :class:`NoConvergence` if
    ``max_sweeps`` sweeps are not enough.  Equal eigenvalues keep the order of
    their diagonal positions.
    """
    a = sym_matrix(m).copy()
    n = a.shape[0]
    v = np.eye(n)
    target = rel_tol * float(np.linalg.norm(a))

    sweeps = 0
    while _off_norm(a) > target:
        if sweeps >= max_sweeps:
            raise NoConvergence(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {_off_norm(a):.3e})"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = float(a[p, q])
                if apq == 0.0:
                    continue
                # stable rotation angle (Golub & Van Loan, sym.schur2)
                tau = (float(a[q, q]) - float(a[p, p])) / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                elif tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    vals = np.diag(a).copy()
    order = np.argsort(-vals, kind="stable")
    return Spectrum(vals[order], v[:, order], sweeps)
