"""Dense linear-algebra kernel: SVD, SPD square roots, metric-weighted GSVD.

All fitting routines in this package reduce to one of the operations here.
Matrices are plain ``numpy.ndarray`` (float64, dense); inputs are validated
for finiteness and the decompositions carry a deterministic sign convention
so repeated runs produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class NotPositiveDefiniteError(ValueError):
    """Raised when a matrix required to be SPD has an eigenvalue <= 0."""


def _as_matrix(M, name: str = "matrix") -> np.ndarray:
    A = np.asarray(M, dtype=float)
    if A.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {A.shape}")
    if A.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} contains NaN or Inf entries")
    return A


@dataclass(frozen=True)
class Decomposition:
    """Singular triplet ``U @ diag(S) @ V.T`` orthonormal under a metric pair.

    ``U.T @ inv(metric_row) @ U = I`` and ``V.T @ inv(metric_col) @ V = I``;
    identity metrics give a plain thin SVD.  ``S`` is sorted descending and
    nonnegative.
    """

    U: np.ndarray
    S: np.ndarray
    V: np.ndarray
    metric_row: np.ndarray = field(repr=False, default=None)
    metric_col: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        if self.metric_row is None:
            object.__setattr__(self, "metric_row", np.eye(self.U.shape[0]))
        if self.metric_col is None:
            object.__setattr__(self, "metric_col", np.eye(self.V.shape[0]))

    @property
    def rank(self) -> int:
        """Number of singular values above the 1e-12 * S_max flag threshold."""
        if self.S.size == 0 or self.S[0] == 0.0:
            return 0
        return int(np.sum(self.S > 1e-12 * self.S[0]))

    @property
    def flagged_small(self) -> np.ndarray:
        """Boolean mask of singular values flagged as numerically zero."""
        if self.S.size == 0:
            return np.zeros(0, dtype=bool)
        return self.S <= 1e-12 * (self.S[0] if self.S[0] > 0 else 1.0)

    def reconstruct(self) -> np.ndarray:
        return self.U @ np.diag(self.S) @ self.V.T


def _apply_sign_convention(U: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Per left vector: entry of largest magnitude made nonnegative (lowest
    # index wins ties); the matching right vector is flipped with it.
    U = U.copy()
    V = V.copy()
    for j in range(U.shape[1]):
        i = int(np.argmax(np.abs(U[:, j])))  # argmax returns first maximum
        if U[i, j] < 0:
            U[:, j] = -U[:, j]
            V[:, j] = -V[:, j]
    return U, V


def svd(M) -> Decomposition:
    """Thin SVD with identity metrics and the fixed sign convention.

    Raises ``np.linalg.LinAlgError`` if the underlying factorization does
    not converge; never returns unconverged output.
    """
    A = _as_matrix(M)
    try:
        U, S, Vt = np.linalg.svd(A, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(f"SVD did not converge: {exc}") from exc
    U, V = _apply_sign_convention(U, Vt.T)
    return Decomposition(U=U, S=S, V=V)


def _is_diagonal(K: np.ndarray) -> bool:
    return np.count_nonzero(K - np.diag(np.diagonal(K))) == 0


def spd_sqrt(K) -> np.ndarray:
    """Symmetric square root of an SPD matrix, K^{1/2} @ K^{1/2} = K.

    Diagonal inputs take an exact elementwise fast path.  Non-SPD input
    (any eigenvalue <= 0 within tolerance) raises
    ``NotPositiveDefiniteError`` naming the offending eigenvalue.
    """
    A = _as_matrix(K, "kernel matrix")
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"SPD square root needs a square matrix, got {A.shape}")
    if _is_diagonal(A):
        d = np.diagonal(A)
        if np.any(d <= 0):
            bad = float(d[d <= 0][0])
            raise NotPositiveDefiniteError(
                f"matrix is not positive definite: diagonal entry {bad}"
            )
        return np.diag(np.sqrt(d))
    if not np.allclose(A, A.T, rtol=1e-10, atol=1e-12):
        raise ValueError("SPD square root needs a symmetric matrix")
    lam, Q = np.linalg.eigh(A)
    tol = 1e-12 * max(lam[-1], 0.0)
    if lam[0] <= tol:
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite: eigenvalue {lam[0]:.6g}"
        )
    root = (Q * np.sqrt(lam)) @ Q.T
    return 0.5 * (root + root.T)


def _spd_inv_sqrt(K: np.ndarray) -> np.ndarray:
    """K^{-1/2} for SPD K; shares spd_sqrt's validation and fast path."""
    if _is_diagonal(K):
        d = np.diagonal(K)
        if np.any(d <= 0):
            bad = float(d[d <= 0][0])
            raise NotPositiveDefiniteError(
                f"matrix is not positive definite: diagonal entry {bad}"
            )
        return np.diag(1.0 / np.sqrt(d))
    spd_sqrt(K)  # runs the SPD validation
    lam, Q = np.linalg.eigh(K)
    inv_root = (Q / np.sqrt(lam)) @ Q.T
    return 0.5 * (inv_root + inv_root.T)


def metric_gsvd(M, Wr, Wc) -> Decomposition:
    """GSVD of M orthonormal under the SPD metrics Wr, Wc.

    Computes the plain SVD of ``Wr^{-1/2} @ M @ Wc^{-1/2}`` and scales the
    factors back, so the result satisfies ``U.T @ inv(Wr) @ U = I``,
    ``V.T @ inv(Wc) @ V = I`` and ``U @ diag(S) @ V.T = M``.
    """
    A = _as_matrix(M)
    Wr = _as_matrix(Wr, "row metric")
    Wc = _as_matrix(Wc, "column metric")
    if Wr.shape != (A.shape[0], A.shape[0]) or Wc.shape != (A.shape[1], A.shape[1]):
        raise ValueError(
            f"metric shapes {Wr.shape}, {Wc.shape} do not conform to matrix {A.shape}"
        )
    inner = _spd_inv_sqrt(Wr) @ A @ _spd_inv_sqrt(Wc)
    dec = svd(inner)
    U = spd_sqrt(Wr) @ dec.U
    V = spd_sqrt(Wc) @ dec.V
    return Decomposition(U=U, S=dec.S, V=V, metric_row=Wr, metric_col=Wc)


def nuclear_norm(M) -> float:
    """Sum of singular values of M."""
    return float(np.sum(svd(M).S))
