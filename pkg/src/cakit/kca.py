"""Kernel correspondence analysis.

Generalizes the linear fit to
``maximize tr(R^T K_r A K_c) / 2  subject to  R^T K_r R K_c = I``
where A is a pluggable association matrix built from the table and K_r,
K_c are SPD kernel matrices.  The solution is read off the plain SVD of
the sandwich ``K_r^{1/2} A K_c^{1/2}``.  Specializations recover linear
CA, the plain (unscaled) categorical covariance, the G-test association,
shifted-positive-PMI factorization, an exponential one-hot-distance
kernel, plus two text-oriented kernels: diagonal stop-word reweighting
and the pair-score (Hadamard) construction that folds external word
similarity scores into the table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ca import EmbeddingSet
from .linalg import NotPositiveDefiniteError, spd_sqrt, svd
from .tables import ContingencyTable, residual_matrix

ASSOCIATIONS = ("linear", "gini", "gtest", "sgns", "kpca_cd")
KERNEL_KINDS = ("identity", "inverse_marginal", "stopword", "kpca_cd", "explicit")


@dataclass(frozen=True)
class KernelSpec:
    """One kernel matrix, described declaratively.

    kind:
      identity          -> I
      inverse_marginal  -> D(marginal)^{-1}
      stopword          -> D(w) D(marginal)^{-1}, w_i = 1 + alpha for listed words
      kpca_cd           -> 1 on the diagonal, exp(2*alpha) off it (needs alpha < 0)
      explicit          -> a given SPD matrix
    """

    kind: str = "identity"
    alpha: float = 0.0
    words: frozenset = frozenset()
    matrix: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        object.__setattr__(self, "words", frozenset(self.words))


@dataclass(frozen=True)
class KcaMethod:
    """Association operator plus kernels; one fit configuration.

    ``shift_k`` is the SGNS negative-sampling shift (> 0).  ``sgns_clamp``
    selects shifted positive PMI; with clamping off, zero-count cells take
    ``sgns_floor`` and negative shifted PMI values are kept.  ``exponent``
    is the power of the singular values in the output coordinates (1 is
    the CA convention, 0.5 the symmetric split).
    """

    association: str
    row_kernel: KernelSpec = KernelSpec()
    col_kernel: KernelSpec = KernelSpec()
    shift_k: float = 1.0
    exponent: float = 1.0
    sgns_clamp: bool = True
    sgns_floor: float = 0.0

    def __post_init__(self):
        if self.association not in ASSOCIATIONS:
            raise ValueError(f"unknown association {self.association!r}")
        if self.association == "sgns" and self.shift_k <= 0:
            raise ValueError(f"sgns shift k must be > 0, got {self.shift_k}")


@dataclass(frozen=True)
class AssociationMatrix:
    values: np.ndarray
    method_tag: str


def method_from_name(
    name: str,
    shift_k: float = 1.0,
    kpca_alpha: float = -0.5,
    stopwords: frozenset | set | None = None,
    sw_alpha_row: float | None = None,
    sw_alpha_col: float | None = None,
    exponent: float = 1.0,
) -> KcaMethod:
    """Build the standard kernel/association pairing for a method name.

    linear -> inverse-marginal kernels; gini/gtest/sgns -> identity
    kernels; kpca_cd -> exponential row kernel.  Passing stop-word alphas
    (with a word set) swaps in the stop-word kernels on the chosen axes.
    """
    if name == "kpca_cd":
        row_kernel = KernelSpec("kpca_cd", alpha=kpca_alpha)
        col_kernel = KernelSpec("identity")
    elif name == "linear":
        row_kernel = KernelSpec("inverse_marginal")
        col_kernel = KernelSpec("inverse_marginal")
    elif name in ("gini", "gtest", "sgns"):
        row_kernel = KernelSpec("identity")
        col_kernel = KernelSpec("identity")
    else:
        raise ValueError(f"unknown method {name!r}")
    words = frozenset(stopwords or ())
    if sw_alpha_row is not None:
        row_kernel = KernelSpec("stopword", alpha=sw_alpha_row, words=words)
    if sw_alpha_col is not None:
        col_kernel = KernelSpec("stopword", alpha=sw_alpha_col, words=words)
    return KcaMethod(
        association=name,
        row_kernel=row_kernel,
        col_kernel=col_kernel,
        shift_k=shift_k,
        exponent=exponent,
    )


def association_matrix(t: ContingencyTable, m: KcaMethod) -> AssociationMatrix:
    """The matrix the chosen method factorizes.

    linear / gini / kpca_cd: the centered frequencies N/n - r c^T/n^2.
    gtest: cellwise (n_ij/n) * log(n_ij n / (r_i c_j)), with the 0*log(0)=0
    convention on empty cells.
    sgns: shifted PMI, log(n_ij n / (r_i c_j)) - log(shift_k), clamped at 0
    by default (empty cells fall to the clamp or to ``sgns_floor``).
    """
    N = t.counts
    n = t.n
    if m.association in ("linear", "gini", "kpca_cd"):
        return AssociationMatrix(residual_matrix(t), m.association)
    expected = np.outer(t.r, t.c) / n  # E_ij = r_i c_j / n
    positive = N > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        log_ratio = np.where(positive, np.log(np.where(positive, N, 1.0) / expected), 0.0)
    if m.association == "gtest":
        A = np.where(positive, (N / n) * log_ratio, 0.0)
        return AssociationMatrix(A, "gtest")
    if m.association == "sgns":
        shifted = log_ratio - math.log(m.shift_k)
        if m.sgns_clamp:
            A = np.where(positive, np.maximum(shifted, 0.0), 0.0)
        else:
            A = np.where(positive, shifted, m.sgns_floor)
        return AssociationMatrix(A, f"sgns(k={m.shift_k:g})")
    raise ValueError(f"unknown association {m.association!r}")


def materialize_kernel(spec: KernelSpec, t: ContingencyTable, axis: str) -> np.ndarray:
    """Turn a kernel spec into its SPD matrix for one axis of the table."""
    if axis == "row":
        marginal, labels = t.r, t.row_labels
    elif axis == "col":
        marginal, labels = t.c, t.col_labels
    else:
        raise ValueError(f"axis must be 'row' or 'col', got {axis!r}")
    m = len(labels)
    if spec.kind == "identity":
        return np.eye(m)
    if spec.kind == "inverse_marginal":
        return np.diag(1.0 / marginal)
    if spec.kind == "stopword":
        if 1.0 + spec.alpha <= 0:
            raise NotPositiveDefiniteError(
                f"stop-word weight 1+alpha = {1.0 + spec.alpha:g} must be positive"
            )
        w = np.array([1.0 + spec.alpha if lbl in spec.words else 1.0 for lbl in labels])
        return np.diag(w / marginal)
    if spec.kind == "kpca_cd":
        # |e_i - e_j|^2 is 0 on the diagonal and 2 off it
        off = math.exp(2.0 * spec.alpha)
        K = np.full((m, m), off)
        np.fill_diagonal(K, 1.0)
        spd_sqrt(K)  # rejects alpha >= 0, where the matrix loses definiteness
        return K
    if spec.kind == "explicit":
        if spec.matrix is None:
            raise ValueError("explicit kernel spec carries no matrix")
        K = np.asarray(spec.matrix, dtype=float)
        if K.shape != (m, m):
            raise ValueError(f"explicit kernel shape {K.shape} does not match axis size {m}")
        spd_sqrt(K)
        return K
    raise ValueError(f"unknown kernel kind {spec.kind!r}")


def _fit_sandwich(
    A: np.ndarray,
    Kr: np.ndarray,
    Kc: np.ndarray,
    k: int,
    exponent: float,
    row_labels,
    col_labels,
    method_tag: str,
) -> EmbeddingSet:
    Lr = spd_sqrt(Kr)
    Lc = spd_sqrt(Kc)
    dec = svd(Lr @ A @ Lc)
    S = dec.S[:k]
    scale = S**exponent if exponent != 1.0 else S
    F = (Lr @ dec.U[:, :k]) * scale
    G = (Lc @ dec.V[:, :k]) * scale
    return EmbeddingSet(
        F=F,
        G=G,
        row_labels=tuple(row_labels),
        col_labels=tuple(col_labels),
        singular_values=S.copy(),
        method_tag=method_tag,
        decomposition=dec,
    )


def fit_kca(t: ContingencyTable, m: KcaMethod, k: int | None = None) -> EmbeddingSet:
    """Fit one kernel-CA configuration, keeping the top ``k`` dimensions.

    Builds the association matrix A and kernels, takes the SVD of
    ``K_r^{1/2} A K_c^{1/2} = U S V^T`` and returns the coordinates
    ``F = K_r^{1/2} U S^p`` and ``G = K_c^{1/2} V S^p``.  With the linear
    association and inverse-marginal kernels this reproduces
    :func:`cakit.ca.fit_linear_ca`.
    """
    if k is None:
        k = max(1, min(t.shape) - 1)
    if not 1 <= k <= min(t.shape):
        raise ValueError(f"dimension k={k} out of range 1..{min(t.shape)}")
    assoc = association_matrix(t, m)
    Kr = materialize_kernel(m.row_kernel, t, "row")
    Kc = materialize_kernel(m.col_kernel, t, "col")
    tag = assoc.method_tag
    if "stopword" in (m.row_kernel.kind, m.col_kernel.kind):
        tag += "+sw"
    return _fit_sandwich(
        assoc.values, Kr, Kc, k, m.exponent, t.row_labels, t.col_labels, tag
    )


def build_gamma(labels, scores, alpha: float, beta: float = 1.0) -> np.ndarray:
    """Pair-score matrix gamma_ij = alpha * score(i, j) + beta over the labels.

    ``scores`` maps unordered label pairs to similarity values; pairs
    without a score contribute 0, so their entry is just ``beta``.
    """
    labels = list(labels)
    m = len(labels)
    gamma = np.full((m, m), beta)
    index = {lbl: i for i, lbl in enumerate(labels)}
    for key, value in scores.items():
        a, b = key
        if a in index and b in index:
            i, j = index[a], index[b]
            gamma[i, j] = alpha * value + beta
            gamma[j, i] = alpha * value + beta
    return gamma


def fit_ws_kca(t: ContingencyTable, gamma_r, gamma_c, k: int | None = None,
               exponent: float = 1.0) -> EmbeddingSet:
    """Fit with external pair scores folded in through Hadamard products.

    With G_r, G_c the pair-score matrices, the fitted association is
    ``(N o (G_r N G_c) - (G_r N) o (N G_c)) / n^2`` (o = Hadamard, n the
    original grand total), under inverse-marginal kernels built from the
    modified marginals ``r' = ((G_r N) o (N G_c)) 1`` and its transpose
    analogue.  All-ones pair-score matrices reduce to linear CA up to a
    global positive scale.
    """
    gamma_r = np.asarray(gamma_r, dtype=float)
    gamma_c = np.asarray(gamma_c, dtype=float)
    nr, nc = t.shape
    if gamma_r.shape != (nr, nr):
        raise ValueError(f"row pair-score matrix shape {gamma_r.shape}, expected {(nr, nr)}")
    if gamma_c.shape != (nc, nc):
        raise ValueError(f"column pair-score matrix shape {gamma_c.shape}, expected {(nc, nc)}")
    N = t.counts
    n = t.n
    GN = gamma_r @ N
    NG = N @ gamma_c
    cross = GN * NG
    r_mod = cross.sum(axis=1)
    c_mod = cross.sum(axis=0)
    if np.any(r_mod <= 0):
        bad = [lbl for lbl, v in zip(t.row_labels, r_mod) if v <= 0]
        raise ValueError(f"nonpositive modified row marginal for: {', '.join(bad)}")
    if np.any(c_mod <= 0):
        bad = [lbl for lbl, v in zip(t.col_labels, c_mod) if v <= 0]
        raise ValueError(f"nonpositive modified column marginal for: {', '.join(bad)}")
    A = (N * (gamma_r @ N @ gamma_c) - cross) / (n * n)
    if k is None:
        k = max(1, min(t.shape) - 1)
    if not 1 <= k <= min(t.shape):
        raise ValueError(f"dimension k={k} out of range 1..{min(t.shape)}")
    return _fit_sandwich(
        A, np.diag(1.0 / r_mod), np.diag(1.0 / c_mod), k, exponent,
        t.row_labels, t.col_labels, "ws",
    )


def constraint_residual(e: EmbeddingSet, Kr, Kc) -> float:
    """Max deviation of R^T K_r R K_c from the identity for a fitted model.

    R is recovered from the stored sandwich SVD as
    ``K_r^{-1/2} (U V^T) K_c^{-1/2}``.  Meaningful when the table has at
    least as many rows as columns (otherwise the constraint is
    rank-deficient by construction).
    """
    dec = e.decomposition
    if dec is None:
        raise ValueError("embedding set carries no decomposition")
    Lr_inv = np.linalg.inv(spd_sqrt(Kr))
    Lc_inv = np.linalg.inv(spd_sqrt(Kc))
    R_hat = dec.U @ dec.V.T
    R = Lr_inv @ R_hat @ Lc_inv
    lhs = R.T @ np.asarray(Kr, dtype=float) @ R @ np.asarray(Kc, dtype=float)
    return float(np.max(np.abs(lhs - np.eye(lhs.shape[0]))))


# -- flat key=value method configuration ------------------------------------

CONFIG_KEYS = (
    "method",
    "shift_k",
    "sw_alpha_row",
    "sw_alpha_col",
    "ws_alpha",
    "ws_beta",
    "dim",
    "exponent",
    "kpca_alpha",
    "stopwords",
    "ws_scores",
)

_FLOAT_KEYS = {"shift_k", "sw_alpha_row", "sw_alpha_col", "ws_alpha", "ws_beta",
               "exponent", "kpca_alpha"}


def parse_method_config(text: str) -> dict:
    """Parse the flat key=value method configuration format.

    One ``key=value`` entry per line; blank lines and ``#`` comments are
    skipped.  Numeric values are converted, ``dim`` to int; unknown keys
    are an error.
    """
    config: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in CONFIG_KEYS:
            raise ValueError(f"line {lineno}: unknown configuration key {key!r}")
        if key == "dim":
            config[key] = int(value)
        elif key in _FLOAT_KEYS:
            config[key] = float(value)
        else:
            config[key] = value
    return config
