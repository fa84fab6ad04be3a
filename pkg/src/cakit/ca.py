"""Linear correspondence analysis and the embedding container/formats.

Fits the metric GSVD of the centered frequency matrix under the diagonal
marginal metrics and exposes the principal row/column coordinates
F = D(r)^{-1} U S and G = D(c)^{-1} V S used both for plotting category
maps and as word vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import Decomposition, metric_gsvd
from .tables import ContingencyTable, residual_matrix


@dataclass(frozen=True)
class EmbeddingSet:
    """Row coordinates F, column coordinates G, and fit provenance.

    ``singular_values`` is the truncated, descending spectrum of the fitted
    matrix; ``decomposition``, when present, is the full (untruncated)
    decomposition the coordinates were derived from.
    """

    F: np.ndarray
    G: np.ndarray
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    singular_values: np.ndarray
    method_tag: str
    decomposition: Decomposition | None = field(default=None, repr=False)

    def __post_init__(self):
        k = self.singular_values.shape[0]
        if self.F.shape != (len(self.row_labels), k):
            raise ValueError(
                f"F shape {self.F.shape} does not match {len(self.row_labels)} labels x {k} dims"
            )
        if self.G.shape != (len(self.col_labels), k):
            raise ValueError(
                f"G shape {self.G.shape} does not match {len(self.col_labels)} labels x {k} dims"
            )
        if np.any(np.diff(self.singular_values) > 0):
            raise ValueError("singular values must be sorted descending")

    @property
    def k(self) -> int:
        return self.singular_values.shape[0]

    def coordinates(self, which: str) -> tuple[tuple[str, ...], np.ndarray]:
        """Labels and coordinate matrix of one point set, "F" (rows) or "G" (columns)."""
        if which == "F":
            return self.row_labels, self.F
        if which == "G":
            return self.col_labels, self.G
        raise ValueError(f"point set must be 'F' or 'G', got {which!r}")


def default_dimension(t: ContingencyTable) -> int:
    """min(n_rows, n_cols) - 1, floored at 1; the sensible demo default."""
    return max(1, min(t.shape) - 1)


def fit_linear_ca(t: ContingencyTable, k: int | None = None) -> EmbeddingSet:
    """Correspondence analysis of a table, keeping the top ``k`` dimensions.

    The GSVD of the centered matrix runs under the raw-marginal metrics
    D(r), D(c), i.e. the factors satisfy U.T @ D(r)^{-1} @ U = I.  ``k``
    defaults to min(shape) - 1.
    """
    if k is None:
        k = default_dimension(t)
    if not 1 <= k <= min(t.shape):
        raise ValueError(f"dimension k={k} out of range 1..{min(t.shape)}")
    centered = residual_matrix(t)
    dec = metric_gsvd(centered, np.diag(t.r), np.diag(t.c))
    S = dec.S[:k]
    F = (dec.U[:, :k] / t.r[:, None]) * S
    G = (dec.V[:, :k] / t.c[:, None]) * S
    return EmbeddingSet(
        F=F,
        G=G,
        row_labels=t.row_labels,
        col_labels=t.col_labels,
        singular_values=S.copy(),
        method_tag="linear_ca",
        decomposition=dec,
    )


def export_coordinates(e: EmbeddingSet, path) -> None:
    """Write a CSV of both point sets: point_set,label,dim_1..dim_k."""
    header = ["point_set", "label"] + [f"dim_{i + 1}" for i in range(e.k)]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for which in ("row", "col"):
            labels, coords = e.coordinates("F" if which == "row" else "G")
            for label, vec in zip(labels, coords):
                fh.write(",".join([which, label] + [repr(float(x)) for x in vec]) + "\n")


def read_coordinates(path) -> list[tuple[str, str, np.ndarray]]:
    """Read back an exported coordinate CSV as (point_set, label, vector) rows."""
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    rows = []
    for line in lines[1:]:
        cells = line.split(",")
        rows.append((cells[0], cells[1], np.array([float(x) for x in cells[2:]])))
    return rows


def write_embeddings(e: EmbeddingSet, path) -> None:
    """Text embedding format: one header line, then one line per labeled point.

    Header: n_row_labels, n_col_labels, k, method_tag, then the k singular
    values.  Body lines: point set ("row"/"col"), label, k coordinates.
    Tab-separated, floats via repr, so writing and re-reading is exact.
    """
    with open(path, "w", encoding="utf-8") as fh:
        header = [
            str(len(e.row_labels)),
            str(len(e.col_labels)),
            str(e.k),
            e.method_tag,
        ] + [repr(float(s)) for s in e.singular_values]
        fh.write("\t".join(header) + "\n")
        for which, labels, coords in (("row", e.row_labels, e.F), ("col", e.col_labels, e.G)):
            for label, vec in zip(labels, coords):
                fh.write("\t".join([which, label] + [repr(float(x)) for x in vec]) + "\n")


def read_embeddings(path) -> EmbeddingSet:
    """Read the text embedding format written by :func:`write_embeddings`."""
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines:
        raise ValueError(f"empty embeddings file: {path}")
    head = lines[0].split("\t")
    n_rows, n_cols, k = int(head[0]), int(head[1]), int(head[2])
    method_tag = head[3]
    singular_values = np.array([float(x) for x in head[4 : 4 + k]])
    if len(lines) != 1 + n_rows + n_cols:
        raise ValueError(
            f"{path}: expected {n_rows + n_cols} point lines, got {len(lines) - 1}"
        )
    row_labels, col_labels = [], []
    F_rows, G_rows = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split("\t")
        which, label, values = cells[0], cells[1], [float(x) for x in cells[2:]]
        if len(values) != k:
            raise ValueError(f"{path}:{lineno}: expected {k} coordinates")
        if which == "row":
            row_labels.append(label)
            F_rows.append(values)
        elif which == "col":
            col_labels.append(label)
            G_rows.append(values)
        else:
            raise ValueError(f"{path}:{lineno}: unknown point set {which!r}")
    return EmbeddingSet(
        F=np.array(F_rows).reshape(len(row_labels), k),
        G=np.array(G_rows).reshape(len(col_labels), k),
        row_labels=tuple(row_labels),
        col_labels=tuple(col_labels),
        singular_values=singular_values,
        method_tag=method_tag,
    )
