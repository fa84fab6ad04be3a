"""Contingency tables: construction from observations, marginals, residuals.

A table holds a nonnegative count matrix together with row/column category
labels.  Marginals are always strictly positive: categories whose marginal
is zero are dropped (with a logged warning) at construction time, because
every downstream fit divides by them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

logger = logging.getLogger(__name__)

# An observation list is a sequence of (row-category, column-category) pairs.
Observations = Sequence[tuple[str, str]]


@dataclass(frozen=True)
class ContingencyTable:
    """Nonnegative count matrix with labels and strictly positive marginals."""

    counts: np.ndarray
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=float)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))
        if counts.ndim != 2:
            raise ValueError(f"counts must be 2-dimensional, got shape {counts.shape}")
        if counts.shape != (len(self.row_labels), len(self.col_labels)):
            raise ValueError(
                f"counts shape {counts.shape} does not match "
                f"{len(self.row_labels)} row / {len(self.col_labels)} column labels"
            )
        if not np.all(np.isfinite(counts)):
            raise ValueError("counts contain NaN or Inf")
        if np.any(counts < 0):
            raise ValueError("counts must be nonnegative")
        if np.any(counts.sum(axis=1) <= 0) or np.any(counts.sum(axis=0) <= 0):
            raise ValueError(
                "table has a zero marginal; construct via from_counts() to drop "
                "empty categories"
            )

    @property
    def r(self) -> np.ndarray:
        """Row marginals, counts @ 1."""
        return self.counts.sum(axis=1)

    @property
    def c(self) -> np.ndarray:
        """Column marginals, counts.T @ 1."""
        return self.counts.sum(axis=0)

    @property
    def n(self) -> float:
        """Grand total."""
        return float(self.counts.sum())

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape

    @classmethod
    def from_counts(cls, counts, row_labels=None, col_labels=None) -> "ContingencyTable":
        """Build a table, dropping zero-marginal rows/columns with a warning."""
        counts = np.asarray(counts, dtype=float)
        if counts.ndim != 2:
            raise ValueError(f"counts must be 2-dimensional, got shape {counts.shape}")
        if not np.all(np.isfinite(counts)):
            raise ValueError("counts contain NaN or Inf")
        if np.any(counts < 0):
            raise ValueError("counts must be nonnegative")
        nr, nc = counts.shape
        if row_labels is None:
            row_labels = [f"r{i}" for i in range(nr)]
        if col_labels is None:
            col_labels = [f"c{j}" for j in range(nc)]
        row_keep = counts.sum(axis=1) > 0
        col_keep = counts.sum(axis=0) > 0
        if not row_keep.all():
            dropped = [lbl for lbl, keep in zip(row_labels, row_keep) if not keep]
            logger.warning("dropping zero-marginal rows: %s", ", ".join(dropped))
        if not col_keep.all():
            dropped = [lbl for lbl, keep in zip(col_labels, col_keep) if not keep]
            logger.warning("dropping zero-marginal columns: %s", ", ".join(dropped))
        counts = counts[np.ix_(row_keep, col_keep)]
        if counts.size == 0:
            raise ValueError("table is empty after dropping zero-marginal categories")
        return cls(
            counts=counts,
            row_labels=tuple(l for l, k in zip(row_labels, row_keep) if k),
            col_labels=tuple(l for l, k in zip(col_labels, col_keep) if k),
        )

    def normalized(self) -> "ContingencyTable":
        """Same table with counts divided by the grand total (n becomes 1)."""
        return ContingencyTable(
            counts=self.counts / self.n,
            row_labels=self.row_labels,
            col_labels=self.col_labels,
        )

    def transposed(self) -> "ContingencyTable":
        return ContingencyTable(
            counts=self.counts.T,
            row_labels=self.col_labels,
            col_labels=self.row_labels,
        )


def one_hot(index: int, dimension: int) -> np.ndarray:
    """Unit basis vector: position ``index`` set to 1 in a length-``dimension`` vector."""
    if not 0 <= index < dimension:
        raise IndexError(f"category index {index} out of range for dimension {dimension}")
    e = np.zeros(dimension)
    e[index] = 1.0
    return e


def contingency_from_observations(obs: Observations) -> ContingencyTable:
    """Count co-occurring category pairs into a table.

    Category labels are sorted, so the result does not depend on the order
    of the observations.
    """
    obs = list(obs)
    if not obs:
        raise ValueError("observation list is empty")
    row_labels = sorted({a for a, _ in obs})
    col_labels = sorted({b for _, b in obs})
    row_index = {lbl: i for i, lbl in enumerate(row_labels)}
    col_index = {lbl: j for j, lbl in enumerate(col_labels)}
    counts = np.zeros((len(row_labels), len(col_labels)))
    for a, b in obs:
        counts[row_index[a], col_index[b]] += 1.0
    return ContingencyTable.from_counts(counts, row_labels, col_labels)


def residual_matrix(t: ContingencyTable) -> np.ndarray:
    """Centered frequency matrix N/n - r c^T / n^2; rows and columns sum to zero."""
    n = t.n
    return t.counts / n - np.outer(t.r, t.c) / (n * n)


def _format_count(x: float) -> str:
    # integers round-trip as integers; everything else via repr (exact)
    x = float(x)
    if x == int(x) and abs(x) < 2**53:
        return str(int(x))
    return repr(x)


def write_tsv(t: ContingencyTable, path) -> None:
    """Write the TSV table format: header of column labels, one labeled row per line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\t" + "\t".join(t.col_labels) + "\n")
        for label, row in zip(t.row_labels, t.counts):
            fh.write(label + "\t" + "\t".join(_format_count(x) for x in row) + "\n")


def read_tsv(path) -> ContingencyTable:
    """Read the TSV table format written by :func:`write_tsv`."""
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines:
        raise ValueError(f"empty table file: {path}")
    header = lines[0].split("\t")
    col_labels = header[1:]
    row_labels = []
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split("\t")
        if len(cells) != len(col_labels) + 1:
            raise ValueError(
                f"{path}:{lineno}: expected {len(col_labels) + 1} cells, got {len(cells)}"
            )
        row_labels.append(cells[0])
        rows.append([float(x) for x in cells[1:]])
    return ContingencyTable.from_counts(np.array(rows), row_labels, col_labels)
