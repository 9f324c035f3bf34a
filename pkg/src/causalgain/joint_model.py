"""Dirichlet-multinomial posterior over the joint of two categorical variables.

Every agent-side probability is a posterior-predictive quantity of a symmetric
Dirichlet prior over the ``k_x * k_y`` cells of the joint table. Categories are
1-based in the public API.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

PathLike = Union[str, Path]


@dataclass(frozen=True, eq=False)
class JointCounts:
    """Observation counts ``n[x, y]`` plus the Dirichlet concentration ``alpha``.

    Counts may be fractional so that mean-field tables ``N * P`` are
    representable. The stored array is a read-only copy.
    """

    counts: np.ndarray
    alpha: float

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.float64)
        if counts.ndim != 2:
            raise ValueError(f"counts must be a 2-d matrix, got shape {counts.shape}")
        if counts.shape[0] < 2 or counts.shape[1] < 2:
            raise ValueError(f"need at least 2 categories per variable, got {counts.shape}")
        if not np.all(np.isfinite(counts)) or np.any(counts < 0):
            raise ValueError("counts must be finite and nonnegative")
        alpha = float(self.alpha)
        if not (alpha > 0 and np.isfinite(alpha)):
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "alpha", alpha)

    @property
    def k_x(self) -> int:
        return self.counts.shape[0]

    @property
    def k_y(self) -> int:
        return self.counts.shape[1]

    @property
    def total(self) -> float:
        return float(self.counts.sum())

    def transposed(self) -> "JointCounts":
        """Same data with the roles of X and Y swapped."""
        return JointCounts(np.ascontiguousarray(self.counts.T), self.alpha)

    def __repr__(self):
        return f"JointCounts(k_x={self.k_x}, k_y={self.k_y}, N={self.total:g}, alpha={self.alpha:g})"


def new_counts(k_x: int, k_y: int, alpha: float) -> JointCounts:
    if k_x < 2 or k_y < 2:
        raise ValueError(f"k_x and k_y must be >= 2, got ({k_x}, {k_y})")
    return JointCounts(np.zeros((k_x, k_y)), alpha)


def _check_category(value: int, k: int, name: str) -> int:
    if isinstance(value, (bool, np.bool_)) or int(value) != value or not 1 <= value <= k:
        raise IndexError(f"{name}={value!r} out of range 1..{k}")
    return int(value) - 1


def add_observation(c: JointCounts, x: int, y: int) -> JointCounts:
    """Return a copy of ``c`` with the cell ``(x, y)`` incremented by one."""
    i = _check_category(x, c.k_x, "x")
    j = _check_category(y, c.k_y, "y")
    counts = c.counts.copy()
    counts[i, j] += 1.0
    return JointCounts(counts, c.alpha)


def mean_field_counts(p, n_total: float, alpha: float) -> JointCounts:
    """Idealized counts ``n_total * p`` for a normalized joint ``p``."""
    p = np.asarray(p, dtype=np.float64)
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"p must be a normalized joint distribution (sum={p.sum()!r})")
    if n_total < 0:
        raise ValueError("n_total must be nonnegative")
    return JointCounts(n_total * p, alpha)


def posterior_joint(c: JointCounts) -> np.ndarray:
    """``Q_n(x, y) = (n_xy + alpha) / (N + k_x k_y alpha)``."""
    smoothed = c.counts + c.alpha
    return smoothed / smoothed.sum()


def _conditional_rows(counts: np.ndarray, alpha: float) -> np.ndarray:
    # row i holds Q_n(. | first variable = i+1)
    smoothed = counts + alpha
    return smoothed / smoothed.sum(axis=1, keepdims=True)


def _marginal_cols(counts: np.ndarray, alpha: float) -> np.ndarray:
    # Q_n of the second variable
    smoothed = counts + alpha
    return smoothed.sum(axis=0) / smoothed.sum()


def conditional_given_x(c: JointCounts, x: int) -> np.ndarray:
    """``Q_n(y | x) = (n_xy + alpha) / (sum_y n_xy + k_y alpha)``."""
    i = _check_category(x, c.k_x, "x")
    return _conditional_rows(c.counts, c.alpha)[i]


def conditional_given_y(c: JointCounts, y: int) -> np.ndarray:
    j = _check_category(y, c.k_y, "y")
    return _conditional_rows(c.transposed().counts, c.alpha)[j]


def marginal_y(c: JointCounts) -> np.ndarray:
    """``Q_n(y) = (sum_x n_xy + k_x alpha) / (N + k_x k_y alpha)``."""
    return _marginal_cols(c.counts, c.alpha)


def marginal_x(c: JointCounts) -> np.ndarray:
    return _marginal_cols(c.transposed().counts, c.alpha)


def load_counts_csv(path: PathLike, k_x: int | None, k_y: int | None, alpha: float) -> JointCounts:
    """Read a ``x,y,count`` CSV (1-based indices, absent cells are zero).

    When ``k_x``/``k_y`` are ``None`` they are inferred from the largest index
    present in the file.
    """
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["x", "y", "count"]:
            raise ValueError(f"{path}: expected header 'x,y,count', got {header!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not f.strip() for f in row):
                continue
            if len(row) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            try:
                x, y, count = int(row[0]), int(row[1]), float(row[2])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if x < 1 or y < 1:
                raise ValueError(f"{path}:{lineno}: indices are 1-based")
            rows.append((x, y, count))
    if k_x is None:
        k_x = max((r[0] for r in rows), default=0)
    if k_y is None:
        k_y = max((r[1] for r in rows), default=0)
    if k_x < 2 or k_y < 2:
        raise ValueError(f"{path}: need at least a 2x2 table, got {k_x}x{k_y}")
    counts = np.zeros((k_x, k_y))
    for x, y, count in rows:
        if x > k_x or y > k_y:
            raise ValueError(f"{path}: cell ({x},{y}) outside a {k_x}x{k_y} table")
        counts[x - 1, y - 1] += count
    return JointCounts(counts, alpha)


def write_counts_csv(c: JointCounts, path: PathLike) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "y", "count"])
        for (i, j), v in np.ndenumerate(c.counts):
            if v != 0:
                writer.writerow([i + 1, j + 1, repr(float(v))])
