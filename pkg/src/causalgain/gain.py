"""Expected and realized information gain of single interventions, in bits.

Vectorized helpers return one value per intervention in the canonical order
``do(X=1..k_x)`` followed by ``do(Y=1..k_y)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .joint_model import JointCounts, _conditional_rows, _marginal_cols
from .world import Intervention, TrueWorld, Variable

log2 = np.log2


@dataclass(frozen=True)
class GainReport:
    intervention: Intervention
    expected_bits: float
    realized_bits: Optional[float] = None


def jeffrey_divergence(p, q) -> float:
    """Symmetrized KL divergence ``sum (p - q) log2(p / q)``.

    Both arguments must be strictly positive; pass smoothed distributions.
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape or p.ndim != 1:
        raise ValueError(f"distributions must be 1-d of equal length, got {p.shape} and {q.shape}")
    if np.any(p <= 0) or np.any(q <= 0):
        raise ValueError("Jeffrey divergence requires strictly positive entries")
    return float(np.sum((p - q) * (log2(p) - log2(q))))


def _side(counts: np.ndarray, alpha: float, joint: Optional[np.ndarray]):
    # rows of `counts` index the intervened variable
    cond = _conditional_rows(counts, alpha)
    marg = _marginal_cols(counts, alpha)
    info = log2(cond) - log2(marg)
    expected = 0.5 * np.sum((cond - marg) * info, axis=1)
    if joint is None:
        return expected, None
    true_cond = joint / joint.sum(axis=1, keepdims=True)
    true_marg = joint.sum(axis=0)
    realized = 0.5 * np.sum((true_cond - true_marg) * info, axis=1)
    return expected, realized


def _check_dims(c: JointCounts, w: TrueWorld) -> None:
    if (c.k_x, c.k_y) != (w.k_x, w.k_y):
        raise ValueError(f"counts are {c.k_x}x{c.k_y} but world is {w.k_x}x{w.k_y}")


def _all_gains(c: JointCounts, w: Optional[TrueWorld]):
    if w is not None:
        _check_dims(c, w)
    counts_t = c.transposed().counts
    joint = None if w is None else w.joint
    joint_t = None if w is None else np.ascontiguousarray(w.joint.T)
    ex, rx = _side(c.counts, c.alpha, joint)
    ey, ry = _side(counts_t, c.alpha, joint_t)
    expected = np.concatenate([ex, ey])
    realized = None if w is None else np.concatenate([rx, ry])
    return expected, realized


def expected_gains(c: JointCounts) -> np.ndarray:
    """Expected gain of every intervention, canonical order."""
    return _all_gains(c, None)[0]


def realized_gains(c: JointCounts, w: TrueWorld) -> np.ndarray:
    """Realized gain of every intervention, canonical order."""
    return _all_gains(c, w)[1]


def _index(c: JointCounts, iv: Intervention) -> int:
    k = c.k_x if iv.target is Variable.X else c.k_y
    if not 1 <= iv.value <= k:
        raise IndexError(f"{iv} out of range 1..{k}")
    return iv.value - 1 if iv.target is Variable.X else c.k_x + iv.value - 1


def expected_gain(c: JointCounts, iv: Intervention) -> float:
    """Half the Jeffrey divergence between the agent's predictive for the
    outcome given the intervened value and its marginal predictive.

    The factor 1/2 puts this on the same scale as :func:`realized_gain`.
    """
    return float(expected_gains(c)[_index(c, iv)])


def realized_gain(c: JointCounts, w: TrueWorld, iv: Intervention) -> float:
    """Average evidence toward the true orientation actually gained by ``iv``.

    ``0.5 * sum_out [P(out | v) - P(out)] * I(iv | out)`` with ``P`` from the
    world's joint and ``I`` the agent's per-outcome gain. This averages over
    both possible true orientations, so ``w.orientation`` is not consulted.
    """
    _check_dims(c, w)
    return float(realized_gains(c, w)[_index(c, iv)])


def gain_reports(c: JointCounts, w: Optional[TrueWorld] = None) -> list[GainReport]:
    from .strategy import enumerate_interventions

    expected, realized = _all_gains(c, w)
    ivs = enumerate_interventions(c.k_x, c.k_y)
    return [
        GainReport(iv, float(e), None if realized is None else float(realized[i]))
        for i, (iv, e) in enumerate(zip(ivs, expected))
    ]


def example1_closed_form(rho: float, n_total: float, alpha: float) -> float:
    """Realized gain of ``do(X=x)`` on mean-field counts of the symmetric 2x2
    joint ``[[rho, 1-rho], [1-rho, rho]] / 2``."""
    if not 0.0 <= rho <= 1.0:
        raise ValueError("rho must lie in [0, 1]")
    if n_total < 0 or alpha <= 0:
        raise ValueError("need n_total >= 0 and alpha > 0")
    ratio = (n_total * rho + 2 * alpha) / (n_total * (1 - rho) + 2 * alpha)
    return 0.5 * (rho - 0.5) * float(log2(ratio))
