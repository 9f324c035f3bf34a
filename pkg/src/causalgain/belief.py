"""The agent's belief about the causal orientation, tracked as log-odds in bits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .joint_model import (
    JointCounts,
    _check_category,
    conditional_given_x,
    conditional_given_y,
    marginal_x,
    marginal_y,
    posterior_joint,
)
from .world import Intervention, Orientation, Variable

log2 = np.log2


def posterior_h(prior_h: float, p_y_given_x: float, p_y: float) -> float:
    """Posterior of the hypothesis that the intervened variable is the cause.

    ``P(h | x^, y) = P(y|x) P(h) / (P(y|x) P(h) + P(y) P(not h))``
    """
    if not 0.0 < prior_h < 1.0:
        raise ValueError(f"prior_h must lie in (0, 1), got {prior_h}")
    for name, v in (("p_y_given_x", p_y_given_x), ("p_y", p_y)):
        if not 0.0 < v <= 1.0:
            raise ValueError(f"{name} must lie in (0, 1], got {v}")
    num = p_y_given_x * prior_h
    return num / (num + p_y * (1.0 - prior_h))


def predictive_pair(c: JointCounts, iv: Intervention) -> tuple[np.ndarray, np.ndarray]:
    """Agent predictions for the outcome of ``iv``.

    Returns ``(if intervened variable is the cause, if it is the effect)``.
    """
    if iv.target is Variable.X:
        return conditional_given_x(c, iv.value), marginal_y(c)
    return conditional_given_y(c, iv.value), marginal_x(c)


def per_outcome_gain(c: JointCounts, iv: Intervention, outcome: int) -> float:
    """Log-odds shift in bits after observing ``outcome`` under ``iv``.

    Positive values favour "the intervened variable is the cause".
    """
    k_out = c.k_y if iv.target is Variable.X else c.k_x
    j = _check_category(outcome, k_out, "outcome")
    as_cause, as_effect = predictive_pair(c, iv)
    return float(log2(as_cause[j]) - log2(as_effect[j]))


def branch_likelihood(c: JointCounts, orientation: Orientation, x: int, y: int) -> float:
    """Probability of a passive pair ``(x, y)`` along one branch of the tree.

    Cause first, then effect given cause. Both branches factor the same
    posterior joint, so they agree up to rounding.
    """
    if orientation is Orientation.XtoY:
        return float(marginal_x(c)[x - 1] * conditional_given_x(c, x)[y - 1])
    return float(marginal_y(c)[y - 1] * conditional_given_y(c, y)[x - 1])


@dataclass(frozen=True)
class Belief:
    """``log2 Q(h_XtoY) / Q(h_YtoX)``; zero is the uninformed prior."""

    log_odds_bits: float = 0.0

    @property
    def prob_x_causes_y(self) -> float:
        return float(1.0 / (1.0 + 2.0 ** (-self.log_odds_bits)))

    def toward(self, orientation: Orientation) -> float:
        """Evidence in bits for ``orientation``."""
        return self.log_odds_bits if orientation is Orientation.XtoY else -self.log_odds_bits

    def accumulate(self, iv: Intervention, gain_bits: float) -> "Belief":
        return accumulate(self, iv, gain_bits)

    def observe(self, c: JointCounts, x: int, y: int) -> "Belief":
        """Update on a passive observation ``(x, y)``.

        The prior over the joint does not depend on the orientation, so both
        hypotheses assign ``(x, y)`` the same predictive probability and the
        likelihood ratio is exactly one.
        """
        _check_category(x, c.k_x, "x")
        _check_category(y, c.k_y, "y")
        q = posterior_joint(c)[x - 1, y - 1]
        lik_xy = lik_yx = q
        return Belief(self.log_odds_bits + float(log2(lik_xy) - log2(lik_yx)))


def accumulate(b: Belief, iv: Intervention, gain_bits: float) -> Belief:
    """Add a per-outcome gain; interventions on Y count toward ``h_YtoX``."""
    if not np.isfinite(gain_bits):
        raise ValueError(f"gain must be finite, got {gain_bits}")
    sign = 1.0 if iv.target is Variable.X else -1.0
    return Belief(b.log_odds_bits + sign * float(gain_bits))
