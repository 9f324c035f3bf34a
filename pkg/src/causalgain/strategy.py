"""Intervention-selection policies."""

from __future__ import annotations

import enum
from typing import Optional

import numpy as np

from .gain import expected_gains
from .joint_model import JointCounts
from .world import Intervention, Variable


class Policy(enum.Enum):
    GREEDY = "greedy"
    RANDOM = "random"


def enumerate_interventions(k_x: int, k_y: int) -> list[Intervention]:
    """``do(X=1..k_x)`` then ``do(Y=1..k_y)``."""
    if k_x < 2 or k_y < 2:
        raise ValueError(f"k_x and k_y must be >= 2, got ({k_x}, {k_y})")
    return [Intervention(Variable.X, i) for i in range(1, k_x + 1)] + [
        Intervention(Variable.Y, j) for j in range(1, k_y + 1)
    ]


def greedy_index(gains: np.ndarray) -> int:
    # np.argmax returns the first maximum, i.e. enumeration-order tie-breaking
    return int(np.argmax(gains))


def select(
    policy: Policy, c: JointCounts, rng: Optional[np.random.Generator] = None
) -> Intervention:
    """Pick one intervention.

    Greedy maximizes expected gain (first wins on exact ties) and ignores
    ``rng``; Random draws uniformly from the full intervention set.
    """
    ivs = enumerate_interventions(c.k_x, c.k_y)
    policy = Policy(policy)
    if policy is Policy.GREEDY:
        return ivs[greedy_index(expected_gains(c))]
    if rng is None:
        raise ValueError("the random policy needs an rng")
    return ivs[int(rng.integers(len(ivs)))]
