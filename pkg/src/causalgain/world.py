"""Hidden ground truth: the true joint, the true orientation, and interventions."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .joint_model import JointCounts

PathLike = Union[str, Path]


class Orientation(enum.Enum):
    XtoY = "XtoY"
    YtoX = "YtoX"

    @property
    def cause(self) -> "Variable":
        return Variable.X if self is Orientation.XtoY else Variable.Y

    @property
    def flipped(self) -> "Orientation":
        return Orientation.YtoX if self is Orientation.XtoY else Orientation.XtoY


class Variable(enum.Enum):
    X = "X"
    Y = "Y"

    @property
    def other(self) -> "Variable":
        return Variable.Y if self is Variable.X else Variable.X


@dataclass(frozen=True)
class Intervention:
    """``do(target = value)`` with a 1-based ``value``."""

    target: Variable
    value: int

    def __post_init__(self):
        object.__setattr__(self, "target", Variable(self.target))
        if isinstance(self.value, bool) or int(self.value) != self.value or self.value < 1:
            raise ValueError(f"intervention value must be a positive integer, got {self.value!r}")
        object.__setattr__(self, "value", int(self.value))

    @property
    def label(self) -> str:
        return f"do({self.target.value}={self.value})"

    def __str__(self):
        return self.label

    @classmethod
    def parse(cls, text: str) -> "Intervention":
        """Parse ``do(X=1)``, ``X=1`` or ``X1``."""
        s = text.strip()
        if s.startswith("do(") and s.endswith(")"):
            s = s[3:-1]
        s = s.replace("=", "")
        if len(s) < 2 or s[0].upper() not in ("X", "Y"):
            raise ValueError(f"cannot parse intervention {text!r}")
        return cls(Variable(s[0].upper()), int(s[1:]))


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """Independent stream for ``(seed, *keys)``; insensitive to call order."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, keys)]))


@dataclass(frozen=True, eq=False)
class TrueWorld:
    joint: np.ndarray
    orientation: Orientation = Orientation.XtoY

    def __post_init__(self):
        joint = np.array(self.joint, dtype=np.float64)
        if joint.ndim != 2 or joint.shape[0] < 2 or joint.shape[1] < 2:
            raise ValueError(f"joint must be a k_x x k_y matrix with k >= 2, got shape {joint.shape}")
        if np.any(joint < 0) or abs(joint.sum() - 1.0) > 1e-9:
            raise ValueError(f"joint must be nonnegative and sum to 1 (sum={joint.sum()!r})")
        if np.any(joint.sum(axis=1) <= 0) or np.any(joint.sum(axis=0) <= 0):
            raise ValueError("every category of X and Y needs positive marginal probability")
        joint.setflags(write=False)
        object.__setattr__(self, "joint", joint)
        object.__setattr__(self, "orientation", Orientation(self.orientation))

    @property
    def k_x(self) -> int:
        return self.joint.shape[0]

    @property
    def k_y(self) -> int:
        return self.joint.shape[1]

    def n_categories(self, var: Variable) -> int:
        return self.k_x if var is Variable.X else self.k_y

    def conditional(self, given: Variable, value: int) -> np.ndarray:
        """True ``P(other | given = value)``."""
        _check_value(self, given, value)
        table = self.joint if given is Variable.X else self.joint.T
        row = table[value - 1]
        return row / row.sum()

    def marginal(self, var: Variable) -> np.ndarray:
        return self.joint.sum(axis=1) if var is Variable.X else self.joint.sum(axis=0)

    def with_orientation(self, orientation: Orientation) -> "TrueWorld":
        return TrueWorld(self.joint, orientation)

    def to_json(self) -> dict:
        return {
            "k_x": self.k_x,
            "k_y": self.k_y,
            "joint": self.joint.tolist(),
            "orientation": self.orientation.value,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TrueWorld":
        try:
            joint = np.asarray(data["joint"], dtype=np.float64)
            k_x, k_y = int(data["k_x"]), int(data["k_y"])
            orientation = Orientation(data.get("orientation", "XtoY"))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed world description: {exc}") from None
        if joint.shape != (k_x, k_y):
            raise ValueError(f"joint has shape {joint.shape}, declared {k_x}x{k_y}")
        return cls(joint, orientation)


def _check_value(w: TrueWorld, var: Variable, value: int) -> None:
    k = w.n_categories(var)
    if not 1 <= value <= k:
        raise IndexError(f"{var.value}={value} out of range 1..{k}")


def load_world(path: PathLike) -> TrueWorld:
    with open(path) as fh:
        return TrueWorld.from_json(json.load(fh))


def save_world(w: TrueWorld, path: PathLike) -> None:
    with open(path, "w") as fh:
        json.dump(w.to_json(), fh, indent=2)
        fh.write("\n")


def sample_observations(
    w: TrueWorld, n: int, rng: np.random.Generator, alpha: float = 2.0
) -> JointCounts:
    """Draw ``n`` passive observations; counts are multinomial(n, joint)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    flat = rng.multinomial(int(n), w.joint.ravel())
    return JointCounts(flat.reshape(w.joint.shape).astype(np.float64), alpha)


def true_response(w: TrueWorld, iv: Intervention) -> np.ndarray:
    """Distribution of the non-intervened variable under ``iv``.

    Setting the cause propagates through the mechanism (true conditional);
    setting the effect severs it, leaving the cause at its marginal.
    """
    _check_value(w, iv.target, iv.value)
    if iv.target is w.orientation.cause:
        return w.conditional(iv.target, iv.value)
    return w.marginal(iv.target.other)


def intervene(w: TrueWorld, iv: Intervention, rng: np.random.Generator) -> int:
    """Perform ``iv`` in the world and return the observed 1-based outcome."""
    probs = true_response(w, iv)
    return int(rng.choice(len(probs), p=probs)) + 1
