"""Scenario worlds and seeded Monte-Carlo runners for the four worked examples.

Every replication draws from its own stream ``derive_rng(seed, N, r)``, so
results do not depend on execution order or on the number of worker threads.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Optional, Sequence, TypeVar

import numpy as np

from .belief import Belief, per_outcome_gain
from .gain import _all_gains
from .joint_model import JointCounts, mean_field_counts
from .strategy import Policy, enumerate_interventions, greedy_index, select
from .world import Intervention, Orientation, TrueWorld, derive_rng, intervene, sample_observations

T = TypeVar("T")

N_GRID = (5, 10, 20, 50, 100, 200, 500, 1000)
N_GRID_LONG = N_GRID + (2000, 5000, 10000)
ALPHA_GRID = (0.5, 1.0, 2.0, 4.0, 8.0)
SWEEP_N = (20, 100, 500)
EXAMPLE3_RHO = 0.1


# -- worlds ------------------------------------------------------------------


def example1_joint(rho: float) -> TrueWorld:
    """Symmetric 2x2 joint ``[[rho, 1-rho], [1-rho, rho]] / 2``."""
    _check_rho(rho)
    return TrueWorld(np.array([[rho, 1 - rho], [1 - rho, rho]]) / 2, Orientation.XtoY)


def example2_joint(rho: float, k: int = 4) -> TrueWorld:
    """``P[1,1] = rho``, every other cell ``(1 - rho) / (k^2 - 1)``."""
    _check_rho(rho)
    joint = np.full((k, k), (1 - rho) / (k * k - 1))
    joint[0, 0] = rho
    return TrueWorld(joint, Orientation.XtoY)


def example3_joint(rho: float = EXAMPLE3_RHO) -> TrueWorld:
    """4x4 joint with ``rho / 5`` on cell (1,4) and on column y=1, and
    ``(1 - rho) / 11`` on the remaining 11 cells."""
    _check_rho(rho)
    joint = np.full((4, 4), (1 - rho) / 11)
    joint[:, 0] = rho / 5
    joint[0, 3] = rho / 5
    return TrueWorld(joint, Orientation.XtoY)


def example4_random_joint(rng: np.random.Generator, k: int = 8) -> TrueWorld:
    """Joint proportional to i.i.d. uniform weights."""
    u = rng.uniform(size=(k, k))
    while not np.all(u > 0):  # measure-zero, but the world must stay valid
        u = rng.uniform(size=(k, k))
    return TrueWorld(u / u.sum(), Orientation.XtoY)


def _check_rho(rho: float) -> None:
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho}")


# -- configuration and results -----------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    rho: float = 0.9
    alpha: float = 2.0
    n_grid: tuple[int, ...] = N_GRID
    reps: int = 1000
    seed: int = 0
    k_x: int = 2
    k_y: int = 2
    alpha_grid: tuple[float, ...] = ALPHA_GRID
    threads: int = 1

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        if not self.n_grid:
            raise ValueError("n_grid must be nonempty")
        if any(n < 0 for n in self.n_grid):
            raise ValueError("observation counts must be nonnegative")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError("rho must lie in [0, 1]")
        if self.alpha <= 0 or any(a <= 0 for a in self.alpha_grid):
            raise ValueError("alpha must be positive")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if self.threads < 0:
            raise ValueError("threads must be >= 0")
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        object.__setattr__(self, "alpha_grid", tuple(float(a) for a in self.alpha_grid))

    def to_json(self) -> dict:
        return {
            "rho": self.rho,
            "alpha": self.alpha,
            "n_grid": list(self.n_grid),
            "reps": self.reps,
            "seed": self.seed,
            "k_x": self.k_x,
            "k_y": self.k_y,
            "alpha_grid": list(self.alpha_grid),
        }


DEFAULTS = {
    "example1": ExperimentConfig(rho=0.9, k_x=2, k_y=2),
    "example2": ExperimentConfig(rho=0.9, k_x=4, k_y=4),
    "example3": ExperimentConfig(rho=EXAMPLE3_RHO, k_x=4, k_y=4, n_grid=N_GRID_LONG),
    "alpha-sweep": ExperimentConfig(rho=EXAMPLE3_RHO, k_x=4, k_y=4, n_grid=SWEEP_N),
    "example4": ExperimentConfig(k_x=8, k_y=8, reps=100_000),
    "curves": ExperimentConfig(k_x=4, k_y=4),
}


def default_config(name: str, **overrides) -> ExperimentConfig:
    return replace(DEFAULTS[name], **{k: v for k, v in overrides.items() if v is not None})


@dataclass(frozen=True)
class SummaryRow:
    n_obs: int
    intervention: Intervention
    mean_expected: float
    std_expected: float
    mean_realized: float
    std_realized: float


@dataclass(frozen=True)
class MeanFieldRow:
    n_obs: int
    intervention: Intervention
    expected: float
    realized: float


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    n_obs: int
    probability_best_selected: float


@dataclass(frozen=True)
class PolicyRow:
    policy: Policy
    n_obs: Optional[int]  # None for the pooled row
    mean_gain: float
    std_gain: float
    reps: int


@dataclass
class ActiveComparison:
    mean_gain_random: float
    mean_gain_greedy: float
    rows: list[PolicyRow] = field(default_factory=list)

    @property
    def ratio(self) -> float:
        return self.mean_gain_greedy / self.mean_gain_random


# -- runners -----------------------------------------------------------------


def _map(fn: Callable[..., T], items: Iterable, threads: int) -> list[T]:
    items = list(items)
    workers = (os.cpu_count() or 1) if threads == 0 else threads
    if workers <= 1 or len(items) < 2:
        return [fn(*it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda it: fn(*it), items))


def run_gain_curves(world: TrueWorld, cfg: ExperimentConfig) -> list[SummaryRow]:
    """Mean and spread of expected and realized gain for every intervention.

    Rows are ordered by N, then by canonical intervention order.
    """
    ivs = enumerate_interventions(world.k_x, world.k_y)

    def one(n: int, r: int):
        counts = sample_observations(world, n, derive_rng(cfg.seed, n, r), cfg.alpha)
        return _all_gains(counts, world)

    rows = []
    for n in cfg.n_grid:
        results = _map(one, ((n, r) for r in range(cfg.reps)), cfg.threads)
        expected = np.array([e for e, _ in results])
        realized = np.array([r for _, r in results])
        for i, iv in enumerate(ivs):
            rows.append(
                SummaryRow(
                    n_obs=n,
                    intervention=iv,
                    mean_expected=float(expected[:, i].mean()),
                    std_expected=float(expected[:, i].std()),
                    mean_realized=float(realized[:, i].mean()),
                    std_realized=float(realized[:, i].std()),
                )
            )
    return rows


def mean_field_curves(world: TrueWorld, alpha: float, n_grid: Sequence[float]) -> list[MeanFieldRow]:
    """Expected and realized gain on idealized counts ``N * P``."""
    ivs = enumerate_interventions(world.k_x, world.k_y)
    rows = []
    for n in n_grid:
        expected, realized = _all_gains(mean_field_counts(world.joint, n, alpha), world)
        rows.extend(
            MeanFieldRow(int(n), iv, float(e), float(r)) for iv, e, r in zip(ivs, expected, realized)
        )
    return rows


def run_alpha_sweep(
    cfg: ExperimentConfig, world: Optional[TrueWorld] = None, best: Optional[Intervention] = None
) -> list[SweepRow]:
    """Fraction of replications in which greedy selection picks ``best``.

    Each replication's counts are shared across the alpha grid.
    """
    world = example3_joint(cfg.rho) if world is None else world
    ivs = enumerate_interventions(world.k_x, world.k_y)
    target = ivs.index(best) if best is not None else 0

    def one(n: int, r: int):
        raw = sample_observations(world, n, derive_rng(cfg.seed, n, r)).counts
        return [greedy_index(_all_gains(JointCounts(raw, a), None)[0]) == target for a in cfg.alpha_grid]

    hits = {}
    for n in cfg.n_grid:
        hits[n] = np.array(_map(one, ((n, r) for r in range(cfg.reps)), cfg.threads))
    return [
        SweepRow(a, n, float(hits[n][:, i].mean()))
        for i, a in enumerate(cfg.alpha_grid)
        for n in cfg.n_grid
    ]


def _evidence(world: TrueWorld, counts: JointCounts, iv: Intervention, rng) -> float:
    outcome = intervene(world, iv, rng)
    belief = Belief().accumulate(iv, per_outcome_gain(counts, iv, outcome))
    return belief.toward(world.orientation)


def run_active_comparison(cfg: ExperimentConfig) -> ActiveComparison:
    """Single-shot evidence gained toward the true orientation under the
    greedy and the random policy, on freshly drawn random worlds."""

    def one(n: int, r: int):
        rng = derive_rng(cfg.seed, n, r)
        world = example4_random_joint(rng, cfg.k_x)
        counts = sample_observations(world, n, rng, cfg.alpha)
        greedy = select(Policy.GREEDY, counts)
        rand = select(Policy.RANDOM, counts, rng)
        return _evidence(world, counts, greedy, rng), _evidence(world, counts, rand, rng)

    if cfg.k_x != cfg.k_y:
        raise ValueError("random worlds are square; use k_x == k_y")
    rows = []
    pooled = {Policy.GREEDY: [], Policy.RANDOM: []}
    for n in cfg.n_grid:
        res = np.array(_map(one, ((n, r) for r in range(cfg.reps)), cfg.threads))
        for col, policy in ((0, Policy.GREEDY), (1, Policy.RANDOM)):
            gains = res[:, col]
            pooled[policy].append(gains)
            rows.append(PolicyRow(policy, n, float(gains.mean()), float(gains.std()), cfg.reps))
    means = {}
    for policy in (Policy.GREEDY, Policy.RANDOM):
        gains = np.concatenate(pooled[policy])
        means[policy] = float(gains.mean())
        rows.append(PolicyRow(policy, None, means[policy], float(gains.std()), gains.size))
    return ActiveComparison(means[Policy.RANDOM], means[Policy.GREEDY], rows)
