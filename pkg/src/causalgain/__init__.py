"""Expected and realized information gain of interventions for Bayesian
causal induction between two categorical variables."""

__version__ = "0.1.0"

from .belief import Belief, accumulate, per_outcome_gain, posterior_h
from .gain import (
    GainReport,
    example1_closed_form,
    expected_gain,
    expected_gains,
    gain_reports,
    jeffrey_divergence,
    realized_gain,
    realized_gains,
)
from .joint_model import (
    JointCounts,
    add_observation,
    conditional_given_x,
    conditional_given_y,
    marginal_x,
    marginal_y,
    mean_field_counts,
    new_counts,
    posterior_joint,
)
from .strategy import Policy, enumerate_interventions, select
from .world import (
    Intervention,
    Orientation,
    TrueWorld,
    Variable,
    derive_rng,
    intervene,
    sample_observations,
    true_response,
)
