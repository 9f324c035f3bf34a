"""Independent reference computations used by the tests.

These deliberately avoid the vectorized code paths in ``causalgain.gain`` and
recompute the posterior predictive with explicit loops over exact fractions.
"""

from fractions import Fraction
from math import log2

from causalgain import Orientation, Variable, per_outcome_gain, true_response


def q_joint_exact(counts, alpha):
    kx, ky = len(counts), len(counts[0])
    a = Fraction(alpha)
    total = sum(Fraction(v) for row in counts for v in row) + kx * ky * a
    return [[(Fraction(counts[i][j]) + a) / total for j in range(ky)] for i in range(kx)]


def q_cond_y_given_x_exact(counts, alpha, x):
    a = Fraction(alpha)
    row = [Fraction(v) for v in counts[x - 1]]
    denom = sum(row) + len(row) * a
    return [(v + a) / denom for v in row]


def q_marg_y_exact(counts, alpha):
    kx, ky = len(counts), len(counts[0])
    a = Fraction(alpha)
    total = sum(Fraction(v) for row in counts for v in row) + kx * ky * a
    return [(sum(Fraction(counts[i][j]) for i in range(kx)) + kx * a) / total for j in range(ky)]


def realized_by_enumeration(counts, world, iv):
    """Average over H0 uniform and outcome ~ P(outcome | H0, iv) of the signed
    per-outcome evidence toward H0."""
    total = 0.0
    for h0 in (Orientation.XtoY, Orientation.YtoX):
        probs = true_response(world.with_orientation(h0), iv)
        sign = 1.0 if iv.target is h0.cause else -1.0
        for out, p in enumerate(probs, start=1):
            total += 0.5 * p * sign * per_outcome_gain(counts, iv, out)
    return total


def expected_by_enumeration(counts, iv):
    from causalgain import conditional_given_x, conditional_given_y, marginal_x, marginal_y

    if iv.target is Variable.X:
        cond, marg = conditional_given_x(counts, iv.value), marginal_y(counts)
    else:
        cond, marg = conditional_given_y(counts, iv.value), marginal_x(counts)
    return 0.5 * sum(
        (cond[j] - marg[j]) * per_outcome_gain(counts, iv, j + 1) for j in range(len(cond))
    )


def jeffrey_loop(p, q):
    return sum((pi - qi) * (log2(pi) - log2(qi)) for pi, qi in zip(p, q))
