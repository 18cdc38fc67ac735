"""Predictive probabilities, the general proposition G and confirmation.

G is the proposition that every future trial succeeds (theta = 1).  Its
probability is the limit of the m-step run probability as m grows, which
is exactly the posterior atom at 1: the continuous part's contribution
b(a + m, b) / b(a, b) vanishes.
"""
from __future__ import annotations

import math

from .distributions import (
    EvidenceData,
    PriorSpec,
    posterior_update,
)
from .numerics import DomainError, log_beta

INFINITE_HORIZON = math.inf


class UndefinedQuantityError(ValueError):
    """The requested probability is not defined for this prior."""


def predict_next(prior: PriorSpec, data: EvidenceData) -> float:
    """P(X_{n+1} = 1 | data): the posterior mean p1 + w a / (a + b)."""
    return posterior_update(prior, data).mean()


def predict_run(prior: PriorSpec, data: EvidenceData, m: float) -> float:
    """Probability that the next ``m`` trials all succeed.

    ``m`` may be :data:`INFINITE_HORIZON`, which gives :func:`prob_general`.
    """
    if m == INFINITE_HORIZON:
        return prob_general(prior, data)
    if m < 0 or int(m) != m:
        raise DomainError(f"horizon must be a count >= 0 or infinite, got {m!r}")
    dist = posterior_update(prior, data)
    if m == 0:
        return 1.0
    cont = 0.0
    if dist.w > 0.0:
        cont = dist.w * math.exp(log_beta(dist.a + m, dist.b) - log_beta(dist.a, dist.b))
    return dist.p1 + cont


def prob_general(prior: PriorSpec, data: EvidenceData) -> float:
    """P(G | data), the posterior mass at theta = 1."""
    return posterior_update(prior, data).p1


def transform_complement(data: EvidenceData) -> EvidenceData:
    """Data recoded as Y_i = 1 - X_i; the success probability becomes 1 - theta."""
    return EvidenceData(data.n, data.n - data.t)


def marginal_likelihood(prior: PriorSpec, data: EvidenceData) -> float:
    """Probability of one particular sequence with ``t`` successes in ``n`` trials.

    For improper Beta(alpha, beta) kernels the value is the kernel integral
    b(alpha + t, beta + n - t), meaningful only in ratios.
    """
    a, b = prior.alpha + data.t, prior.beta + data.failures
    if not prior.proper:
        if a <= 0.0 or b <= 0.0:
            raise UndefinedQuantityError("improper kernel integral diverges for these data")
        return math.exp(log_beta(a, b))
    total = 0.0
    if data.t == 0:
        total += prior.mass_at_zero
    if data.all_successes:
        total += prior.mass_at_one
    if prior.continuous_weight > 0.0:
        total += prior.continuous_weight * math.exp(log_beta(a, b) - log_beta(prior.alpha, prior.beta))
    return total


def confirmation_measure(prior: PriorSpec, data: EvidenceData) -> float:
    """Carnap's degree of confirmation P(G | data) - P(G)."""
    if not prior.proper:
        raise UndefinedQuantityError(
            f"prior confirmation undefined: P(G) does not exist under the improper prior {prior.label()}")
    return prob_general(prior, data) - prior.mass_at_one
