"""Confidence distributions built from binomial P-value functions.

Read as a function of theta, a one-sided P-value rises from 0 to 1 like a
cdf; its derivative is a confidence density.  For binomial data the three
P-value functionals give Beta densities (possibly degenerate):

==========  ==========================  ===============================
kind        P-value                     confidence distribution
==========  ==========================  ===============================
right       P(T >= t | theta)           Beta(t, n-t+1); atom at 0 if t=0
left        P(T <= t | theta)           Beta(t+1, n-t); atom at 1 if t=n
mid         P(T > t) + P(T = t)/2       Beta(t+1/2, n-t+1/2)
==========  ==========================  ===============================

Dividing the confidence density by the likelihood theta^t (1-theta)^(n-t)
leaves the same kernel whatever the data, the induced prior.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .distributions import EvidenceData, MixedBetaDistribution, PriorSpec
from .numerics import (
    DomainError,
    binomial_left_tail,
    binomial_pmf,
    binomial_right_tail,
    regularized_incomplete_beta,
)

QUANTILE_TOL = 1e-12


class PValueKind(enum.Enum):
    RIGHT = "right"
    LEFT = "left"
    MID = "mid"

    @classmethod
    def parse(cls, text: str) -> PValueKind:
        key = text.strip().lower().replace("-", "_")
        aliases = {"right_side": "right", "left_side": "left", "mid_p": "mid"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise DomainError(f"unknown P-value kind {text!r}; expected right, left or mid") from None


class PriorNotIdentifiableError(DomainError):
    """A point-mass confidence distribution does not determine a prior."""


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    level: float
    degenerate_point: float | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise DomainError(f"interval lower {self.lower} exceeds upper {self.upper}")
        if (self.degenerate_point is not None) != (self.lower == self.upper):
            raise DomainError("degenerate_point must be set exactly when lower == upper")

    @classmethod
    def point(cls, at: float, level: float) -> ConfidenceInterval:
        return cls(float(at), float(at), level, float(at))

    @property
    def is_degenerate(self) -> bool:
        return self.degenerate_point is not None

    def contains(self, theta) -> bool:
        return self.lower <= theta <= self.upper

    def as_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "level": self.level,
                "degenerate_point": self.degenerate_point}


def _require_trials(data: EvidenceData) -> None:
    if data.n == 0:
        raise DomainError("confidence procedures need at least one trial (n >= 1)")


def p_value(kind: PValueKind, data: EvidenceData, theta: float) -> float:
    n, t = data.n, data.t
    if kind is PValueKind.RIGHT:
        return binomial_right_tail(n, t, theta)
    if kind is PValueKind.LEFT:
        return binomial_left_tail(n, t, theta)
    above = binomial_right_tail(n, t + 1, theta) if t < n else 0.0
    return above + 0.5 * binomial_pmf(n, t, theta)


def confidence_distribution(kind: PValueKind, data: EvidenceData) -> MixedBetaDistribution:
    """Distribution whose cdf is the P-value function of ``kind``.

    Uses P(T >= t | theta) = I_theta(t, n - t + 1).  A P-value that is
    identically 1 (right side at t = 0) puts all mass at theta = 0; the
    left side is the right side applied to the recoded data n - t,
    reflected back.
    """
    _require_trials(data)
    n, t = data.n, data.t
    if kind is PValueKind.RIGHT:
        if t == 0:
            return MixedBetaDistribution.point_mass(0)
        return MixedBetaDistribution.beta(t, n - t + 1)
    if kind is PValueKind.LEFT:
        return confidence_distribution(PValueKind.RIGHT, EvidenceData(n, n - t)).reflect()
    return MixedBetaDistribution.beta(t + 0.5, n - t + 0.5)


def induced_prior(kind: PValueKind, data: EvidenceData) -> PriorSpec:
    """The Beta kernel c0 with confidence density proportional to c0 x likelihood."""
    dist = confidence_distribution(kind, data)
    if dist.atom is not None:
        raise PriorNotIdentifiableError(
            f"{kind.value} confidence at n={data.n}, t={data.t} is a point mass at {dist.atom}; "
            "prior not identifiable from atom")
    return PriorSpec.beta_prior(dist.a - data.t, dist.b - data.failures)


def mixed_quantile(dist: MixedBetaDistribution, u: float) -> float:
    """inf{theta in [0, 1] : F(theta) >= u}, F the cdf including atoms."""
    if not 0.0 <= u <= 1.0:
        raise DomainError(f"probability must lie in [0, 1], got {u!r}")
    if u <= dist.p0:
        return 0.0
    if dist.w == 0.0 or u >= dist.p0 + dist.w:
        # remaining mass sits on the atom at 1 (or u == 1 with no atom)
        return 1.0
    target = (u - dist.p0) / dist.w
    lo, hi = 0.0, 1.0
    while hi - lo > QUANTILE_TOL:
        mid = 0.5 * (lo + hi)
        if regularized_incomplete_beta(mid, dist.a, dist.b) >= target:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def confidence_interval(dist: MixedBetaDistribution, level: float) -> ConfidenceInterval:
    """Equal-tailed interval; collapses to an atom carrying at least ``level``."""
    if not 0.0 < level <= 1.0:
        raise DomainError(f"level must lie in (0, 1], got {level!r}")
    # ties go to the degenerate interval
    if dist.p1 >= level and dist.p1 >= dist.p0:
        return ConfidenceInterval.point(1.0, level)
    if dist.p0 >= level:
        return ConfidenceInterval.point(0.0, level)
    tail = (1.0 - level) / 2.0
    lower = mixed_quantile(dist, tail)
    upper = mixed_quantile(dist, 1.0 - tail)
    if lower == upper:
        return ConfidenceInterval.point(lower, level)
    return ConfidenceInterval(lower, upper, level)
