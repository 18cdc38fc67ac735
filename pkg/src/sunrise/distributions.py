"""Priors and posteriors over a Bernoulli success probability.

A prior is a :class:`PriorSpec`: optional atoms at 0 and 1 plus a weighted
Beta(alpha, beta) part, where alpha or beta may be exactly zero (improper).
Conditioning on data is the conjugate shift of the Beta shapes plus a
likelihood reweighting of the atoms, so it is exact for improper priors
too; only normalisation (:func:`normalize`) has to take the limit of an
improper kernel, which it does analytically:

* Beta(a, 0), a > 0, normalises to an atom at 1,
* Beta(0, b), b > 0, normalises to an atom at 0,
* Beta(0, 0) cannot be normalised.

Posteriors are :class:`MixedBetaDistribution` values, always proper.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .numerics import DomainError, beta_pdf, log_beta, regularized_incomplete_beta

NORMALISATION_TOL = 1e-12

# Up to this many trials the atom/continuum weights are computed in exact
# rational arithmetic, so e.g. the Jeffreys-mixture P(G | T_n = n) is the
# correctly rounded (n+1)/(n+2).
EXACT_WEIGHT_LIMIT = 2000


class NoUpdateError(DomainError):
    """The prior and data do not determine a proper posterior."""


@dataclass(frozen=True)
class EvidenceData:
    """n Bernoulli trials with t successes."""

    n: int
    t: int

    def __post_init__(self):
        if isinstance(self.n, bool) or isinstance(self.t, bool):
            raise DomainError("counts must be integers")
        if int(self.n) != self.n or int(self.t) != self.t:
            raise DomainError(f"counts must be integers, got n={self.n!r}, t={self.t!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "t", int(self.t))
        if self.n < 0 or not 0 <= self.t <= self.n:
            raise DomainError(f"need 0 <= t <= n, got n={self.n}, t={self.t}")

    @property
    def failures(self) -> int:
        return self.n - self.t

    @property
    def all_successes(self) -> bool:
        return self.t == self.n

    def __add__(self, other: EvidenceData) -> EvidenceData:
        return EvidenceData(self.n + other.n, self.t + other.t)

    @classmethod
    def successes(cls, n: int) -> EvidenceData:
        return cls(n, n)


@dataclass(frozen=True)
class PriorSpec:
    """Prior over theta: atoms at 0 and 1 plus ``continuous_weight`` x Beta(alpha, beta).

    Improper priors (alpha or beta equal to 0) carry no atoms and unit
    continuous weight; their overall scale is immaterial.
    """

    alpha: float
    beta: float
    mass_at_zero: float = 0.0
    mass_at_one: float = 0.0
    continuous_weight: float = 1.0
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        for label in ("alpha", "beta"):
            value = getattr(self, label)
            if not (value >= 0.0) or math.isinf(value):
                raise DomainError(f"{label} must be a finite real >= 0, got {value!r}")
        for label in ("mass_at_zero", "mass_at_one", "continuous_weight"):
            value = getattr(self, label)
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"{label} must lie in [0, 1], got {value!r}")
        if self.proper:
            total = self.mass_at_zero + self.mass_at_one + self.continuous_weight
            if abs(total - 1.0) > NORMALISATION_TOL:
                raise DomainError(f"prior weights sum to {total!r}, not 1")
        elif self.mass_at_zero or self.mass_at_one or self.continuous_weight != 1.0:
            raise DomainError("an improper prior cannot carry point masses")

    @property
    def proper(self) -> bool:
        return self.alpha > 0.0 and self.beta > 0.0

    @property
    def has_atoms(self) -> bool:
        return self.mass_at_zero > 0.0 or self.mass_at_one > 0.0

    def reflect(self) -> PriorSpec:
        """The prior of 1 - theta."""
        return PriorSpec(self.beta, self.alpha, self.mass_at_one, self.mass_at_zero,
                         self.continuous_weight)

    def label(self) -> str:
        if self.name:
            return self.name
        if self.has_atoms:
            return (f"mixture(p0={self.mass_at_zero:g},p1={self.mass_at_one:g},"
                    f"w={self.continuous_weight:g},beta:{self.alpha:g},{self.beta:g})")
        return f"beta:{self.alpha:g},{self.beta:g}"

    @classmethod
    def beta_prior(cls, alpha: float, beta: float) -> PriorSpec:
        return cls(float(alpha), float(beta))

    @classmethod
    def laplace(cls) -> PriorSpec:
        return cls(1.0, 1.0, name="laplace")

    @classmethod
    def jeffreys_continuous(cls) -> PriorSpec:
        return cls(0.5, 0.5, name="jeffreys-continuous")

    @classmethod
    def jeffreys_mixture(cls) -> PriorSpec:
        return cls(1.0, 1.0, mass_at_one=0.5, continuous_weight=0.5, name="jeffreys-mixture")

    @classmethod
    def haldane(cls) -> PriorSpec:
        return cls(0.0, 0.0, name="haldane")

    @classmethod
    def induced_right(cls) -> PriorSpec:
        return cls(0.0, 1.0, name="induced-right")

    @classmethod
    def induced_left(cls) -> PriorSpec:
        return cls(1.0, 0.0, name="induced-left")


NAMED_PRIORS = {
    "laplace": PriorSpec.laplace,
    "jeffreys-mixture": PriorSpec.jeffreys_mixture,
    "jeffreys-continuous": PriorSpec.jeffreys_continuous,
    "haldane": PriorSpec.haldane,
    "induced-right": PriorSpec.induced_right,
    "induced-left": PriorSpec.induced_left,
}


def parse_prior(text: str) -> PriorSpec:
    """Parse ``laplace``, ``haldane``, ..., or ``beta:<alpha>,<beta>``."""
    key = text.strip().lower()
    if key in NAMED_PRIORS:
        return NAMED_PRIORS[key]()
    if key.startswith("beta:"):
        try:
            alpha, beta = (float(v) for v in key[5:].split(","))
        except ValueError:
            raise DomainError(f"malformed beta prior {text!r}; expected beta:<alpha>,<beta>") from None
        return PriorSpec.beta_prior(alpha, beta)
    raise DomainError(f"unknown prior {text!r}; choose one of {sorted(NAMED_PRIORS)} or beta:<a>,<b>")


@dataclass(frozen=True)
class MixedBetaDistribution:
    """Atoms ``p0`` at 0 and ``p1`` at 1 plus ``w`` x Beta(a, b); a, b are None when w == 0."""

    p0: float
    p1: float
    w: float
    a: float | None = None
    b: float | None = None

    def __post_init__(self):
        for label in ("p0", "p1", "w"):
            if not 0.0 <= getattr(self, label) <= 1.0:
                raise DomainError(f"{label} must lie in [0, 1], got {getattr(self, label)!r}")
        if abs(self.p0 + self.p1 + self.w - 1.0) > NORMALISATION_TOL:
            raise DomainError("p0 + p1 + w must equal 1")
        if self.w > 0.0:
            if self.a is None or self.b is None or not (self.a > 0.0 and self.b > 0.0):
                raise DomainError(f"continuous part must be a proper Beta, got a={self.a}, b={self.b}")
        else:
            object.__setattr__(self, "a", None)
            object.__setattr__(self, "b", None)

    @classmethod
    def beta(cls, a: float, b: float) -> MixedBetaDistribution:
        return cls(0.0, 0.0, 1.0, float(a), float(b))

    @classmethod
    def point_mass(cls, at: int) -> MixedBetaDistribution:
        if at == 0:
            return cls(1.0, 0.0, 0.0)
        if at == 1:
            return cls(0.0, 1.0, 0.0)
        raise DomainError("point masses live at 0 or 1")

    @property
    def is_pure_beta(self) -> bool:
        return self.w == 1.0

    @property
    def atom(self) -> int | None:
        """0 or 1 if the distribution is a single point mass, else None."""
        if self.p1 == 1.0:
            return 1
        if self.p0 == 1.0:
            return 0
        return None

    def mean(self) -> float:
        cont = self.w * self.a / (self.a + self.b) if self.w > 0.0 else 0.0
        return self.p1 + cont

    def cdf(self, theta: float) -> float:
        """P(Theta <= theta), atoms included."""
        if theta < 0.0:
            return 0.0
        if theta >= 1.0:
            return 1.0
        cont = self.w * regularized_incomplete_beta(theta, self.a, self.b) if self.w > 0.0 else 0.0
        return min(1.0, self.p0 + cont)

    def continuous_pdf(self, theta: float) -> float:
        """w times the Beta density at theta (atoms excluded)."""
        if self.w == 0.0:
            return 0.0
        return self.w * beta_pdf(theta, self.a, self.b)

    def reflect(self) -> MixedBetaDistribution:
        """Distribution of 1 - theta."""
        return MixedBetaDistribution(self.p1, self.p0, self.w, self.b, self.a)

    def as_dict(self) -> dict:
        return {"p0": self.p0, "p1": self.p1, "w": self.w, "a": self.a, "b": self.b}


def _continuous_marginal(alpha: float, beta: float, data: EvidenceData, exact: bool):
    """C(n, t) b(alpha + t, beta + n - t) / b(alpha, beta) for a proper Beta part."""
    n, t, s = data.n, data.t, data.failures
    if exact:
        a, b = Fraction(alpha), Fraction(beta)
        ratio = Fraction(math.comb(n, t))
        for i in range(t):
            ratio *= (a + i) / (a + b + i)
        for j in range(s):
            ratio *= (b + j) / (a + b + t + j)
        return ratio
    log_choose = -math.log(n + 1.0) - log_beta(s + 1.0, t + 1.0)
    return math.exp(log_choose + log_beta(alpha + t, beta + s) - log_beta(alpha, beta))


def condition(prior: PriorSpec, data: EvidenceData) -> PriorSpec:
    """Conjugate update of the prior kernel; exact for improper priors.

    The result is again a :class:`PriorSpec` (possibly improper), so
    updates compose: ``condition(condition(p, d1), d2) == condition(p, d1 + d2)``.
    """
    alpha = prior.alpha + data.t
    beta = prior.beta + data.failures
    if not prior.has_atoms:
        return PriorSpec(alpha, beta)

    m0 = prior.mass_at_zero if data.t == 0 else 0.0
    m1 = prior.mass_at_one if data.all_successes else 0.0
    if m0 == 0.0 and m1 == 0.0:
        if prior.continuous_weight == 0.0:
            raise NoUpdateError("the observed data have zero probability under this prior")
        return PriorSpec(alpha, beta)
    if prior.continuous_weight == 0.0:
        total = m0 + m1
        return PriorSpec(alpha, beta, m0 / total, m1 / total, 0.0)

    exact = data.n <= EXACT_WEIGHT_LIMIT
    mc = _continuous_marginal(prior.alpha, prior.beta, data, exact)
    if exact:
        m0, m1, wc = Fraction(m0), Fraction(m1), Fraction(prior.continuous_weight)
    else:
        wc = prior.continuous_weight
    mc = wc * mc
    total = m0 + m1 + mc
    return PriorSpec(alpha, beta, float(m0 / total), float(m1 / total), float(mc / total))


def normalize(prior: PriorSpec) -> MixedBetaDistribution:
    """The probability distribution a (conditioned) prior kernel defines.

    Improper kernels are resolved by their analytic limits; see the module
    docstring.
    """
    if prior.proper:
        w = prior.continuous_weight
        return MixedBetaDistribution(prior.mass_at_zero, prior.mass_at_one, w,
                                     prior.alpha if w > 0.0 else None,
                                     prior.beta if w > 0.0 else None)
    if prior.alpha == 0.0 and prior.beta == 0.0:
        raise NoUpdateError("Haldane Beta(0, 0) kernel: no update possible without a success "
                            "and a failure, or at least one observation")
    if prior.beta == 0.0:
        return MixedBetaDistribution.point_mass(1)
    return MixedBetaDistribution.point_mass(0)


def posterior_update(prior: PriorSpec, data: EvidenceData) -> MixedBetaDistribution:
    """Posterior of theta given ``data`` (Bayes-Laplace rule)."""
    if prior.alpha == 0.0 and prior.beta == 0.0 and data.n == 0:
        raise NoUpdateError("Haldane prior with n = 0: no update possible")
    return normalize(condition(prior, data))


def mass_at_one(dist: MixedBetaDistribution) -> float:
    return dist.p1


def mass_at_zero(dist: MixedBetaDistribution) -> float:
    return dist.p0


@dataclass(frozen=True)
class DensityGrid:
    theta: np.ndarray
    density: np.ndarray
    atoms: tuple[tuple[float, float], ...]

    def records(self) -> list[dict]:
        rows = [{"kind": "density", "theta": float(x), "value": float(y)}
                for x, y in zip(self.theta, self.density)]
        rows += [{"kind": "atom", "theta": x, "value": m} for x, m in self.atoms]
        return rows


def density_grid(dist: MixedBetaDistribution, points: int) -> DensityGrid:
    """Continuous density on ``points`` evenly spaced interior points, plus atoms."""
    if points < 2:
        raise DomainError("density grid needs at least 2 points")
    atoms = tuple((float(x), m) for x, m in ((0.0, dist.p0), (1.0, dist.p1)) if m > 0.0)
    if dist.w == 0.0:
        return DensityGrid(np.empty(0), np.empty(0), atoms)
    theta = np.arange(1, points + 1) / (points + 1)
    density = np.array([dist.continuous_pdf(float(x)) for x in theta])
    return DensityGrid(theta, density, atoms)
