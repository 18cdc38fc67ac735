"""Oracle hypothesis tests and their frequentist verification.

A procedure maps observed data to a decision (theta = 1, theta = 0 or
theta interior) together with an interval.  Coverage is computed either by
exact enumeration over all t in 0..n or by seeded Monte Carlo.

Registered procedures:

``two_way``
    Beta(1, 0) induced prior. All successes accept theta = 1 with interval
    {1}; anything else accepts theta != 1 with an interval from Beta(t+1, n-t).
``three_way``
    Haldane Beta(0, 0). Adds theta = 0 with interval {0} when t = 0.
``mid_p``
    Mid-P confidence distribution Beta(t+1/2, n-t+1/2); never degenerate.
``laplace_credible``
    Uniform-prior credible interval from Beta(t+1, n-t+1), for comparison.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .confidence import ConfidenceInterval, PValueKind, confidence_distribution, confidence_interval
from .distributions import EvidenceData, MixedBetaDistribution, PriorSpec, posterior_update
from .numerics import DomainError, binomial_pmf

MC_BLOCK_SIZE = 8192
RNG_NAME = "PCG64"


class Hypothesis(enum.Enum):
    THETA_EQUALS_ONE = "theta=1"
    THETA_EQUALS_ZERO = "theta=0"
    THETA_INTERIOR = "theta in (0,1)"


@dataclass(frozen=True)
class OracleDecision:
    accepted: Hypothesis
    confidence_mass: float
    interval: ConfidenceInterval
    dist: MixedBetaDistribution

    def as_dict(self) -> dict:
        return {"accepted": self.accepted.name, "confidence_mass": self.confidence_mass,
                "interval": self.interval.as_dict(), "dist": self.dist.as_dict()}


@dataclass(frozen=True)
class CoverageReport:
    theta_true: float
    n: int
    procedure_name: str
    nominal_level: float
    coverage: float
    accept_h1_rate: float
    method: str
    replicates: int | None = None
    seed: int | None = None

    def as_dict(self) -> dict:
        return asdict(self)


FIELDS = tuple(CoverageReport.__dataclass_fields__)


def _decide(dist: MixedBetaDistribution, level: float) -> OracleDecision:
    if dist.atom == 1:
        return OracleDecision(Hypothesis.THETA_EQUALS_ONE, 1.0, ConfidenceInterval.point(1.0, 1.0), dist)
    if dist.atom == 0:
        return OracleDecision(Hypothesis.THETA_EQUALS_ZERO, 1.0, ConfidenceInterval.point(0.0, 1.0), dist)
    return OracleDecision(Hypothesis.THETA_INTERIOR, dist.w, confidence_interval(dist, level), dist)


def _require_trials(data: EvidenceData) -> None:
    if data.n < 1:
        raise DomainError("oracle tests need n >= 1")


def oracle_test_two_way(data: EvidenceData, level: float) -> OracleDecision:
    """H1: theta = 1 against H2: theta != 1 under the Beta(1, 0) induced prior."""
    _require_trials(data)
    return _decide(posterior_update(PriorSpec.induced_left(), data), level)


def oracle_test_three_way(data: EvidenceData, level: float) -> OracleDecision:
    """theta = 1, theta = 0 or theta in (0, 1) under the Haldane prior."""
    _require_trials(data)
    return _decide(posterior_update(PriorSpec.haldane(), data), level)


def _mid_p(data: EvidenceData, level: float) -> OracleDecision:
    _require_trials(data)
    return _decide(confidence_distribution(PValueKind.MID, data), level)


def _laplace_credible(data: EvidenceData, level: float) -> OracleDecision:
    _require_trials(data)
    return _decide(posterior_update(PriorSpec.laplace(), data), level)


PROCEDURES = {
    "two_way": oracle_test_two_way,
    "three_way": oracle_test_three_way,
    "mid_p": _mid_p,
    "laplace_credible": _laplace_credible,
}


def get_procedure(name: str):
    try:
        return PROCEDURES[name]
    except KeyError:
        raise DomainError(f"unknown procedure {name!r}; choose from {sorted(PROCEDURES)}") from None


@lru_cache(maxsize=256)
def decision_table(procedure: str, n: int, level: float) -> tuple[OracleDecision, ...]:
    """Decision for every possible success count t = 0..n."""
    test = get_procedure(procedure)
    return tuple(test(EvidenceData(n, t), level) for t in range(n + 1))


def _check_inputs(theta_true, n: int, level: float) -> None:
    if not 0 <= theta_true <= 1:
        raise DomainError(f"theta_true must lie in [0, 1], got {theta_true!r}")
    if n < 1:
        raise DomainError("coverage needs n >= 1")
    if not 0.0 < level <= 1.0:
        raise DomainError(f"level must lie in (0, 1], got {level!r}")


def coverage_exact(theta_true, n: int, procedure: str, level: float = 0.95) -> CoverageReport:
    """Coverage and H1-acceptance probability by summing over t = 0..n.

    A :class:`~fractions.Fraction` ``theta_true`` is summed in exact rational
    arithmetic before the final rounding.
    """
    _check_inputs(theta_true, n, level)
    table = decision_table(procedure, n, level)
    exact = isinstance(theta_true, Fraction)
    zero = Fraction(0) if exact else 0.0
    coverage, accept = zero, zero
    for t, decision in enumerate(table):
        p = binomial_pmf(n, t, theta_true)
        if decision.interval.contains(theta_true):
            coverage += p
        if decision.accepted is Hypothesis.THETA_EQUALS_ONE:
            accept += p
    if not exact:
        coverage, accept = min(coverage, 1.0), min(accept, 1.0)
    return CoverageReport(float(theta_true), n, procedure, level, float(coverage), float(accept),
                          "exact_enumeration")


def exact_acceptance_rate(theta_true: Fraction, n: int, procedure: str, level: float = 0.95) -> Fraction:
    """Exact rational probability that ``procedure`` accepts theta = 1."""
    table = decision_table(procedure, n, level)
    return sum((binomial_pmf(n, t, theta_true) for t, d in enumerate(table)
                if d.accepted is Hypothesis.THETA_EQUALS_ONE), Fraction(0))


def block_generator(seed: int, block: int) -> np.random.Generator:
    """Stream for replicate block ``block``, derived from (seed, block) only."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def coverage_monte_carlo(theta_true: float, n: int, procedure: str, level: float,
                         replicates: int, seed: int, workers: int = 1) -> CoverageReport:
    """Empirical coverage over ``replicates`` seeded binomial draws.

    Replicates are split into blocks of :data:`MC_BLOCK_SIZE`; each block
    has its own generator keyed by (seed, block index), so the result does
    not depend on ``workers``.
    """
    _check_inputs(theta_true, n, level)
    if replicates < 1:
        raise DomainError("replicates must be >= 1")
    table = decision_table(procedure, n, level)
    covers = np.array([d.interval.contains(theta_true) for d in table])
    accepts = np.array([d.accepted is Hypothesis.THETA_EQUALS_ONE for d in table])
    theta = float(theta_true)

    def run_block(block: int) -> tuple[int, int]:
        size = min(MC_BLOCK_SIZE, replicates - block * MC_BLOCK_SIZE)
        draws = block_generator(seed, block).binomial(n, theta, size=size)
        return int(covers[draws].sum()), int(accepts[draws].sum())

    blocks = range(math.ceil(replicates / MC_BLOCK_SIZE))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(run_block, blocks))
    else:
        counts = [run_block(b) for b in blocks]
    covered = sum(c for c, _ in counts)
    accepted = sum(a for _, a in counts)
    return CoverageReport(theta, n, procedure, level, covered / replicates, accepted / replicates,
                          "monte_carlo", replicates, seed)


def mc_standard_error(p: float, replicates: int) -> float:
    return math.sqrt(p * (1.0 - p) / replicates)


def consistency_scan(procedure: str, theta_true, n_grid, level: float = 0.95) -> list[CoverageReport]:
    """Exact reports for each n in ``n_grid``."""
    n_grid = list(n_grid)
    if not n_grid:
        raise DomainError("n_grid must be nonempty")
    return [coverage_exact(theta_true, n, procedure, level) for n in n_grid]
