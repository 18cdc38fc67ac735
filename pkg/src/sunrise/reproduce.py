"""Registry of closed-form claims, each checked against the implementation.

Every claim yields :class:`ReproductionRow` records whose ``passed`` flag
depends only on ``abs_diff <= threshold``.  Aggregated claims report the
worst discrepancy over their grid.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .confidence import PValueKind, confidence_distribution, induced_prior
from .distributions import EvidenceData, PriorSpec, condition, posterior_update
from .numerics import binomial_right_tail, log_beta, regularized_incomplete_beta
from .oracle import coverage_exact, coverage_monte_carlo, exact_acceptance_rate, mc_standard_error
from .prediction import (
    confirmation_measure,
    marginal_likelihood,
    predict_next,
    predict_run,
    prob_general,
    transform_complement,
)

CLOSED_FORM_TOL = 1e-9
PROPERTY_SEED = 20240601
MC_SEED = 12345
MC_REPLICATES = 100_000
MC_GRID = [(theta, n) for theta in (0.2, 0.5, 0.9, 0.99) for n in (10, 30, 100)]


@dataclass(frozen=True)
class ReproductionRow:
    claim_id: str
    paper_location: str
    expected: float | str
    computed: float
    abs_diff: float
    threshold: float
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _row(claim_id, location, expected, computed, threshold=CLOSED_FORM_TOL, formula=None):
    diff = abs(float(computed) - float(expected))
    shown = formula if formula is not None else float(expected)
    return ReproductionRow(claim_id, location, shown, float(computed), diff, threshold,
                           diff <= threshold)


def _worst(claim_id, location, formula, pairs, threshold):
    """Row for the largest |computed - expected| over ``pairs``."""
    worst_diff, worst = -1.0, None
    for expected, computed in pairs:
        diff = abs(float(computed) - float(expected))
        if diff > worst_diff:
            worst_diff, worst = diff, (expected, computed)
    expected, computed = worst
    return ReproductionRow(claim_id, location, formula, float(computed), worst_diff, threshold,
                           worst_diff <= threshold)


def jeffreys_mixture_oracle(n: int, nodes: int = 128) -> float:
    """P(X_{n+1}=1 | T_n=n) by Gauss-Legendre integration of the mixture marginal.

    Independent of the conjugate update: the continuous part's integrals of
    theta^n are computed numerically, the atom contributes its 1/2 directly.
    """
    x, wts = np.polynomial.legendre.leggauss(nodes)
    theta = 0.5 * (x + 1.0)
    wts = 0.5 * wts

    def marginal(k):
        return 0.5 * 1.0 + 0.5 * float(np.dot(wts, theta**k))

    return marginal(n + 1) / marginal(n)


def laplace_claims():
    laplace = PriorSpec.laplace()
    n = 2_190_000
    data = EvidenceData.successes(n)
    yield _row("laplace_predictive_2190000", "main text, Laplace solution", 2190001 / 2190002,
               predict_next(laplace, data), 1e-12, "2190001/2190002")
    yield _row("laplace_predictive_2190000_rounded", "main text, Laplace solution", 0.9999995,
               round(predict_next(laplace, data), 7), 0.0, "0.9999995 (7 d.p.)")
    for k in (1, 10, 10_000):
        yield _row(f"broad_zero_n{k}", "main text, P(G|T_n=n)=0 for all n", 0.0,
                   prob_general(laplace, EvidenceData.successes(k)), 0.0)
    yield _worst("laplace_marginal", "supplement, P(x)=b(t+1,n-t+1)", "b(t+1, n-t+1)",
                 ((math.exp(log_beta(t + 1, n - t + 1)), marginal_likelihood(laplace, EvidenceData(n, t)))
                  for n in range(0, 31) for t in range(n + 1)), 1e-12)
    yield _worst("laplace_run_m_steps", "supplement, P(T_{n+m}=n+m|T_n=n)", "(n+1)/(n+m+1)",
                 (((n + 1) / (n + m + 1), predict_run(laplace, EvidenceData.successes(n), m))
                  for n in range(1, 51) for m in range(0, 51)), 1e-12)
    yield _worst("laplace_increment", "supplement, increment of P(E)", "1/((n+1)(n+2))",
                 ((1 / ((n + 1) * (n + 2)),
                   predict_next(laplace, EvidenceData.successes(n))
                   - predict_next(laplace, EvidenceData.successes(n - 1)))
                  for n in range(1, 101)), 1e-12)


def jeffreys_claims():
    jm = PriorSpec.jeffreys_mixture()
    yield _row("jeffreys_prior_P(G)", "main text, P(G)=1/2", 0.5, jm.mass_at_one, 0.0)
    for k, label in ((1, "2/3"), (2, "3/4"), (3, "4/5")):
        yield _row(f"jeffreys_chain_k{k}", "main text, P(G|T_k=k) chain", (k + 1) / (k + 2),
                   prob_general(jm, EvidenceData.successes(k)), 0.0, label)
    values = [prob_general(jm, EvidenceData.successes(k)) for k in range(0, 101)]
    yield _worst("jeffreys_chain_1_100", "main text, P(G|T_n=n)=(n+1)/(n+2)", "(k+1)/(k+2), k=1..100",
                 (((k + 1) / (k + 2), values[k]) for k in range(1, 101)), 0.0)
    increasing = all(a < b for a, b in zip(values, values[1:]))
    yield _row("jeffreys_chain_strictly_increasing", "main text, 1/2<2/3<3/4<...", 1.0,
               1.0 if increasing else 0.0, 0.0, "1 (strictly increasing, k=0..100)")
    yield _worst("jeffreys_predictive_oracle", "main text, P(E|T_n=n)",
                 "quadrature oracle = (n+1)(n+3)/(n+2)^2",
                 (((n + 1) * (n + 3) / (n + 2) ** 2, jeffreys_mixture_oracle(n)) for n in range(1, 101)),
                 1e-12)
    yield _worst("jeffreys_predictive", "main text, P(E|T_n=n)", "(n+1)(n+3)/(n+2)^2",
                 (((n + 1) * (n + 3) / (n + 2) ** 2, predict_next(jm, EvidenceData.successes(n)))
                  for n in range(1, 101)), 1e-12)
    yield _worst("jeffreys_marginal", "supplement, P(T_n=n)=0.5{1+1/(n+1)}", "0.5(1+1/(n+1))",
                 ((0.5 * (1 + 1 / (n + 1)), marginal_likelihood(jm, EvidenceData.successes(n)))
                  for n in range(0, 101)), 1e-12)
    yield _worst("jeffreys_run_m_steps", "supplement, Jeffreys m-step run",
                 "(n+1)(n+m+2)/((n+2)(n+m+1))",
                 (((n + 1) * (n + m + 2) / ((n + 2) * (n + m + 1)),
                   predict_run(jm, EvidenceData.successes(n), m))
                  for n in range(1, 31) for m in range(0, 31)), 1e-12)
    yield _worst("carnap_jeffreys", "main text, C(G,T_n=n)=n/{2(n+2)}", "n/(2(n+2))",
                 ((n / (2 * (n + 2)), confirmation_measure(jm, EvidenceData.successes(n)))
                  for n in range(0, 101)), 1e-12)
    yield _row("carnap_laplace", "main text, P(G)=0 gives P(G|T_n=n)=0", 0.0,
               confirmation_measure(PriorSpec.laplace(), EvidenceData.successes(50)), 0.0)


def confidence_claims():
    left = PriorSpec.induced_left()
    right = PriorSpec.induced_right()
    yield _worst("confidence_oracle_atom", "supplement, point mass at 1 given t=n", "p1 = 1, n=1..100",
                 ((1.0, confidence_distribution(PValueKind.LEFT, EvidenceData.successes(n)).p1)
                  for n in range(1, 101)), 0.0)
    yield _worst("confidence_oracle_general", "supplement, P(G|T_n=n)=1 under Beta(1,0)",
                 "P(G|T_n=n) = 1, n=1..100",
                 ((1.0, prob_general(left, EvidenceData.successes(n))) for n in range(1, 101)), 0.0)
    yield _worst("confidence_right_point_mass_zero", "supplement, C(0,theta)=1", "p0 = 1 at t=0",
                 ((1.0, confidence_distribution(PValueKind.RIGHT, EvidenceData(n, 0)).p0)
                  for n in range(1, 101)), 0.0)
    yield _worst("right_pvalue_t0", "supplement, C(0,theta)=1", "1 for all theta",
                 ((1.0, binomial_right_tail(n, 0, th)) for n in (1, 5, 50) for th in np.linspace(0, 1, 11)),
                 0.0)
    yield _worst("induced_right_run", "supplement, n/(n+m) under Beta(0,1)", "n/(n+m)",
                 ((n / (n + m), predict_run(right, EvidenceData.successes(n), m))
                  for n in range(1, 51) for m in range(0, 51)), 1e-12)
    yield _worst("induced_right_marginal", "supplement, P(T_n=n)=1/n under Beta(0,1)", "1/n",
                 ((1 / n, marginal_likelihood(right, EvidenceData.successes(n))) for n in range(1, 101)),
                 1e-12)
    yield _worst("transformed_general", "supplement, P(G|T*_n=0)=1",
                 "posterior mass at theta*=0 is 1",
                 ((1.0, posterior_update(right, transform_complement(EvidenceData.successes(n))).p0)
                  for n in range(1, 101)), 0.0)
    yield _worst("limit_a_to_zero", "supplement, lim b(n+2,a)/b(n+1,a)=1", "1 (a=1e-12)",
                 ((1.0, math.exp(log_beta(n + 2, 1e-12) - log_beta(n + 1, 1e-12))) for n in range(1, 101)),
                 1e-9)
    yield _worst("haldane_predictive", "supplement, Haldane P(X_{n+1}=1|T_n=n)=1", "1",
                 ((1.0, predict_next(PriorSpec.haldane(), EvidenceData.successes(n))) for n in range(1, 101)),
                 0.0)
    yield _worst("haldane_predictive_failure", "supplement, Haldane P(X_{n+1}=0|T_n=0)=1", "1",
                 ((1.0, 1.0 - predict_next(PriorSpec.haldane(), EvidenceData(n, 0))) for n in range(1, 101)),
                 0.0)
    expected = {PValueKind.RIGHT: (0.0, 1.0), PValueKind.LEFT: (1.0, 0.0), PValueKind.MID: (0.5, 0.5)}
    for kind, (a0, b0) in expected.items():
        pairs = []
        for n in range(1, 31):
            for t in range(n + 1):
                dist = confidence_distribution(kind, EvidenceData(n, t))
                if dist.atom is not None:
                    continue
                prior = induced_prior(kind, EvidenceData(n, t))
                pairs.append((0.0, max(abs(prior.alpha - a0), abs(prior.beta - b0))))
        yield _worst(f"induced_prior_{kind.value}", "supplement, c0 = P(theta|t)/L(theta)",
                     f"Beta({a0:g},{b0:g}) for all admissible (n,t), n<=30", pairs, 0.0)
    grid = np.linspace(0.0, 1.0, 101)
    yield _worst("tail_identity", "supplement, conservative right-side P-value",
                 "P(T>=t) = I_theta(t, n-t+1), n<=50",
                 ((regularized_incomplete_beta(th, t, n - t + 1), binomial_right_tail(n, t, th))
                  for n in range(1, 51) for t in range(1, n + 1) for th in grid), 1e-10)
    alphas = (0.1, 0.5, 1.0, 2.0, 5.0)
    yield _worst("general_beta_predictive", "supplement, (n+alpha)/(n+alpha+beta)",
                 "(n+a)/(n+a+b), 5x5 grid, n<=50",
                 (((n + a) / (n + a + b), predict_next(PriorSpec.beta_prior(a, b), EvidenceData.successes(n)))
                  for a in alphas for b in alphas for n in range(0, 51)), 1e-12)


def oracle_claims():
    pairs = []
    for theta in (Fraction(1, 2), Fraction(9, 10), Fraction(99, 100)):
        for n in (10, 100):
            pairs.append((theta**n, exact_acceptance_rate(theta, n, "two_way")))
    yield _worst("oracle_accept_rate", "supplement, consistent whether theta=1 or not",
                 "theta^n exactly, theta in {0.5,0.9,0.99}, n in {10,100}",
                 ((0.0, float(abs(e - c))) for e, c in pairs), 0.0)
    yield _worst("oracle_accept_rate_theta1", "supplement, sure confidence when theta=1", "1",
                 ((1.0, coverage_exact(1.0, n, "two_way").accept_h1_rate) for n in (1, 10, 100)), 0.0)
    yield _worst("oracle_coverage_theta1", "main text, 100% interval {1}", "1",
                 ((1.0, coverage_exact(1.0, n, "two_way").coverage) for n in (1, 10, 100)), 0.0)


def property_discrepancies(cases: int = 200, seed: int = PROPERTY_SEED):
    """Worst violations of sequential coherence and transform duality on random instances."""
    rng = random.Random(seed)
    priors = [PriorSpec.laplace(), PriorSpec.jeffreys_continuous(), PriorSpec.jeffreys_mixture(),
              PriorSpec.induced_left(), PriorSpec.induced_right(), PriorSpec.haldane(),
              PriorSpec.beta_prior(2.0, 3.0), PriorSpec(1.5, 0.5, 0.25, 0.25, 0.5)]
    coherence, duality = 0.0, 0.0
    for _ in range(cases):
        prior = rng.choice(priors)
        n1, n2 = rng.randint(0, 15), rng.randint(0, 15)
        # bias toward all-success / all-failure, where the atoms matter
        t1 = rng.choice([0, n1, rng.randint(0, n1)])
        t2 = rng.choice([0, n2, rng.randint(0, n2)])
        d1, d2 = EvidenceData(n1, t1), EvidenceData(n2, t2)
        if prior.alpha == prior.beta == 0.0 and n1 + n2 == 0:
            continue
        once = posterior_update(prior, d1 + d2)
        twice = posterior_update(condition(prior, d1), d2)
        coherence = max(coherence, abs(once.p0 - twice.p0), abs(once.p1 - twice.p1), abs(once.w - twice.w),
                        abs((once.a or 0) - (twice.a or 0)), abs((once.b or 0) - (twice.b or 0)))
        data = d1 + d2
        mirrored = posterior_update(prior.reflect(), transform_complement(data)).reflect()
        duality = max(duality, abs(once.p0 - mirrored.p0), abs(once.p1 - mirrored.p1),
                      abs(once.w - mirrored.w), abs((once.a or 0) - (mirrored.a or 0)),
                      abs((once.b or 0) - (mirrored.b or 0)))
    return coherence, duality


def property_claims():
    coherence, duality = property_discrepancies()
    yield _row("sequential_coherence", "supplement, posterior update", 0.0, coherence, 1e-12,
               "update(d1) then update(d2) = update(d1+d2), 200 cases")
    yield _row("transform_duality", "supplement, Y_i = 1 - X_i", 0.0, duality, 1e-12,
               "theta->1-theta with reflected prior and data, 200 cases")


def monte_carlo_claims():
    start = time.perf_counter()
    worst_z = 0.0
    for i, (theta, n) in enumerate(MC_GRID):
        exact = coverage_exact(theta, n, "two_way").coverage
        mc = coverage_monte_carlo(theta, n, "two_way", 0.95, MC_REPLICATES, MC_SEED + i).coverage
        se = mc_standard_error(exact, MC_REPLICATES)
        z = abs(mc - exact) / se if se > 0 else (0.0 if mc == exact else math.inf)
        worst_z = max(worst_z, z)
    elapsed = time.perf_counter() - start
    yield _row("mc_vs_exact_coverage", "main text, long-run rate of the coverage", 0.0, worst_z, 4.0,
               "|MC - exact| / SE over 12 cells, 1e5 replicates")
    yield _row("mc_runtime_seconds", "desk scale", 0.0, elapsed, 60.0, "< 60 s")


CLAIM_GROUPS = (laplace_claims, jeffreys_claims, confidence_claims, oracle_claims, property_claims,
                monte_carlo_claims)


def run_all() -> list[ReproductionRow]:
    rows = []
    for group in CLAIM_GROUPS:
        rows.extend(group())
    return rows
