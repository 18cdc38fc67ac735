import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sunrise.confidence import (
    ConfidenceInterval,
    PriorNotIdentifiableError,
    PValueKind,
    confidence_distribution,
    confidence_interval,
    induced_prior,
    mixed_quantile,
    p_value,
)
from sunrise.distributions import DomainError, EvidenceData, MixedBetaDistribution, PriorSpec, posterior_update
from sunrise.numerics import beta_pdf, regularized_incomplete_beta

RIGHT, LEFT, MID = PValueKind.RIGHT, PValueKind.LEFT, PValueKind.MID
MATCHING_PRIOR = {RIGHT: PriorSpec.induced_right(), LEFT: PriorSpec.induced_left(),
                  MID: PriorSpec.jeffreys_continuous()}


def test_kind_parsing():
    assert PValueKind.parse("right_side") is RIGHT
    assert PValueKind.parse("mid-p") is MID
    assert PValueKind.parse("left") is LEFT
    with pytest.raises(DomainError):
        PValueKind.parse("two-sided")


def test_p_value_examples():
    for th in np.linspace(0, 1, 11):
        assert p_value(RIGHT, EvidenceData(8, 0), th) == 1.0
    assert p_value(RIGHT, EvidenceData(5, 3), 0.4) == pytest.approx(0.31744, abs=1e-15)
    assert p_value(MID, EvidenceData(1, 1), 0.5) == pytest.approx(0.25, abs=1e-15)
    # left tail P(T <= 3 | 0.4), n = 5: 1 - P(T >= 4)
    assert p_value(LEFT, EvidenceData(5, 3), 0.4) == pytest.approx(1 - (5 * 0.0256 * 0.6 + 0.01024), abs=1e-15)


@pytest.mark.parametrize("n, t", [(1, 0), (1, 1), (6, 3), (20, 0), (20, 20), (20, 13)])
def test_p_value_monotone(n, t):
    grid = np.linspace(0, 1, 101)
    for kind, sign in ((RIGHT, 1), (MID, 1), (LEFT, -1)):
        values = [sign * p_value(kind, EvidenceData(n, t), th) for th in grid]
        assert all(a <= b + 1e-14 for a, b in zip(values, values[1:]))


def test_confidence_distribution_examples():
    assert confidence_distribution(RIGHT, EvidenceData(10, 10)) == MixedBetaDistribution.beta(10, 1)
    assert confidence_distribution(LEFT, EvidenceData(10, 10)) == MixedBetaDistribution.point_mass(1)
    assert confidence_distribution(RIGHT, EvidenceData(7, 0)) == MixedBetaDistribution.point_mass(0)
    assert confidence_distribution(MID, EvidenceData(4, 2)) == MixedBetaDistribution.beta(2.5, 2.5)
    assert confidence_distribution(MID, EvidenceData(4, 4)) == MixedBetaDistribution.beta(4.5, 0.5)
    with pytest.raises(DomainError):
        confidence_distribution(RIGHT, EvidenceData(0, 0))


@pytest.mark.parametrize("n", [1, 2, 7, 20])
def test_derivative_identity(n):
    h = 1e-6
    grid = np.linspace(0.05, 0.95, 21)
    for t in range(1, n + 1):
        dist = confidence_distribution(RIGHT, EvidenceData(n, t))
        for th in grid:
            deriv = (p_value(RIGHT, EvidenceData(n, t), th + h) - p_value(RIGHT, EvidenceData(n, t), th - h)) / (2 * h)
            assert deriv == pytest.approx(beta_pdf(th, dist.a, dist.b), abs=1e-4)


@pytest.mark.parametrize("n", [1, 3, 12])
def test_cdf_is_the_p_value(n):
    for t in range(n + 1):
        dist = confidence_distribution(RIGHT, EvidenceData(n, t))
        for th in (0.1, 0.5, 0.8):
            assert dist.cdf(th) == pytest.approx(p_value(RIGHT, EvidenceData(n, t), th), abs=1e-12)


@pytest.mark.parametrize("kind", [RIGHT, LEFT, MID])
def test_posterior_equivalence(kind):
    for n in range(1, 31):
        for t in range(n + 1):
            d = EvidenceData(n, t)
            assert confidence_distribution(kind, d) == posterior_update(MATCHING_PRIOR[kind], d)


@given(st.integers(1, 60), st.data())
def test_transform_duality(n, data):
    t = data.draw(st.integers(0, n))
    left = confidence_distribution(LEFT, EvidenceData(n, t))
    assert left == confidence_distribution(RIGHT, EvidenceData(n, n - t)).reflect()


@pytest.mark.parametrize("n", range(1, 101))
def test_oracle_confidence(n):
    assert confidence_distribution(LEFT, EvidenceData.successes(n)).p1 == 1.0


def test_induced_prior_examples():
    d = EvidenceData(6, 3)
    assert induced_prior(RIGHT, d) == PriorSpec(0.0, 1.0)
    assert induced_prior(LEFT, d) == PriorSpec(1.0, 0.0)
    assert induced_prior(MID, d) == PriorSpec(0.5, 0.5)


@pytest.mark.parametrize("kind, expected", [(RIGHT, (0.0, 1.0)), (LEFT, (1.0, 0.0)), (MID, (0.5, 0.5))])
def test_induced_prior_independent_of_data(kind, expected):
    seen = set()
    for n in range(1, 31):
        for t in range(n + 1):
            try:
                prior = induced_prior(kind, EvidenceData(n, t))
            except PriorNotIdentifiableError:
                assert (kind, t) in ((RIGHT, 0), (LEFT, n))
                continue
            seen.add((prior.alpha, prior.beta))
    assert seen == {expected}


def test_induced_prior_from_atom_rejected():
    with pytest.raises(PriorNotIdentifiableError, match="not identifiable"):
        induced_prior(LEFT, EvidenceData(5, 5))


def test_interval_examples():
    ci = confidence_interval(MixedBetaDistribution.point_mass(1), 1.0)
    assert ci == ConfidenceInterval(1.0, 1.0, 1.0, 1.0)
    ci = confidence_interval(MixedBetaDistribution.beta(1, 1), 0.9)
    assert (ci.lower, ci.upper) == pytest.approx((0.05, 0.95), abs=1e-10)
    assert not ci.is_degenerate


def test_interval_for_right_side_n20_t17():
    dist = confidence_distribution(RIGHT, EvidenceData(20, 17))
    ci = confidence_interval(dist, 0.95)
    # lower/upper are the 2.5% and 97.5% points of Beta(17, 4)
    assert regularized_incomplete_beta(ci.lower, 17, 4) == pytest.approx(0.025, abs=1e-10)
    assert regularized_incomplete_beta(ci.upper, 17, 4) == pytest.approx(0.975, abs=1e-10)
    # frozen from the inversion above, cross-checked with scipy.stats.beta.ppf
    assert ci.lower == pytest.approx(0.6210731734549881, abs=1e-9)
    assert ci.upper == pytest.approx(0.9426660029498635, abs=1e-9)


def test_interval_against_scipy():
    stats = pytest.importorskip("scipy.stats")
    for a, b in [(1.0, 9.0), (3.5, 0.5), (40.0, 60.0), (0.5, 0.5)]:
        ci = confidence_interval(MixedBetaDistribution.beta(a, b), 0.9)
        assert ci.lower == pytest.approx(stats.beta.ppf(0.05, a, b), abs=1e-10)
        assert ci.upper == pytest.approx(stats.beta.ppf(0.95, a, b), abs=1e-10)


def test_interval_with_atoms():
    dist = MixedBetaDistribution(0.0, 0.6, 0.4, 2.0, 1.0)
    assert confidence_interval(dist, 0.6).degenerate_point == 1.0  # tie goes to the atom
    ci = confidence_interval(dist, 0.9)
    assert ci.upper == 1.0 and 0 < ci.lower < 1
    assert mixed_quantile(dist, 0.05) == pytest.approx(np.sqrt(0.05 / 0.4), abs=1e-10)
    assert mixed_quantile(dist, 0.5) == 1.0
    dist0 = MixedBetaDistribution(0.3, 0.0, 0.7, 1.0, 1.0)
    assert mixed_quantile(dist0, 0.2) == 0.0
    assert confidence_interval(dist0, 0.3).degenerate_point == 0.0
    assert confidence_interval(MixedBetaDistribution.point_mass(0), 0.5).degenerate_point == 0.0


def test_interval_level_bounds():
    with pytest.raises(DomainError):
        confidence_interval(MixedBetaDistribution.beta(2, 2), 0.0)
    with pytest.raises(DomainError):
        confidence_interval(MixedBetaDistribution.beta(2, 2), 1.5)
    ci = confidence_interval(MixedBetaDistribution.beta(2, 2), 1.0)
    assert (ci.lower, ci.upper) == (0.0, 1.0)


def test_interval_invariants():
    with pytest.raises(DomainError):
        ConfidenceInterval(0.6, 0.4, 0.9)
    with pytest.raises(DomainError):
        ConfidenceInterval(0.4, 0.4, 0.9)
    assert ConfidenceInterval.point(1.0, 1.0).contains(1.0)
    assert not ConfidenceInterval.point(1.0, 1.0).contains(0.999999)


@given(st.integers(1, 40), st.data(), st.floats(0.5, 0.99))
@settings(max_examples=100, deadline=None)
def test_intervals_nested_in_level(n, data, level):
    t = data.draw(st.integers(0, n))
    dist = confidence_distribution(MID, EvidenceData(n, t))
    narrow = confidence_interval(dist, level * 0.9)
    wide = confidence_interval(dist, level)
    assert wide.lower <= narrow.lower + 1e-12 and narrow.upper <= wide.upper + 1e-12
