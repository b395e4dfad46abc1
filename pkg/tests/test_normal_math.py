# 3rd-party
import numpy as np
import pytest

# Local
from summstat.core.errors import DomainError, InfinityError
from summstat.core.normal_math import Probability, pdf, cdf, log_cdf, quantile
from summstat.core.order_stats import integrate


def test_pdf_values():
    assert pdf(0.0) == pytest.approx(0.3989422804, abs=1e-10)
    assert pdf(1.0) == pytest.approx(0.2419707245, abs=1e-10)
    assert pdf(2.5) == pdf(-2.5)


def test_pdf_rejects_non_finite():
    with pytest.raises(DomainError):
        pdf(float('inf'))
    with pytest.raises(DomainError):
        pdf(float('nan'))


def test_cdf_values():
    assert cdf(0.0) == 0.5
    assert cdf(3.0) == pytest.approx(0.9986501020, abs=1e-10)
    assert cdf(-3.0) == pytest.approx(0.0013498980, abs=1e-10)
    assert cdf(float('inf')) == 1.0
    assert cdf(float('-inf')) == 0.0
    assert isinstance(cdf(1.0), Probability)


def test_cdf_symmetry_identity():
    z = np.linspace(-9, 9, 361)
    assert np.max(np.abs(cdf(z) + cdf(-z) - 1.0)) < 1e-14


def test_cdf_lower_tail_is_relatively_accurate():
    # Mills-ratio continued fraction beyond the erfc range
    assert cdf(-10.0) == pytest.approx(7.619853024160527e-24, rel=1e-10)
    assert cdf(-6.5) == pytest.approx(4.016000583859118e-11, rel=1e-10)


def test_cdf_rejects_nan():
    with pytest.raises(DomainError):
        cdf(float('nan'))


def test_cdf_monotone():
    z = np.linspace(-8, 6, 2801)
    assert np.all(np.diff(cdf(z)) > 0)
    z = np.linspace(-8, 8, 3201)
    assert np.all(np.diff(cdf(z)) >= 0)


def test_log_cdf():
    z = np.linspace(-5, 5, 101)
    assert np.allclose(log_cdf(z), np.log(cdf(z)), rtol=1e-12, atol=1e-15)
    # Far below where cdf underflows
    assert log_cdf(-40.0) == pytest.approx(-804.60844, abs=1e-4)
    assert np.isfinite(log_cdf(-300.0))
    assert log_cdf(10.0) == pytest.approx(-7.619853024160527e-24, rel=1e-8)


def test_quantile_values():
    assert quantile(0.5) == 0.0
    assert quantile(0.75) == pytest.approx(0.6744897502, abs=1e-9)
    assert quantile(0.9986501) == pytest.approx(3.0, abs=1e-3)
    assert 2 * quantile(0.75) == pytest.approx(1.34898, abs=1e-5)


def test_quantile_errors():
    with pytest.raises(InfinityError):
        quantile(0.0)
    with pytest.raises(InfinityError):
        quantile(1.0)
    with pytest.raises(DomainError):
        quantile(1.5)
    with pytest.raises(DomainError):
        quantile(-0.1)
    with pytest.raises(DomainError):
        quantile(float('nan'))


def test_probability_bounds():
    assert Probability(0.25).value == 0.25
    with pytest.raises(DomainError):
        Probability(1.2)
    with pytest.raises(DomainError):
        Probability(-1e-9)


def test_quantile_round_trip():
    rng = np.random.default_rng(2014)
    lower = 10.0 ** rng.uniform(-10, np.log10(0.5), 2000)
    p = np.concatenate([lower, 1.0 - lower, rng.uniform(1e-10, 1 - 1e-10, 2000)])
    assert np.max(np.abs(cdf(quantile(p)) - p)) <= 1e-9


def test_quantile_monotone_and_symmetric():
    # Dyadic grid, so 1 - p is exact
    p = np.arange(1, 2 ** 16) / 2.0 ** 16
    q = quantile(p)
    assert np.all(np.diff(q) > 0)
    assert np.max(np.abs(quantile(1.0 - p) + q)) <= 1e-12


def test_quantile_extreme_tail():
    assert cdf(quantile(1e-12)) == pytest.approx(1e-12, rel=1e-9)
    assert quantile(1e-300) < -37


def test_pdf_integrates_to_one():
    result = integrate(pdf, -10.0, 10.0, tol=1e-12)
    assert result.value == pytest.approx(1.0, abs=1e-10)
