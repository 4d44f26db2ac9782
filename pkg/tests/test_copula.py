import math

import numpy as np
import pytest
from scipy import special, stats

from src.core import BoundaryError, DomainError, CopulaKind, CopulaModel
from src.manager import copula


def test_identity_correlation():
    rho = copula.make_correlation(np.eye(3))
    assert rho.logdet == 0.0
    assert not rho.repaired


def test_two_by_two_logdet():
    rho = copula.make_correlation([[1.0, 0.4], [0.4, 1.0]])
    assert rho.logdet == pytest.approx(math.log(0.84), abs=1e-12)
    assert rho.logdet == pytest.approx(-0.17435, abs=1e-5)


def test_repair_of_singular_matrix():
    off = 1.0 + 1e-12
    rho = copula.make_correlation([[1.0, off], [off, 1.0]])
    assert rho.repaired
    assert rho.entries[0, 1] < 1.0
    np.testing.assert_allclose(np.diag(rho.entries), 1.0)
    np.testing.assert_allclose(rho.chol @ rho.chol.T, rho.entries, atol=1e-12)


def test_repair_of_indefinite_matrix():
    entries = np.array([[1.0, 0.9, -0.9], [0.9, 1.0, 0.9], [-0.9, 0.9, 1.0]])
    rho = copula.make_correlation(entries)
    assert rho.repaired
    assert np.all(np.linalg.eigvalsh(rho.entries) > 0)


@pytest.mark.parametrize(
    "entries",
    [
        np.ones((2, 3)),
        [[1.0, 0.3], [0.2, 1.0]],
        [[2.0, 0.0], [0.0, 1.0]],
        [[1.0, np.nan], [np.nan, 1.0]],
    ],
)
def test_make_correlation_rejects_invalid(entries):
    with pytest.raises(DomainError):
        copula.make_correlation(entries)


def test_gaussian_identity_is_zero(rng):
    u = rng.uniform(0.001, 0.999, size=(50, 4))
    np.testing.assert_array_equal(copula.gaussian_copula_logdensity(u, copula.make_correlation(np.eye(4))), 0.0)


def test_gaussian_center_value():
    rho = copula.exchangeable(2, 0.4)
    assert copula.gaussian_copula_logdensity([0.5, 0.5], rho) == pytest.approx(0.087176, abs=1e-6)


def test_gaussian_matches_bivariate_ratio():
    rho = copula.exchangeable(2, 0.5)
    zeta = special.ndtri([0.8, 0.3])
    oracle = stats.multivariate_normal(mean=[0, 0], cov=rho.entries).logpdf(zeta) - stats.norm.logpdf(zeta).sum()
    assert copula.gaussian_copula_logdensity([0.8, 0.3], rho) == pytest.approx(oracle, abs=1e-10)


@pytest.mark.parametrize("u", [[0.0, 0.5], [0.5, 1.0]])
def test_boundary_rejected(u):
    rho = copula.exchangeable(2, 0.4)
    with pytest.raises(BoundaryError):
        copula.gaussian_copula_logdensity(u, rho)
    with pytest.raises(BoundaryError):
        copula.student_t_copula_logdensity(u, rho, 5.0)


@pytest.mark.parametrize("d", [2, 5])
@pytest.mark.parametrize("rho_off", [0.0, 0.4, 0.8])
def test_gaussian_ratio_oracle(rng, d, rho_off):
    rho = copula.exchangeable(d, rho_off)
    u = rng.uniform(0.001, 0.999, size=(100, d))
    zeta = special.ndtri(u)
    oracle = stats.multivariate_normal(mean=np.zeros(d), cov=rho.entries).logpdf(zeta) - stats.norm.logpdf(zeta).sum(axis=1)
    np.testing.assert_allclose(copula.gaussian_copula_logdensity(u, rho), oracle, atol=1e-8)


@pytest.mark.parametrize("d", [2, 5])
@pytest.mark.parametrize("rho_off", [0.0, 0.4, 0.8])
@pytest.mark.parametrize("nu", [3.0, 8.0])
def test_student_t_ratio_oracle(rng, d, rho_off, nu):
    rho = copula.exchangeable(d, rho_off)
    u = rng.uniform(0.001, 0.999, size=(100, d))
    zeta = special.stdtrit(nu, u)
    joint = stats.multivariate_t(loc=np.zeros(d), shape=rho.entries, df=nu).logpdf(zeta)
    oracle = joint - stats.t.logpdf(zeta, nu).sum(axis=1)
    np.testing.assert_allclose(copula.student_t_copula_logdensity(u, rho, nu), oracle, atol=1e-8)


def test_student_t_center_value():
    rho = copula.make_correlation(np.eye(2))
    expected = math.log(math.gamma(3.5) * math.gamma(2.5) / math.gamma(3.0) ** 2)
    assert copula.student_t_copula_logdensity([0.5, 0.5], rho, 5.0) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(0.09936, abs=1e-5)


def test_student_t_single_point_ratio():
    rho = copula.exchangeable(2, 0.4)
    zeta = special.stdtrit(4.0, np.array([0.9, 0.1]))
    oracle = stats.multivariate_t(loc=[0, 0], shape=rho.entries, df=4.0).logpdf(zeta) - stats.t.logpdf(zeta, 4.0).sum()
    assert copula.student_t_copula_logdensity([0.9, 0.1], rho, 4.0) == pytest.approx(oracle, abs=1e-8)


def test_student_t_gaussian_limit(rng):
    rho = copula.make_correlation(np.eye(3))
    u = rng.uniform(0.01, 0.99, size=(20, 3))
    np.testing.assert_allclose(copula.student_t_copula_logdensity(u, rho, 1e6), 0.0, atol=1e-3)


@pytest.mark.parametrize("nu", [2.0, 1.0, -3.0])
def test_student_t_rejects_small_nu(nu):
    with pytest.raises(DomainError):
        copula.student_t_copula_logdensity([0.3, 0.6], copula.exchangeable(2, 0.2), nu)


def test_permutation_equivariance(rng):
    entries = np.array([[1.0, 0.3, -0.2], [0.3, 1.0, 0.5], [-0.2, 0.5, 1.0]])
    perm = [2, 0, 1]
    rho = copula.make_correlation(entries)
    permuted = copula.make_correlation(entries[np.ix_(perm, perm)])
    u = rng.uniform(0.01, 0.99, size=(30, 3))
    np.testing.assert_allclose(
        copula.gaussian_copula_logdensity(u, rho),
        copula.gaussian_copula_logdensity(u[:, perm], permuted),
        atol=1e-12,
    )
    np.testing.assert_allclose(
        copula.student_t_copula_logdensity(u, rho, 6.0),
        copula.student_t_copula_logdensity(u[:, perm], permuted, 6.0),
        atol=1e-12,
    )


@pytest.mark.parametrize("rho_off", [0.0, 0.4, 0.8])
def test_density_normalization(rho_off):
    u = np.random.default_rng(11).uniform(size=(1_000_000, 2))
    rho = copula.exchangeable(2, rho_off)
    assert np.mean(np.exp(copula.gaussian_copula_logdensity(u, rho))) == pytest.approx(1.0, abs=0.01)


@pytest.mark.parametrize("nu", [3.0, 8.0])
@pytest.mark.parametrize("rho_off", [0.0, 0.5])
def test_student_t_density_normalization(rho_off, nu):
    u = np.random.default_rng(12).uniform(size=(1_000_000, 2))
    rho = copula.exchangeable(2, rho_off)
    assert np.mean(np.exp(copula.student_t_copula_logdensity(u, rho, nu))) == pytest.approx(1.0, abs=0.01)


@pytest.mark.parametrize("nu", [3.0, 8.0, 40.0])
def test_single_dimension_is_degenerate(rng, nu):
    rho = copula.make_correlation(np.eye(1))
    u = rng.uniform(0.001, 0.999, size=(200, 1))
    np.testing.assert_allclose(copula.student_t_copula_logdensity(u, rho, nu), 0.0, atol=1e-12)
    np.testing.assert_allclose(copula.gaussian_copula_logdensity(u, rho), 0.0, atol=1e-12)


def test_dimension_mismatch():
    from src.core import DimensionMismatchError

    with pytest.raises(DimensionMismatchError):
        copula.gaussian_copula_logdensity([0.5, 0.5, 0.5], copula.exchangeable(2, 0.1))


def test_independent_sampler_uniform_columns():
    u = copula.sample_gaussian_copula(copula.make_correlation(np.eye(2)), 10_000, seed=3)
    for column in u.T:
        assert stats.kstest(column, "uniform").statistic < 1.63 / math.sqrt(10_000)


def test_sampler_kendall_tau():
    rho = copula.exchangeable(2, 0.9)
    expected = 2 / math.pi * math.asin(0.9)
    u = copula.sample_gaussian_copula(rho, 50_000, seed=5)
    assert stats.kendalltau(u[:, 0], u[:, 1]).statistic == pytest.approx(expected, abs=0.01)
    v = copula.sample_t_copula(rho, 4.0, 50_000, seed=5)
    assert stats.kendalltau(v[:, 0], v[:, 1]).statistic == pytest.approx(expected, abs=0.01)


def test_sampler_determinism():
    model = CopulaModel(CopulaKind.STUDENT_T, copula.exchangeable(3, 0.5), nu=5.0)
    a = copula.sample_copula(model, 100, seed=2**63 + 17)
    b = copula.sample_copula(model, 100, seed=2**63 + 17)
    np.testing.assert_array_equal(a, b)
    assert np.all((a > 0) & (a < 1))
    assert not np.array_equal(a, copula.sample_copula(model, 100, seed=18))
