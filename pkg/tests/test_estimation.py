import itertools
import math

import numpy as np
import pytest
from scipy import special

from src.core import (
    BoundaryError,
    DimensionMismatchError,
    TooFewSamplesError,
    CopulaKind,
)
from src.manager import copula, estimation


def brute_force_tau(x, y) -> float:
    score = 0
    for i, j in itertools.combinations(range(len(x)), 2):
        score += np.sign(x[i] - x[j]) * np.sign(y[i] - y[j])
    return score / (len(x) * (len(x) - 1) / 2)


def test_empirical_transform_ranks():
    u = estimation.empirical_transform([[3.0], [1.0], [2.0]], min_samples=1)
    np.testing.assert_allclose(u[:, 0], [0.75, 0.25, 0.5])


def test_empirical_transform_ties():
    u = estimation.empirical_transform([[5.0], [5.0]], min_samples=1)
    np.testing.assert_allclose(u[:, 0], [0.5, 0.5])


def test_empirical_transform_range(rng):
    samples = rng.normal(size=(50, 3))
    u = estimation.empirical_transform(samples)
    assert np.all(u.max(axis=0) == 50 / 51)
    assert np.all(u.min(axis=0) == 1 / 51)
    assert all(len(np.unique(column)) == 50 for column in u.T)


def test_empirical_transform_too_few():
    with pytest.raises(TooFewSamplesError):
        estimation.empirical_transform(np.ones((3, 2)))


def test_eml_single_sample_is_repaired():
    u = np.full((1, 2), special.ndtr(1.0))
    report = estimation.eml_fit_gaussian(u)
    assert report.repaired
    assert report.model.rho.entries[0, 1] < 1.0
    assert report.model.kind is CopulaKind.GAUSSIAN


def test_eml_recovers_exchangeable_rho():
    u = copula.sample_gaussian_copula(copula.exchangeable(5, 0.6), 5000, seed=101)
    report = estimation.eml_fit_gaussian(u)
    off = report.model.rho.entries[~np.eye(5, dtype=bool)]
    np.testing.assert_allclose(off, 0.6, atol=0.05)
    np.testing.assert_allclose(np.diag(report.model.rho.entries), 1.0)


def test_eml_independent_columns():
    u = copula.sample_gaussian_copula(copula.make_correlation(np.eye(4)), 5000, seed=102)
    report = estimation.eml_fit_gaussian(u)
    off = report.model.rho.entries[~np.eye(4, dtype=bool)]
    assert np.all(np.abs(off) < 0.05)


def test_eml_loglik_is_sum_of_densities():
    u = copula.sample_gaussian_copula(copula.exchangeable(3, 0.3), 400, seed=103)
    report = estimation.eml_fit_gaussian(u)
    expected = np.sum(copula.gaussian_copula_logdensity(u, report.model.rho))
    assert report.loglik == pytest.approx(expected, abs=1e-8)


def test_eml_error_shrinks_with_n():
    rho = copula.exchangeable(3, 0.5)
    errors = []
    for n, seed in [(500, 1), (5000, 2), (50_000, 3)]:
        fit = estimation.eml_fit_gaussian(copula.sample_gaussian_copula(rho, n, seed))
        errors.append(np.max(np.abs(fit.model.rho.entries - rho.entries)))
    assert errors[2] < errors[0]


def test_eml_boundary():
    with pytest.raises(BoundaryError):
        estimation.eml_fit_gaussian([[0.0, 0.5], [0.3, 0.4]])


def test_t_loglik_single_sample():
    rho = copula.make_correlation(np.eye(2))
    assert estimation.t_loglik([[0.5, 0.5]], rho, 5.0) == pytest.approx(0.09936, abs=1e-5)


def test_t_loglik_gaussian_limit():
    rho = copula.make_correlation(np.eye(2))
    assert estimation.t_loglik([[0.5, 0.5]] * 4, rho, 1000.0) == pytest.approx(0.0, abs=1e-3)


def test_t_loglik_additivity():
    rho = copula.exchangeable(3, 0.4)
    u = copula.sample_t_copula(rho, 5.0, 200, seed=7)
    total = estimation.t_loglik(u, rho, 5.0)
    parts = estimation.t_loglik(u[:120], rho, 5.0) + estimation.t_loglik(u[120:], rho, 5.0)
    assert total == pytest.approx(parts, abs=1e-8)
    assert total == pytest.approx(float(np.sum(copula.student_t_copula_logdensity(u, rho, 5.0))), abs=1e-8)


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ([1, 2, 3, 4], [1, 2, 3, 4], 1.0),
        ([1, 2, 3, 4], [-1, -2, -3, -4], -1.0),
        ([1, 2, 3], [1, 3, 2], 1 / 3),
    ],
)
def test_kendall_tau_examples(x, y, expected):
    assert estimation.kendall_tau(x, y) == pytest.approx(expected)


def test_kendall_tau_length_mismatch():
    with pytest.raises(DimensionMismatchError):
        estimation.kendall_tau([1, 2, 3], [1, 2])


def test_kendall_tau_brute_force(rng):
    for n in (2, 5, 17, 50):
        x = rng.integers(0, 6, size=n).astype(float)
        y = rng.integers(0, 6, size=n).astype(float)
        assert estimation.kendall_tau(x, y) == pytest.approx(brute_force_tau(x, y), abs=1e-12)


def test_kendall_tau_all_ties():
    assert estimation.kendall_tau([1, 1, 1], [1, 2, 3]) == 0.0


def test_kendall_tau_monotone_invariance(rng):
    x = rng.normal(size=40)
    y = x + rng.normal(size=40)
    assert estimation.kendall_tau(np.exp(x), y ** 3) == estimation.kendall_tau(x, y)


def test_tau_map_agrees_with_eml():
    u = copula.sample_gaussian_copula(copula.exchangeable(2, 0.5), 10_000, seed=9)
    tau = estimation.kendall_tau(u[:, 0], u[:, 1])
    eml = estimation.eml_fit_gaussian(u).model.rho.entries[0, 1]
    assert math.sin(math.pi * tau / 2) == pytest.approx(eml, abs=0.05)


def test_cml_fit_t_recovers_parameters():
    rho = copula.exchangeable(4, 0.5)
    u = copula.sample_t_copula(rho, 4.0, 5000, seed=104)
    samples = np.column_stack([special.ndtri(u[:, 0]), np.exp(u[:, 1]), u[:, 2] ** 2, -np.log(u[:, 3])])
    samples[:, 3] = -samples[:, 3]
    report = estimation.cml_fit_t(samples)
    assert report.model.kind is CopulaKind.STUDENT_T
    assert 3.2 <= report.model.nu <= 4.8
    off = report.model.rho.entries[~np.eye(4, dtype=bool)]
    np.testing.assert_allclose(off, 0.5, atol=0.06)
    assert report.converged
    assert report.iterations > 0
    pseudo = estimation.empirical_transform(samples)
    assert report.loglik == pytest.approx(estimation.t_loglik(pseudo, report.model.rho, report.model.nu), abs=1e-8)


def test_cml_fit_t_independent_columns(rng):
    report = estimation.cml_fit_t(rng.uniform(size=(8000, 3)))
    off = report.model.rho.entries[~np.eye(3, dtype=bool)]
    assert np.all(np.abs(off) < 0.05)


def test_cml_fit_t_comonotone_pair(rng):
    x = rng.normal(size=60)
    report = estimation.cml_fit_t(np.column_stack([x, x]))
    assert report.repaired
    assert report.model.rho.entries[0, 1] < 1.0


def test_cml_fit_gaussian(rng):
    u = copula.sample_gaussian_copula(copula.exchangeable(3, 0.4), 3000, seed=12)
    report = estimation.cml_fit_gaussian(np.exp(u * 3))
    assert report.model.kind is CopulaKind.GAUSSIAN
    off = report.model.rho.entries[~np.eye(3, dtype=bool)]
    np.testing.assert_allclose(off, 0.4, atol=0.05)
