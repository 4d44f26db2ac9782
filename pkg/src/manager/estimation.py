"""
Оценка параметров копул: EML для гауссовой копулы и CML для копулы Стьюдента.
"""

from math import exp, log, sqrt

import numpy as np
from scipy import special, stats
from loguru import logger

from .copula import (
    make_correlation,
    gaussian_copula_logdensity,
    student_t_copula_logdensity,
)
from .optimize import golden_maximize
from ..core import (
    config,
    BoundaryError,
    DimensionMismatchError,
    DomainError,
    TooFewSamplesError,
    CopulaKind,
    CopulaModel,
    CorrelationMatrix,
    FitReport,
)

__all__ = [
    "empirical_transform",
    "eml_fit_gaussian",
    "cml_fit_gaussian",
    "t_loglik",
    "kendall_tau",
    "kendall_tau_matrix",
    "cml_fit_t",
]


def _matrix(samples, minimum: int) -> np.ndarray:
    arr = np.asarray(samples, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"Ожидается матрица N×d, получено {arr.shape}")
    if arr.shape[0] < minimum:
        raise TooFewSamplesError(
            f"Требуется не менее {minimum} наблюдений, получено {arr.shape[0]}"
        )
    if not np.all(np.isfinite(arr)):
        raise DomainError("Выборка содержит нечисловые значения")
    return arr


def _interior(pseudo) -> np.ndarray:
    arr = _matrix(pseudo, 1)
    if np.any(arr <= 0) or np.any(arr >= 1):
        raise BoundaryError("Псевдонаблюдения должны лежать строго внутри (0, 1)")
    return arr


def empirical_transform(samples, *, min_samples: int | None = None) -> np.ndarray:
    """
    Эмпирическое маргинальное преобразование в псевдонаблюдения.

    Каждый столбец заменяется рангами, делёнными на N + 1; совпадающим
    значениям присваивается средний ранг.

    :param samples: Матрица N×d
    :param min_samples: Минимальное N (по умолчанию ``config.MIN_SAMPLES``)
    :return: Матрица N×d значений из [1/(N+1), N/(N+1)]
    :raises TooFewSamplesError: Если N меньше минимума
    """
    minimum = config.MIN_SAMPLES if min_samples is None else min_samples
    arr = _matrix(samples, minimum)
    ranks = stats.rankdata(arr, method="average", axis=0)
    return ranks / (arr.shape[0] + 1)


def eml_fit_gaussian(pseudo) -> FitReport:
    """
    Оценка ρ гауссовой копулы в явном виде.

    ζ = Φ⁻¹(u), M = (1/N)·Σ ζζ′, затем M приводится к единичной диагонали
    M[i][j]/√(M[i][i]·M[j][j]) и при необходимости исправляется до
    положительно определённой.

    :param pseudo: Псевдонаблюдения N×d строго внутри (0, 1)
    :return: Отчёт с моделью и логарифмом правдоподобия
    :raises BoundaryError: Если псевдонаблюдения касаются границы
    :raises DomainError: Если столбец ζ вырожден
    """
    u = _interior(pseudo)
    n, d = u.shape
    if n <= d:
        logger.warning(f"EML: наблюдений ({n}) не больше размерности ({d}), оценка ρ неустойчива")

    zeta = special.ndtri(u)
    moment = zeta.T @ zeta / n
    diag = np.diag(moment)
    if np.any(diag <= np.finfo(float).tiny):
        raise DomainError("EML: вырожденный столбец (нулевой второй момент ζ)")
    scale = 1.0 / np.sqrt(diag)
    entries = moment * np.outer(scale, scale)
    entries = 0.5 * (entries + entries.T)
    np.fill_diagonal(entries, 1.0)

    rho = make_correlation(entries)
    model = CopulaModel(kind=CopulaKind.GAUSSIAN, rho=rho)
    loglik = float(np.sum(gaussian_copula_logdensity(u, rho)))
    return FitReport(model=model, loglik=loglik, iterations=0, repaired=rho.repaired)


def cml_fit_gaussian(samples) -> FitReport:
    """CML для гауссовой копулы: ранговые псевдонаблюдения, затем явная оценка ρ."""
    return eml_fit_gaussian(empirical_transform(samples))


def t_loglik(pseudo, rho: CorrelationMatrix, nu: float) -> float:
    """
    Логарифм правдоподобия копулы Стьюдента.

    Вычисляется как сумма логарифмов плотности по наблюдениям; развёрнутая
    формула правдоподобия отдельно не реализуется.
    """
    return float(np.sum(student_t_copula_logdensity(_interior(pseudo), rho, nu)))


def kendall_tau(x, y) -> float:
    """
    Коэффициент τ Кендалла: (C − D) / (n(n−1)/2).

    Пары с совпадением хотя бы по одной координате вклада не дают.
    Значение получается из τ_b библиотеки scipy пересчётом знаменателя,
    что совпадает с прямым попарным подсчётом.

    :param x: Первая выборка
    :param y: Вторая выборка той же длины
    :return: τ ∈ [−1, 1]
    :raises DimensionMismatchError: Если длины различаются
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != y.size:
        raise DimensionMismatchError(f"Длины выборок различаются: {x.size} и {y.size}")
    if x.size < 2:
        raise TooFewSamplesError("τ Кендалла требует не менее двух наблюдений")

    total = x.size * (x.size - 1) / 2
    _, x_counts = np.unique(x, return_counts=True)
    _, y_counts = np.unique(y, return_counts=True)
    x_ties = float(np.sum(x_counts * (x_counts - 1) / 2))
    y_ties = float(np.sum(y_counts * (y_counts - 1) / 2))
    if x_ties == total or y_ties == total:
        return 0.0

    tau_b = stats.kendalltau(x, y, variant="b").statistic
    return float(np.clip(tau_b * sqrt((total - x_ties) * (total - y_ties)) / total, -1.0, 1.0))


def kendall_tau_matrix(samples) -> np.ndarray:
    """Матрица попарных τ Кендалла столбцов (единицы на диагонали)."""
    arr = _matrix(samples, 2)
    d = arr.shape[1]
    tau = np.eye(d)
    for i in range(d):
        for j in range(i + 1, d):
            tau[i, j] = tau[j, i] = kendall_tau(arr[:, i], arr[:, j])
    return tau


def cml_fit_t(samples) -> FitReport:
    """
    CML-калибровка копулы Стьюдента.

    1. Эмпирическое маргинальное преобразование в псевдонаблюдения.
    2. ρ̂[i][j] = sin(π·τ[i][j]/2) по попарным τ Кендалла, при необходимости
       исправление до положительно определённой матрицы.
    3. Максимизация логарифма правдоподобия по ν ∈ (2, ν_max] методом
       золотого сечения по ln(ν − 2) с допуском ``config.NU_TOL`` в шкале ν.

    Если оптимизатор не сошёлся за ``config.MAX_ITER`` итераций, возвращается
    лучшее найденное ν с флагом ``converged=False``.

    :param samples: Матрица N×d исходных наблюдений, N ≥ config.MIN_SAMPLES
    :return: Отчёт с моделью, логарифмом правдоподобия и числом итераций
    """
    pseudo = empirical_transform(samples)
    tau = kendall_tau_matrix(pseudo)
    entries = np.sin(0.5 * np.pi * tau)
    np.fill_diagonal(entries, 1.0)
    rho = make_correlation(entries)

    result = golden_maximize(
        lambda s: t_loglik(pseudo, rho, 2.0 + exp(s)),
        log(config.NU_TOL),
        log(config.NU_MAX - 2.0),
        width=lambda a, b: exp(b) - exp(a),
        tol=config.NU_TOL,
        max_iter=config.MAX_ITER,
    )
    nu = min(2.0 + exp(result.argmax), config.NU_MAX)
    if nu >= config.NU_MAX - config.NU_TOL:
        nu = config.NU_MAX
        logger.info("CML: ν̂ достиг верхней границы, копула совпадает с гауссовым пределом")
    if not result.converged:
        logger.warning(f"CML: поиск ν не сошёлся, используется лучшее ν={nu:.4g}")

    model = CopulaModel(kind=CopulaKind.STUDENT_T, rho=rho, nu=nu)
    return FitReport(
        model=model,
        loglik=t_loglik(pseudo, rho, nu),
        iterations=result.iterations,
        repaired=rho.repaired,
        converged=result.converged,
    )
