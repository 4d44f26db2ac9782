"""
Одномерные маргиналы: параметрические семейства и эмпирическое распределение.
"""

from math import exp, log

import numpy as np
from scipy import special
from scipy.ndimage import gaussian_filter1d
from loguru import logger

from . import specfn
from .optimize import golden_maximize
from ..core import (
    config,
    ConvergenceError,
    DomainError,
    TooFewSamplesError,
    EmpiricalMarginal,
    Family,
    Marginal,
    ParametricMarginal,
)

__all__ = [
    "ecdf_raw",
    "fit_empirical",
    "fit_parametric",
    "cdf",
    "logpdf",
    "quantile",
]


def _wrap(value, like):
    return float(value) if np.ndim(like) == 0 else np.asarray(value, dtype=float)


def _samples(samples, minimum: int) -> np.ndarray:
    arr = np.asarray(samples, dtype=float).ravel()
    if arr.size < minimum:
        raise TooFewSamplesError(
            f"Требуется не менее {minimum} наблюдений, получено {arr.size}"
        )
    if not np.all(np.isfinite(arr)):
        raise DomainError("Выборка содержит нечисловые значения")
    return arr


def ecdf_raw(samples, x):
    """
    Эмпирическая функция распределения без перемасштабирования: #{x_n ≤ x} / N.

    :param samples: Непустая выборка
    :param x: Точка или массив точек
    :return: Доля наблюдений, не превосходящих x
    :raises TooFewSamplesError: Для пустой выборки
    """
    ordered = np.sort(_samples(samples, 1))
    counts = np.searchsorted(ordered, np.asarray(x, dtype=float), side="right")
    return _wrap(counts / ordered.size, x)


def fit_empirical(samples) -> EmpiricalMarginal:
    """
    Строит эмпирический маргинал по обучающей выборке.

    Функция распределения — ступенчатая ECDF, умноженная на N/(N+1).
    Плотность: ECDF вычисляется на равномерной сетке из ``config.GRID_POINTS`` узлов
    на [min − h, max + h], сглаживается гауссовым ядром ширины
    h = 1.06·σ̂·N^(−1/5), дифференцируется центральными разностями и
    ограничивается снизу ``config.DENSITY_FLOOR``.

    :param samples: Выборка из N ≥ config.MIN_SAMPLES наблюдений
    :return: Эмпирический маргинал
    :raises TooFewSamplesError: Если наблюдений меньше минимума
    """
    ordered = np.sort(_samples(samples, config.MIN_SAMPLES))
    n = ordered.size

    bandwidth = 1.06 * float(np.std(ordered)) * n ** (-0.2)
    if bandwidth <= 0:
        # вырожденный столбец: все значения совпадают
        bandwidth = 1e-3 * max(1.0, abs(float(ordered[0])))

    grid = np.linspace(ordered[0] - bandwidth, ordered[-1] + bandwidth, config.GRID_POINTS)
    step = grid[1] - grid[0]
    ecdf = np.searchsorted(ordered, grid, side="right") / (n + 1)

    smoothed = gaussian_filter1d(ecdf, sigma=bandwidth / step, mode="nearest")
    density = np.maximum(np.gradient(smoothed, grid), config.DENSITY_FLOOR)

    logger.debug(f"Эмпирический маргинал: n={n}, h={bandwidth:.4g}, шаг сетки={step:.4g}")
    return EmpiricalMarginal(
        sorted_samples=ordered,
        grid_x=grid,
        grid_logpdf=np.log(density),
        density_floor=config.DENSITY_FLOOR,
    )


def cdf(m: Marginal, x, *, strict: bool = True):
    """
    Функция распределения маргинала.

    Для эмпирического маргинала значения ограничены отрезком
    [1/(N+1), N/(N+1)], поэтому никогда не равны 0 или 1.

    :param m: Маргинал
    :param x: Точка или массив точек
    :param strict: Для параметрических семейств бросать DomainError вне носителя
        (иначе точки вне носителя получают 0)
    """
    if isinstance(m, ParametricMarginal):
        return specfn.family_cdf(m.family, x, m.params, check=strict)
    arr = np.asarray(x, dtype=float)
    n = m.n
    counts = np.searchsorted(m.sorted_samples, arr, side="right")
    return _wrap(np.clip(counts, 1, n) / (n + 1), x)


def logpdf(m: Marginal, x, *, strict: bool = True):
    """
    Логарифм плотности маргинала.

    Эмпирическая плотность интерполируется линейно по сетке; вне
    наблюдённого диапазона возвращается ln(density_floor).
    """
    if isinstance(m, ParametricMarginal):
        return specfn.family_logpdf(m.family, x, m.params, check=strict)
    arr = np.asarray(x, dtype=float)
    inside = (arr >= m.sorted_samples[0]) & (arr <= m.sorted_samples[-1])
    values = np.where(
        inside, np.interp(arr, m.grid_x, m.grid_logpdf), np.log(m.density_floor)
    )
    return _wrap(values, x)


def quantile(m: Marginal, p):
    """
    Обратная функция распределения.

    Для эмпирического маргинала — обобщённая обратная к ступенчатой функции:
    наименьшая порядковая статистика x_(k) с cdf(x_(k)) ≥ p.
    """
    if isinstance(m, ParametricMarginal):
        return specfn.family_quantile(m.family, p, m.params)
    arr = np.asarray(p, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr <= 0) or np.any(arr >= 1):
        raise DomainError("Аргумент квантиля должен лежать строго внутри (0, 1)")
    n = m.n
    k = np.clip(np.ceil(arr * (n + 1) - 1e-9).astype(np.int64), 1, n)
    return _wrap(m.sorted_samples[k - 1], p)


def _fit_gamma_shape(data: np.ndarray) -> tuple[float, int]:
    # уравнение правдоподобия: ln k − ψ(k) = ln(x̄) − mean(ln x)
    s = log(float(np.mean(data))) - float(np.mean(np.log(data)))
    if s <= 0:
        raise DomainError("Gamma: выборка вырождена (все значения совпадают)")
    shape = (3 - s + np.sqrt((s - 3) ** 2 + 24 * s)) / (12 * s)
    for iteration in range(1, config.MAX_ITER + 1):
        step = (np.log(shape) - special.digamma(shape) - s) / (
            1 / shape - special.polygamma(1, shape)
        )
        shape = max(shape - step, shape / 10)
        if abs(step) <= 1e-12 * shape:
            return float(shape), iteration
    raise ConvergenceError("Gamma: метод Ньютона не сошёлся", config.MAX_ITER, float(shape))


def _fit_log_scale(name: str, loglik, lower: float, upper: float) -> float:
    result = golden_maximize(
        lambda t: loglik(exp(t)),
        log(lower),
        log(upper),
        width=lambda a, b: exp(b) - exp(a),
        tol=1e-6,
        max_iter=config.MAX_ITER,
    )
    if not result.converged:
        raise ConvergenceError(f"{name}: максимизация правдоподобия не сошлась", result.iterations, exp(result.argmax))
    return exp(result.argmax)


def fit_parametric(family: Family, samples) -> ParametricMarginal:
    """
    Оценивает параметры семейства методом максимального правдоподобия.

    Явные формулы для Normal, Exponential и LogNormal (дисперсия с делителем N),
    метод Ньютона для формы Gamma, одномерная максимизация для ν (StudentT)
    и k (ChiSquare).

    :param family: Семейство распределения
    :param samples: Выборка из N ≥ config.MIN_SAMPLES наблюдений
    :return: Подогнанный параметрический маргинал
    :raises TooFewSamplesError: Если наблюдений недостаточно
    :raises DomainError: Если выборка выходит за носитель семейства
    :raises ConvergenceError: Если итерационная оценка не сошлась
    """
    family = Family(family)
    data = _samples(samples, config.MIN_SAMPLES)

    if family in (Family.GAMMA, Family.LOGNORMAL, Family.CHISQUARE) and np.any(data <= 0):
        raise DomainError(f"{family}: все наблюдения должны быть положительными")
    if family is Family.EXPONENTIAL and np.any(data < 0):
        raise DomainError(f"{family}: наблюдения не могут быть отрицательными")

    if family is Family.NORMAL:
        sigma = float(np.std(data))
        if sigma <= 0:
            raise DomainError("Normal: нулевая дисперсия выборки")
        params = {"mu": float(np.mean(data)), "sigma": sigma}
    elif family is Family.EXPONENTIAL:
        mean = float(np.mean(data))
        if mean <= 0:
            raise DomainError("Exponential: нулевое среднее выборки")
        params = {"rate": 1.0 / mean}
    elif family is Family.LOGNORMAL:
        logs = np.log(data)
        sigma = float(np.std(logs))
        if sigma <= 0:
            raise DomainError("LogNormal: нулевая дисперсия логарифмов")
        params = {"mu": float(np.mean(logs)), "sigma": sigma}
    elif family is Family.GAMMA:
        shape, iterations = _fit_gamma_shape(data)
        params = {"shape": shape, "scale": float(np.mean(data)) / shape}
        logger.debug(f"Gamma: форма {shape:.6g} найдена за {iterations} итераций")
    elif family is Family.CHISQUARE:
        k = _fit_log_scale(
            "ChiSquare",
            lambda k: float(np.sum(specfn.chisquare_logpdf(data, k))),
            1e-3,
            1e3,
        )
        params = {"k": k}
    else:
        nu = _fit_log_scale(
            "StudentT",
            lambda nu: float(np.sum(specfn.student_t_logpdf(data, nu))),
            0.05,
            config.NU_MAX,
        )
        params = {"nu": nu}

    return ParametricMarginal(family=family, params=params)
