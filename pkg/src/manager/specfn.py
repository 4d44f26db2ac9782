"""
Специальные функции и одномерные распределения.

Все функции векторизованы: скаляр на входе даёт float, массив — np.ndarray.
Неполные гамма- и бета-функции берутся из ``scipy.special`` (stdtr/stdtrit
выражаются через неполную бета-функцию).
"""

from typing import Callable, Mapping, NamedTuple

import numpy as np
from scipy import special

from ..core import DomainError, Family, FAMILY_PARAMS

__all__ = [
    "ln_gamma",
    "normal_logpdf",
    "normal_cdf",
    "normal_quantile",
    "student_t_logpdf",
    "student_t_cdf",
    "student_t_quantile",
    "gamma_logpdf",
    "gamma_cdf",
    "gamma_quantile",
    "exponential_logpdf",
    "exponential_cdf",
    "exponential_quantile",
    "lognormal_logpdf",
    "lognormal_cdf",
    "lognormal_quantile",
    "chisquare_logpdf",
    "chisquare_cdf",
    "chisquare_quantile",
    "family_logpdf",
    "family_cdf",
    "family_quantile",
    "support_lower",
]

_HALF_LOG_2PI = 0.5 * np.log(2 * np.pi)


def _wrap(value, like):
    return float(value) if np.ndim(like) == 0 else np.asarray(value, dtype=float)


def _positive(name: str, value: float) -> float:
    if not np.isfinite(value) or value <= 0:
        raise DomainError(f"Параметр '{name}' должен быть положительным, получено {value}")
    return float(value)


def _probability(p) -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr <= 0) or np.any(arr >= 1):
        raise DomainError("Аргумент квантиля должен лежать строго внутри (0, 1)")
    return arr


def _nonnegative(x, check: bool) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if check and (np.any(np.isnan(arr)) or np.any(arr < 0)):
        raise DomainError("Аргумент вне носителя распределения (x < 0)")
    return arr


def ln_gamma(x):
    """
    Натуральный логарифм гамма-функции.

    :param x: Положительный аргумент
    :return: ln Γ(x)
    :raises DomainError: Если x ≤ 0
    """
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr <= 0):
        raise DomainError(f"ln_gamma определена только для x > 0, получено {x}")
    return _wrap(special.gammaln(arr), x)


def normal_logpdf(x, mu: float = 0.0, sigma: float = 1.0):
    sigma = _positive("sigma", sigma)
    z = (np.asarray(x, dtype=float) - mu) / sigma
    return _wrap(-0.5 * z * z - _HALF_LOG_2PI - np.log(sigma), x)


def normal_cdf(x, mu: float = 0.0, sigma: float = 1.0):
    """Φ((x − μ)/σ)."""
    sigma = _positive("sigma", sigma)
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)):
        raise DomainError("normal_cdf: аргумент NaN")
    return _wrap(special.ndtr((arr - mu) / sigma), x)


def normal_quantile(p, mu: float = 0.0, sigma: float = 1.0):
    """
    Обратная функция стандартного нормального распределения (со сдвигом и масштабом).

    :param p: Вероятность в (0, 1)
    :raises DomainError: Если p ∈ {0, 1} или вне интервала
    """
    sigma = _positive("sigma", sigma)
    return _wrap(mu + sigma * special.ndtri(_probability(p)), p)


def student_t_logpdf(x, nu: float):
    nu = _positive("nu", nu)
    arr = np.asarray(x, dtype=float)
    const = (
        special.gammaln(0.5 * (nu + 1))
        - special.gammaln(0.5 * nu)
        - 0.5 * np.log(nu * np.pi)
    )
    return _wrap(const - 0.5 * (nu + 1) * np.log1p(arr * arr / nu), x)


def student_t_cdf(x, nu: float):
    nu = _positive("nu", nu)
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)):
        raise DomainError("student_t_cdf: аргумент NaN")
    return _wrap(special.stdtr(nu, arr), x)


def student_t_quantile(p, nu: float):
    nu = _positive("nu", nu)
    return _wrap(special.stdtrit(nu, _probability(p)), p)


def gamma_logpdf(x, shape: float, scale: float, *, check: bool = True):
    """
    Логарифм плотности Gamma(shape, scale).

    Вне носителя (x < 0) при ``check=False`` возвращает −∞.
    """
    shape, scale = _positive("shape", shape), _positive("scale", scale)
    arr = _nonnegative(x, check)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (
            special.xlogy(shape - 1, arr)
            - arr / scale
            - special.gammaln(shape)
            - shape * np.log(scale)
        )
    out = np.where(arr < 0, -np.inf, out)
    return _wrap(out, x)


def gamma_cdf(x, shape: float, scale: float, *, check: bool = True):
    shape, scale = _positive("shape", shape), _positive("scale", scale)
    arr = _nonnegative(x, check)
    return _wrap(special.gammainc(shape, np.maximum(arr, 0) / scale), x)


def gamma_quantile(p, shape: float, scale: float):
    shape, scale = _positive("shape", shape), _positive("scale", scale)
    return _wrap(scale * special.gammaincinv(shape, _probability(p)), p)


def exponential_logpdf(x, rate: float, *, check: bool = True):
    rate = _positive("rate", rate)
    arr = _nonnegative(x, check)
    return _wrap(np.where(arr < 0, -np.inf, np.log(rate) - rate * arr), x)


def exponential_cdf(x, rate: float, *, check: bool = True):
    rate = _positive("rate", rate)
    arr = _nonnegative(x, check)
    return _wrap(-np.expm1(-rate * np.maximum(arr, 0)), x)


def exponential_quantile(p, rate: float):
    rate = _positive("rate", rate)
    return _wrap(-np.log1p(-_probability(p)) / rate, p)


def lognormal_logpdf(x, mu: float, sigma: float, *, check: bool = True):
    sigma = _positive("sigma", sigma)
    arr = _nonnegative(x, check)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_x = np.log(arr)
        z = (log_x - mu) / sigma
        out = -log_x - np.log(sigma) - _HALF_LOG_2PI - 0.5 * z * z
    out = np.where(arr > 0, out, -np.inf)
    return _wrap(out, x)


def lognormal_cdf(x, mu: float, sigma: float, *, check: bool = True):
    sigma = _positive("sigma", sigma)
    arr = _nonnegative(x, check)
    with np.errstate(divide="ignore"):
        out = special.ndtr((np.log(np.maximum(arr, 0)) - mu) / sigma)
    return _wrap(out, x)


def lognormal_quantile(p, mu: float, sigma: float):
    sigma = _positive("sigma", sigma)
    return _wrap(np.exp(mu + sigma * special.ndtri(_probability(p))), p)


# χ²(k) = Gamma(k/2, 2), k может быть дробным
def chisquare_logpdf(x, k: float, *, check: bool = True):
    return gamma_logpdf(x, 0.5 * _positive("k", k), 2.0, check=check)


def chisquare_cdf(x, k: float, *, check: bool = True):
    return gamma_cdf(x, 0.5 * _positive("k", k), 2.0, check=check)


def chisquare_quantile(p, k: float):
    return gamma_quantile(p, 0.5 * _positive("k", k), 2.0)


class _FamilyKernel(NamedTuple):
    logpdf: Callable
    cdf: Callable
    quantile: Callable
    lower: float
    checked: bool


_KERNELS: dict[Family, _FamilyKernel] = {
    Family.NORMAL: _FamilyKernel(normal_logpdf, normal_cdf, normal_quantile, -np.inf, False),
    Family.STUDENT_T: _FamilyKernel(student_t_logpdf, student_t_cdf, student_t_quantile, -np.inf, False),
    Family.GAMMA: _FamilyKernel(gamma_logpdf, gamma_cdf, gamma_quantile, 0.0, True),
    Family.EXPONENTIAL: _FamilyKernel(exponential_logpdf, exponential_cdf, exponential_quantile, 0.0, True),
    Family.LOGNORMAL: _FamilyKernel(lognormal_logpdf, lognormal_cdf, lognormal_quantile, 0.0, True),
    Family.CHISQUARE: _FamilyKernel(chisquare_logpdf, chisquare_cdf, chisquare_quantile, 0.0, True),
}


def _params(family: Family, params: Mapping[str, float]) -> list[float]:
    names = FAMILY_PARAMS[family]
    missing = set(names) - set(params)
    if missing:
        raise DomainError(f"Для семейства '{family}' не заданы параметры {sorted(missing)}")
    return [float(params[name]) for name in names]


def family_logpdf(family: Family, x, params: Mapping[str, float], *, check: bool = True):
    """
    Логарифм плотности семейства по имени.

    :param family: Семейство из Family
    :param x: Точка или массив точек
    :param params: Параметры семейства
    :param check: Бросать DomainError вне носителя (иначе возвращается −∞)
    """
    kernel = _KERNELS[Family(family)]
    args = _params(Family(family), params)
    if kernel.checked:
        return kernel.logpdf(x, *args, check=check)
    return kernel.logpdf(x, *args)


def family_cdf(family: Family, x, params: Mapping[str, float], *, check: bool = True):
    kernel = _KERNELS[Family(family)]
    args = _params(Family(family), params)
    if kernel.checked:
        return kernel.cdf(x, *args, check=check)
    return kernel.cdf(x, *args)


def family_quantile(family: Family, p, params: Mapping[str, float]):
    kernel = _KERNELS[Family(family)]
    return kernel.quantile(p, *_params(Family(family), params))


def support_lower(family: Family) -> float:
    """Нижняя граница носителя семейства (−∞ или 0)."""
    return _KERNELS[Family(family)].lower
