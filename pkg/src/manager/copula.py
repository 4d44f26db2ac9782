"""
Гауссова копула и копула Стьюдента: корреляционные матрицы, плотности и выборки.

Квадратичные формы ζ′ρ⁻¹ζ считаются только через треугольные решения
с множителем Холецкого, обратная матрица нигде не формируется.
"""

import numpy as np
from scipy import linalg, special
from loguru import logger

from ..core import (
    config,
    BoundaryError,
    DimensionMismatchError,
    DomainError,
    CopulaKind,
    CopulaModel,
    CorrelationMatrix,
)

__all__ = [
    "U_EPS",
    "make_correlation",
    "exchangeable",
    "paired",
    "nearest_correlation",
    "gaussian_copula_logdensity",
    "student_t_copula_logdensity",
    "copula_logdensity",
    "sample_gaussian_copula",
    "sample_t_copula",
    "sample_copula",
]

# псевдонаблюдения от сэмплеров лежат в [U_EPS, 1 − U_EPS]
U_EPS = 2.0**-53


def _cholesky(entries: np.ndarray) -> np.ndarray | None:
    try:
        chol = linalg.cholesky(entries, lower=True, check_finite=False)
    except linalg.LinAlgError:
        return None
    if np.min(np.diag(chol)) <= config.PIVOT_TOL:
        return None
    return chol


def nearest_correlation(entries: np.ndarray) -> np.ndarray:
    """
    Ближайшая положительно определённая корреляционная матрица.

    Собственные значения ниже ``config.EIGEN_FLOOR`` поднимаются до этого порога,
    матрица собирается обратно и масштабируется к единичной диагонали.

    :param entries: Симметричная матрица с единичной диагональю
    :return: Исправленная матрица
    """
    values, vectors = linalg.eigh(entries)
    values = np.maximum(values, config.EIGEN_FLOOR)
    rebuilt = (vectors * values) @ vectors.T
    scale = 1.0 / np.sqrt(np.diag(rebuilt))
    rebuilt = rebuilt * np.outer(scale, scale)
    rebuilt = 0.5 * (rebuilt + rebuilt.T)
    np.fill_diagonal(rebuilt, 1.0)
    return rebuilt


def make_correlation(entries) -> CorrelationMatrix:
    """
    Проверяет и факторизует корреляционную матрицу.

    Матрица должна быть квадратной, симметричной и иметь единичную диагональ
    (с допуском 1e-10). Если разложение Холецкого не удаётся или ведущий элемент
    не превышает ``config.PIVOT_TOL``, применяется коррекция до ближайшей
    положительно определённой матрицы.

    :param entries: Матрица d×d
    :type entries: array-like
    :return: Корреляционная матрица с множителем Холецкого и ln|ρ|
    :rtype: CorrelationMatrix
    :raises DomainError: Неквадратная, несимметричная матрица или неудачная коррекция
    """
    arr = np.array(entries, dtype=float, copy=True)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DomainError(f"Корреляционная матрица должна быть квадратной, получено {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("Корреляционная матрица содержит нечисловые значения")
    if np.max(np.abs(arr - arr.T)) > 1e-10:
        raise DomainError("Корреляционная матрица несимметрична")
    if np.max(np.abs(np.diag(arr) - 1.0)) > 1e-10:
        raise DomainError("Диагональ корреляционной матрицы должна состоять из единиц")

    arr = 0.5 * (arr + arr.T)
    np.fill_diagonal(arr, 1.0)

    repaired = False
    chol = _cholesky(arr)
    if chol is None:
        logger.warning(f"Корреляционная матрица {arr.shape[0]}×{arr.shape[0]} не положительно определена, исправляем")
        arr = nearest_correlation(arr)
        repaired = True
        chol = _cholesky(arr)
        if chol is None:
            raise DomainError("Не удалось исправить корреляционную матрицу")

    logdet = 2.0 * float(np.sum(np.log(np.diag(chol))))
    return CorrelationMatrix(entries=arr, chol=chol, logdet=logdet, repaired=repaired)


def _leading(dim: int, block: int | None) -> int:
    return dim if block is None else min(dim, block)


def exchangeable(dim: int, rho_off: float, block: int | None = None) -> CorrelationMatrix:
    """
    Равнокоррелированная матрица: единицы на диагонали, rho_off между первыми
    block признаками, остальные признаки независимы.
    """
    m = _leading(dim, block)
    entries = np.eye(dim)
    entries[:m, :m] = float(rho_off)
    np.fill_diagonal(entries, 1.0)
    return make_correlation(entries)


def paired(dim: int, rho_off: float, block: int | None = None) -> CorrelationMatrix:
    """
    Парная матрица: признаки (0, 1), (2, 3), … среди первых block связаны
    корреляцией rho_off, остальные элементы вне диагонали нулевые.
    Непарный последний признак блока остаётся независимым.
    """
    m = _leading(dim, block)
    entries = np.eye(dim)
    first = np.arange(0, m - 1, 2)
    entries[first, first + 1] = entries[first + 1, first] = float(rho_off)
    return make_correlation(entries)


def _pseudo(u, rho: CorrelationMatrix) -> np.ndarray:
    arr = np.atleast_2d(np.asarray(u, dtype=float))
    if arr.shape[-1] != rho.dim:
        raise DimensionMismatchError(
            f"Размерность псевдонаблюдений {arr.shape[-1]} не совпадает с размерностью ρ {rho.dim}"
        )
    if np.any(np.isnan(arr)) or np.any(arr <= 0) or np.any(arr >= 1):
        raise BoundaryError("Псевдонаблюдения должны лежать строго внутри (0, 1)")
    return arr


def _mahalanobis(zeta: np.ndarray, rho: CorrelationMatrix) -> np.ndarray:
    w = linalg.solve_triangular(rho.chol, zeta.T, lower=True, check_finite=False)
    return np.sum(w * w, axis=0)


def _wrap(values: np.ndarray, u):
    return float(values[0]) if np.ndim(u) == 1 else values


def gaussian_copula_logdensity(u, rho: CorrelationMatrix):
    """
    Логарифм плотности гауссовой копулы.

    ln c(u; ρ) = −½ ln|ρ| − ½ ζ′(ρ⁻¹ − I)ζ, где ζ_j = Φ⁻¹(u_j).

    :param u: Вектор длины d или матрица n×d псевдонаблюдений из (0, 1)
    :param rho: Корреляционная матрица
    :return: float для вектора, массив длины n для матрицы
    :raises BoundaryError: Если какое-либо u_j равно 0 или 1
    """
    arr = _pseudo(u, rho)
    zeta = special.ndtri(arr)
    quad = _mahalanobis(zeta, rho) - np.sum(zeta * zeta, axis=1)
    return _wrap(-0.5 * rho.logdet - 0.5 * quad, u)


def student_t_copula_logdensity(u, rho: CorrelationMatrix, nu: float):
    """
    Логарифм плотности копулы Стьюдента.

    При ν ≥ ``config.NU_MAX`` копула считается гауссовым пределом.
    Определитель входит с показателем −½ (как в логарифме правдоподобия
    и в отношении совместной плотности к произведению маргинальных).

    :param u: Вектор длины d или матрица n×d псевдонаблюдений из (0, 1)
    :param rho: Корреляционная матрица
    :param nu: Число степеней свободы, ν > 2
    :raises DomainError: Если ν ≤ 2
    :raises BoundaryError: Если какое-либо u_j равно 0 или 1
    """
    if not nu > 2:
        raise DomainError(f"Копула Стьюдента требует ν > 2, получено {nu}")
    if nu >= config.NU_MAX:
        return gaussian_copula_logdensity(u, rho)

    arr = _pseudo(u, rho)
    d = rho.dim
    zeta = special.stdtrit(nu, arr)
    const = (
        -0.5 * rho.logdet
        + special.gammaln(0.5 * (nu + d))
        - special.gammaln(0.5 * nu)
        + d * (special.gammaln(0.5 * nu) - special.gammaln(0.5 * (nu + 1)))
    )
    joint = -0.5 * (nu + d) * np.log1p(_mahalanobis(zeta, rho) / nu)
    margins = 0.5 * (nu + 1) * np.sum(np.log1p(zeta * zeta / nu), axis=1)
    return _wrap(const + joint + margins, u)


def copula_logdensity(model: CopulaModel, u):
    """Логарифм плотности копулы по её модели."""
    if model.kind is CopulaKind.GAUSSIAN:
        return gaussian_copula_logdensity(u, model.rho)
    return student_t_copula_logdensity(u, model.rho, model.nu)


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed) % 2**64)


def _check_n(n: int) -> int:
    if n < 1:
        raise ValueError(f"Размер выборки должен быть положительным, получено {n}")
    return int(n)


def sample_gaussian_copula(rho: CorrelationMatrix, n: int, seed: int) -> np.ndarray:
    """
    Выборка из гауссовой копулы: z = L·g, u_j = Φ(z_j).

    :param rho: Корреляционная матрица
    :param n: Число наблюдений
    :param seed: Зерно (любое целое; берётся по модулю 2⁶⁴)
    :return: Матрица n×d псевдонаблюдений
    """
    g = _rng(seed).standard_normal((_check_n(n), rho.dim))
    z = g @ rho.chol.T
    return np.clip(special.ndtr(z), U_EPS, 1 - U_EPS)


def sample_t_copula(rho: CorrelationMatrix, nu: float, n: int, seed: int) -> np.ndarray:
    """
    Выборка из копулы Стьюдента: z = L·g·√(ν/s), s ~ χ²_ν, u_j = t_ν(z_j).

    :param rho: Корреляционная матрица
    :param nu: Число степеней свободы, ν > 2
    :param n: Число наблюдений
    :param seed: Зерно
    :return: Матрица n×d псевдонаблюдений
    """
    if not nu > 2:
        raise DomainError(f"Копула Стьюдента требует ν > 2, получено {nu}")
    rng = _rng(seed)
    n = _check_n(n)
    g = rng.standard_normal((n, rho.dim))
    s = rng.chisquare(nu, size=n)
    z = (g @ rho.chol.T) * np.sqrt(nu / s)[:, None]
    return np.clip(special.stdtr(nu, z), U_EPS, 1 - U_EPS)


def sample_copula(model: CopulaModel, n: int, seed: int) -> np.ndarray:
    if model.kind is CopulaKind.GAUSSIAN:
        return sample_gaussian_copula(model.rho, n, seed)
    return sample_t_copula(model.rho, model.nu, n, seed)
