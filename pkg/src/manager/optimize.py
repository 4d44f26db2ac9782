from math import sqrt, isfinite
from dataclasses import dataclass
from typing import Callable

from loguru import logger

__all__ = ["GoldenResult", "golden_maximize"]

PHI_RATIO = 2 / (1 + sqrt(5))


@dataclass(frozen=True)
class GoldenResult:
    """
    Результат одномерной максимизации.

    :param argmax: Точка максимума (в исходной параметризации)
    :param maximum: Значение функции в argmax
    :param iterations: Число сужений интервала
    :param converged: Достигнут ли допуск до исчерпания итераций
    """

    argmax: float
    maximum: float
    iterations: int
    converged: bool


def golden_maximize(
    f: Callable[[float], float],
    lower: float,
    upper: float,
    *,
    width: Callable[[float, float], float] | None = None,
    tol: float = 1e-8,
    max_iter: int = 200,
) -> GoldenResult:
    """
    Максимизирует унимодальную функцию методом золотого сечения на [lower, upper].

    Границы интервала тоже сравниваются с найденной внутренней точкой, поэтому
    максимум на краю (например, ν на верхней границе) не теряется.

    :param f: Целевая функция; нечисловые значения считаются −∞
    :param lower: Левая граница
    :param upper: Правая граница
    :param width: Мера ширины интервала для критерия остановки (по умолчанию upper − lower);
        позволяет задать допуск в исходной шкале при поиске в перепараметризованной
    :param tol: Допуск по ширине интервала
    :param max_iter: Предел числа итераций
    :return: Лучшая найденная точка и диагностика
    """
    if not lower < upper:
        raise ValueError(f"Пустой интервал поиска [{lower}, {upper}]")
    width = width or (lambda a, b: b - a)

    def safe(x: float) -> float:
        value = f(x)
        return value if isfinite(value) else float("-inf")

    x_lo, x_hi = lower, upper
    x1 = x_hi - PHI_RATIO * (x_hi - x_lo)
    x2 = x_lo + PHI_RATIO * (x_hi - x_lo)
    f1, f2 = safe(x1), safe(x2)

    iteration = 0
    while iteration < max_iter and width(x_lo, x_hi) > tol:
        if f1 > f2:
            x_hi, x2, f2 = x2, x1, f1
            x1 = x_hi - PHI_RATIO * (x_hi - x_lo)
            f1 = safe(x1)
        else:
            x_lo, x1, f1 = x1, x2, f2
            x2 = x_lo + PHI_RATIO * (x_hi - x_lo)
            f2 = safe(x2)
        iteration += 1

    converged = width(x_lo, x_hi) <= tol
    candidates = [(f1, x1), (f2, x2), (safe(lower), lower), (safe(upper), upper)]
    best_f, best_x = max(candidates, key=lambda c: c[0])

    if not converged:
        logger.warning(
            f"Золотое сечение не сошлось за {iteration} итераций (best={best_x}, f={best_f})"
        )
    return GoldenResult(argmax=best_x, maximum=best_f, iterations=iteration, converged=converged)
