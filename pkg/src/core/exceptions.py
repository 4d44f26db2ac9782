__all__ = [
    "CopulaError",
    "DomainError",
    "BoundaryError",
    "TooFewSamplesError",
    "DimensionMismatchError",
    "ConvergenceError",
    "DatasetFormatError",
]


class CopulaError(Exception):
    """Базовое исключение всего инструментария."""


class DomainError(CopulaError, ValueError):
    """Аргумент или параметр распределения вне области определения."""


class BoundaryError(DomainError):
    """Псевдонаблюдение лежит на границе куба (u = 0 или u = 1)."""


class TooFewSamplesError(CopulaError, ValueError):
    """Недостаточно наблюдений для оценки."""


class DimensionMismatchError(CopulaError, ValueError):
    """Размерности модели и данных не совпадают."""


class ConvergenceError(CopulaError, RuntimeError):
    """
    Итерационная процедура не сошлась.

    :param message: Описание ошибки
    :type message: str
    :param iterations: Число выполненных итераций
    :type iterations: int
    :param best: Лучшее найденное значение параметра (если есть)
    :type best: float | None
    """

    def __init__(self, message: str, iterations: int, best: float | None = None):
        super().__init__(f"{message} (iterations={iterations}, best={best})")
        self.iterations = iterations
        self.best = best


class DatasetFormatError(CopulaError, ValueError):
    """
    Ошибка разбора CSV-файла.

    :param message: Описание ошибки
    :type message: str
    :param line: Номер строки файла (с единицы)
    :type line: int
    """

    def __init__(self, message: str, line: int):
        super().__init__(f"строка {line}: {message}")
        self.line = line
