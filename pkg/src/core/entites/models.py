try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

from dataclasses import dataclass
from typing import TypeAlias, Mapping

import numpy as np

from .schemas import DatasetSpec, Family, FAMILY_PARAMS, CopulaKind

__all__ = [
    "Family",
    "FAMILY_PARAMS",
    "ParametricMarginal",
    "EmpiricalMarginal",
    "Marginal",
    "CorrelationMatrix",
    "CopulaKind",
    "CopulaModel",
    "FitReport",
    "ClassModel",
    "NormalClassModel",
    "Standardization",
    "ClassifierKind",
    "Classifier",
    "Dataset",
]


def _frozen(array, dtype=float) -> np.ndarray:
    """Копия массива, защищённая от записи."""
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class ParametricMarginal:
    """
    Параметрическое одномерное распределение признака.

    :param family: Семейство распределения
    :type family: Family
    :param params: Параметры семейства (имена из FAMILY_PARAMS)
    :type params: Mapping[str, float]
    """

    family: Family
    params: Mapping[str, float]

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        expected = FAMILY_PARAMS[self.family]
        if set(self.params) != set(expected):
            raise TypeError(
                f"Семейство '{self.family}' ожидает параметры {expected}, получено {tuple(self.params)}"
            )
        object.__setattr__(
            self, "params", {name: float(self.params[name]) for name in expected}
        )

    def __repr__(self):
        args = ", ".join(f"{k}={v:.6g}" for k, v in self.params.items())
        return f"ParametricMarginal({self.family}, {args})"


@dataclass(frozen=True, eq=False)
class EmpiricalMarginal:
    """
    Эмпирическое распределение признака.

    Функция распределения — ступенчатая ECDF, умноженная на N/(N+1);
    плотность хранится сеткой логарифмов (x, ln f̂(x)), полученной численным
    дифференцированием сглаженной ECDF.

    :param sorted_samples: Упорядоченная обучающая выборка
    :type sorted_samples: np.ndarray
    :param grid_x: Узлы сетки плотности
    :type grid_x: np.ndarray
    :param grid_logpdf: Логарифм плотности в узлах сетки
    :type grid_logpdf: np.ndarray
    :param density_floor: Нижняя граница плотности
    :type density_floor: float
    """

    sorted_samples: np.ndarray
    grid_x: np.ndarray
    grid_logpdf: np.ndarray
    density_floor: float

    def __post_init__(self):
        samples = _frozen(self.sorted_samples)
        if samples.ndim != 1 or samples.size < 2:
            raise ValueError("Эмпирическое распределение требует не менее двух наблюдений")
        if np.any(np.diff(samples) < 0):
            raise ValueError("Выборка должна быть упорядочена по неубыванию")
        if self.density_floor <= 0:
            raise ValueError("Нижняя граница плотности должна быть положительной")

        grid_x = _frozen(self.grid_x)
        grid_logpdf = _frozen(self.grid_logpdf)
        if grid_x.shape != grid_logpdf.shape:
            raise ValueError("Сетка плотности повреждена")

        object.__setattr__(self, "sorted_samples", samples)
        object.__setattr__(self, "grid_x", grid_x)
        object.__setattr__(
            self, "grid_logpdf", _frozen(np.maximum(grid_logpdf, np.log(self.density_floor)))
        )

    @property
    def n(self) -> int:
        return self.sorted_samples.size

    def __repr__(self):
        return "EmpiricalMarginal(n={}, range=[{:.6g}, {:.6g}])".format(
            self.n, self.sorted_samples[0], self.sorted_samples[-1]
        )


Marginal: TypeAlias = ParametricMarginal | EmpiricalMarginal


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """
    Корреляционная матрица копулы вместе с множителем Холецкого.

    Экземпляры создаются через ``copula.make_correlation``, которая
    проверяет симметричность, единичную диагональ и положительную определённость.

    :param entries: Матрица d×d
    :param chol: Нижнетреугольный множитель Холецкого
    :param logdet: ln|ρ| = 2·Σ ln chol[i][i]
    :param repaired: Была ли применена коррекция до ближайшей положительно определённой
    """

    entries: np.ndarray
    chol: np.ndarray
    logdet: float
    repaired: bool = False

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))
        object.__setattr__(self, "chol", _frozen(self.chol))
        object.__setattr__(self, "logdet", float(self.logdet))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __repr__(self):
        return "CorrelationMatrix(dim={}, logdet={:.6g}, repaired={})".format(
            self.dim, self.logdet, self.repaired
        )


@dataclass(frozen=True, eq=False)
class CopulaModel:
    """
    Параметрическая копула: гауссова {ρ} или Стьюдента {ρ, ν}.

    :param kind: Вид копулы
    :type kind: CopulaKind
    :param rho: Корреляционная матрица
    :type rho: CorrelationMatrix
    :param nu: Число степеней свободы (только для копулы Стьюдента, ν > 2)
    :type nu: float | None
    """

    kind: CopulaKind
    rho: CorrelationMatrix
    nu: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", CopulaKind(self.kind))
        if self.kind is CopulaKind.STUDENT_T:
            if self.nu is None or not self.nu > 2:
                raise ValueError(f"Копула Стьюдента требует ν > 2 (nu={self.nu})")
            object.__setattr__(self, "nu", float(self.nu))
        elif self.nu is not None:
            raise ValueError("Гауссова копула не имеет параметра ν")

    @property
    def dim(self) -> int:
        return self.rho.dim

    def __repr__(self):
        nu = f", nu={self.nu:.6g}" if self.nu is not None else ""
        return f"CopulaModel({self.kind}, dim={self.dim}{nu})"


@dataclass(frozen=True)
class FitReport:
    """
    Результат оценки копулы.

    :param model: Оценённая копула
    :param loglik: Сумма логарифмов плотности копулы по выборке
    :param iterations: Число итераций оптимизатора (0 для явных формул)
    :param repaired: Применялась ли коррекция корреляционной матрицы
    :param converged: Сошёлся ли оптимизатор (иначе model — лучшее найденное)
    """

    model: CopulaModel
    loglik: float
    iterations: int
    repaired: bool
    converged: bool = True


@dataclass(frozen=True, eq=False)
class ClassModel:
    """
    Модель класса для копула-дискриминанта: маргиналы, копула и априорная вероятность.

    :param label: Метка класса
    :type label: int
    :param prior: Априорная вероятность P(ω_i), 0 < prior ≤ 1
    :type prior: float
    :param marginals: Маргиналы по признакам (длина равна размерности копулы)
    :type marginals: tuple[Marginal, ...]
    :param copula: Копула класса
    :type copula: CopulaModel
    """

    label: int
    prior: float
    marginals: tuple[Marginal, ...]
    copula: CopulaModel

    def __post_init__(self):
        object.__setattr__(self, "marginals", tuple(self.marginals))
        if len(self.marginals) != self.copula.dim:
            raise ValueError(
                f"Число маргиналов ({len(self.marginals)}) не совпадает с размерностью копулы ({self.copula.dim})"
            )
        if not 0 < self.prior <= 1:
            raise ValueError(f"Априорная вероятность вне (0, 1]: {self.prior}")

    @property
    def dim(self) -> int:
        return len(self.marginals)


@dataclass(frozen=True, eq=False)
class NormalClassModel:
    """
    Модель класса для нормального дискриминанта N(μ_i, Σ_i).

    :param label: Метка класса
    :param prior: Априорная вероятность
    :param mean: Вектор средних
    :param covariance: Ковариационная матрица (после регуляризации)
    :param chol: Множитель Холецкого ковариации
    :param logdet: ln|Σ|
    :param ridge: Добавка к диагонали (0, если не понадобилась)
    """

    label: int
    prior: float
    mean: np.ndarray
    covariance: np.ndarray
    chol: np.ndarray
    logdet: float
    ridge: float = 0.0

    def __post_init__(self):
        for name in ("mean", "covariance", "chol"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        if not 0 < self.prior <= 1:
            raise ValueError(f"Априорная вероятность вне (0, 1]: {self.prior}")
        d = self.mean.size
        if self.covariance.shape != (d, d) or self.chol.shape != (d, d):
            raise ValueError("Размерности среднего и ковариации не согласованы")

    @property
    def dim(self) -> int:
        return self.mean.size


@dataclass(frozen=True, eq=False)
class Standardization:
    """Центрирование и масштаб признаков, применяемые перед дискриминантом."""

    center: np.ndarray
    scale: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "center", _frozen(self.center))
        object.__setattr__(self, "scale", _frozen(self.scale))
        if np.any(self.scale <= 0):
            raise ValueError("Масштаб стандартизации должен быть положительным")

    def apply(self, x: np.ndarray) -> np.ndarray:
        return (x - self.center) / self.scale


class ClassifierKind(StrEnum):
    COPULA = "copula"
    NORMAL = "normal"


@dataclass(frozen=True, eq=False)
class Classifier:
    """
    Обученный байесовский классификатор из c ≥ 2 однородных моделей классов.

    :param kind: Вид дискриминанта
    :type kind: ClassifierKind
    :param classes: Модели классов (порядок определяет правило разрешения ничьих)
    :type classes: tuple[ClassModel, ...] | tuple[NormalClassModel, ...]
    :param standardization: Предобработка признаков (только для нормального дискриминанта)
    :type standardization: Standardization | None
    """

    kind: ClassifierKind
    classes: tuple[ClassModel, ...] | tuple[NormalClassModel, ...]
    standardization: Standardization | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ClassifierKind(self.kind))
        object.__setattr__(self, "classes", tuple(self.classes))

        expected = ClassModel if self.kind is ClassifierKind.COPULA else NormalClassModel
        if len(self.classes) < 2:
            raise ValueError("Классификатор требует не менее двух классов")
        if not all(isinstance(m, expected) for m in self.classes):
            raise TypeError(f"Все классы должны иметь тип {expected.__name__}")
        if len({m.dim for m in self.classes}) != 1:
            raise ValueError("Все классы должны иметь одинаковую размерность")
        if len({m.label for m in self.classes}) != len(self.classes):
            raise ValueError("Метки классов должны быть уникальны")
        total = sum(m.prior for m in self.classes)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"Сумма априорных вероятностей равна {total}, а не 1")
        if self.standardization is not None and self.standardization.center.size != self.dim:
            raise ValueError("Размерность стандартизации не совпадает с размерностью модели")

    @property
    def dim(self) -> int:
        return self.classes[0].dim

    @property
    def labels(self) -> list[int]:
        return [m.label for m in self.classes]

    def __repr__(self):
        return "Classifier(kind={}, classes={}, dim={})".format(
            self.kind, self.labels, self.dim
        )


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Размеченная выборка N×d вместе со спецификацией, по которой она построена.

    :param features: Матрица признаков N×d
    :param labels: Метки классов длины N
    :param spec: Спецификация генератора (None для внешних данных)
    """

    features: np.ndarray
    labels: np.ndarray
    spec: DatasetSpec | None = None

    def __post_init__(self):
        features = _frozen(self.features)
        if features.ndim == 1:
            features = _frozen(features.reshape(-1, 1))
        labels = _frozen(self.labels, dtype=np.int64)
        if features.ndim != 2 or labels.shape != (features.shape[0],):
            raise ValueError(
                f"Несогласованные размеры: features={features.shape}, labels={labels.shape}"
            )
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def dim(self) -> int:
        return self.features.shape[1]

    def subset(self, index: np.ndarray) -> "Dataset":
        return Dataset(self.features[index], self.labels[index], self.spec)

    def __repr__(self):
        return "Dataset(n={}, dim={}, classes={})".format(
            self.n, self.dim, sorted(set(self.labels.tolist()))
        )
