try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

from typing import Annotated, Any, Generic, Literal, Optional, TypeVar, Union

from pydantic import BaseModel, Field, field_validator, model_validator

__all__ = [
    "BaseResponse",
    "Family",
    "FAMILY_PARAMS",
    "CopulaKind",
    "CorrelationStructure",
    "MarginalSpec",
    "ClassCopulaSpec",
    "DatasetSpec",
    "ClassifierConfig",
    "NormalConfig",
    "ParametricMarginalDocument",
    "EmpiricalMarginalDocument",
    "CopulaDocument",
    "ClassModelDocument",
    "NormalClassModelDocument",
    "StandardizationDocument",
    "ClassifierDocument",
    "Evaluation",
    "BenchConfig",
    "RunManifest",
]

T = TypeVar("T")


class BaseResponse(BaseModel, Generic[T]):
    """
    Универсальная модель ответа для всех операций.

    Стандартизирует формат возвращаемых данных: статус успеха, сообщение и опциональные данные.

    :param success: Флаг успешности выполнения операции
    :type success: bool
    :param message: Описание результата операции (успех или причина ошибки)
    :type message: str
    :param item: Опциональные данные, возвращаемые при успехе (может быть None)
    :type item: Optional[T]
    """

    model_config = {"arbitrary_types_allowed": True}

    success: bool
    message: str
    item: Optional[T] = None


class Family(StrEnum):
    NORMAL = "normal"
    STUDENT_T = "student_t"
    GAMMA = "gamma"
    EXPONENTIAL = "exponential"
    LOGNORMAL = "lognormal"
    CHISQUARE = "chisquare"


FAMILY_PARAMS: dict[Family, tuple[str, ...]] = {
    Family.NORMAL: ("mu", "sigma"),
    Family.STUDENT_T: ("nu",),
    Family.GAMMA: ("shape", "scale"),
    Family.EXPONENTIAL: ("rate",),
    Family.LOGNORMAL: ("mu", "sigma"),
    Family.CHISQUARE: ("k",),
}

# параметры, которые могут быть любого знака
_SIGNED_PARAMS = {(Family.NORMAL, "mu"), (Family.LOGNORMAL, "mu")}


class CopulaKind(StrEnum):
    GAUSSIAN = "gaussian"
    STUDENT_T = "t"


class MarginalSpec(BaseModel):
    """
    Семейство и параметры маргинала генератора.

    Проверяет, что имена параметров соответствуют семейству, а
    масштабные параметры строго положительны.
    """

    family: Family
    params: dict[str, float]

    @model_validator(mode="after")
    def params_validator(self):
        expected = FAMILY_PARAMS[self.family]
        if set(self.params) != set(expected):
            raise ValueError(
                f"Семейство '{self.family}' ожидает параметры {expected}, получено {tuple(self.params)}"
            )
        for name, value in self.params.items():
            if (self.family, name) not in _SIGNED_PARAMS and not value > 0:
                raise ValueError(f"Параметр '{name}' семейства '{self.family}' должен быть > 0")
        return self


class CorrelationStructure(StrEnum):
    EXCHANGEABLE = "exchangeable"
    PAIRED = "paired"


class ClassCopulaSpec(BaseModel):
    """
    Копула одного класса генератора.

    :param kind: Вид копулы
    :param rho_off: Внедиагональная корреляция
    :param nu: Степени свободы (только для копулы Стьюдента)
    :param structure: Равные корреляции внутри блока или корреляция внутри пар (0, 1), (2, 3), …
    :param block: Число первых признаков, несущих корреляцию; остальные независимы. None означает все признаки
    """

    kind: CopulaKind = CopulaKind.GAUSSIAN
    rho_off: float = 0.0
    nu: float | None = None
    structure: CorrelationStructure = CorrelationStructure.EXCHANGEABLE
    block: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def nu_validator(self):
        if not -1 < self.rho_off < 1:
            raise ValueError(f"rho_off должен лежать в (-1, 1), получено {self.rho_off}")
        if self.kind is CopulaKind.STUDENT_T and (self.nu is None or not self.nu > 2):
            raise ValueError("Копула Стьюдента требует nu > 2")
        if self.kind is CopulaKind.GAUSSIAN and self.nu is not None:
            raise ValueError("Гауссова копула не принимает nu")
        return self


class DatasetSpec(BaseModel):
    """
    Спецификация синтетического набора данных.

    :param id: Номер строки таблицы пресетов (1..8) или None для произвольной спецификации
    :param dim: Размерность признакового пространства
    :param n_samples: Общее число наблюдений
    :param marginal_cycle: Семейства, назначаемые признакам по кругу
    :param class_copulas: Копулы классов (по одной на класс)
    :param balance: Доли классов (по умолчанию поровну)
    :param marginal_shift: Масштабный сдвиг маргиналов класса i: x ↦ (1 + shift·i)·x
    :param seed: Зерно генератора
    :param split: Доля обучающей выборки
    """

    id: int | None = None
    dim: int = Field(ge=1)
    n_samples: int = Field(ge=16)
    marginal_cycle: list[MarginalSpec] = Field(min_length=1)
    class_copulas: list[ClassCopulaSpec] = Field(min_length=2)
    balance: list[float] | None = None
    marginal_shift: float = 0.0
    seed: int = 0
    split: float = Field(default=0.7, gt=0, lt=1)

    @model_validator(mode="after")
    def balance_validator(self):
        if self.balance is None:
            self.balance = [1.0 / len(self.class_copulas)] * len(self.class_copulas)
        if len(self.balance) != len(self.class_copulas):
            raise ValueError("Число долей классов не совпадает с числом копул")
        if any(b <= 0 for b in self.balance) or abs(sum(self.balance) - 1) > 1e-9:
            raise ValueError("Доли классов должны быть положительными и в сумме давать 1")
        for spec in self.class_copulas:
            if spec.structure is not CorrelationStructure.EXCHANGEABLE:
                continue
            size = self.dim if spec.block is None else min(self.dim, spec.block)
            if size > 1 and spec.rho_off <= -1.0 / (size - 1):
                raise ValueError(
                    f"Равнокоррелированный блок размерности {size} требует rho_off > {-1.0 / (size - 1):.4g}"
                )
        if self.marginal_shift != 0.0 and 1 + self.marginal_shift * (len(self.class_copulas) - 1) <= 0:
            raise ValueError("marginal_shift делает масштаб класса неположительным")
        return self


class ClassifierConfig(BaseModel):
    """
    Настройки обучения копула-дискриминанта.

    :param copula_kind: Вид копулы
    :param marginal_mode: Параметрические или эмпирические маргиналы
    :param families: Семейства для параметрического режима (назначаются по кругу)
    :param estimation: EML (через подогнанные маргиналы) или CML (ранговые псевдонаблюдения)
    :param uniform_priors: Равные априорные вероятности вместо частот классов
    """

    copula_kind: CopulaKind = CopulaKind.GAUSSIAN
    marginal_mode: Literal["parametric", "empirical"] = "empirical"
    families: list[Family] | None = None
    estimation: Literal["eml", "cml"] = "eml"
    uniform_priors: bool = False

    @model_validator(mode="after")
    def mode_validator(self):
        if self.marginal_mode == "parametric" and not self.families:
            raise ValueError("Параметрический режим требует список семейств")
        if self.copula_kind is CopulaKind.STUDENT_T and self.estimation == "eml":
            raise ValueError(
                "Совместная EML-оценка копулы Стьюдента не поддерживается, используйте estimation='cml'"
            )
        return self


class NormalConfig(BaseModel):
    """Настройки нормального дискриминанта."""

    uniform_priors: bool = False
    standardize: bool = False


class ParametricMarginalDocument(BaseModel):
    type: Literal["parametric"] = "parametric"
    family: Family
    params: dict[str, float]


class EmpiricalMarginalDocument(BaseModel):
    type: Literal["empirical"] = "empirical"
    sorted_samples: list[float]
    grid_x: list[float]
    grid_logpdf: list[float]
    density_floor: float


MarginalDocument = Annotated[
    Union[ParametricMarginalDocument, EmpiricalMarginalDocument],
    Field(discriminator="type"),
]


class CopulaDocument(BaseModel):
    kind: CopulaKind
    rho: list[list[float]]
    nu: float | None = None
    repaired: bool = False

    @field_validator("rho")
    def rho_validator(cls, v: Any):
        if not v or any(len(row) != len(v) for row in v):
            raise ValueError("Корреляционная матрица должна быть квадратной")
        return v


class ClassModelDocument(BaseModel):
    type: Literal["copula"] = "copula"
    label: int
    prior: float
    marginals: list[MarginalDocument]
    copula: CopulaDocument


class NormalClassModelDocument(BaseModel):
    type: Literal["normal"] = "normal"
    label: int
    prior: float
    mean: list[float]
    covariance: list[list[float]]
    ridge: float = 0.0


class StandardizationDocument(BaseModel):
    center: list[float]
    scale: list[float]


class ClassifierDocument(BaseModel):
    """
    Сериализованный классификатор (JSON-документ модели).

    Хранит вид дискриминанта, априорные вероятности, маргиналы (семейство и параметры
    или эмпирические сетки), корреляционные матрицы построчно и ν при наличии.
    """

    format_version: int = 1
    kind: Literal["copula", "normal"]
    classes: list[
        Annotated[
            Union[ClassModelDocument, NormalClassModelDocument],
            Field(discriminator="type"),
        ]
    ]
    standardization: StandardizationDocument | None = None

    @model_validator(mode="after")
    def classes_validator(self):
        if any(c.type != self.kind for c in self.classes):
            raise ValueError("Документ модели смешивает разные виды классов")
        return self


class Evaluation(BaseModel):
    """
    Результат проверки классификатора на размеченной выборке.

    :param accuracy: Доля верных ответов
    :param confusion: Матрица ошибок c×c (строки — истинный класс, столбцы — предсказанный)
    :param labels: Порядок классов в матрице ошибок
    :param n: Размер выборки
    """

    accuracy: float = Field(ge=0, le=1)
    confusion: list[list[int]]
    labels: list[int]
    n: int

    @property
    def percent(self) -> str:
        return f"{100 * self.accuracy:.2f}"


class BenchConfig(BaseModel):
    """Параметры сравнительного прогона (пресеты × размерности × повторы)."""

    presets: list[int] = Field(default_factory=lambda: [1], min_length=1)
    dims: list[int] = Field(default_factory=lambda: [10, 25, 50, 100], min_length=1)
    reps: int = Field(default=10, ge=1)
    n_samples: int = Field(default=4000, ge=16)
    seed: int = 0
    classifier: ClassifierConfig = Field(default_factory=ClassifierConfig)
    normal: NormalConfig = Field(default_factory=NormalConfig)
    workers: int = Field(default=1, ge=1)

    @field_validator("dims")
    def dims_validator(cls, v: list[int]):
        if any(d < 2 for d in v):
            raise ValueError("Все размерности должны быть не меньше 2")
        return v


class RunManifest(BaseModel):
    """
    Манифест запуска: полная разрешённая конфигурация команды.

    Повторный запуск с теми же параметрами воспроизводит результаты побайтно.
    """

    command: str
    seed: int | None = None
    config: dict[str, Any]
    inputs: list[str] = []
    outputs: list[str] = []
    failures: list[str] = []
