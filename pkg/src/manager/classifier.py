"""
Дискриминантные функции и байесовское решающее правило.

Копула-дискриминант: g_i(x) = ln cⁱ(F₁(x₁), …, F_d(x_d)) + Σ ln f_k(x_k) + ln P(ω_i).
Нормальный дискриминант: g_i(x) = −½(x−μ_i)′Σ_i⁻¹(x−μ_i) − (d/2)ln 2π − ½ ln|Σ_i| + ln P(ω_i).
"""

import numpy as np
from scipy import linalg
from loguru import logger

from . import marginals as margins
from .copula import U_EPS, copula_logdensity
from .estimation import eml_fit_gaussian, cml_fit_gaussian, cml_fit_t
from ..core import (
    config,
    DimensionMismatchError,
    DomainError,
    TooFewSamplesError,
    ClassModel,
    Classifier,
    ClassifierConfig,
    ClassifierKind,
    CopulaKind,
    Dataset,
    Evaluation,
    FitReport,
    Marginal,
    NormalClassModel,
    NormalConfig,
    Standardization,
)

__all__ = [
    "copula_discriminant",
    "normal_discriminant",
    "discriminants",
    "decision_rule",
    "classify",
    "predict",
    "fit_copula_classifier",
    "train_copula_classifier",
    "train_normal_classifier",
    "evaluate",
]

_HALF_LOG_2PI = 0.5 * np.log(2 * np.pi)


def _points(x, dim: int) -> np.ndarray:
    arr = np.atleast_2d(np.asarray(x, dtype=float))
    if arr.shape[-1] != dim:
        raise DimensionMismatchError(f"Размерность данных {arr.shape[-1]} не совпадает с размерностью модели {dim}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("Точки должны быть конечными")
    return arr


def _wrap(values: np.ndarray, x):
    return float(values[0]) if np.ndim(x) == 1 else values


def _pseudo_observations(marginals: tuple[Marginal, ...], points: np.ndarray) -> np.ndarray:
    u = np.column_stack(
        [margins.cdf(m, points[:, j], strict=False) for j, m in enumerate(marginals)]
    )
    return np.clip(u, U_EPS, 1 - U_EPS)


def copula_discriminant(model: ClassModel, x):
    """
    Копула-дискриминант класса.

    u_j = F_j(x_j) прижимаются внутрь (0, 1), логарифмы маргинальных плотностей
    ограничены снизу ln(config.DENSITY_FLOOR), поэтому значение всегда конечно.

    :param model: Модель класса
    :param x: Вектор длины d или матрица n×d
    :return: float для вектора, массив длины n для матрицы
    """
    points = _points(x, model.dim)
    u = _pseudo_observations(model.marginals, points)
    floor = np.log(config.DENSITY_FLOOR)
    log_f = sum(
        np.maximum(margins.logpdf(m, points[:, j], strict=False), floor)
        for j, m in enumerate(model.marginals)
    )
    values = copula_logdensity(model.copula, u) + log_f + np.log(model.prior)
    return _wrap(np.asarray(values, dtype=float), x)


def normal_discriminant(model: NormalClassModel, x):
    """
    Нормальный дискриминант класса; квадратичная форма через решение с множителем Холецкого.

    :param model: Модель класса N(μ, Σ)
    :param x: Вектор длины d или матрица n×d
    """
    points = _points(x, model.dim)
    w = linalg.solve_triangular(model.chol, (points - model.mean).T, lower=True, check_finite=False)
    values = (
        -0.5 * np.sum(w * w, axis=0)
        - model.dim * _HALF_LOG_2PI
        - 0.5 * model.logdet
        + np.log(model.prior)
    )
    return _wrap(values, x)


def discriminants(clf: Classifier, x) -> np.ndarray:
    """
    Матрица значений дискриминантов n×c (столбцы в порядке ``clf.classes``).

    :param clf: Обученный классификатор
    :param x: Матрица n×d (или вектор длины d)
    """
    points = _points(x, clf.dim)
    if clf.standardization is not None:
        points = clf.standardization.apply(points)
    score = copula_discriminant if clf.kind is ClassifierKind.COPULA else normal_discriminant
    return np.column_stack([np.atleast_1d(score(model, points)) for model in clf.classes])


def decision_rule(scores) -> np.ndarray | int:
    """
    Индекс максимального дискриминанта; при равенстве выбирается меньший индекс.

    :param scores: Вектор длины c или матрица n×c
    """
    arr = np.asarray(scores, dtype=float)
    index = np.argmax(arr, axis=-1)
    return int(index) if arr.ndim == 1 else index


def predict(clf: Classifier, x) -> np.ndarray:
    """Метки классов для матрицы точек n×d."""
    labels = np.asarray(clf.labels, dtype=np.int64)
    return labels[decision_rule(discriminants(clf, x))]


def classify(clf: Classifier, x) -> int:
    """Метка класса для одной точки."""
    return int(predict(clf, np.asarray(x, dtype=float).reshape(1, -1))[0])


def _priors(counts: np.ndarray, uniform: bool) -> np.ndarray:
    if uniform:
        return np.full(counts.size, 1.0 / counts.size)
    return counts / counts.sum()


def _class_groups(data: Dataset, minimum: int) -> tuple[np.ndarray, list[np.ndarray]]:
    labels, counts = np.unique(data.labels, return_counts=True)
    if labels.size < 2:
        raise ValueError("Для обучения нужны наблюдения хотя бы двух классов")
    for label, count in zip(labels, counts):
        if count < minimum:
            raise TooFewSamplesError(
                f"В классе {label} {count} наблюдений, требуется не менее {minimum}"
            )
    return labels, [data.features[data.labels == label] for label in labels]


def _fit_marginals(points: np.ndarray, cfg: ClassifierConfig) -> tuple[Marginal, ...]:
    if cfg.marginal_mode == "empirical":
        return tuple(margins.fit_empirical(points[:, j]) for j in range(points.shape[1]))
    families = cfg.families
    return tuple(
        margins.fit_parametric(families[j % len(families)], points[:, j])
        for j in range(points.shape[1])
    )


def _fit_copula(points: np.ndarray, fitted: tuple[Marginal, ...], cfg: ClassifierConfig) -> FitReport:
    if cfg.copula_kind is CopulaKind.STUDENT_T:
        return cml_fit_t(points)
    if cfg.estimation == "cml":
        return cml_fit_gaussian(points)
    return eml_fit_gaussian(_pseudo_observations(fitted, points))


def fit_copula_classifier(
    data: Dataset, cfg: ClassifierConfig
) -> tuple[Classifier, dict[int, FitReport]]:
    """
    Обучает копула-дискриминант и возвращает отчёты об оценке копул по классам.

    Для каждого класса: подгонка маргиналов (параметрических или эмпирических),
    преобразование обучающих точек в псевдонаблюдения, оценка копулы
    (EML для гауссовой, CML для гауссовой или Стьюдента), априорная вероятность —
    частота класса или 1/c.

    :param data: Обучающая выборка
    :param cfg: Настройки обучения
    :return: Классификатор и словарь {метка: FitReport}
    :raises TooFewSamplesError: Если в каком-либо классе меньше config.MIN_SAMPLES наблюдений
    """
    labels, groups = _class_groups(data, config.MIN_SAMPLES)
    priors = _priors(np.array([g.shape[0] for g in groups], dtype=float), cfg.uniform_priors)

    models, reports = [], {}
    for label, points, prior in zip(labels, groups, priors):
        fitted = _fit_marginals(points, cfg)
        report = _fit_copula(points, fitted, cfg)
        logger.debug(
            f"Класс {label}: n={points.shape[0]}, loglik={report.loglik:.4f}, repaired={report.repaired}"
        )
        models.append(ClassModel(label=int(label), prior=float(prior), marginals=fitted, copula=report.model))
        reports[int(label)] = report

    return Classifier(kind=ClassifierKind.COPULA, classes=tuple(models)), reports


def train_copula_classifier(data: Dataset, cfg: ClassifierConfig | None = None) -> Classifier:
    """Обучает копула-дискриминант (см. ``fit_copula_classifier``)."""
    return fit_copula_classifier(data, cfg or ClassifierConfig())[0]


def _factorize(covariance: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    d = covariance.shape[0]
    try:
        return covariance, linalg.cholesky(covariance, lower=True), 0.0
    except linalg.LinAlgError:
        pass

    trace = float(np.trace(covariance))
    ridge = 1e-8 * (trace / d if trace > 0 else 1.0)
    for _ in range(12):
        regularized = covariance + ridge * np.eye(d)
        try:
            return regularized, linalg.cholesky(regularized, lower=True), ridge
        except linalg.LinAlgError:
            ridge *= 10
    raise DomainError("Не удалось регуляризовать ковариационную матрицу")


def train_normal_classifier(data: Dataset, cfg: NormalConfig | None = None) -> Classifier:
    """
    Обучает нормальный дискриминант.

    Среднее и ковариация класса с делителем N; если разложение Холецкого
    не удаётся, к диагонали добавляется 1e-8·trace/d.

    :param data: Обучающая выборка
    :param cfg: Настройки (равные априорные, стандартизация признаков)
    :return: Классификатор из NormalClassModel
    """
    cfg = cfg or NormalConfig()
    standardization = None
    features = data.features
    if cfg.standardize:
        scale = features.std(axis=0)
        standardization = Standardization(
            center=features.mean(axis=0), scale=np.where(scale > 0, scale, 1.0)
        )
        data = Dataset(standardization.apply(features), data.labels, data.spec)

    labels, groups = _class_groups(data, 1)
    priors = _priors(np.array([g.shape[0] for g in groups], dtype=float), cfg.uniform_priors)

    models = []
    for label, points, prior in zip(labels, groups, priors):
        mean = points.mean(axis=0)
        centered = points - mean
        covariance, chol, ridge = _factorize(centered.T @ centered / points.shape[0])
        if ridge:
            logger.warning(f"Класс {label}: ковариация вырождена, добавлена регуляризация {ridge:.3g}")
        models.append(
            NormalClassModel(
                label=int(label),
                prior=float(prior),
                mean=mean,
                covariance=covariance,
                chol=chol,
                logdet=2.0 * float(np.sum(np.log(np.diag(chol)))),
                ridge=ridge,
            )
        )
    return Classifier(kind=ClassifierKind.NORMAL, classes=tuple(models), standardization=standardization)


def evaluate(clf: Classifier, data: Dataset) -> Evaluation:
    """
    Точность и матрица ошибок на размеченной выборке.

    :param clf: Обученный классификатор
    :param data: Размеченная тестовая выборка
    :return: Evaluation (строки матрицы — истинный класс, столбцы — предсказанный)
    :raises DimensionMismatchError: Если размерности не совпадают
    """
    if data.n == 0:
        raise TooFewSamplesError("Тестовая выборка пуста")
    if data.dim != clf.dim:
        raise DimensionMismatchError(f"Размерность данных {data.dim} не совпадает с размерностью модели {clf.dim}")

    index = {label: i for i, label in enumerate(clf.labels)}
    unknown = set(data.labels.tolist()) - set(index)
    if unknown:
        raise DomainError(f"Метки {sorted(unknown)} отсутствуют в модели")

    predicted = predict(clf, data.features)
    confusion = np.zeros((len(index), len(index)), dtype=np.int64)
    for truth, guess in zip(data.labels.tolist(), predicted.tolist()):
        confusion[index[truth], index[guess]] += 1

    return Evaluation(
        accuracy=float(np.mean(predicted == data.labels)),
        confusion=confusion.tolist(),
        labels=list(clf.labels),
        n=data.n,
    )
