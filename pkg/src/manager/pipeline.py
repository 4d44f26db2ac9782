from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from loguru import logger

from .tools import except_handler
from .storage import DatasetStore, ModelStore
from .datagen import generate, train_test_split
from .classifier import (
    discriminants,
    evaluate,
    fit_copula_classifier,
    predict,
    train_normal_classifier,
)
from ..core import (
    BaseResponse,
    Classifier,
    ClassifierConfig,
    Dataset,
    DatasetSpec,
    Evaluation,
    FitReport,
    NormalConfig,
    RunManifest,
)


@dataclass(frozen=True)
class TrainResult:
    """
    Результат обучения: классификатор и отчёты об оценке копул по классам.

    :param classifier: Обученный классификатор
    :param reports: Отчёты {метка: FitReport} (пусто для нормального дискриминанта)
    """

    classifier: Classifier
    reports: dict[int, FitReport] = field(default_factory=dict)

    def summary(self) -> list[str]:
        """Строки сводки по классам: априорная вероятность, loglik, ν̂, коррекция ρ."""
        lines = []
        for model in self.classifier.classes:
            line = f"class {model.label}: prior={model.prior:.4f}"
            report = self.reports.get(model.label)
            if report is not None:
                line += f", loglik={report.loglik:.4f}, repaired={report.repaired}"
                if report.model.nu is not None:
                    line += f", nu={report.model.nu:.4f}, iterations={report.iterations}, converged={report.converged}"
            elif hasattr(model, "ridge"):
                line += f", ridge={model.ridge:.3g}"
            lines.append(line)
        return lines


class Pipeline:
    """
    Основной класс бизнес-логики: генерация данных, обучение, предсказание и оценка.

    Инкапсулирует работу с генератором, классификаторами и хранилищами,
    логирует ход операций и возвращает результаты в виде BaseResponse, так что
    ошибки оценивания и ввода-вывода не прерывают вызывающий код.

    :param models: Хранилище моделей
    :type models: ModelStore
    :param datasets: Хранилище наборов данных и отчётов
    :type datasets: DatasetStore
    """

    def __init__(self, models: ModelStore | None = None, datasets: DatasetStore | None = None):
        self.models = models or ModelStore()
        self.datasets = datasets or DatasetStore()

    @except_handler
    def generate(self, spec: DatasetSpec) -> BaseResponse[Dataset]:
        """
        Генерирует синтетический набор данных.

        :param spec: Спецификация набора
        :type spec: DatasetSpec
        :return: Объект ответа с набором данных
        :rtype: BaseResponse[Dataset]
        """
        logger.info(
            "Попытка сгенерировать набор (preset={}, dim={}, n={}, seed={})".format(
                spec.id, spec.dim, spec.n_samples, spec.seed
            )
        )
        data = generate(spec)
        logger.success(f"Набор сгенерирован ({data})")
        return BaseResponse(success=True, message="Набор сгенерирован", item=data)

    @except_handler
    def split(self, data: Dataset, fraction: float, seed: int) -> BaseResponse[tuple[Dataset, Dataset]]:
        train, test = train_test_split(data, fraction, seed)
        logger.info(f"Разбиение: обучение {train.n}, проверка {test.n} (seed={seed})")
        return BaseResponse(success=True, message="Набор разбит", item=(train, test))

    @except_handler
    def train(self, data: Dataset, cfg: ClassifierConfig) -> BaseResponse[TrainResult]:
        """
        Обучает копула-дискриминант.

        :param data: Обучающая выборка
        :type data: Dataset
        :param cfg: Настройки (копула, маргиналы, метод оценки, априорные)
        :type cfg: ClassifierConfig
        :return: Объект ответа с классификатором и отчётами по классам
        :rtype: BaseResponse[TrainResult]
        """
        logger.info(
            "Попытка обучить копула-дискриминант (copula={}, marginals={}, estimation={}, n={}, dim={})".format(
                cfg.copula_kind, cfg.marginal_mode, cfg.estimation, data.n, data.dim
            )
        )
        classifier, reports = fit_copula_classifier(data, cfg)
        for report in reports.values():
            if report.repaired:
                logger.warning("Корреляционная матрица класса исправлена до положительно определённой")
            if not report.converged:
                logger.warning("Оценка ν не сошлась, используется лучшее найденное значение")
        logger.success(f"Копула-дискриминант обучен ({classifier})")
        return BaseResponse(success=True, message="Модель обучена", item=TrainResult(classifier, reports))

    @except_handler
    def train_baseline(self, data: Dataset, cfg: NormalConfig) -> BaseResponse[TrainResult]:
        """
        Обучает нормальный дискриминант.

        :param data: Обучающая выборка
        :param cfg: Настройки нормального дискриминанта
        :return: Объект ответа с классификатором
        :rtype: BaseResponse[TrainResult]
        """
        logger.info(f"Попытка обучить нормальный дискриминант (n={data.n}, dim={data.dim}, standardize={cfg.standardize})")
        classifier = train_normal_classifier(data, cfg)
        logger.success(f"Нормальный дискриминант обучен ({classifier})")
        return BaseResponse(success=True, message="Модель обучена", item=TrainResult(classifier))

    @except_handler
    def predict(self, clf: Classifier, features: np.ndarray) -> BaseResponse[np.ndarray]:
        logger.info(f"Попытка классифицировать {len(features)} точек")
        labels = predict(clf, features)
        logger.success("Классификация завершена")
        return BaseResponse(success=True, message="Предсказания получены", item=labels)

    @except_handler
    def evaluate(self, clf: Classifier, data: Dataset) -> BaseResponse[Evaluation]:
        """
        Проверяет классификатор на размеченной выборке.

        :return: Объект ответа с точностью и матрицей ошибок
        :rtype: BaseResponse[Evaluation]
        """
        logger.info(f"Попытка оценить модель на {data.n} точках")
        result = evaluate(clf, data)
        logger.success(f"Точность {result.percent}%")
        return BaseResponse(success=True, message="Модель оценена", item=result)

    @except_handler
    def read_dataset(self, path: Path) -> BaseResponse[Dataset]:
        data = self.datasets.read_dataset(path)
        logger.info(f"Прочитан набор {data} из {path}")
        return BaseResponse(success=True, message="Набор прочитан", item=data)

    @except_handler
    def read_features(self, path: Path) -> BaseResponse[np.ndarray]:
        features = self.datasets.read_features(path)
        return BaseResponse(success=True, message="Признаки прочитаны", item=features)

    @except_handler
    def save_model(self, clf: Classifier, path: Path) -> BaseResponse[Path]:
        path = self.models.save(clf, path)
        logger.success(f"Модель сохранена ({path})")
        return BaseResponse(success=True, message="Модель сохранена", item=path)

    @except_handler
    def load_model(self, path: Path) -> BaseResponse[Classifier]:
        clf = self.models.load(path)
        logger.info(f"Загружена модель {clf} из {path}")
        return BaseResponse(success=True, message="Модель загружена", item=clf)

    @except_handler
    def scores(self, clf: Classifier, features: np.ndarray) -> BaseResponse[np.ndarray]:
        """Матрица значений дискриминантов n×c (столбцы в порядке классов модели)."""
        return BaseResponse(success=True, message="Дискриминанты вычислены", item=discriminants(clf, features))

    @except_handler
    def write_dataset(self, data: Dataset, path: Path) -> BaseResponse[Path]:
        path = self.datasets.write_dataset(data, path)
        logger.success(f"Набор записан ({path})")
        return BaseResponse(success=True, message="Набор записан", item=path)

    @except_handler
    def write_predictions(self, labels: np.ndarray, path: Path) -> BaseResponse[Path]:
        path = self.datasets.write_predictions(labels, path)
        return BaseResponse(success=True, message="Предсказания записаны", item=path)

    @except_handler
    def write_scores(self, clf: Classifier, scores: np.ndarray, path: Path) -> BaseResponse[Path]:
        path = self.datasets.write_scores(scores, clf.labels, path)
        return BaseResponse(success=True, message="Дискриминанты записаны", item=path)

    @except_handler
    def write_results(self, rows: list[dict], path: Path) -> BaseResponse[Path]:
        path = self.datasets.write_results(rows, path)
        logger.success(f"Таблица результатов записана ({path})")
        return BaseResponse(success=True, message="Результаты записаны", item=path)

    @except_handler
    def write_manifest(self, manifest: RunManifest, output: Path) -> BaseResponse[Path]:
        """
        Сохраняет манифест запуска рядом с артефактом.

        :param manifest: Манифест с разрешённой конфигурацией
        :param output: Путь основного артефакта команды
        :return: Объект ответа с путём манифеста
        :rtype: BaseResponse[Path]
        """
        path = self.datasets.write_manifest(manifest, output)
        logger.debug(f"Манифест записан ({path})")
        return BaseResponse(success=True, message="Манифест записан", item=path)
