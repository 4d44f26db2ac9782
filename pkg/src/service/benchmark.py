import asyncio
import math
from itertools import product
from dataclasses import dataclass, field

import numpy as np
from loguru import logger

from ..manager.pipeline import Pipeline
from ..manager.datagen import derive_seed, table1_preset
from ..core import BenchConfig, Dataset

METHODS = ("copula", "normal")


@dataclass
class BenchReport:
    """
    Итог сравнительного прогона.

    :param rows: Строки {preset, dim, rep, method, accuracy}, упорядоченные по ключу
    :param failures: Описания упавших этапов
    :param summary: Средние точности по (preset, dim, method)
    """

    rows: list[dict] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    summary: list[dict] = field(default_factory=list)


class Benchmark:
    """
    Сервис сравнительного прогона копула-дискриминанта и нормального дискриминанта.

    Для каждой комбинации (пресет, размерность, повтор) генерирует набор данных,
    разбивает его 70/30, обучает обе модели и оценивает их на проверочной части.
    Задания выполняются в рабочих потоках, их число ограничено ``workers``;
    порядок строк результата от расписания не зависит.

    :param pipeline: Фасад бизнес-логики
    :type pipeline: Pipeline
    :param cfg: Параметры прогона
    :type cfg: BenchConfig
    """

    def __init__(self, pipeline: Pipeline, cfg: BenchConfig) -> None:
        self.pipeline = pipeline
        self.cfg = cfg

    async def start(self) -> BenchReport:
        """
        Запускает все задания прогона и собирает отчёт.

        Ошибка любого этапа записывается в строку результата (accuracy = nan)
        и в список отказов, прогон при этом продолжается.

        :return: Отчёт с упорядоченными строками, отказами и средними
        :rtype: BenchReport
        """
        jobs = list(product(self.cfg.presets, self.cfg.dims, range(1, self.cfg.reps + 1)))
        logger.info(f"Запуск сравнительного прогона: {len(jobs)} заданий, потоков {self.cfg.workers}")

        semaphore = asyncio.Semaphore(self.cfg.workers)

        async def run(job: tuple[int, int, int]):
            async with semaphore:
                return await asyncio.to_thread(self._run_job, *job)

        results = await asyncio.gather(*[run(job) for job in jobs])

        report = BenchReport()
        for rows, failures in results:
            report.rows.extend(rows)
            report.failures.extend(failures)
        report.rows.sort(key=lambda r: (r["preset"], r["dim"], r["rep"], r["method"]))
        report.summary = self.summarize(report.rows)

        if report.failures:
            logger.warning(f"Прогон завершён с отказами: {len(report.failures)}")
        else:
            logger.success(f"Прогон завершён: {len(report.rows)} строк")
        return report

    def _run_job(self, preset: int, dim: int, rep: int) -> tuple[list[dict], list[str]]:
        """
        Одно задание: генерация, разбиение, обучение и оценка обоих методов.

        :return: Строки результата и описания отказов
        """
        seed = derive_seed(self.cfg.seed, preset, dim, rep)
        key = {"preset": preset, "dim": dim, "rep": rep}
        failures: list[str] = []

        def fail(method: str, stage: str, message: str) -> dict:
            failures.append(f"preset={preset} dim={dim} rep={rep} method={method} stage={stage}: {message}")
            return {**key, "method": method, "accuracy": math.nan}

        try:
            spec = table1_preset(preset, dim, self.cfg.n_samples, seed)
        except ValueError as e:
            return [fail(method, "spec", str(e)) for method in METHODS], failures

        generated = self.pipeline.generate(spec)
        if not generated.success:
            return [fail(method, "gen", generated.message) for method in METHODS], failures

        parts = self.pipeline.split(generated.item, spec.split, seed)
        if not parts.success:
            return [fail(method, "split", parts.message) for method in METHODS], failures
        train, test = parts.item

        rows = []
        for method in METHODS:
            trained = (
                self.pipeline.train(train, self.cfg.classifier)
                if method == "copula"
                else self.pipeline.train_baseline(train, self.cfg.normal)
            )
            if not trained.success:
                rows.append(fail(method, "train", trained.message))
                continue
            rows.append(self._evaluate(trained.item.classifier, test, key, method, fail))
        return rows, failures

    def _evaluate(self, clf, test: Dataset, key: dict, method: str, fail) -> dict:
        evaluated = self.pipeline.evaluate(clf, test)
        if not evaluated.success:
            return fail(method, "eval", evaluated.message)
        return {**key, "method": method, "accuracy": evaluated.item.accuracy}

    @staticmethod
    def summarize(rows: list[dict]) -> list[dict]:
        """
        Средние точности по (preset, dim, method) без учёта упавших строк.

        :param rows: Строки результата
        :return: Записи {preset, dim, method, mean, count}, mean = nan если успешных строк нет
        """
        groups: dict[tuple[int, int, str], list[float]] = {}
        for row in rows:
            groups.setdefault((row["preset"], row["dim"], row["method"]), []).append(row["accuracy"])

        summary = []
        for (preset, dim, method), values in sorted(groups.items()):
            finite = [v for v in values if not math.isnan(v)]
            summary.append(
                {
                    "preset": preset,
                    "dim": dim,
                    "method": method,
                    "mean": float(np.mean(finite)) if finite else math.nan,
                    "count": len(finite),
                }
            )
        return summary
