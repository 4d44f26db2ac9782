import asyncio
import argparse
import math
from pathlib import Path

from .base import BaseCommand
from ._defaults import SUMMARY_HEADER, add_classifier_arguments, classifier_config, normal_config
from ...service.benchmark import Benchmark
from ...core import BenchConfig, config


class Bench(BaseCommand):
    """
    Подкоманда сравнительного прогона копула-дискриминанта и нормального дискриминанта.

    Пишет таблицу ``preset,dim,rep,method,accuracy`` и печатает средние
    точности по (preset, dim, method). Отказы отдельных заданий не прерывают
    прогон, но дают ненулевой код возврата.
    """

    name = "bench"
    help = "Сравнительный прогон по пресетам и размерностям"

    def connect_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--presets", type=int, nargs="+", default=[1], help="Пресеты маргиналов")
        parser.add_argument("--dims", type=int, nargs="+", default=[10, 25, 50, 100], help="Размерности")
        parser.add_argument("--reps", type=int, default=10, help="Число повторов")
        parser.add_argument("--n", type=int, default=4000, help="Число наблюдений в наборе")
        parser.add_argument("--workers", type=int, default=config.BENCH_WORKERS, help="Число параллельных заданий")
        parser.add_argument("-o", "--output", type=Path, required=True, help="CSV-таблица результатов")
        add_classifier_arguments(parser)

    def handle(self, args: argparse.Namespace) -> int:
        try:
            cfg = BenchConfig(
                presets=args.presets,
                dims=args.dims,
                reps=args.reps,
                n_samples=args.n,
                seed=args.seed,
                classifier=classifier_config(args),
                normal=normal_config(args),
                workers=args.workers,
            )
        except ValueError as e:
            return self.fail(f"неверные настройки прогона ({e})")

        report = asyncio.run(Benchmark(self.pipeline, cfg).start())

        written = self.pipeline.write_results(report.rows, args.output)
        if not written.success:
            return self.fail(written.message)
        manifest = self.manifest(
            args,
            args.output,
            cfg.model_dump(mode="json"),
            failures=report.failures,
        )
        if not manifest.success:
            return self.fail(manifest.message)

        print(SUMMARY_HEADER)
        for row in report.summary:
            mean = "nan" if math.isnan(row["mean"]) else f"{100 * row['mean']:.2f}"
            print(f"{row['preset']},{row['dim']},{row['method']},{mean},{row['count']}")

        if report.failures:
            return self.fail(f"{len(report.failures)} заданий завершились ошибкой, см. манифест")
        return 0
