import argparse
from pathlib import Path

from loguru import logger

from .base import BaseCommand
from ._defaults import parse_marginal
from ...manager.datagen import DEFAULT_RHO_OFF, INFORMATIVE_FEATURES, table1_preset
from ...core import ClassCopulaSpec, CopulaKind, CorrelationStructure, DatasetSpec


def split_paths(output: Path) -> tuple[Path, Path]:
    """Пути ``<имя>-train`` и ``<имя>-test`` рядом с основным файлом."""
    return (
        output.with_name(f"{output.stem}-train{output.suffix}"),
        output.with_name(f"{output.stem}-test{output.suffix}"),
    )


class Gen(BaseCommand):
    """
    Подкоманда генерации синтетического набора данных.

    Набор задаётся пресетом (номер строки таблицы маргиналов) или явным
    списком семейств; копулы классов и их параметры настраиваются флагами.
    С флагом ``--split`` дополнительно пишутся обучающая и проверочная части.
    """

    name = "gen"
    help = "Сгенерировать синтетический набор данных"

    def connect_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--preset", type=int, help="Номер пресета маргиналов 1..8")
        parser.add_argument("--dim", type=int, default=100, help="Размерность (по умолчанию 100)")
        parser.add_argument("--n", type=int, default=4000, help="Число наблюдений (по умолчанию 4000)")
        parser.add_argument("-o", "--output", type=Path, required=True, help="CSV-файл набора")
        parser.add_argument("--split", action="store_true", help="Записать также части -train и -test (70/30)")
        parser.add_argument(
            "--families",
            nargs="+",
            metavar="FAMILY:PARAMS",
            help="Маргиналы по кругу, например gamma:shape=4,scale=2 exponential:rate=0.7",
        )
        parser.add_argument("--rho-off", type=float, nargs="+", help="Внедиагональные корреляции копул классов")
        parser.add_argument("--copula", choices=[k.value for k in CopulaKind], default=CopulaKind.GAUSSIAN.value)
        parser.add_argument("--nu", type=float, help="Степени свободы копулы Стьюдента")
        parser.add_argument(
            "--structure",
            choices=[s.value for s in CorrelationStructure],
            default=CorrelationStructure.PAIRED.value,
            help="Корреляция внутри пар признаков или равная внутри блока",
        )
        parser.add_argument(
            "--block",
            type=int,
            default=INFORMATIVE_FEATURES,
            help=f"Число первых признаков, несущих корреляцию (по умолчанию {INFORMATIVE_FEATURES})",
        )
        parser.add_argument("--marginal-shift", type=float, default=0.0, help="Масштабный сдвиг маргиналов между классами")
        parser.add_argument("--balance", type=float, nargs="+", help="Доли классов")

    def build_spec(self, args: argparse.Namespace) -> DatasetSpec:
        """
        Разрешает аргументы в спецификацию набора.

        :raises ValueError: Для неизвестного пресета и недопустимых параметров
        """
        if args.families and args.preset is not None:
            raise ValueError("--preset и --families взаимоисключающие")
        if args.families:
            marginals = [parse_marginal(text) for text in args.families]
        elif args.preset is not None:
            marginals = table1_preset(args.preset, args.dim, args.n, args.seed).marginal_cycle
        else:
            raise ValueError("Укажите --preset или --families")

        kind = CopulaKind(args.copula)
        copulas = [
            ClassCopulaSpec(
                kind=kind,
                rho_off=rho,
                nu=args.nu,
                structure=CorrelationStructure(args.structure),
                block=args.block,
            )
            for rho in (args.rho_off or DEFAULT_RHO_OFF)
        ]
        return DatasetSpec(
            id=args.preset,
            dim=args.dim,
            n_samples=args.n,
            marginal_cycle=marginals,
            class_copulas=copulas,
            balance=args.balance,
            marginal_shift=args.marginal_shift,
            seed=args.seed,
        )

    def handle(self, args: argparse.Namespace) -> int:
        try:
            spec = self.build_spec(args)
        except ValueError as e:
            return self.fail(f"неверная спецификация набора ({e})")

        generated = self.pipeline.generate(spec)
        if not generated.success:
            return self.fail(generated.message)
        data = generated.item

        written = self.pipeline.write_dataset(data, args.output)
        if not written.success:
            return self.fail(written.message)

        config = {"spec": spec.model_dump(mode="json")}
        outputs = []
        if args.split:
            parts = self.pipeline.split(data, spec.split, spec.seed)
            if not parts.success:
                return self.fail(parts.message)
            for part, path in zip(parts.item, split_paths(args.output)):
                written = self.pipeline.write_dataset(part, path)
                if not written.success:
                    return self.fail(written.message)
                outputs.append(path)
            config["split"] = {"fraction": spec.split, "seed": spec.seed}

        manifest = self.manifest(args, args.output, config, outputs=outputs)
        if not manifest.success:
            return self.fail(manifest.message)
        logger.success(f"Набор {data} записан в {args.output}")
        return 0
