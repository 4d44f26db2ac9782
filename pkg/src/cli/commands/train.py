import argparse
from pathlib import Path

from .base import BaseCommand
from ._defaults import add_classifier_arguments, classifier_config, normal_config


class Train(BaseCommand):
    """
    Подкоманда обучения классификатора по размеченному CSV.

    По умолчанию обучает копула-дискриминант; с ``--baseline normal`` обучает
    нормальный дискриминант. Сводка по классам печатается в stdout.
    """

    name = "train"
    help = "Обучить классификатор"

    def connect_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("data", type=Path, help="Размеченный CSV-файл")
        parser.add_argument("-o", "--output", type=Path, required=True, help="JSON-файл модели")
        parser.add_argument("--baseline", choices=["normal"], help="Обучить нормальный дискриминант")
        add_classifier_arguments(parser)

    def handle(self, args: argparse.Namespace) -> int:
        try:
            if args.baseline:
                cfg = normal_config(args)
                config = {"baseline": args.baseline, **cfg.model_dump(mode="json")}
            else:
                cfg = classifier_config(args)
                config = cfg.model_dump(mode="json")
        except ValueError as e:
            return self.fail(f"неверные настройки обучения ({e})")

        data = self.pipeline.read_dataset(args.data)
        if not data.success:
            return self.fail(data.message)

        trained = (
            self.pipeline.train_baseline(data.item, cfg)
            if args.baseline
            else self.pipeline.train(data.item, cfg)
        )
        if not trained.success:
            return self.fail(trained.message)

        saved = self.pipeline.save_model(trained.item.classifier, args.output)
        if not saved.success:
            return self.fail(saved.message)

        manifest = self.manifest(args, args.output, config, inputs=[args.data])
        if not manifest.success:
            return self.fail(manifest.message)

        for line in trained.item.summary():
            print(line)
        return 0
