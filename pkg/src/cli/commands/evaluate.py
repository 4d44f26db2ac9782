import argparse
from pathlib import Path

from .base import BaseCommand
from ._defaults import EVAL_TEXT, format_confusion


class Evaluate(BaseCommand):
    """
    Подкоманда оценки модели на размеченном CSV.

    Печатает точность в процентах с двумя знаками и матрицу ошибок,
    отчёт в JSON сохраняется в ``--output`` (по умолчанию ``<данные>.eval.json``).
    """

    name = "eval"
    help = "Оценить точность модели"

    def connect_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("model", type=Path, help="JSON-файл модели")
        parser.add_argument("data", type=Path, help="Размеченный CSV-файл")
        parser.add_argument("-o", "--output", type=Path, help="JSON-отчёт об оценке")

    def handle(self, args: argparse.Namespace) -> int:
        output = args.output or args.data.with_name(f"{args.data.stem}.eval.json")

        model = self.pipeline.load_model(args.model)
        if not model.success:
            return self.fail(model.message)
        data = self.pipeline.read_dataset(args.data)
        if not data.success:
            return self.fail(data.message)

        evaluated = self.pipeline.evaluate(model.item, data.item)
        if not evaluated.success:
            return self.fail(evaluated.message)
        result = evaluated.item

        try:
            output.parent.mkdir(parents=True, exist_ok=True)
            output.write_text(result.model_dump_json(indent=2), encoding="utf-8")
        except OSError as e:
            return self.fail(f"не удалось записать отчёт ({e})")

        manifest = self.manifest(args, output, {"model": str(args.model)}, inputs=[args.model, args.data])
        if not manifest.success:
            return self.fail(manifest.message)

        print(
            EVAL_TEXT.substitute(
                accuracy=result.percent,
                n=result.n,
                confusion=format_confusion(result.confusion, result.labels),
            )
        )
        return 0
