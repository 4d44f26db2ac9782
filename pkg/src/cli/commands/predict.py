import argparse
from pathlib import Path

from .base import BaseCommand


class Predict(BaseCommand):
    """Подкоманда предсказания меток для CSV-файла признаков."""

    name = "predict"
    help = "Предсказать метки классов"

    def connect_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("model", type=Path, help="JSON-файл модели")
        parser.add_argument("data", type=Path, help="CSV-файл признаков (столбец label допускается)")
        parser.add_argument("-o", "--output", type=Path, required=True, help="CSV предсказаний index,label")
        parser.add_argument("--scores", type=Path, help="CSV значений дискриминантов по классам")

    def handle(self, args: argparse.Namespace) -> int:
        model = self.pipeline.load_model(args.model)
        if not model.success:
            return self.fail(model.message)
        features = self.pipeline.read_features(args.data)
        if not features.success:
            return self.fail(features.message)

        labels = self.pipeline.predict(model.item, features.item)
        if not labels.success:
            return self.fail(labels.message)
        written = self.pipeline.write_predictions(labels.item, args.output)
        if not written.success:
            return self.fail(written.message)

        outputs = []
        if args.scores:
            scores = self.pipeline.scores(model.item, features.item)
            if not scores.success:
                return self.fail(scores.message)
            written = self.pipeline.write_scores(model.item, scores.item, args.scores)
            if not written.success:
                return self.fail(written.message)
            outputs.append(args.scores)

        manifest = self.manifest(
            args,
            args.output,
            {"model": str(args.model), "scores": args.scores is not None},
            inputs=[args.model, args.data],
            outputs=outputs,
        )
        if not manifest.success:
            return self.fail(manifest.message)
        return 0
