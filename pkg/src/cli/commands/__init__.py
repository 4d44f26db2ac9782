from .base import BaseCommand
from .gen import Gen
from .train import Train
from .predict import Predict
from .evaluate import Evaluate
from .bench import Bench

from ...manager.pipeline import Pipeline


def setup(pipeline: Pipeline) -> list[BaseCommand]:
    """
    Создание всех подкоманд.

    :param pipeline: Фасад бизнес-логики
    :type pipeline: Pipeline
    :return: Список подкоманд
    :rtype: list[BaseCommand]
    """
    return [
        Gen(pipeline),
        Train(pipeline),
        Predict(pipeline),
        Evaluate(pipeline),
        Bench(pipeline),
    ]
