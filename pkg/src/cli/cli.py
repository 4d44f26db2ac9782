import argparse

from loguru import logger

from ..manager.pipeline import Pipeline
from .commands import setup


def setup_parser(pipeline: Pipeline) -> argparse.ArgumentParser:
    """
    Создаёт корневой парсер и подключает все подкоманды.

    :param pipeline: Фасад бизнес-логики, передаётся каждой подкоманде
    :type pipeline: Pipeline
    :return: Настроенный парсер
    :rtype: argparse.ArgumentParser
    """
    parser = argparse.ArgumentParser(
        prog="copula-da",
        description="Копула-дискриминант: генерация данных, обучение, предсказание и сравнение с нормальным дискриминантом",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in setup(pipeline):
        command.register(subparsers)
    return parser


def run_cli(argv: list[str] | None = None, pipeline: Pipeline | None = None) -> int:
    """
    Разбирает аргументы и выполняет подкоманду.

    :param argv: Аргументы командной строки (по умолчанию sys.argv)
    :param pipeline: Фасад бизнес-логики (по умолчанию новый)
    :return: Код возврата подкоманды
    :rtype: int
    """
    parser = setup_parser(pipeline or Pipeline())
    args = parser.parse_args(argv)
    logger.info(f"Запуск команды '{args.command}'")
    return args.handler(args)
