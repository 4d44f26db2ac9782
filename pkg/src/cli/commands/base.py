import argparse
from abc import ABC, abstractmethod
from pathlib import Path

from loguru import logger

from ...manager.pipeline import Pipeline
from ...core import BaseResponse, RunManifest


class BaseCommand(ABC):
    """
    Абстрактный базовый класс для всех подкоманд командной строки.

    Предоставляет общую функциональность:
    - Регистрацию подкоманды и её аргументов в парсере
    - Общий аргумент ``--seed``
    - Запись манифеста запуска
    - Единообразный вывод диагностики и код возврата

    Наследники обязаны задать ``name``, ``help`` и реализовать
    connect_arguments() и handle().
    """

    name: str
    help: str

    def __init__(self, pipeline: Pipeline):
        """
        Инициализирует подкоманду.

        :param pipeline: Фасад бизнес-логики
        :type pipeline: Pipeline
        """
        self.pipeline = pipeline

    def register(self, subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
        """
        Создаёт парсер подкоманды и связывает его с обработчиком.

        :param subparsers: Группа подкоманд корневого парсера
        :return: Парсер подкоманды
        :rtype: argparse.ArgumentParser
        """
        parser = subparsers.add_parser(self.name, help=self.help, description=self.help)
        parser.add_argument("--seed", type=int, default=0, help="Зерно генератора (по умолчанию 0)")
        self.connect_arguments(parser)
        parser.set_defaults(handler=self.handle)
        return parser

    @abstractmethod
    def connect_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Регистрирует аргументы подкоманды."""

    @abstractmethod
    def handle(self, args: argparse.Namespace) -> int:
        """
        Выполняет подкоманду.

        :return: Код возврата: 0 при успехе, 1 при ошибке
        :rtype: int
        """

    def fail(self, message: str) -> int:
        """Выводит диагностику в поток ошибок и возвращает ненулевой код."""
        logger.error(f"{self.name}: {message}")
        return 1

    def manifest(
        self,
        args: argparse.Namespace,
        output: Path,
        config: dict,
        *,
        inputs: list[Path] = (),
        outputs: list[Path] = (),
        failures: list[str] = (),
    ) -> BaseResponse[Path]:
        """
        Записывает манифест запуска рядом с основным артефактом.

        :param args: Разобранные аргументы (зерно берётся из ``args.seed``)
        :param output: Путь основного артефакта
        :param config: Полная разрешённая конфигурация команды
        :return: Объект ответа с путём манифеста
        """
        manifest = RunManifest(
            command=self.name,
            seed=args.seed,
            config=config,
            inputs=[str(p) for p in inputs],
            outputs=[str(p) for p in [output, *outputs]],
            failures=list(failures),
        )
        return self.pipeline.write_manifest(manifest, output)
