from pathlib import Path

from loguru import logger

from .base import BaseStorage
from ...core import Classifier, ClassifierDocument


class ModelStore(BaseStorage):
    """
    Хранилище обученных классификаторов в виде JSON-документов.

    Наследует преобразования BaseStorage и предоставляет чтение и запись
    документа модели. Гарантирует, что load(save(clf)) классифицирует любые
    точки так же, как clf.
    """

    def dumps(self, clf: Classifier) -> str:
        """
        Сериализует классификатор в JSON-строку.

        :param clf: Обученный классификатор
        :type clf: Classifier
        :return: JSON-документ модели
        :rtype: str
        """
        return self._build_classifier(clf).model_dump_json(indent=2)

    def loads(self, text: str) -> Classifier:
        """
        Восстанавливает классификатор из JSON-строки.

        :param text: JSON-документ модели
        :type text: str
        :return: Классификатор
        :rtype: Classifier
        """
        return self._build_classifier(ClassifierDocument.model_validate_json(text))

    def save(self, clf: Classifier, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.dumps(clf), encoding="utf-8")
        logger.debug(f"Модель сохранена в {path}")
        return path

    def load(self, path: Path) -> Classifier:
        return self.loads(Path(path).read_text(encoding="utf-8"))
