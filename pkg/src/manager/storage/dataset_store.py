import csv
import math
from pathlib import Path
from typing import Iterable

import numpy as np
from loguru import logger

from ...core import Dataset, DatasetFormatError, RunManifest

RESULT_HEADER = ["preset", "dim", "rep", "method", "accuracy"]


class DatasetStore:
    """
    Файловое хранилище наборов данных, предсказаний, результатов и манифестов.

    Формат набора данных: заголовок ``label,f1,…,fd``, метки — целые числа,
    признаки записываются с 17 значащими цифрами, что обеспечивает
    побайтную воспроизводимость и точное чтение.
    """

    @staticmethod
    def _prepare(path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def write_dataset(self, data: Dataset, path: Path) -> Path:
        """
        Записывает размеченный набор в CSV.

        :param data: Набор данных
        :type data: Dataset
        :param path: Путь к файлу
        :type path: Path
        :return: Путь к записанному файлу
        :rtype: Path
        """
        path = self._prepare(path)
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["label", *[f"f{j + 1}" for j in range(data.dim)]])
            for label, row in zip(data.labels.tolist(), data.features.tolist()):
                writer.writerow([label, *[format(v, ".17g") for v in row]])
        logger.debug(f"Набор {data} записан в {path}")
        return path

    def _read(self, path: Path, require_labels: bool) -> tuple[np.ndarray, np.ndarray | None]:
        """
        Разбирает CSV-файл набора данных.

        :raises DatasetFormatError: С номером строки при любой ошибке формата
        """
        path = Path(path)
        with path.open("r", newline="", encoding="utf-8") as f:
            rows = csv.reader(f)
            header = next(rows, None)
            if not header:
                raise DatasetFormatError("пустой файл или отсутствует заголовок", 1)
            has_labels = header[0].strip() == "label"
            if require_labels and not has_labels:
                raise DatasetFormatError("первый столбец заголовка должен называться 'label'", 1)
            width = len(header) - (1 if has_labels else 0)
            if width < 1:
                raise DatasetFormatError("в заголовке нет столбцов признаков", 1)

            labels, features = [], []
            for line, row in enumerate(rows, start=2):
                if not row:
                    continue
                if len(row) != len(header):
                    raise DatasetFormatError(
                        f"ожидалось {len(header)} значений, получено {len(row)}", line
                    )
                try:
                    if has_labels:
                        labels.append(int(row[0]))
                    values = [float(v) for v in row[1 if has_labels else 0:]]
                except ValueError as e:
                    raise DatasetFormatError(f"не удалось разобрать число ({e})", line) from e
                if not all(math.isfinite(v) for v in values):
                    raise DatasetFormatError("признаки должны быть конечными числами", line)
                features.append(values)

        matrix = np.asarray(features, dtype=float).reshape(-1, width)
        return matrix, (np.asarray(labels, dtype=np.int64) if has_labels else None)

    def read_dataset(self, path: Path) -> Dataset:
        """Читает размеченный набор данных."""
        features, labels = self._read(path, require_labels=True)
        return Dataset(features, labels)

    def read_features(self, path: Path) -> np.ndarray:
        """Читает матрицу признаков; столбец меток, если есть, пропускается."""
        return self._read(path, require_labels=False)[0]

    def write_predictions(self, labels: Iterable[int], path: Path) -> Path:
        path = self._prepare(path)
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["index", "label"])
            writer.writerows(enumerate(int(label) for label in labels))
        return path

    def read_predictions(self, path: Path) -> np.ndarray:
        with Path(path).open("r", newline="", encoding="utf-8") as f:
            rows = csv.reader(f)
            if next(rows, None) != ["index", "label"]:
                raise DatasetFormatError("ожидался заголовок 'index,label'", 1)
            labels = []
            for row in rows:
                if not row:
                    continue
                try:
                    labels.append(int(row[1]))
                except (ValueError, IndexError) as e:
                    raise DatasetFormatError(f"не удалось разобрать предсказание ({e})", rows.line_num) from e
            return np.asarray(labels, dtype=np.int64)

    def write_scores(self, scores: np.ndarray, labels: Iterable[int], path: Path) -> Path:
        """Записывает матрицу дискриминантов n×c: ``index,g_<метка>,…``."""
        path = self._prepare(path)
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["index", *[f"g_{label}" for label in labels]])
            for index, row in enumerate(np.asarray(scores, dtype=float).tolist()):
                writer.writerow([index, *[format(v, ".17g") for v in row]])
        return path

    def write_results(self, rows: Iterable[dict], path: Path) -> Path:
        """Записывает таблицу результатов ``preset,dim,rep,method,accuracy``."""
        path = self._prepare(path)
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=RESULT_HEADER, lineterminator="\n", extrasaction="ignore")
            writer.writeheader()
            for row in rows:
                writer.writerow({**row, "accuracy": format(row["accuracy"], ".17g")})
        return path

    @staticmethod
    def manifest_path(output: Path) -> Path:
        output = Path(output)
        return output.with_name(output.name + ".manifest.json")

    def write_manifest(self, manifest: RunManifest, output: Path) -> Path:
        """Сохраняет манифест рядом с основным артефактом (``<файл>.manifest.json``)."""
        path = self._prepare(self.manifest_path(output))
        path.write_text(manifest.model_dump_json(indent=2), encoding="utf-8")
        return path
