from .base import BaseStorage
from .model_store import ModelStore
from .dataset_store import DatasetStore, RESULT_HEADER

__all__ = ["BaseStorage", "ModelStore", "DatasetStore", "RESULT_HEADER"]
