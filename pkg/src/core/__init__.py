"""Конфиги, исключения и модели."""

from ._config import config
from .exceptions import (
    CopulaError,
    DomainError,
    BoundaryError,
    TooFewSamplesError,
    DimensionMismatchError,
    ConvergenceError,
    DatasetFormatError,
)
from .entites import *  # noqa: F401,F403
from .entites import __all__ as _entities

__all__ = [
    "config",
    "CopulaError",
    "DomainError",
    "BoundaryError",
    "TooFewSamplesError",
    "DimensionMismatchError",
    "ConvergenceError",
    "DatasetFormatError",
    *_entities,
]
