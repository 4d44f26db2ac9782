"""Менеджеры"""

from .pipeline import Pipeline, TrainResult

__all__ = ["Pipeline", "TrainResult"]
