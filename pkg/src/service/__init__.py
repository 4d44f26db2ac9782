"""Все возможные микросервисы"""

from .benchmark import Benchmark, BenchReport
