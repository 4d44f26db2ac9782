import os
from pathlib import Path
from dataclasses import dataclass

from dotenv import load_dotenv

__all__ = ["config"]

load_dotenv()


@dataclass
class Config:
    LOG_PATH: Path = Path(os.getenv("COPULA_LOG_PATH", "www/logs.log"))
    LOG_LEVEL: str = os.getenv("COPULA_LOG_LEVEL", "INFO")

    NU_MAX: float = float(os.getenv("COPULA_NU_MAX", 1000))
    NU_TOL: float = float(os.getenv("COPULA_NU_TOL", 1e-3))
    MAX_ITER: int = int(os.getenv("COPULA_MAX_ITER", 200))

    DENSITY_FLOOR: float = float(os.getenv("COPULA_DENSITY_FLOOR", 1e-12))
    GRID_POINTS: int = int(os.getenv("COPULA_GRID_POINTS", 512))
    EIGEN_FLOOR: float = float(os.getenv("COPULA_EIGEN_FLOOR", 1e-8))
    PIVOT_TOL: float = float(os.getenv("COPULA_PIVOT_TOL", 1e-10))
    MIN_SAMPLES: int = int(os.getenv("COPULA_MIN_SAMPLES", 8))

    BENCH_WORKERS: int = int(os.getenv("COPULA_BENCH_WORKERS", 4))

    def __post_init__(self):
        self.setup()

        if self.NU_MAX <= 2:
            raise ValueError("COPULA_NU_MAX должен быть больше 2!")
        if min(self.NU_TOL, self.DENSITY_FLOOR, self.EIGEN_FLOOR, self.PIVOT_TOL) <= 0:
            raise ValueError("Пороги и допуски должны быть положительными!")
        if self.GRID_POINTS < 3 or self.MAX_ITER < 1 or self.BENCH_WORKERS < 1:
            raise ValueError("Неверные целочисленные параметры конфигурации!")

    def setup(self):
        self.LOG_PATH.parent.mkdir(parents=True, exist_ok=True)


config = Config()
