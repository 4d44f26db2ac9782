import numpy as np
import pytest

from src.core import Dataset
from src.manager.datagen import generate, table1_preset, train_test_split


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


@pytest.fixture(scope="session")
def preset_data() -> Dataset:
    """Небольшой набор первого пресета: 5 признаков, 600 наблюдений."""
    return generate(table1_preset(1, dim=5, n=600, seed=7))


@pytest.fixture(scope="session")
def preset_split(preset_data) -> tuple[Dataset, Dataset]:
    return train_test_split(preset_data, 0.7, 7)


def mvn_dataset(seed: int, n_per_class: int = 500) -> Dataset:
    """Две многомерные нормальные совокупности d=5 с разными средними и ковариациями."""
    rng = np.random.default_rng(seed)
    d = 5
    cov0 = 0.3 * np.ones((d, d)) + 0.7 * np.eye(d)
    cov1 = np.diag(np.linspace(0.8, 1.6, d))
    cov1[0, 1] = cov1[1, 0] = -0.3
    x0 = rng.multivariate_normal(np.zeros(d), cov0, size=n_per_class)
    x1 = rng.multivariate_normal(np.full(d, 0.5), cov1, size=n_per_class)
    labels = np.repeat([0, 1], n_per_class)
    order = rng.permutation(2 * n_per_class)
    return Dataset(np.vstack([x0, x1])[order], labels[order])
