import math

import numpy as np
import pytest
from scipy import stats

from src.core import ClassCopulaSpec, CopulaKind, CorrelationStructure, DatasetSpec, Family, MarginalSpec
from src.manager import classifier, copula
from src.manager.datagen import (
    TABLE1_MARGINALS,
    class_correlation,
    derive_seed,
    dimension_sweep,
    generate,
    table1_preset,
    train_test_split,
)


def custom_spec(**update) -> DatasetSpec:
    fields = dict(
        dim=3,
        n_samples=1000,
        marginal_cycle=[MarginalSpec(family=Family.NORMAL, params={"mu": 0.0, "sigma": 1.0})],
        class_copulas=[ClassCopulaSpec(rho_off=0.0), ClassCopulaSpec(rho_off=0.0)],
        seed=3,
    )
    fields.update(update)
    return DatasetSpec(**fields)


@pytest.mark.parametrize("preset", sorted(TABLE1_MARGINALS))
def test_preset_shape(preset):
    spec = table1_preset(preset, dim=6, n=200, seed=1)
    assert spec.id == preset
    assert spec.split == 0.7
    assert [c.rho_off for c in spec.class_copulas] == [0.9, -0.9]
    assert all(c.structure is CorrelationStructure.PAIRED and c.block == 10 for c in spec.class_copulas)
    data = generate(spec)
    assert data.features.shape == (200, 6)
    assert np.all(np.isfinite(data.features))


@pytest.mark.parametrize("preset", [0, 9])
def test_unknown_preset(preset):
    with pytest.raises(ValueError):
        table1_preset(preset)


@pytest.mark.parametrize("preset", range(2, 9))
def test_positive_support(preset):
    data = generate(table1_preset(preset, dim=8, n=400, seed=2))
    assert np.all(data.features > 0)


def test_marginal_cycle_alternates():
    data = generate(table1_preset(4, dim=4, n=8000, seed=5))
    means = data.features.mean(axis=0)
    gamma_mean = 4.3 * 1.7
    lognormal_mean = math.exp(0.64 + 0.22**2 / 2)
    assert means[[0, 2]] == pytest.approx([gamma_mean, gamma_mean], rel=0.03)
    assert means[[1, 3]] == pytest.approx([lognormal_mean, lognormal_mean], rel=0.03)


def test_generate_deterministic():
    spec = table1_preset(5, dim=4, n=300, seed=11)
    first, second = generate(spec), generate(spec)
    np.testing.assert_array_equal(first.features, second.features)
    np.testing.assert_array_equal(first.labels, second.labels)
    other = generate(table1_preset(5, dim=4, n=300, seed=12))
    assert not np.array_equal(first.features, other.features)


def test_generate_keeps_spec():
    spec = table1_preset(2, dim=3, n=100, seed=1)
    assert generate(spec).spec == spec


def test_balanced_classes():
    data = generate(table1_preset(1, dim=2, n=1001, seed=4))
    counts = np.bincount(data.labels)
    assert counts.sum() == 1001
    assert abs(counts[0] - counts[1]) <= 1


def test_custom_balance():
    data = generate(custom_spec(balance=[0.3, 0.7]))
    assert np.bincount(data.labels).tolist() == [300, 700]


def test_labels_shuffled():
    data = generate(table1_preset(1, dim=2, n=400, seed=4))
    assert not np.all(np.diff(data.labels) >= 0)


def test_kendall_tau_of_paired_classes():
    data = generate(table1_preset(3, dim=14, n=8000, seed=21))
    expected = 2 / math.pi * math.asin(0.9)
    for label, sign in ((0, 1), (1, -1)):
        block = data.features[data.labels == label]
        for j in (0, 2, 8):
            tau = stats.kendalltau(block[:, j], block[:, j + 1]).statistic
            assert tau == pytest.approx(sign * expected, abs=0.03)
        # вне пар и за пределами блока признаки независимы
        for i, j in ((1, 2), (0, 5), (10, 11), (12, 13)):
            assert stats.kendalltau(block[:, i], block[:, j]).statistic == pytest.approx(0.0, abs=0.04)


def test_kendall_tau_of_exchangeable_block():
    spec = table1_preset(
        3, dim=6, n=8000, seed=23, rho_off=(0.2, 0.7), structure=CorrelationStructure.EXCHANGEABLE, block=4
    )
    data = generate(spec)
    strong = data.features[data.labels == 1]
    tau = stats.kendalltau(strong[:, 0], strong[:, 3]).statistic
    assert tau == pytest.approx(2 / math.pi * math.asin(0.7), abs=0.03)
    assert stats.kendalltau(strong[:, 3], strong[:, 4]).statistic == pytest.approx(0.0, abs=0.04)


def test_correlation_structures():
    rho = copula.paired(5, -0.9, block=4).entries
    expected = np.eye(5)
    expected[0, 1] = expected[1, 0] = expected[2, 3] = expected[3, 2] = -0.9
    np.testing.assert_array_equal(rho, expected)
    rho = copula.exchangeable(4, 0.5, block=3).entries
    np.testing.assert_array_equal(rho[:3, :3], np.full((3, 3), 0.5) + 0.5 * np.eye(3))
    np.testing.assert_array_equal(rho[3], [0.0, 0.0, 0.0, 1.0])
    np.testing.assert_array_equal(copula.paired(3, 0.9, block=1).entries, np.eye(3))


def test_separation_does_not_grow_with_dimension():
    small, large = table1_preset(1, dim=10), table1_preset(1, dim=100)
    assert small.class_copulas == large.class_copulas
    for spec in (small, large):
        for copula_spec in spec.class_copulas:
            entries = class_correlation(spec.dim, copula_spec).entries
            assert np.count_nonzero(entries - np.eye(spec.dim)) == 10

@pytest.mark.parametrize(
    "preset, column, distribution, args",
    [
        (1, 0, "t", (2,)),
        (1, 7, "t", (2,)),
        (1, 15, "t", (2,)),
        (3, 0, "expon", (0, 1 / 0.7)),
        (4, 0, "gamma", (4.3, 0, 1.7)),
        (4, 1, "lognorm", (0.22, 0, math.exp(0.64))),
        (6, 1, "gamma", (5, 0, 3)),
        (7, 2, "chi2", (3.2,)),
        (8, 3, "chi2", (5,)),
    ],
)
def test_marginal_fidelity(preset, column, distribution, args):
    data = generate(table1_preset(preset, dim=16, n=4000, seed=22))
    result = stats.kstest(data.features[:, column], distribution, args=args)
    assert result.pvalue > 1e-3


def test_identical_classes_are_indistinguishable():
    data = generate(custom_spec(n_samples=6000, seed=9))
    train, test = train_test_split(data, 0.7, 9)
    accuracy = classifier.evaluate(classifier.train_normal_classifier(train), test).accuracy
    assert 0.45 <= accuracy <= 0.55


def test_marginal_shift_scales_second_class():
    spec = table1_preset(3, dim=2, n=20000, seed=8, marginal_shift=1.0)
    data = generate(spec)
    ratio = data.features[data.labels == 1, 0].mean() / data.features[data.labels == 0, 0].mean()
    assert ratio == pytest.approx(2.0, rel=0.05)


def test_student_t_class_copulas():
    spec = custom_spec(
        class_copulas=[
            ClassCopulaSpec(kind=CopulaKind.STUDENT_T, rho_off=0.3, nu=4),
            ClassCopulaSpec(kind=CopulaKind.STUDENT_T, rho_off=0.6, nu=4),
        ]
    )
    data = generate(spec)
    assert data.features.shape == (1000, 3)


def test_copula_spec_validation():
    with pytest.raises(ValueError):
        ClassCopulaSpec(kind=CopulaKind.STUDENT_T, rho_off=0.3)
    with pytest.raises(ValueError):
        ClassCopulaSpec(kind=CopulaKind.GAUSSIAN, rho_off=0.3, nu=5)
    with pytest.raises(ValueError):
        ClassCopulaSpec(rho_off=1.0)
    with pytest.raises(ValueError):
        custom_spec(class_copulas=[ClassCopulaSpec(rho_off=-0.6), ClassCopulaSpec(rho_off=0.2)])
    with pytest.raises(ValueError):
        custom_spec(balance=[0.5, 0.6])


def test_dimension_sweep():
    base = table1_preset(2, dim=2, n=200, seed=6)
    datasets = dimension_sweep(base, [2, 3, 4, 5])
    assert [d.dim for d in datasets] == [2, 3, 4, 5]
    again = dimension_sweep(base, [2, 3, 4, 5])
    for first, second in zip(datasets, again):
        np.testing.assert_array_equal(first.features, second.features)


@pytest.mark.parametrize("dims", [[], [1, 3]])
def test_dimension_sweep_errors(dims):
    with pytest.raises(ValueError):
        dimension_sweep(table1_preset(2, dim=2, n=200), dims)


def test_derive_seed():
    assert derive_seed(1, 2, 3) == derive_seed(1, 2, 3)
    assert derive_seed(1, 2, 3) != derive_seed(1, 2, 4)
    assert 0 <= derive_seed(2**70, -5) < 2**63


def test_train_test_split(preset_data):
    train, test = train_test_split(preset_data, 0.7, 1)
    assert (train.n, test.n) == (420, 180)
    assert np.bincount(train.labels).sum() + np.bincount(test.labels).sum() == preset_data.n
    combined = np.sort(np.concatenate([train.features[:, 0], test.features[:, 0]]))
    np.testing.assert_array_equal(combined, np.sort(preset_data.features[:, 0]))
    again, _ = train_test_split(preset_data, 0.7, 1)
    np.testing.assert_array_equal(train.features, again.features)


@pytest.mark.parametrize("fraction", [0.0, 1.0, -0.1])
def test_train_test_split_fraction(preset_data, fraction):
    with pytest.raises(ValueError):
        train_test_split(preset_data, fraction, 0)


def test_dimension_sweep_revalidates_spec():
    base = custom_spec(dim=2, class_copulas=[ClassCopulaSpec(rho_off=-0.4), ClassCopulaSpec(rho_off=0.2)])
    assert dimension_sweep(base, [2])[0].dim == 2
    # при d = 4 равнокоррелированная матрица требует rho_off > −1/3
    with pytest.raises(ValueError):
        dimension_sweep(base, [2, 4])


def test_paired_structure_allows_strong_negative_correlation():
    spec = custom_spec(
        class_copulas=[
            ClassCopulaSpec(rho_off=0.9, structure=CorrelationStructure.PAIRED),
            ClassCopulaSpec(rho_off=-0.9, structure=CorrelationStructure.PAIRED),
        ]
    )
    assert generate(spec).features.shape == (1000, 3)
    custom_spec(class_copulas=[ClassCopulaSpec(rho_off=-0.6, block=2), ClassCopulaSpec(rho_off=0.2)])
    with pytest.raises(ValueError):
        ClassCopulaSpec(rho_off=0.5, block=0)
