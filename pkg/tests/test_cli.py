import csv
import json

import numpy as np
import pytest

from src.cli import run_cli
from src.cli.commands import setup
from src.manager import Pipeline
from src.manager.datagen import generate, table1_preset
from src.manager.storage import DatasetStore


def read_csv(path) -> list[list[str]]:
    with path.open(newline="", encoding="utf-8") as f:
        return list(csv.reader(f))


@pytest.fixture
def dataset(tmp_path):
    path = tmp_path / "data.csv"
    assert run_cli(["gen", "--preset", "1", "--dim", "5", "--n", "400", "--seed", "3", "-o", str(path), "--split"]) == 0
    return path


@pytest.fixture
def parts(dataset):
    return dataset.with_name("data-train.csv"), dataset.with_name("data-test.csv")


def test_gen_writes_dataset_and_manifest(dataset):
    rows = read_csv(dataset)
    assert rows[0] == ["label", "f1", "f2", "f3", "f4", "f5"]
    assert len(rows) == 401
    manifest = json.loads(dataset.with_name("data.csv.manifest.json").read_text(encoding="utf-8"))
    assert manifest["command"] == "gen"
    assert manifest["seed"] == 3
    assert manifest["config"]["spec"]["dim"] == 5
    assert manifest["config"]["split"] == {"fraction": 0.7, "seed": 3}


def test_gen_split_sizes(parts):
    train, test = parts
    assert len(read_csv(train)) == 281
    assert len(read_csv(test)) == 121


def test_gen_reproducible(dataset, tmp_path):
    again = tmp_path / "again.csv"
    assert run_cli(["gen", "--preset", "1", "--dim", "5", "--n", "400", "--seed", "3", "-o", str(again)]) == 0
    assert again.read_bytes() == dataset.read_bytes()


def test_gen_families(tmp_path):
    path = tmp_path / "families.csv"
    code = run_cli(
        [
            "gen",
            "--families",
            "gamma:shape=4,scale=2",
            "exponential:rate=0.7",
            "--dim",
            "4",
            "--n",
            "100",
            "--rho-off",
            "0.1",
            "0.5",
            "-o",
            str(path),
        ]
    )
    assert code == 0
    features = DatasetStore().read_dataset(path).features
    assert features.shape == (100, 4)
    assert np.all(features > 0)


@pytest.mark.parametrize(
    "argv",
    [
        ["--preset", "9"],
        [],
        ["--families", "gamma:shape=4"],
        ["--preset", "1", "--copula", "t"],
        ["--preset", "1", "--rho-off", "0.2", "1.5"],
        ["--preset", "1", "--block", "0"],
        ["--preset", "1", "--families", "gamma:shape=4,scale=2"],
        ["--preset", "9", "--families", "gamma:shape=4,scale=2"],
    ],
)
def test_gen_rejects_bad_spec(tmp_path, argv):
    path = tmp_path / "bad.csv"
    assert run_cli(["gen", "--dim", "3", "--n", "100", "-o", str(path), *argv]) == 1
    assert not path.exists()


def test_gen_preset_matches_generator(tmp_path):
    path = tmp_path / "preset.csv"
    assert run_cli(["gen", "--preset", "1", "--dim", "12", "--n", "200", "--seed", "5", "-o", str(path)]) == 0
    expected = generate(table1_preset(1, dim=12, n=200, seed=5))
    written = DatasetStore().read_dataset(path)
    np.testing.assert_array_equal(written.features, expected.features)
    np.testing.assert_array_equal(written.labels, expected.labels)


def test_setup_registers_all_commands():
    assert [command.name for command in setup(Pipeline())] == ["gen", "train", "predict", "eval", "bench"]


def test_gen_requires_output():
    with pytest.raises(SystemExit):
        run_cli(["gen", "--preset", "1"])


@pytest.mark.parametrize(
    "flags",
    [
        [],
        ["--baseline", "normal"],
        ["--baseline", "normal", "--standardize"],
        ["--marginals", "parametric", "--families", "student_t"],
        ["--estimation", "cml", "--uniform-priors"],
        ["--copula", "t"],
    ],
)
def test_train_variants(parts, tmp_path, capsys, flags):
    train, _ = parts
    model = tmp_path / "model.json"
    assert run_cli(["train", str(train), "-o", str(model), *flags]) == 0
    out = capsys.readouterr().out
    assert "class 0:" in out and "class 1:" in out
    assert json.loads(model.read_text(encoding="utf-8"))["classes"]
    assert model.with_name("model.json.manifest.json").exists()


def test_train_t_copula_reports_nu(parts, tmp_path, capsys):
    train, _ = parts
    assert run_cli(["train", str(train), "-o", str(tmp_path / "t.json"), "--copula", "t"]) == 0
    assert "nu=" in capsys.readouterr().out


def test_train_rejects_joint_t_estimation(parts, tmp_path):
    train, _ = parts
    model = tmp_path / "model.json"
    assert run_cli(["train", str(train), "-o", str(model), "--copula", "t", "--estimation", "eml"]) == 1
    assert not model.exists()


def test_train_parametric_requires_families(parts, tmp_path):
    train, _ = parts
    assert run_cli(["train", str(train), "-o", str(tmp_path / "m.json"), "--marginals", "parametric"]) == 1


def test_train_missing_file(tmp_path):
    assert run_cli(["train", str(tmp_path / "missing.csv"), "-o", str(tmp_path / "m.json")]) == 1


def test_predict_and_eval_agree(parts, tmp_path, capsys):
    train, test = parts
    model = tmp_path / "model.json"
    predictions = tmp_path / "pred.csv"
    scores = tmp_path / "scores.csv"
    assert run_cli(["train", str(train), "-o", str(model)]) == 0
    assert run_cli(["predict", str(model), str(test), "-o", str(predictions), "--scores", str(scores)]) == 0
    capsys.readouterr()
    assert run_cli(["eval", str(model), str(test)]) == 0
    out = capsys.readouterr().out

    store = DatasetStore()
    truth = store.read_dataset(test).labels
    predicted = store.read_predictions(predictions)
    assert predicted.size == truth.size == 120

    report = json.loads(test.with_name("data-test.eval.json").read_text(encoding="utf-8"))
    assert report["accuracy"] == pytest.approx(np.mean(predicted == truth))
    assert f"accuracy: {100 * report['accuracy']:.2f}" in out
    assert sum(map(sum, report["confusion"])) == 120

    score_rows = read_csv(scores)
    assert score_rows[0] == ["index", "g_0", "g_1"]
    assert len(score_rows) == 121


def test_predict_features_without_labels(parts, tmp_path):
    train, test = parts
    model = tmp_path / "model.json"
    assert run_cli(["train", str(train), "-o", str(model), "--baseline", "normal"]) == 0
    bare = tmp_path / "bare.csv"
    rows = read_csv(test)
    bare.write_text("\n".join(",".join(row[1:]) for row in rows) + "\n", encoding="utf-8")
    predictions = tmp_path / "pred.csv"
    assert run_cli(["predict", str(model), str(bare), "-o", str(predictions)]) == 0
    assert len(read_csv(predictions)) == 121


def test_eval_dimension_mismatch(parts, tmp_path):
    train, _ = parts
    model = tmp_path / "model.json"
    other = tmp_path / "other.csv"
    assert run_cli(["train", str(train), "-o", str(model)]) == 0
    assert run_cli(["gen", "--preset", "2", "--dim", "3", "--n", "50", "-o", str(other)]) == 0
    assert run_cli(["eval", str(model), str(other)]) == 1


def test_eval_malformed_csv(parts, tmp_path):
    train, _ = parts
    model = tmp_path / "model.json"
    assert run_cli(["train", str(train), "-o", str(model)]) == 0
    broken = tmp_path / "broken.csv"
    broken.write_text("label,f1,f2,f3,f4,f5\n0,1,2,3\n", encoding="utf-8")
    assert run_cli(["eval", str(model), str(broken)]) == 1


def test_eval_broken_model(dataset, tmp_path):
    model = tmp_path / "model.json"
    model.write_text("{}", encoding="utf-8")
    assert run_cli(["eval", str(model), str(dataset)]) == 1


BENCH = ["bench", "--presets", "1", "--dims", "2", "3", "--reps", "2", "--n", "200"]


def test_bench_rows_and_summary(tmp_path, capsys):
    results = tmp_path / "results.csv"
    assert run_cli([*BENCH, "-o", str(results)]) == 0
    rows = read_csv(results)
    assert rows[0] == ["preset", "dim", "rep", "method", "accuracy"]
    assert len(rows) == 9
    assert [(r[1], r[2], r[3]) for r in rows[1:3]] == [("2", "1", "copula"), ("2", "1", "normal")]

    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "preset,dim,method,mean_accuracy,count"
    assert len(lines) == 5
    assert all(line.endswith(",2") for line in lines[1:])

    manifest = json.loads(results.with_name("results.csv.manifest.json").read_text(encoding="utf-8"))
    assert manifest["config"]["reps"] == 2
    assert manifest["failures"] == []


def test_bench_independent_of_workers(tmp_path):
    single, parallel = tmp_path / "single.csv", tmp_path / "parallel.csv"
    assert run_cli([*BENCH, "--workers", "1", "-o", str(single)]) == 0
    assert run_cli([*BENCH, "--workers", "3", "-o", str(parallel)]) == 0
    assert single.read_bytes() == parallel.read_bytes()


def test_bench_seed_changes_results(tmp_path):
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    assert run_cli([*BENCH, "--seed", "1", "-o", str(first)]) == 0
    assert run_cli([*BENCH, "--seed", "2", "-o", str(second)]) == 0
    assert first.read_bytes() != second.read_bytes()


def test_bench_failures(tmp_path, capsys):
    results = tmp_path / "results.csv"
    assert run_cli([*BENCH, "--presets", "1", "9", "-o", str(results)]) == 1
    rows = read_csv(results)
    assert len(rows) == 17
    failed = [r for r in rows[1:] if r[0] == "9"]
    assert len(failed) == 8
    assert all(r[4] == "nan" for r in failed)

    manifest = json.loads(results.with_name("results.csv.manifest.json").read_text(encoding="utf-8"))
    assert len(manifest["failures"]) == 8
    assert all("preset=9" in f and "stage=spec" in f for f in manifest["failures"])
    assert "9,2,copula,nan,0" in capsys.readouterr().out


def test_bench_rejects_small_dims(tmp_path):
    assert run_cli(["bench", "--dims", "1", "-o", str(tmp_path / "r.csv")]) == 1
