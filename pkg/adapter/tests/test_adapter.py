import csv
import subprocess
import sys

import pytest

from talentrank_adapter import cli, data, export, training
from talentrank_adapter.errors import CheckpointError, DataError


def config_for(checkpoint, epochs=2, seed=7):
    return training.FineTuneConfig(
        model_id=str(checkpoint),
        epochs=epochs,
        batch_size=8,
        learning_rate=1e-3,
        warmup_steps=2,
        weight_decay=0.01,
        early_stopping_patience=3,
        rng_seed=seed,
        max_length=32,
    )


class TestData:
    def test_reads_rows_and_assembles_text(self, forty_row_corpus):
        rows = data.read_rows(forty_row_corpus)
        assert len(rows) == 40
        assert rows[0].id == "pos0"
        assert rows[0].text == "strong school python sql great reliable coder ships systems lead builder"
        assert {r.label for r in rows} == {0, 1}

    def test_missing_column_rejected(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("id,label\nx,1\n", encoding="utf-8")
        with pytest.raises(DataError, match="experience_years"):
            data.read_rows(bad)

    def test_bad_label_names_row(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text(
            "id,experience_years,education,skills,about,job_title,overall_score,label\n"
            "x,1.0,weak school,java,plain,junior,1,3\n",
            encoding="utf-8",
        )
        with pytest.raises(DataError, match="row 1"):
            data.read_rows(bad)


class TestFineTune:
    def test_two_epochs_give_two_history_records(self, tiny_checkpoint, forty_row_corpus,
                                                 twelve_row_corpus, tmp_path):
        train_rows = data.read_rows(forty_row_corpus)
        val_rows = data.read_rows(twelve_row_corpus)
        out = tmp_path / "run"
        model_dir, history_path = training.fine_tune(
            train_rows, val_rows, config_for(tiny_checkpoint), out
        )
        records = training.read_history(history_path)
        assert [r["epoch"] for r in records] == [1, 2]
        assert all(r["val_accuracy"] >= 0.0 for r in records)
        assert (model_dir / "config.json").exists()

    def test_same_seed_reproduces_history(self, tiny_checkpoint, forty_row_corpus,
                                          twelve_row_corpus, tmp_path):
        train_rows = data.read_rows(forty_row_corpus)
        val_rows = data.read_rows(twelve_row_corpus)
        _, first = training.fine_tune(train_rows, val_rows, config_for(tiny_checkpoint), tmp_path / "a")
        _, second = training.fine_tune(train_rows, val_rows, config_for(tiny_checkpoint), tmp_path / "b")
        assert training.read_history(first) == training.read_history(second)

    def test_single_class_rejected(self, tiny_checkpoint, twelve_row_corpus, tmp_path):
        rows = [r for r in data.read_rows(twelve_row_corpus) if r.label == 1]
        with pytest.raises(DataError, match="both classes"):
            training.fine_tune(rows, rows, config_for(tiny_checkpoint), tmp_path / "run")

    def test_unresolvable_checkpoint_errors(self, forty_row_corpus, twelve_row_corpus,
                                            tmp_path, monkeypatch):
        monkeypatch.setenv("HF_HUB_OFFLINE", "1")
        train_rows = data.read_rows(forty_row_corpus)
        val_rows = data.read_rows(twelve_row_corpus)
        with pytest.raises(CheckpointError, match="no-such-checkpoint"):
            training.fine_tune(
                train_rows, val_rows, config_for("no-such-checkpoint-anywhere"), tmp_path / "run"
            )

    def test_derived_class_weights(self):
        weights = training.derived_class_weights([0] * 5 + [1] * 15)
        assert weights.negative == 2.0
        assert weights.positive == pytest.approx(20.0 / 30.0)


class TestExport:
    @pytest.fixture()
    def fine_tuned(self, tiny_checkpoint, forty_row_corpus, twelve_row_corpus, tmp_path):
        train_rows = data.read_rows(forty_row_corpus)
        val_rows = data.read_rows(twelve_row_corpus)
        model_dir, _ = training.fine_tune(train_rows, val_rows, config_for(tiny_checkpoint), tmp_path / "run")
        return model_dir

    def test_score_file_contract(self, fine_tuned, twelve_row_corpus, tmp_path):
        rows = data.read_rows(twelve_row_corpus)
        scores_path = export.export_scores(fine_tuned, rows, tmp_path / "scores.csv")
        lines = scores_path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "id,probability,true_label"
        assert len(lines) - 1 == len(rows)
        with open(scores_path, newline="") as fh:
            for record in csv.DictReader(fh):
                assert 0.0 <= float(record["probability"]) <= 1.0
                assert record["true_label"] in ("0", "1")

    def test_scores_round_trip_through_engine_evaluate(self, fine_tuned, twelve_row_corpus, tmp_path):
        rows = data.read_rows(twelve_row_corpus)
        scores_path = export.export_scores(fine_tuned, rows, tmp_path / "scores.csv")
        result = subprocess.run(
            [sys.executable, "-m", "talentrank", "--out", str(tmp_path / "eval"),
             "evaluate", "--scores", str(scores_path)],
            capture_output=True, text=True,
        )
        assert result.returncode == 0, result.stderr
        assert (tmp_path / "eval" / "evaluation.json").exists()

    def test_empty_rows_rejected(self, fine_tuned, tmp_path):
        with pytest.raises(Exception):
            export.export_scores(fine_tuned, [], tmp_path / "scores.csv")


class TestCli:
    def test_fine_tune_and_export(self, tiny_checkpoint, forty_row_corpus, twelve_row_corpus,
                                  tmp_path, capsys):
        out = tmp_path / "run"
        rc = cli.main([
            "fine-tune", "--model-id", str(tiny_checkpoint),
            "--train", str(forty_row_corpus), "--val", str(twelve_row_corpus),
            "--out", str(out), "--epochs", "2", "--batch-size", "8",
            "--learning-rate", "1e-3", "--warmup-steps", "2", "--max-length", "32",
            "--seed", "7",
        ])
        assert rc == 0
        assert "history (2 epochs)" in capsys.readouterr().out
        rc = cli.main([
            "export-scores", "--model", str(out / "model"),
            "--test", str(twelve_row_corpus), "--scores", str(tmp_path / "scores.csv"),
        ])
        assert rc == 0
        assert (tmp_path / "scores.csv").exists()

    def test_missing_train_file_is_io_failure(self, tiny_checkpoint, tmp_path):
        rc = cli.main([
            "fine-tune", "--model-id", str(tiny_checkpoint),
            "--train", str(tmp_path / "missing.csv"), "--val", str(tmp_path / "missing.csv"),
            "--out", str(tmp_path / "run"),
        ])
        assert rc == 2
