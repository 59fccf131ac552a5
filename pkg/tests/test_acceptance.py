"""Acceptance suite: one test per exit criterion, at its stated tolerance.

Runs under pytest, or standalone (``python tests/test_acceptance.py``) where
it prints one pass/fail line per criterion.
"""
import math
import tempfile
import time
from pathlib import Path

import numpy as np

from talentrank import cli, evaluation, preprocess, scorer, topsis, validation
from talentrank.evaluation import ConfusionMatrix, ScoredPrediction
from talentrank.preprocess import AugmentationConfig, LabeledRow
from talentrank.profiles import CandidateProfile
from talentrank.synthetic import demo_lexicon, synthetic_dataset, write_demo_inputs

import oracles


def _isclose(a, b, tol):
    return math.isclose(a, b, rel_tol=tol, abs_tol=tol)


def _matrix(rows):
    rows = np.asarray(rows, dtype=float)
    return topsis.DecisionMatrix(
        entries=rows,
        criterion_names=tuple(f"crit{j}" for j in range(rows.shape[1])),
        candidate_ids=tuple(f"cand{i}" for i in range(rows.shape[0])),
    )


def test_topsis_oracle_equivalence():
    """200 random instances: closeness within 1e-9 of a step-by-step recompute, in < 5 s."""
    rng = np.random.default_rng(1001)
    start = time.perf_counter()
    for _ in range(200):
        m = int(rng.integers(2, 21))
        n = int(rng.integers(1, 7))
        rows = rng.uniform(0.1, 100.0, size=(m, n))
        weights = rng.uniform(0.01, 1.0, size=n)
        directions = [("benefit", "cost")[int(b)] for b in rng.integers(0, 2, size=n)]
        expected, expected_ranking = oracles.topsis_reference(
            [list(r) for r in rows], list(weights), directions
        )
        result = topsis.topsis(_matrix(rows), weights, directions)
        assert all(
            abs(float(got) - want) <= 1e-9 for got, want in zip(result.closeness, expected)
        )
        assert list(result.ranking) == expected_ranking
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"200-instance oracle sweep took {elapsed:.2f}s"
    print("[PASS] topsis oracle equivalence (200 instances, 1e-9, %.2fs)" % elapsed)


def test_topsis_dominance_exact():
    """Dominant row attains closeness exactly 1.0; dominated row exactly 0.0."""
    result = topsis.topsis(_matrix([[2.0, 2.0], [1.0, 1.0]]))
    assert list(result.closeness) == [1.0, 0.0]
    assert list(result.ranking) == [0, 1]
    print("[PASS] topsis dominance gives exact closeness [1.0, 0.0]")


def test_topsis_invariances():
    """Scaling, permutation, and negate/flip invariances within 1e-12, 100 cases each."""
    rng = np.random.default_rng(1002)

    for _ in range(100):
        m, n = int(rng.integers(2, 12)), int(rng.integers(1, 6))
        rows = rng.uniform(0.1, 100.0, size=(m, n))
        base = topsis.topsis(_matrix(rows))
        scaled = rows.copy()
        j = int(rng.integers(0, n))
        scaled[:, j] *= float(rng.uniform(0.01, 50.0))
        other = topsis.topsis(_matrix(scaled))
        assert np.all(np.abs(other.closeness - base.closeness) <= 1e-12)
        assert list(other.ranking) == list(base.ranking)

    for _ in range(100):
        m, n = int(rng.integers(2, 12)), int(rng.integers(1, 6))
        rows = rng.uniform(0.1, 100.0, size=(m, n))
        base = topsis.topsis(_matrix(rows))
        perm = rng.permutation(m)
        permuted = topsis.topsis(_matrix(rows[perm]))
        assert np.all(np.abs(permuted.closeness - base.closeness[perm]) <= 1e-12)

    for _ in range(100):
        m, n = int(rng.integers(2, 12)), int(rng.integers(1, 6))
        rows = rng.uniform(0.1, 100.0, size=(m, n))
        directions = [("benefit", "cost")[int(b)] for b in rng.integers(0, 2, size=n)]
        base = topsis.topsis(_matrix(rows), directions=directions)
        j = int(rng.integers(0, n))
        flipped_rows = rows.copy()
        flipped_rows[:, j] *= -1.0
        flipped_directions = list(directions)
        flipped_directions[j] = "cost" if directions[j] == "benefit" else "benefit"
        flipped = topsis.topsis(_matrix(flipped_rows), directions=flipped_directions)
        assert np.all(np.abs(flipped.closeness - base.closeness) <= 1e-12)

    print("[PASS] topsis invariances (scaling, permutation, negate/flip; 1e-12, 100 each)")


def test_benchmark_confusion_report():
    """tp=12 fn=3 tn=5 fp=0: accuracy and weighted recall exactly 0.85, weighted F1 near 0.8589."""
    report = evaluation.classification_report(ConfusionMatrix(tp=12, fp=0, tn=5, fn=3))
    assert report.accuracy == 0.85
    assert report.weighted_recall == 0.85
    assert abs(report.weighted_f1 - 0.8589) <= 0.0005
    print("[PASS] 20-sample benchmark report: accuracy 0.85 exact, weighted F1 %.4f" % report.weighted_f1)


def test_auc_oracle():
    """Trapezoid equals concordance within 1e-12 (200 sets); separation exact 1.0; shuffle near 0.5."""
    rng = np.random.default_rng(1003)
    for _ in range(200):
        n = int(rng.integers(4, 101))
        probs = np.round(rng.uniform(size=n), int(rng.integers(1, 4)))
        labels = rng.integers(0, 2, size=n)
        if labels.min() == labels.max():
            labels[0] = 1 - labels[0]
        preds = [
            ScoredPrediction(f"p{i}", float(p), int(y)) for i, (p, y) in enumerate(zip(probs, labels))
        ]
        got = evaluation.roc_curve(preds).auc
        want = oracles.concordance_auc(list(probs), list(labels))
        assert abs(got - want) <= 1e-12

    for trial in range(10):
        n_pos, n_neg = int(rng.integers(2, 30)), int(rng.integers(2, 30))
        pos = rng.uniform(0.6, 1.0, size=n_pos)
        neg = rng.uniform(0.0, 0.59, size=n_neg)
        preds = [ScoredPrediction(f"a{i}", float(p), 1) for i, p in enumerate(pos)]
        preds += [ScoredPrediction(f"b{i}", float(p), 0) for i, p in enumerate(neg)]
        assert evaluation.roc_curve(preds).auc == 1.0

    probs = rng.uniform(size=1000)
    labels = rng.integers(0, 2, size=1000)
    preds = [ScoredPrediction(f"s{i}", float(p), int(y)) for i, (p, y) in enumerate(zip(probs, labels))]
    shuffled_auc = evaluation.roc_curve(preds).auc
    assert abs(shuffled_auc - 0.5) <= 0.05
    print("[PASS] AUC oracle (concordance 1e-12; separation exact 1.0; shuffle %.3f)" % shuffled_auc)


def test_youden_threshold():
    """Unique J maximizer at 0.52 found; reported J equals sensitivity + specificity - 1 exactly."""
    probs = [0.9, 0.8, 0.7, 0.52, 0.3] + [0.95, 0.45, 0.4, 0.2, 0.15, 0.1]
    labels = [1] * 5 + [0] * 6
    best_t, best_j, table = oracles.youden_scan(probs, labels)
    assert best_t == 0.52
    assert sum(1 for _, j in table if j == best_j) == 1, "constructed maximizer must be unique"

    preds = [ScoredPrediction(f"p{i}", p, y) for i, (p, y) in enumerate(zip(probs, labels))]
    result = evaluation.optimal_threshold(evaluation.roc_curve(preds))
    assert result.threshold == 0.52
    assert result.youden_j == result.sensitivity + result.specificity - 1.0
    print("[PASS] youden threshold: unique maximizer 0.52 found, J identity exact")


def test_ranking_validation_metrics():
    """Six metrics within 1e-12 of oracles on 100 random pairs; identities on every pair."""
    rng = np.random.default_rng(1004)
    checked = 0
    while checked < 100:
        m = int(rng.integers(1, 15))
        predicted = list(rng.uniform(1.0, 100.0, size=m))
        reference = list(rng.uniform(1.0, 100.0, size=m))
        if m > 1 and max(reference) == min(reference):
            continue
        pair = validation.pair_from_sequences(predicted, reference)
        assert _isclose(validation.rmse(pair), oracles.rmse_reference(predicted, reference), 1e-12)
        assert _isclose(validation.mae(pair), oracles.mae_reference(predicted, reference), 1e-12)
        assert _isclose(validation.mape(pair), oracles.mape_reference(predicted, reference), 1e-12)
        assert _isclose(
            validation.manhattan_distance(pair),
            oracles.manhattan_reference(predicted, reference),
            1e-12,
        )
        assert _isclose(
            validation.cosine_similarity(pair), oracles.cosine_reference(predicted, reference), 1e-12
        )
        if m > 1:
            assert _isclose(
                validation.normalized_rmse(pair), oracles.nrmse_reference(predicted, reference), 1e-12
            )

        assert validation.mae(pair) <= validation.rmse(pair) + 1e-12
        assert _isclose(validation.manhattan_distance(pair), m * validation.mae(pair), 1e-12)
        scaled = validation.pair_from_sequences([3.7 * p for p in predicted], reference)
        assert abs(
            validation.cosine_similarity(scaled) - validation.cosine_similarity(pair)
        ) <= 1e-12
        checked += 1
    print("[PASS] ranking-validation metrics (oracle 1e-12, identities on 100 pairs)")


def _tiny_row(i, label):
    return LabeledRow(
        profile=CandidateProfile(
            id=f"r{i}", experience_years=1.0, education="bsc", skills=("python",),
            about="proven fast coder", job_title="engineer",
            overall_score=4 if label else 1,
        ),
        label=label,
    )


def test_preprocessing_criteria():
    """Label mapping table; balancing on 50 datasets; doubling augmentation; split covers."""
    assert [preprocess.map_score_to_label(s) for s in range(6)] == [0, 0, 0, 1, 1, 1]

    rng = np.random.default_rng(1005)
    for trial in range(50):
        n_neg = int(rng.integers(1, 30))
        n_pos = int(rng.integers(1, 30))
        if n_neg == n_pos:
            n_pos += 1
        rows = [_tiny_row(i, 0) for i in range(n_neg)]
        rows += [_tiny_row(n_neg + i, 1) for i in range(n_pos)]
        balanced = preprocess.balance_classes(rows, rng_seed=trial)
        counts = preprocess.class_counts(balanced)
        assert counts[0] == counts[1] == max(n_neg, n_pos)
        assert balanced[: len(rows)] == rows

    lexicon = demo_lexicon()
    rows = [_tiny_row(i, i % 2) for i in range(12)]
    doubled = preprocess.augment_dataset(rows, lexicon, AugmentationConfig(rng_seed=9))
    assert len(doubled) == 24
    assert doubled[:12] == rows
    assert [r.label for r in doubled[12:]] == [r.label for r in rows]

    rows = [_tiny_row(i, i % 2) for i in range(27)]
    for fraction in (0.5, 0.8, 0.9):
        train, test = preprocess.train_test_split(rows, fraction, rng_seed=41)
        assert len(train) == round(fraction * 27)
        got = sorted(id(r) for r in train + test)
        assert got == sorted(id(r) for r in rows)
        assert not ({id(r) for r in train} & {id(r) for r in test})
    print("[PASS] preprocessing: mapping, 50 balancing runs, 2x augmentation, split covers")


def test_baseline_scorer_criteria():
    """Gradient check, separable convergence, and the seeded end-to-end pipeline in < 30 s."""
    start = time.perf_counter()

    rng = np.random.default_rng(1006)
    x = rng.poisson(1.0, size=(15, 6)).astype(float)
    y = rng.integers(0, 2, size=15).astype(float)
    y[0], y[1] = 0.0, 1.0
    class_weights = preprocess.ClassWeights(negative=1.3, positive=0.8)
    step = 1e-5
    for _ in range(10):
        theta = rng.normal(scale=0.7, size=6)
        bias = float(rng.normal())
        grad_w, grad_b = scorer.loss_gradient(theta, bias, x, y, class_weights)
        for j in range(6):
            bump = np.zeros(6)
            bump[j] = step
            numeric = (
                scorer.weighted_logistic_loss(theta + bump, bias, x, y, class_weights)
                - scorer.weighted_logistic_loss(theta - bump, bias, x, y, class_weights)
            ) / (2 * step)
            denom = max(abs(numeric), 1e-8)
            assert abs(grad_w[j] - numeric) / denom < 1e-4
        numeric_b = (
            scorer.weighted_logistic_loss(theta, bias + step, x, y, class_weights)
            - scorer.weighted_logistic_loss(theta, bias - step, x, y, class_weights)
        ) / (2 * step)
        assert abs(grad_b - numeric_b) / max(abs(numeric_b), 1e-8) < 1e-4

    texts = [
        "great reliable expert",
        "great solid expert",
        "weak sloppy novice",
        "weak careless novice",
    ]
    labels = [1, 1, 0, 0]
    model = scorer.train(texts, labels, scorer.TrainingConfig(epochs=500, learning_rate=0.5))
    predictions = [1 if scorer.predict_proba(model, t) >= 0.5 else 0 for t in texts]
    assert predictions == labels

    # end to end: synthetic profiles -> split -> augment -> balance -> train -> threshold -> evaluate
    dataset = synthetic_dataset(100, seed=77)
    rows = preprocess.label_dataset(dataset)
    train_rows, test_rows = preprocess.train_test_split(rows, 0.8, rng_seed=7)
    lexicon = demo_lexicon()
    train_rows = preprocess.augment_dataset(train_rows, lexicon, AugmentationConfig(rng_seed=7))
    train_rows = preprocess.balance_classes(train_rows, rng_seed=7)
    weights = preprocess.compute_class_weights([r.label for r in train_rows])
    config = scorer.TrainingConfig(epochs=200, learning_rate=0.1, class_weights=weights)
    model = scorer.train(
        [r.profile.document_text() for r in train_rows], [r.label for r in train_rows], config
    )
    preds = [
        ScoredPrediction(
            id=r.profile.id,
            probability=scorer.predict_proba(model, r.profile.document_text()),
            true_label=r.label,
        )
        for r in test_rows
    ]
    threshold = evaluation.optimal_threshold(evaluation.roc_curve(preds)).threshold
    cm = evaluation.confusion_matrix(preds, threshold)
    accuracy = evaluation.classification_report(cm).accuracy
    test_labels = [r.label for r in test_rows]
    majority = max(test_labels.count(0), test_labels.count(1)) / len(test_labels)
    assert accuracy > majority, f"accuracy {accuracy} does not beat majority {majority}"

    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"pipeline took {elapsed:.2f}s"
    print(
        "[PASS] baseline scorer: gradient 1e-4, separable exact, "
        "end-to-end accuracy %.2f > majority %.2f (%.1fs)" % (accuracy, majority, elapsed)
    )


def test_cli_determinism():
    """rank, preprocess, and train-baseline artifacts are byte-identical across same-seed runs."""
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        inputs = write_demo_inputs(tmp / "inputs", n_profiles=60, seed=13)

        def run(out, command_args):
            rc = cli.main(["--out", str(out), "--seed", "99"] + command_args)
            assert rc == 0
            return {p.name: p.read_bytes() for p in sorted(Path(out).iterdir())}

        rank_args = ["rank", "--profiles", str(inputs["profiles"]), "--encoding", str(inputs["encoding"])]
        assert run(tmp / "rank_a", rank_args) == run(tmp / "rank_b", rank_args)

        prep_args = [
            "preprocess", "--profiles", str(inputs["profiles"]), "--lexicon", str(inputs["lexicon"]),
        ]
        assert run(tmp / "prep_a", prep_args) == run(tmp / "prep_b", prep_args)

        train_args = [
            "train-baseline",
            "--train", str(tmp / "prep_a" / "train.csv"),
            "--test", str(tmp / "prep_a" / "test.csv"),
            "--epochs", "60",
        ]
        assert run(tmp / "model_a", train_args) == run(tmp / "model_b", train_args)
    print("[PASS] determinism: rank/preprocess/train-baseline byte-identical per seed")


CRITERIA = [
    test_topsis_oracle_equivalence,
    test_topsis_dominance_exact,
    test_topsis_invariances,
    test_benchmark_confusion_report,
    test_auc_oracle,
    test_youden_threshold,
    test_ranking_validation_metrics,
    test_preprocessing_criteria,
    test_baseline_scorer_criteria,
    test_cli_determinism,
]


def main() -> int:
    failures = 0
    for criterion in CRITERIA:
        try:
            criterion()
        except AssertionError as exc:
            failures += 1
            print(f"[FAIL] {criterion.__name__}: {exc}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
