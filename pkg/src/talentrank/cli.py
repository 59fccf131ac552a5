"""Command-line pipeline: ingest, preprocess, rank, train-baseline, evaluate, compare, report.

Every command is a batch step writing machine-readable artifacts (JSON/CSV)
plus a short human summary on stdout. Artifacts embed the knobs (weights,
directions, thresholds, seeds) needed to re-derive them and contain no
timestamps, so a command re-run with the same inputs and seed is
byte-identical. All randomness flows from the single ``--seed`` through named
sub-streams (split, augment, resample).

Exit status: 0 success, 1 validation failure, 2 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import evaluation, preprocess, profiles, scorer, topsis, validation
from .errors import ContractError, SchemaError, TalentRankError

RANK_SCALE = 5.0  # closeness in [0,1] is compared against expert scores in [0,5]


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _read_json(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError(f"config file {path} must contain a JSON object")
    return doc


def _pick(flag_value, config: dict, key: str, default=None):
    if flag_value is not None:
        return flag_value
    return config.get(key, default)


def _require(value, what: str):
    if value is None:
        raise SchemaError(f"{what} is required (pass the flag or set it in --config)")
    return value


def _out_dir(args, config: dict) -> Path:
    out = Path(_pick(args.out, config, "out", "out"))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _seed(args, config: dict) -> int:
    seed = int(_pick(args.seed, config, "seed", 0))
    if not 0 <= seed < 2**64:
        raise SchemaError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_ingest(args, config: dict) -> int:
    source = Path(_require(_pick(args.profiles, config, "profiles"), "profiles file"))
    out = _out_dir(args, config)
    dataset = profiles.load_profiles(source)
    labels = [preprocess.map_score_to_label(p.overall_score) for p in dataset]
    counts = {"0": labels.count(0), "1": labels.count(1)}
    profiles.save_profiles(dataset, out / "dataset.csv")
    _write_json(out / "ingest_summary.json", {
        "source": str(source),
        "rows": len(dataset),
        "label_counts": counts,
    })
    print(f"ingested {len(dataset)} profiles from {source}")
    print(f"label counts after score mapping: 0={counts['0']} 1={counts['1']}")
    return 0


def cmd_preprocess(args, config: dict) -> int:
    source = Path(_require(_pick(args.profiles, config, "profiles"), "profiles file"))
    lexicon_path = Path(_require(_pick(args.lexicon, config, "lexicon"), "lexicon file"))
    out = _out_dir(args, config)
    seed = _seed(args, config)
    train_fraction = float(_pick(args.train_fraction, config, "train_fraction", 0.8))
    replacement_fraction = float(_pick(args.replacement_fraction, config, "replacement_fraction", 0.3))
    augment_before_split = bool(args.augment_before_split or config.get("augment_before_split", False))

    dataset = profiles.load_profiles(source)
    lexicon = preprocess.load_lexicon(lexicon_path)
    rows = preprocess.label_dataset(dataset)

    aug_config = preprocess.AugmentationConfig(
        replacement_fraction=replacement_fraction,
        rng_seed=preprocess.derive_seed(seed, "augment"),
    )
    split_seed = preprocess.derive_seed(seed, "split")
    resample_seed = preprocess.derive_seed(seed, "resample")

    stage_counts = {"input": preprocess.class_counts(rows)}
    if augment_before_split:
        rows = preprocess.augment_dataset(rows, lexicon, aug_config)
        stage_counts["augmented"] = preprocess.class_counts(rows)
        rows = preprocess.balance_classes(rows, resample_seed)
        stage_counts["balanced"] = preprocess.class_counts(rows)
        train, test = preprocess.train_test_split(rows, train_fraction, split_seed)
    else:
        train, test = preprocess.train_test_split(rows, train_fraction, split_seed)
        train = preprocess.augment_dataset(train, lexicon, aug_config)
        stage_counts["train_augmented"] = preprocess.class_counts(train)
        train = preprocess.balance_classes(train, resample_seed)
        stage_counts["train_balanced"] = preprocess.class_counts(train)

    stage_counts["train"] = preprocess.class_counts(train)
    stage_counts["test"] = preprocess.class_counts(test)

    preprocess.write_labeled_rows(train, out / "train.csv")
    preprocess.write_labeled_rows(test, out / "test.csv")
    _write_json(out / "preprocess_summary.json", {
        "source": str(source),
        "lexicon": str(lexicon_path),
        "seed": seed,
        "sub_seeds": {
            "split": split_seed,
            "augment": aug_config.rng_seed,
            "resample": resample_seed,
        },
        "train_fraction": train_fraction,
        "replacement_fraction": replacement_fraction,
        "ordering": "augment-before-split" if augment_before_split else "split-then-augment-train",
        "counts": {k: {str(c): n for c, n in v.items()} for k, v in stage_counts.items()},
    })
    print(f"train rows: {len(train)} (counts {stage_counts['train']})")
    print(f"test rows: {len(test)} (counts {stage_counts['test']})")
    return 0


def _parse_weights(text: str | None, config: dict):
    raw = text.split(",") if text is not None else config.get("weights")
    if raw is None:
        return None
    return [float(v) for v in raw]


def _parse_directions(text: str | None, config: dict):
    raw = text.split(",") if text is not None else config.get("directions")
    if raw is None:
        return None
    return [str(v).strip() for v in raw]


def cmd_rank(args, config: dict) -> int:
    source = Path(_require(_pick(args.profiles, config, "profiles"), "profiles file"))
    encoding_path = Path(_require(_pick(args.encoding, config, "encoding"), "encoding config file"))
    out = _out_dir(args, config)

    dataset = profiles.load_profiles(source)
    encoding = profiles.load_encoding_config(encoding_path)
    features = profiles.encode_features(dataset, encoding)

    criteria = profiles.drop_column(features, "overall_score")
    matrix = topsis.DecisionMatrix(
        entries=criteria.values,
        criterion_names=criteria.column_names,
        candidate_ids=criteria.row_ids,
    )
    weights = _parse_weights(args.weights, config)
    directions = _parse_directions(args.directions, config)
    n = len(matrix.criterion_names)
    normalized_weights = topsis.normalize_weights(weights if weights is not None else np.ones(n), n)
    result = topsis.topsis(matrix, weights, directions)

    reference = np.array([float(p.overall_score) for p in dataset])
    predicted = result.closeness * RANK_SCALE
    report = validation.validation_report(validation.ScorePair(predicted, reference))

    correlations: dict = {}
    try:
        corr = profiles.pearson_correlation_matrix(features)
        correlations = {
            "columns": list(features.column_names),
            "matrix": [[float(v) for v in row] for row in corr],
        }
        with open(out / "feature_correlations.csv", "w", encoding="utf-8", newline="") as fh:
            fh.write("," + ",".join(features.column_names) + "\n")
            for name, row in zip(features.column_names, corr):
                fh.write(name + "," + ",".join(repr(float(v)) for v in row) + "\n")
    except TalentRankError as exc:
        correlations = {"unavailable": str(exc)}

    order = {int(idx): rank for rank, idx in enumerate(result.ranking, start=1)}
    candidates = [
        {
            "id": result.candidate_ids[i],
            "closeness": float(result.closeness[i]),
            "s_plus": float(result.s_plus[i]),
            "s_minus": float(result.s_minus[i]),
            "rank": order[i],
        }
        for i in range(len(result.candidate_ids))
    ]
    _write_json(out / "ranking.json", {
        "source": str(source),
        "encoding": str(encoding_path),
        "criteria": list(matrix.criterion_names),
        "weights": [float(w) for w in normalized_weights],
        "directions": list(directions) if directions is not None else [topsis.BENEFIT] * n,
        "candidates": candidates,
        "ranking": [result.candidate_ids[i] for i in result.ranking],
        "validation_vectors": {
            "predicted": f"closeness * {RANK_SCALE}",
            "reference": "expert overall_score",
        },
        "correlations": correlations,
    })
    _write_json(out / "validation_report.json", report.as_dict())
    with open(out / "ranking.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("rank,candidate_id,closeness\n")
        for rank, idx in enumerate(result.ranking, start=1):
            fh.write(f"{rank},{result.candidate_ids[idx]},{repr(float(result.closeness[idx]))}\n")

    print(f"ranked {len(candidates)} candidates on {n} criteria")
    for rank, idx in enumerate(result.ranking[:5], start=1):
        print(f"  {rank}. {result.candidate_ids[idx]}  closeness={result.closeness[idx]:.4f}")
    return 0


def cmd_train_baseline(args, config: dict) -> int:
    train_path = Path(_require(_pick(args.train, config, "train"), "train rows file"))
    test_path = Path(_require(_pick(args.test, config, "test"), "test rows file"))
    out = _out_dir(args, config)
    seed = _seed(args, config)

    train_rows = preprocess.read_labeled_rows(train_path)
    test_rows = preprocess.read_labeled_rows(test_path)
    labels = [r.label for r in train_rows]
    weights = preprocess.compute_class_weights(labels)
    training_config = scorer.TrainingConfig(
        epochs=int(_pick(args.epochs, config, "epochs", 200)),
        learning_rate=float(_pick(args.learning_rate, config, "learning_rate", 0.1)),
        class_weights=weights,
        rng_seed=seed,
        early_stopping_patience=int(_pick(args.patience, config, "patience", 3)),
        min_count=int(_pick(args.min_count, config, "min_count", 1)),
    )
    texts = [r.profile.document_text() for r in train_rows]
    model = scorer.train(texts, labels, training_config)
    scorer.save_model(model, training_config, out / "model.json")

    preds = [
        evaluation.ScoredPrediction(
            id=r.profile.id,
            probability=scorer.predict_proba(model, r.profile.document_text()),
            true_label=r.label,
        )
        for r in test_rows
    ]
    evaluation.write_score_file(preds, out / "baseline_scores.csv")
    print(f"trained on {len(train_rows)} rows, vocabulary size {len(model.vocabulary)}")
    print(f"final training loss {model.loss_history[-1]:.6f} after {len(model.loss_history) - 1} epochs")
    print(f"wrote scores for {len(preds)} test rows")
    return 0


def cmd_evaluate(args, config: dict) -> int:
    scores_path = Path(_require(_pick(args.scores, config, "scores"), "score file"))
    out = _out_dir(args, config)
    override = _pick(args.threshold, config, "threshold")

    preds = evaluation.read_score_file(scores_path)

    curve = None
    youden = None
    roc_skipped_reason = None
    try:
        curve = evaluation.roc_curve(preds)
        youden = evaluation.optimal_threshold(curve)
    except TalentRankError as exc:
        roc_skipped_reason = str(exc)

    if override is not None:
        threshold, provenance = float(override), "override"
    elif youden is not None:
        threshold, provenance = youden.threshold, "youden-optimal"
    else:
        threshold, provenance = 0.5, "fallback-0.5"

    cm = evaluation.confusion_matrix(preds, threshold)
    report = evaluation.classification_report(cm)

    payload = {
        "scores_file": str(scores_path),
        "predictions": len(preds),
        "threshold": threshold,
        "threshold_provenance": provenance,
        "confusion": {"tp": cm.tp, "fp": cm.fp, "tn": cm.tn, "fn": cm.fn},
        "report": report.as_dict(),
    }
    if curve is not None:
        payload["auc"] = curve.auc
        payload["youden"] = {
            "threshold": youden.threshold,
            "youden_j": youden.youden_j,
            "sensitivity": youden.sensitivity,
            "specificity": youden.specificity,
        }
        evaluation.write_roc_points(curve, out / "roc.csv")
    else:
        payload["roc_skipped_reason"] = roc_skipped_reason
    _write_json(out / "evaluation.json", payload)

    print(f"evaluated {len(preds)} predictions at threshold {threshold} ({provenance})")
    print(f"confusion: tp={cm.tp} fp={cm.fp} tn={cm.tn} fn={cm.fn}")
    print(f"accuracy {report.accuracy:.4f}  weighted F1 {report.weighted_f1:.4f}")
    if curve is not None:
        print(f"AUC {curve.auc:.4f}")
    else:
        print(f"ROC skipped: {roc_skipped_reason}")
    return 0


def _parse_parameter_flags(items: list[str] | None) -> dict[str, int]:
    counts: dict[str, int] = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise SchemaError(f"--parameters expects name=count, got {item!r}")
        try:
            counts[name] = int(value)
        except ValueError:
            raise SchemaError(f"parameter count for {name!r} must be an integer, got {value!r}") from None
    return counts


def cmd_compare(args, config: dict) -> int:
    score_files = [Path(p) for p in (args.score_files or config.get("scores", []))]
    if not score_files:
        raise SchemaError("compare needs at least one score file")
    out = _out_dir(args, config)
    parameter_counts = _parse_parameter_flags(args.parameters)

    entries = []
    for path in score_files:
        name = path.stem
        try:
            preds = evaluation.read_score_file(path)
            curve = evaluation.roc_curve(preds)
            youden = evaluation.optimal_threshold(curve)
            cm = evaluation.confusion_matrix(preds, youden.threshold)
            report = evaluation.classification_report(cm)
        except TalentRankError as exc:
            raise ContractError(f"{path}: {exc}") from None
        entries.append((name, report, youden, parameter_counts.get(name)))

    rows = evaluation.compare_models(entries)
    _write_json(out / "comparison.json", {"models": rows})
    with open(out / "comparison_plot.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("model,accuracy,f1,threshold\n")
        for row in rows:
            fh.write(
                f"{row['model']},{repr(row['accuracy'])},{repr(row['weighted_f1'])},{repr(row['threshold'])}\n"
            )

    header = f"{'model':<24}{'accuracy':>10}{'f1':>10}{'precision':>11}{'recall':>9}{'threshold':>11}{'params':>10}"
    print(header)
    for row in rows:
        params = row["parameters"] if row["parameters"] is not None else "-"
        print(
            f"{row['model']:<24}{row['accuracy']:>10.4f}{row['weighted_f1']:>10.4f}"
            f"{row['weighted_precision']:>11.4f}{row['weighted_recall']:>9.4f}"
            f"{row['threshold']:>11.4f}{params:>10}"
        )
    return 0


def cmd_report(args, config: dict) -> int:
    out = _out_dir(args, config)
    sections: list[str] = []

    ingest = out / "ingest_summary.json"
    if ingest.exists():
        doc = _read_json(ingest)
        sections.append(
            f"Dataset: {doc['rows']} profiles from {doc['source']}\n"
            f"  labels: 0={doc['label_counts']['0']} 1={doc['label_counts']['1']}"
        )
    prep = out / "preprocess_summary.json"
    if prep.exists():
        doc = _read_json(prep)
        counts = doc["counts"]
        sections.append(
            f"Preprocessing ({doc['ordering']}, seed {doc['seed']}):\n"
            f"  train counts: {counts['train']}\n  test counts: {counts['test']}"
        )
    ranking = out / "ranking.json"
    if ranking.exists():
        doc = _read_json(ranking)
        top = ", ".join(doc["ranking"][:5])
        sections.append(
            f"Ranking over criteria {', '.join(doc['criteria'])}:\n  top candidates: {top}"
        )
    val = out / "validation_report.json"
    if val.exists():
        doc = _read_json(val)
        lines = [f"  {k} = {v:.6g}" for k, v in sorted(doc["metrics"].items())]
        lines += [f"  {k} unavailable: {v}" for k, v in sorted(doc["unavailable"].items())]
        sections.append("Ranking validation metrics:\n" + "\n".join(lines))
    ev = out / "evaluation.json"
    if ev.exists():
        doc = _read_json(ev)
        extra = f", AUC {doc['auc']:.4f}" if "auc" in doc else ""
        sections.append(
            f"Classifier evaluation at threshold {doc['threshold']} ({doc['threshold_provenance']}):\n"
            f"  accuracy {doc['report']['accuracy']:.4f}, weighted F1 {doc['report']['weighted']['f1']:.4f}{extra}"
        )
    comparison = out / "comparison.json"
    if comparison.exists():
        doc = _read_json(comparison)
        lines = [
            f"  {row['model']}: accuracy {row['accuracy']:.4f}, f1 {row['weighted_f1']:.4f},"
            f" threshold {row['threshold']:.4f}"
            for row in doc["models"]
        ]
        sections.append("Model comparison:\n" + "\n".join(lines))

    if not sections:
        sections.append(f"No artifacts found in {out}")
    text = "\n\n".join(sections) + "\n"
    (out / "report.txt").write_text(text, encoding="utf-8")
    print(text, end="")
    return 0


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="talentrank",
        description="Batch candidate ranking and classifier evaluation pipeline",
    )
    parser.add_argument("--config", help="JSON file providing defaults for any flag")
    parser.add_argument("--seed", type=int, help="master seed for all random sub-streams")
    parser.add_argument("--out", help="output directory (default: out)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load and validate a profile file, write the canonical dataset")
    p.add_argument("--profiles", help="profile CSV file")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("preprocess", help="label, split, augment, and balance the dataset")
    p.add_argument("--profiles", help="profile CSV file")
    p.add_argument("--lexicon", help="synonym lexicon file")
    p.add_argument("--train-fraction", type=float, dest="train_fraction")
    p.add_argument("--replacement-fraction", type=float, dest="replacement_fraction")
    p.add_argument(
        "--augment-before-split",
        action="store_true",
        help="augment and balance the full dataset before splitting "
        "(risks near-duplicate leakage into the test set)",
    )
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("rank", help="rank candidates by closeness to the ideal solution")
    p.add_argument("--profiles", help="profile CSV file")
    p.add_argument("--encoding", help="encoding config JSON file")
    p.add_argument("--weights", help="comma-separated criterion weights")
    p.add_argument("--directions", help="comma-separated benefit/cost directions")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("train-baseline", help="train the linear scorer and emit test scores")
    p.add_argument("--train", help="training labeled-rows file")
    p.add_argument("--test", help="test labeled-rows file")
    p.add_argument("--epochs", type=int)
    p.add_argument("--learning-rate", type=float, dest="learning_rate")
    p.add_argument("--patience", type=int)
    p.add_argument("--min-count", type=int, dest="min_count")
    p.set_defaults(func=cmd_train_baseline)

    p = sub.add_parser("evaluate", help="evaluate a score file: confusion, report, ROC, AUC")
    p.add_argument("--scores", help="score file (id,probability,true_label)")
    p.add_argument("--threshold", type=float, help="fixed threshold override in [0,1]")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", help="compare several score files in one table")
    p.add_argument("score_files", nargs="*", help="score files to compare")
    p.add_argument(
        "--parameters",
        action="append",
        metavar="NAME=COUNT",
        help="parameter count for a model (repeatable)",
    )
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("report", help="roll existing artifacts in the output directory into one report")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        return args.func(args, config)
    except TalentRankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
