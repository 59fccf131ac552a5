"""Binary classifier evaluation: confusion matrices, reports, ROC/AUC, thresholds.

Consumes scored predictions (id, probability, true label) from any scorer via
the score-file contract, applies the fixed decision rule

    predicted positive  iff  probability >= threshold

and derives the usual metrics. The ROC curve sweeps every distinct
probability plus a sentinel strictly above the maximum, so the curve always
contains the (0,0) and (1,1) endpoints. AUC is the trapezoid over the
empirical curve, computed in integer count arithmetic with one final
division; this makes it identical to the pairwise concordance statistic
(score ties counted 0.5).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractError, DomainError, ShapeError, SingleClassError

SCORE_FILE_HEADER = ("id", "probability", "true_label")


@dataclass(frozen=True)
class ScoredPrediction:
    """One scored test case: identifier, probability of the positive class, true label."""

    id: str
    probability: float
    true_label: int

    def __post_init__(self):
        if not (0.0 <= self.probability <= 1.0):
            raise ContractError(f"probability {self.probability} outside [0, 1] for id {self.id!r}")
        if self.true_label not in (0, 1):
            raise ContractError(f"true label must be 0 or 1, got {self.true_label!r} for id {self.id!r}")


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts at one fixed threshold. Positive class is label 1."""

    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        for name in ("tp", "fp", "tn", "fn"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ShapeError(f"{name} must be a non-negative integer, got {v!r}")
        if self.total < 1:
            raise ShapeError("confusion matrix must count at least one prediction")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class ClassificationReport:
    """Accuracy plus per-class and support-weighted precision/recall/F1."""

    accuracy: float
    negative: ClassMetrics
    positive: ClassMetrics
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float

    def as_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "per_class": {
                "0": vars(self.negative).copy(),
                "1": vars(self.positive).copy(),
            },
            "weighted": {
                "precision": self.weighted_precision,
                "recall": self.weighted_recall,
                "f1": self.weighted_f1,
            },
        }


@dataclass(frozen=True)
class RocCurve:
    """Empirical ROC points ordered by ascending fpr (descending threshold)."""

    fpr: np.ndarray
    tpr: np.ndarray
    thresholds: np.ndarray
    auc: float


@dataclass(frozen=True)
class ThresholdSearchResult:
    """The ROC operating point maximizing Youden's J = sensitivity + specificity - 1."""

    threshold: float
    youden_j: float
    sensitivity: float
    specificity: float


def _ratio(num: int, den: int) -> float:
    # 0/0 convention: report 0.0
    return num / den if den else 0.0


def confusion_matrix(preds: Sequence[ScoredPrediction], threshold: float) -> ConfusionMatrix:
    """Count tp/fp/tn/fn at a fixed threshold (positive iff probability >= threshold)."""
    if len(preds) == 0:
        raise DomainError("cannot build a confusion matrix from an empty prediction list")
    if not (0.0 <= threshold <= 1.0):
        raise DomainError(f"threshold {threshold} outside [0, 1]")
    tp = fp = tn = fn = 0
    for p in preds:
        predicted_positive = p.probability >= threshold
        if p.true_label == 1:
            if predicted_positive:
                tp += 1
            else:
                fn += 1
        else:
            if predicted_positive:
                fp += 1
            else:
                tn += 1
    return ConfusionMatrix(tp=tp, fp=fp, tn=tn, fn=fn)


def classification_report(cm: ConfusionMatrix) -> ClassificationReport:
    """Derive accuracy and per-class / support-weighted metrics from counts."""
    total = cm.total
    support_pos = cm.tp + cm.fn
    support_neg = cm.tn + cm.fp

    precision_pos = _ratio(cm.tp, cm.tp + cm.fp)
    recall_pos = _ratio(cm.tp, support_pos)
    f1_pos = _ratio(2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn)

    precision_neg = _ratio(cm.tn, cm.tn + cm.fn)
    recall_neg = _ratio(cm.tn, support_neg)
    f1_neg = _ratio(2 * cm.tn, 2 * cm.tn + cm.fn + cm.fp)

    accuracy = (cm.tp + cm.tn) / total
    # Support-weighted recall collapses to (tp+tn)/total; using the closed form
    # keeps the "weighted recall == accuracy" identity exact in floating point.
    weighted_recall = (cm.tp + cm.tn) / total
    weighted_precision = (support_neg * precision_neg + support_pos * precision_pos) / total
    weighted_f1 = (support_neg * f1_neg + support_pos * f1_pos) / total

    return ClassificationReport(
        accuracy=accuracy,
        negative=ClassMetrics(precision=precision_neg, recall=recall_neg, f1=f1_neg, support=support_neg),
        positive=ClassMetrics(precision=precision_pos, recall=recall_pos, f1=f1_pos, support=support_pos),
        weighted_precision=weighted_precision,
        weighted_recall=weighted_recall,
        weighted_f1=weighted_f1,
    )


def roc_curve(preds: Sequence[ScoredPrediction]) -> RocCurve:
    """Build the empirical ROC curve and its trapezoidal AUC.

    Thresholds sweep the distinct probabilities in descending order, preceded
    by a sentinel strictly above the maximum (the (0,0) endpoint) and closed
    by threshold 0.0 (all-positive, the (1,1) endpoint). Consecutive points
    with identical (fpr, tpr) are merged keeping the larger threshold.
    """
    if len(preds) == 0:
        raise DomainError("cannot build a ROC curve from an empty prediction list")
    labels = np.array([p.true_label for p in preds], dtype=int)
    probs = np.array([p.probability for p in preds], dtype=float)
    n_pos = int(np.sum(labels == 1))
    n_neg = int(labels.size - n_pos)
    if n_pos == 0 or n_neg == 0:
        raise SingleClassError("ROC curve requires both classes among the true labels")

    order = np.argsort(-probs, kind="stable")
    sorted_probs = probs[order]
    sorted_labels = labels[order]

    thresholds: list[float] = [float(np.nextafter(sorted_probs[0], np.inf))]
    tp_counts: list[int] = [0]
    fp_counts: list[int] = [0]

    tp = fp = 0
    i = 0
    n = labels.size
    while i < n:
        t = sorted_probs[i]
        # consume the whole tie group at this probability
        while i < n and sorted_probs[i] == t:
            if sorted_labels[i] == 1:
                tp += 1
            else:
                fp += 1
            i += 1
        thresholds.append(float(t))
        tp_counts.append(tp)
        fp_counts.append(fp)
    if thresholds[-1] > 0.0:
        thresholds.append(0.0)
        tp_counts.append(n_pos)
        fp_counts.append(n_neg)

    # merge consecutive duplicate points, keeping the larger threshold
    keep = [0]
    for j in range(1, len(thresholds)):
        if tp_counts[j] != tp_counts[keep[-1]] or fp_counts[j] != fp_counts[keep[-1]]:
            keep.append(j)
    thresholds_arr = np.array([thresholds[j] for j in keep])
    tp_arr = np.array([tp_counts[j] for j in keep], dtype=np.int64)
    fp_arr = np.array([fp_counts[j] for j in keep], dtype=np.int64)

    # trapezoid in integer counts; a single division keeps e.g. perfect
    # separation at exactly 1.0 and matches pairwise concordance bit for bit
    area2 = int(np.sum((fp_arr[1:] - fp_arr[:-1]) * (tp_arr[1:] + tp_arr[:-1])))
    auc = area2 / (2 * n_pos * n_neg)

    return RocCurve(
        fpr=fp_arr / n_neg,
        tpr=tp_arr / n_pos,
        thresholds=thresholds_arr,
        auc=float(auc),
    )


def optimal_threshold(curve: RocCurve) -> ThresholdSearchResult:
    """Pick the curve point maximizing Youden's J; exact ties go to the larger threshold."""
    sens = curve.tpr
    spec = 1.0 - curve.fpr
    j = sens + spec - 1.0
    # thresholds descend along the curve, so the first argmax is the largest threshold
    idx = int(np.argmax(j))
    return ThresholdSearchResult(
        threshold=float(curve.thresholds[idx]),
        youden_j=float(j[idx]),
        sensitivity=float(sens[idx]),
        specificity=float(spec[idx]),
    )


def compare_models(
    entries: Sequence[tuple[str, ClassificationReport, ThresholdSearchResult, int | None]],
) -> list[dict]:
    """Build comparison rows sorted by descending accuracy, then descending weighted F1."""
    if len(entries) == 0:
        raise DomainError("model comparison needs at least one entry")
    rows = []
    for name, report, threshold_result, parameter_count in entries:
        rows.append(
            {
                "model": name,
                "accuracy": report.accuracy,
                "weighted_f1": report.weighted_f1,
                "weighted_precision": report.weighted_precision,
                "weighted_recall": report.weighted_recall,
                "threshold": threshold_result.threshold,
                "parameters": parameter_count,
            }
        )
    rows.sort(key=lambda r: (-r["accuracy"], -r["weighted_f1"]))
    return rows


# ---------------------------------------------------------------------------
# score-file contract: UTF-8 CSV, header "id,probability,true_label"
# ---------------------------------------------------------------------------

def read_score_file(source: str | Path | Iterable[str]) -> list[ScoredPrediction]:
    """Parse a score file, naming the offending line on any contract violation."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return _parse_scores(fh)
    return _parse_scores(source)


def _parse_scores(lines: Iterable[str]) -> list[ScoredPrediction]:
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise ContractError("score file is empty; expected header id,probability,true_label")
    if tuple(h.strip() for h in header) != SCORE_FILE_HEADER:
        raise ContractError(
            f"score file header must be exactly {','.join(SCORE_FILE_HEADER)}, got {','.join(header)!r}"
        )
    preds: list[ScoredPrediction] = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise ContractError(f"line {lineno}: expected 3 fields, got {len(row)}")
        ident, prob_text, label_text = (cell.strip() for cell in row)
        if not ident:
            raise ContractError(f"line {lineno}: empty id")
        try:
            prob = float(prob_text)
        except ValueError:
            raise ContractError(f"line {lineno}: probability {prob_text!r} is not a number")
        if not math.isfinite(prob) or not (0.0 <= prob <= 1.0):
            raise ContractError(f"line {lineno}: probability {prob_text} outside [0, 1]")
        if label_text not in ("0", "1"):
            raise ContractError(f"line {lineno}: true_label must be 0 or 1, got {label_text!r}")
        preds.append(ScoredPrediction(id=ident, probability=prob, true_label=int(label_text)))
    if not preds:
        raise ContractError("score file contains a header but no data rows")
    return preds


def write_score_file(preds: Sequence[ScoredPrediction], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SCORE_FILE_HEADER)
        for p in preds:
            writer.writerow([p.id, repr(p.probability), p.true_label])


def write_roc_points(curve: RocCurve, path: str | Path) -> None:
    """Emit fpr,tpr,threshold rows for external plotting tools."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["fpr", "tpr", "threshold"])
        for f, t, thr in zip(curve.fpr, curve.tpr, curve.thresholds):
            writer.writerow([repr(float(f)), repr(float(t)), repr(float(thr))])
