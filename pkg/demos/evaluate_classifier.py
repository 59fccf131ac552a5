"""Evaluate a probabilistic classifier: confusion matrix, ROC, AUC, Youden point.

Builds a synthetic score set with a known sweet spot, sweeps the ROC curve,
reads off the threshold maximizing Youden's J, and prints the confusion
matrix and classification report at that operating point.
"""
import numpy as np

from talentrank import evaluation
from talentrank.evaluation import ScoredPrediction

rng = np.random.default_rng(8)

# positives concentrate above 0.55, negatives below, with deliberate overlap
positives = np.clip(rng.normal(0.72, 0.15, size=30), 0.0, 1.0)
negatives = np.clip(rng.normal(0.38, 0.15, size=30), 0.0, 1.0)
preds = [ScoredPrediction(f"pos{i}", float(p), 1) for i, p in enumerate(positives)]
preds += [ScoredPrediction(f"neg{i}", float(p), 0) for i, p in enumerate(negatives)]

curve = evaluation.roc_curve(preds)
print(f"ROC curve with {len(curve.fpr)} points, AUC = {curve.auc:.4f}")
print("first points (fpr, tpr, threshold):")
for f, t, thr in list(zip(curve.fpr, curve.tpr, curve.thresholds))[:5]:
    print(f"  ({f:.3f}, {t:.3f}, {thr:.3f})")

best = evaluation.optimal_threshold(curve)
print(f"\nYouden-optimal threshold: {best.threshold:.4f}")
print(f"  J = {best.youden_j:.4f}, sensitivity = {best.sensitivity:.4f}, "
      f"specificity = {best.specificity:.4f}")

cm = evaluation.confusion_matrix(preds, best.threshold)
print(f"\nconfusion at the optimal threshold: tp={cm.tp} fp={cm.fp} tn={cm.tn} fn={cm.fn}")

report = evaluation.classification_report(cm)
print(f"accuracy            {report.accuracy:.4f}")
print(f"positive class      precision={report.positive.precision:.4f} "
      f"recall={report.positive.recall:.4f} f1={report.positive.f1:.4f}")
print(f"negative class      precision={report.negative.precision:.4f} "
      f"recall={report.negative.recall:.4f} f1={report.negative.f1:.4f}")
print(f"weighted            precision={report.weighted_precision:.4f} "
      f"recall={report.weighted_recall:.4f} f1={report.weighted_f1:.4f}")

# compare against a deliberately blunted variant of the same scores
blunted = [
    ScoredPrediction(p.id, float(np.clip(0.5 + (p.probability - 0.5) * 0.3 + rng.normal(0, 0.12), 0, 1)), p.true_label)
    for p in preds
]
rows = evaluation.compare_models([
    ("sharp", report, best, None),
    (
        "blunted",
        evaluation.classification_report(
            evaluation.confusion_matrix(
                blunted, evaluation.optimal_threshold(evaluation.roc_curve(blunted)).threshold
            )
        ),
        evaluation.optimal_threshold(evaluation.roc_curve(blunted)),
        None,
    ),
])
print("\nmodel comparison (sorted by accuracy, then weighted F1):")
for row in rows:
    print(f"  {row['model']:<8} accuracy={row['accuracy']:.4f} f1={row['weighted_f1']:.4f} "
          f"threshold={row['threshold']:.4f}")
