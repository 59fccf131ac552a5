"""Agreement metrics between a predicted score vector and expert reference values.

Six metrics: RMSE, MAE, MAPE (percent, anchored on the reference), Manhattan
distance, cosine similarity, and range-normalized RMSE. The report variant
computes whatever is well defined and records a reason for anything that is
not, instead of failing the whole report.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError

METRIC_NAMES = ("rmse", "mae", "mape", "manhattan", "cosine", "nrmse")

METRIC_DEFINITIONS = {
    "rmse": "sqrt(mean((predicted - reference)^2))",
    "mae": "mean(|predicted - reference|)",
    "mape": "100 * mean(|predicted - reference| / |reference|); anchored on the reference, in percent",
    "manhattan": "sum(|predicted - reference|)",
    "cosine": "dot(predicted, reference) / (|predicted| * |reference|)",
    "nrmse": "rmse / (max(reference) - min(reference)); divisor is the reference range",
}


@dataclass(frozen=True)
class ScorePair:
    """A predicted vector and its reference vector in the same candidate order."""

    predicted: np.ndarray
    reference: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.predicted, dtype=float)
        r = np.asarray(self.reference, dtype=float)
        object.__setattr__(self, "predicted", p)
        object.__setattr__(self, "reference", r)
        if p.ndim != 1 or r.ndim != 1 or p.size != r.size:
            raise DomainError("predicted and reference must be 1-d vectors of equal length")
        if p.size < 1:
            raise DomainError("score pair must contain at least one element")
        if not (np.all(np.isfinite(p)) and np.all(np.isfinite(r))):
            raise DomainError("score pair entries must all be finite")

    def __len__(self) -> int:
        return self.predicted.size


def rmse(pair: ScorePair) -> float:
    """Root mean squared error."""
    d = pair.predicted - pair.reference
    return float(math.sqrt(float(np.mean(d * d))))


def mae(pair: ScorePair) -> float:
    """Mean absolute error."""
    return float(np.mean(np.abs(pair.predicted - pair.reference)))


def mape(pair: ScorePair) -> float:
    """Mean absolute percentage error, in percent, anchored on the reference."""
    zero = np.flatnonzero(pair.reference == 0.0)
    if zero.size:
        raise DomainError(f"reference value is zero at index {int(zero[0])}; MAPE undefined")
    return float(100.0 * np.mean(np.abs(pair.predicted - pair.reference) / np.abs(pair.reference)))


def manhattan_distance(pair: ScorePair) -> float:
    """Sum of absolute differences."""
    return float(np.sum(np.abs(pair.predicted - pair.reference)))


def cosine_similarity(pair: ScorePair) -> float:
    """Cosine of the angle between the two vectors."""
    np_norm = float(np.linalg.norm(pair.predicted))
    nr_norm = float(np.linalg.norm(pair.reference))
    if np_norm == 0.0 or nr_norm == 0.0:
        raise DomainError("cosine similarity undefined for a zero-norm vector")
    return float(np.dot(pair.predicted, pair.reference) / (np_norm * nr_norm))


def normalized_rmse(pair: ScorePair) -> float:
    """RMSE divided by the reference range (max - min)."""
    lo = float(np.min(pair.reference))
    hi = float(np.max(pair.reference))
    if hi <= lo:
        raise DomainError("reference vector is constant; range-normalized RMSE undefined")
    return rmse(pair) / (hi - lo)


_METRIC_FUNCS = {
    "rmse": rmse,
    "mae": mae,
    "mape": mape,
    "manhattan": manhattan_distance,
    "cosine": cosine_similarity,
    "nrmse": normalized_rmse,
}


@dataclass(frozen=True)
class ValidationReport:
    """All six metrics for one score pair.

    Metrics whose preconditions fail appear in ``unavailable`` with the reason
    instead of aborting the report.
    """

    values: dict[str, float] = field(default_factory=dict)
    unavailable: dict[str, str] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "metrics": dict(self.values),
            "unavailable": dict(self.unavailable),
            "definitions": dict(METRIC_DEFINITIONS),
        }


def validation_report(pair: ScorePair) -> ValidationReport:
    """Compute every defined metric; record a reason for each undefined one."""
    values: dict[str, float] = {}
    unavailable: dict[str, str] = {}
    for name in METRIC_NAMES:
        try:
            values[name] = _METRIC_FUNCS[name](pair)
        except DomainError as exc:
            unavailable[name] = str(exc)
    return ValidationReport(values=values, unavailable=unavailable)


def pair_from_sequences(predicted: Sequence[float], reference: Sequence[float]) -> ScorePair:
    return ScorePair(np.asarray(predicted, dtype=float), np.asarray(reference, dtype=float))
