"""TOPSIS ranking over a decision matrix.

Candidates (rows) are scored against criteria (columns) by closeness to an
ideal-best point and remoteness from an ideal-worst point in weighted,
vector-normalized criterion space:

    r_ij = x_ij / sqrt(sum_k x_kj^2)
    v_ij = w_j * r_ij                 (weights normalized to sum 1)
    s+_i = ||v_i - best||,  s-_i = ||v_i - worst||
    C_i  = s-_i / (s+_i + s-_i)

Higher closeness ranks better. Each stage is exposed on its own so the
pipeline can be audited step by step.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateColumnError, DegenerateMatrixError, ShapeError

BENEFIT = "benefit"
COST = "cost"


@dataclass(frozen=True)
class DecisionMatrix:
    """m candidates x n criteria of finite reals."""

    entries: np.ndarray
    criterion_names: tuple[str, ...]
    candidate_ids: tuple[str, ...]

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        object.__setattr__(self, "entries", entries)
        if entries.ndim != 2:
            raise ShapeError("decision matrix must be 2-dimensional")
        m, n = entries.shape
        if m < 2:
            raise ShapeError(f"need at least 2 candidates, got {m}")
        if n < 1:
            raise ShapeError("need at least 1 criterion")
        if not np.all(np.isfinite(entries)):
            raise ShapeError("decision matrix entries must all be finite")
        if len(self.criterion_names) != n:
            raise ShapeError(f"{len(self.criterion_names)} criterion names for {n} columns")
        if len(set(self.criterion_names)) != n:
            raise ShapeError("criterion names must be unique")
        if len(self.candidate_ids) != m:
            raise ShapeError(f"{len(self.candidate_ids)} candidate ids for {m} rows")
        if len(set(self.candidate_ids)) != m:
            raise ShapeError("candidate ids must be unique")

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


@dataclass(frozen=True)
class IdealPoints:
    """Per-criterion ideal-best and ideal-worst coordinates."""

    best: np.ndarray
    worst: np.ndarray


@dataclass(frozen=True)
class ClosenessResult:
    """Separation distances, closeness coefficients, and the induced ranking.

    ``ranking`` is a permutation of candidate indices sorted by descending
    closeness; exact ties keep ascending input order.
    """

    candidate_ids: tuple[str, ...]
    s_plus: np.ndarray
    s_minus: np.ndarray
    closeness: np.ndarray
    ranking: np.ndarray

    def ranked_ids(self) -> list[str]:
        return [self.candidate_ids[i] for i in self.ranking]


def _check_directions(directions: Sequence[str], n: int) -> list[str]:
    if len(directions) != n:
        raise ShapeError(f"{len(directions)} directions for {n} criteria")
    out = []
    for d in directions:
        if d not in (BENEFIT, COST):
            raise ShapeError(f"direction must be '{BENEFIT}' or '{COST}', got {d!r}")
        out.append(d)
    return out


def normalize_matrix(matrix: DecisionMatrix) -> np.ndarray:
    """Vector-normalize each column to unit Euclidean norm."""
    x = matrix.entries
    norms = np.sqrt(np.sum(x * x, axis=0))
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        name = matrix.criterion_names[int(zero[0])]
        raise DegenerateColumnError(f"criterion {name!r} is all zero and cannot be normalized")
    return x / norms


def normalize_weights(weights: Sequence[float], n: int) -> np.ndarray:
    """Validate a weight vector and rescale it to sum 1."""
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size != n:
        raise ShapeError(f"weight vector of length {w.size} for {n} criteria")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ShapeError("weights must be finite and non-negative")
    total = float(np.sum(w))
    if total <= 0.0:
        raise ShapeError("weights must have a positive sum")
    return w / total


def apply_weights(normalized: np.ndarray, weights: Sequence[float]) -> np.ndarray:
    """Scale each normalized column by its weight (weights renormalized to sum 1)."""
    r = np.asarray(normalized, dtype=float)
    w = normalize_weights(weights, r.shape[1])
    return r * w


def ideal_points(weighted: np.ndarray, directions: Sequence[str]) -> IdealPoints:
    """Column-wise extremes of the weighted matrix, direction-dependent.

    Benefit criteria take their max as best and min as worst; cost criteria
    swap the two.
    """
    v = np.asarray(weighted, dtype=float)
    dirs = _check_directions(directions, v.shape[1])
    col_max = v.max(axis=0)
    col_min = v.min(axis=0)
    is_benefit = np.array([d == BENEFIT for d in dirs])
    best = np.where(is_benefit, col_max, col_min)
    worst = np.where(is_benefit, col_min, col_max)
    return IdealPoints(best=best, worst=worst)


def separation_distances(weighted: np.ndarray, ideals: IdealPoints) -> tuple[np.ndarray, np.ndarray]:
    """Euclidean distances of every candidate row to the best and worst points."""
    v = np.asarray(weighted, dtype=float)
    if ideals.best.shape != (v.shape[1],) or ideals.worst.shape != (v.shape[1],):
        raise ShapeError("ideal point dimension does not match the matrix")
    s_plus = np.sqrt(np.sum((v - ideals.best) ** 2, axis=1))
    s_minus = np.sqrt(np.sum((v - ideals.worst) ** 2, axis=1))
    return s_plus, s_minus


def closeness_and_rank(
    s_plus: np.ndarray, s_minus: np.ndarray, candidate_ids: Sequence[str]
) -> ClosenessResult:
    """Closeness coefficients C_i = s-_i / (s+_i + s-_i) and the induced ranking."""
    sp = np.asarray(s_plus, dtype=float)
    sm = np.asarray(s_minus, dtype=float)
    if sp.shape != sm.shape or sp.ndim != 1:
        raise ShapeError("separation vectors must be 1-d and the same length")
    if len(candidate_ids) != sp.size:
        raise ShapeError("candidate id count does not match the separation vectors")
    denom = sp + sm
    if np.any(denom == 0.0):
        raise DegenerateMatrixError(
            "all candidates are identical in every criterion; closeness is undefined"
        )
    closeness = sm / denom
    # stable ascending sort of -closeness = descending closeness, ties by input index
    ranking = np.argsort(-closeness, kind="stable")
    return ClosenessResult(
        candidate_ids=tuple(candidate_ids),
        s_plus=sp,
        s_minus=sm,
        closeness=closeness,
        ranking=ranking,
    )


def topsis(
    matrix: DecisionMatrix,
    weights: Sequence[float] | None = None,
    directions: Sequence[str] | None = None,
) -> ClosenessResult:
    """Run the full pipeline: normalize, weight, ideals, distances, rank.

    Defaults: equal weights and all-benefit criteria.
    """
    m, n = matrix.shape
    if weights is None:
        weights = np.ones(n)
    if directions is None:
        directions = [BENEFIT] * n
    r = normalize_matrix(matrix)
    v = apply_weights(r, weights)
    ideals = ideal_points(v, directions)
    s_plus, s_minus = separation_distances(v, ideals)
    return closeness_and_rank(s_plus, s_minus, matrix.candidate_ids)
