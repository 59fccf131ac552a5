"""Class-weighted logistic scorer over token counts.

A deliberately small, fully inspectable stand-in for heavyweight text
classifiers: bag-of-words counts, a single linear layer, and full-batch
gradient descent on the class-weighted logistic loss

    L = (1/N) * sum_i w_{y_i} * log(1 + exp(-(2*y_i - 1) * (theta . x_i + b)))

Weights start at zero and every epoch backtracks (step halving) until the
loss does not increase, so the recorded loss history is non-increasing.
Training is deterministic: same rows and config give a bit-identical model.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DomainError, SchemaError, SingleClassError
from .preprocess import ClassWeights

_TOKEN = re.compile(r"[a-z0-9]+")

_MIN_IMPROVEMENT = 1e-9
_MAX_BACKTRACKS = 40


def tokenize(text: str) -> list[str]:
    """Lowercase tokens split on non-alphanumeric runs."""
    return _TOKEN.findall(text.lower())


@dataclass(frozen=True)
class Vocabulary:
    """Token -> contiguous column index, in first-appearance order."""

    tokens: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if len(set(self.tokens)) != len(self.tokens):
            raise DomainError("vocabulary tokens must be unique")
        object.__setattr__(self, "index", {t: i for i, t in enumerate(self.tokens)})

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.index


def fit_vocabulary(texts: Sequence[str], min_count: int = 1) -> Vocabulary:
    """Keep tokens appearing at least ``min_count`` times across the corpus."""
    if len(texts) == 0:
        raise DomainError("cannot fit a vocabulary on an empty corpus")
    if min_count < 1:
        raise DomainError(f"min_count must be >= 1, got {min_count}")
    counts: dict[str, int] = {}
    first_seen: list[str] = []
    for text in texts:
        for token in tokenize(text):
            if token not in counts:
                first_seen.append(token)
            counts[token] = counts.get(token, 0) + 1
    kept = [t for t in first_seen if counts[t] >= min_count]
    if not kept:
        raise DomainError(f"no token appears at least {min_count} times; vocabulary would be empty")
    return Vocabulary(tokens=tuple(kept))


def vectorize(text: str, vocab: Vocabulary) -> np.ndarray:
    """Token counts aligned to the vocabulary; out-of-vocabulary tokens are ignored."""
    if len(vocab) == 0:
        raise DomainError("cannot vectorize with an empty vocabulary")
    vec = np.zeros(len(vocab))
    for token in tokenize(text):
        idx = vocab.index.get(token)
        if idx is not None:
            vec[idx] += 1.0
    return vec


@dataclass(frozen=True)
class TrainingConfig:
    epochs: int = 200
    learning_rate: float = 0.1
    class_weights: ClassWeights = field(default_factory=lambda: ClassWeights(1.0, 1.0))
    rng_seed: int = 0
    early_stopping_patience: int = 3
    min_count: int = 1

    def __post_init__(self):
        if self.epochs < 1:
            raise DomainError(f"epochs must be >= 1, got {self.epochs}")
        if not (self.learning_rate > 0 and math.isfinite(self.learning_rate)):
            raise DomainError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.early_stopping_patience < 0:
            raise DomainError("early_stopping_patience must be >= 0")


@dataclass(frozen=True)
class LinearModel:
    weights: np.ndarray
    bias: float
    vocabulary: Vocabulary
    loss_history: tuple[float, ...] = ()

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", w)
        if w.shape != (len(self.vocabulary),):
            raise DomainError("weight length must equal the vocabulary size")
        if not (np.all(np.isfinite(w)) and math.isfinite(self.bias)):
            raise DomainError("model parameters must all be finite")


def weighted_logistic_loss(
    weights: np.ndarray, bias: float, x: np.ndarray, y: np.ndarray, class_weights: ClassWeights
) -> float:
    """Mean class-weighted logistic loss at the given parameters."""
    z = x @ weights + bias
    s = 2.0 * y - 1.0
    w = np.where(y == 1, class_weights.positive, class_weights.negative)
    # log(1 + exp(-sz)) via logaddexp for stability at large |z|
    return float(np.mean(w * np.logaddexp(0.0, -s * z)))


def loss_gradient(
    weights: np.ndarray, bias: float, x: np.ndarray, y: np.ndarray, class_weights: ClassWeights
) -> tuple[np.ndarray, float]:
    """Analytic gradient of :func:`weighted_logistic_loss` in (weights, bias)."""
    z = x @ weights + bias
    p = _sigmoid(z)
    w = np.where(y == 1, class_weights.positive, class_weights.negative)
    residual = w * (p - y)
    n = y.size
    return (x.T @ residual) / n, float(np.sum(residual) / n)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def train(texts: Sequence[str], labels: Sequence[int], config: TrainingConfig) -> LinearModel:
    """Fit the scorer by full-batch gradient descent from zero initialization.

    Each epoch proposes a step at the configured learning rate and halves it
    until the loss stops increasing; training ends early once the improvement
    stays below 1e-9 for ``early_stopping_patience`` consecutive epochs
    (patience 0 disables early stopping).
    """
    if len(texts) != len(labels):
        raise DomainError("texts and labels must have the same length")
    y = np.asarray(labels, dtype=float)
    if not np.all(np.isin(y, (0.0, 1.0))):
        raise DomainError("labels must be 0 or 1")
    if np.all(y == 0.0) or np.all(y == 1.0):
        raise SingleClassError("training needs both classes present")

    vocab = fit_vocabulary(texts, config.min_count)
    x = np.vstack([vectorize(t, vocab) for t in texts])

    theta = np.zeros(len(vocab))
    bias = 0.0
    loss = weighted_logistic_loss(theta, bias, x, y, config.class_weights)
    history = [loss]
    stagnant = 0

    for _ in range(config.epochs):
        grad_w, grad_b = loss_gradient(theta, bias, x, y, config.class_weights)
        step = config.learning_rate
        improvement = 0.0
        for _ in range(_MAX_BACKTRACKS + 1):
            candidate_w = theta - step * grad_w
            candidate_b = bias - step * grad_b
            candidate_loss = weighted_logistic_loss(candidate_w, candidate_b, x, y, config.class_weights)
            if candidate_loss <= loss:
                improvement = loss - candidate_loss
                theta, bias, loss = candidate_w, candidate_b, candidate_loss
                break
            step *= 0.5
        history.append(loss)
        if improvement < _MIN_IMPROVEMENT:
            stagnant += 1
            if config.early_stopping_patience and stagnant >= config.early_stopping_patience:
                break
        else:
            stagnant = 0

    return LinearModel(weights=theta, bias=bias, vocabulary=vocab, loss_history=tuple(history))


def predict_proba(model: LinearModel, text: str) -> float:
    """Probability of the positive class, clipped strictly inside (0, 1)."""
    z = float(model.weights @ vectorize(text, model.vocabulary) + model.bias)
    p = float(_sigmoid(np.array([z]))[0])
    return min(max(p, 1e-12), 1.0 - 1e-12)


# ---------------------------------------------------------------------------
# persistence: JSON document with vocabulary, parameters, and a config echo
# ---------------------------------------------------------------------------

def save_model(model: LinearModel, config: TrainingConfig, path: str | Path) -> None:
    doc = {
        "format": "talentrank-linear-model-v1",
        "vocabulary": list(model.vocabulary.tokens),
        "weights": [float(w) for w in model.weights],
        "bias": float(model.bias),
        "loss_history": [float(v) for v in model.loss_history],
        "config": {
            "epochs": config.epochs,
            "learning_rate": config.learning_rate,
            "class_weights": config.class_weights.as_dict(),
            "rng_seed": config.rng_seed,
            "early_stopping_patience": config.early_stopping_patience,
            "min_count": config.min_count,
        },
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> LinearModel:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if doc.get("format") != "talentrank-linear-model-v1":
        raise SchemaError(f"not a linear model document: format {doc.get('format')!r}")
    return LinearModel(
        weights=np.array(doc["weights"], dtype=float),
        bias=float(doc["bias"]),
        vocabulary=Vocabulary(tokens=tuple(doc["vocabulary"])),
        loss_history=tuple(float(v) for v in doc.get("loss_history", [])),
    )
