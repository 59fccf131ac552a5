"""Export per-row probabilities from a fine-tuned model as an engine score file.

The output is the engine's interchange contract: UTF-8 CSV with the exact
header ``id,probability,true_label`` and positive-class probabilities in
[0, 1], one row per test row in input order.
"""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

import torch

from .data import TextRow
from .errors import AdapterError
from .training import load_checkpoint

SCORE_FILE_HEADER = ("id", "probability", "true_label")


@torch.no_grad()
def score_rows(
    model_dir: str | Path, rows: Sequence[TextRow], batch_size: int = 32, max_length: int = 128
) -> list[tuple[str, float, int]]:
    """Positive-class probability for every row, in input order."""
    if not rows:
        raise AdapterError("no rows to score")
    tokenizer, model = load_checkpoint(str(model_dir))
    model.eval()
    scored: list[tuple[str, float, int]] = []
    for start in range(0, len(rows), batch_size):
        batch = rows[start : start + batch_size]
        try:
            encoded = tokenizer(
                [r.text for r in batch],
                padding=True,
                truncation=True,
                max_length=max_length,
                return_tensors="pt",
            )
        except Exception as exc:
            raise AdapterError(
                f"tokenizer rejected row {batch[0].id!r} (batch starting at {start}): {exc}"
            ) from exc
        logits = model(**encoded).logits
        probs = torch.softmax(logits, dim=-1)[:, 1].clamp(0.0, 1.0)
        for row, p in zip(batch, probs):
            scored.append((row.id, float(p), row.label))
    return scored


def export_scores(
    model_dir: str | Path, rows: Sequence[TextRow], out_path: str | Path
) -> Path:
    """Score ``rows`` with the saved model and write the score file."""
    scored = score_rows(model_dir, rows)
    out_path = Path(out_path)
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SCORE_FILE_HEADER)
        for ident, probability, label in scored:
            writer.writerow([ident, repr(probability), label])
    return out_path
