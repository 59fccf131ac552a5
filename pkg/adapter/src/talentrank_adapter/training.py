"""Fine-tune a pretrained sequence-classification checkpoint.

The recipe is fixed and explicit: AdamW with weight decay, a linear
learning-rate schedule (warmup then decay to zero over the total step
count), class-weighted cross entropy, and early stopping on validation loss
with best-state restore. Each epoch appends one record to a history file

    epoch,train_loss,val_loss,val_accuracy

and the fine-tuned model plus tokenizer are saved as an ordinary checkpoint
directory. Runs are seeded; on a fixed CPU setup repeated runs match, but
bit-level determinism across hardware or framework versions is best effort.
"""
from __future__ import annotations

import copy
import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import torch
from torch.optim.lr_scheduler import LambdaLR
from torch.utils.data import DataLoader, TensorDataset

from .data import TextRow
from .errors import CheckpointError, DataError

HISTORY_COLUMNS = ("epoch", "train_loss", "val_loss", "val_accuracy")


@dataclass(frozen=True)
class ClassWeights:
    negative: float = 1.0
    positive: float = 1.0

    def __post_init__(self):
        if self.negative <= 0 or self.positive <= 0:
            raise DataError("class weights must be positive")


@dataclass(frozen=True)
class FineTuneConfig:
    """Hyperparameters of the fine-tuning recipe.

    ``model_id`` may be a hub identifier (e.g. roberta-base,
    distilbert-base-uncased) or any local checkpoint directory; the adapter
    treats checkpoints as opaque.
    """

    model_id: str
    epochs: int = 15
    batch_size: int = 16
    learning_rate: float = 2e-5
    warmup_steps: int = 1000
    weight_decay: float = 0.01
    early_stopping_patience: int = 3
    class_weights: ClassWeights | None = None
    rng_seed: int = 0
    max_length: int = 128

    def __post_init__(self):
        if self.epochs < 1 or self.batch_size < 1 or self.max_length < 8:
            raise DataError("epochs, batch_size, and max_length must be positive")
        if self.learning_rate <= 0 or self.weight_decay < 0 or self.warmup_steps < 0:
            raise DataError("learning_rate must be positive; warmup/decay non-negative")
        if self.early_stopping_patience < 0:
            raise DataError("early_stopping_patience must be >= 0")


def load_checkpoint(model_id: str, num_labels: int = 2):
    """Resolve a checkpoint id or path to (tokenizer, model)."""
    from transformers import AutoModelForSequenceClassification, AutoTokenizer

    try:
        tokenizer = AutoTokenizer.from_pretrained(model_id)
        model = AutoModelForSequenceClassification.from_pretrained(model_id, num_labels=num_labels)
    except Exception as exc:
        raise CheckpointError(f"cannot resolve checkpoint {model_id!r}: {exc}") from exc
    return tokenizer, model


def derived_class_weights(labels: Sequence[int]) -> ClassWeights:
    """Inverse-frequency weights, N / (2 * n_c), from the training labels."""
    n = len(labels)
    n_pos = sum(labels)
    n_neg = n - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DataError("training rows must contain both classes")
    return ClassWeights(negative=n / (2.0 * n_neg), positive=n / (2.0 * n_pos))


def _encode(tokenizer, rows: Sequence[TextRow], max_length: int) -> TensorDataset:
    encoded = tokenizer(
        [r.text for r in rows],
        padding="max_length",
        truncation=True,
        max_length=max_length,
        return_tensors="pt",
    )
    labels = torch.tensor([r.label for r in rows], dtype=torch.long)
    return TensorDataset(encoded["input_ids"], encoded["attention_mask"], labels)


def _linear_schedule(optimizer, warmup_steps: int, total_steps: int) -> LambdaLR:
    def factor(step: int) -> float:
        if warmup_steps and step < warmup_steps:
            return step / max(1, warmup_steps)
        remaining = max(1, total_steps - warmup_steps)
        return max(0.0, (total_steps - step) / remaining)

    return LambdaLR(optimizer, factor)


@torch.no_grad()
def _evaluate(model, loader: DataLoader, loss_fn) -> tuple[float, float]:
    model.eval()
    total_loss = 0.0
    correct = 0
    count = 0
    for input_ids, attention_mask, labels in loader:
        logits = model(input_ids=input_ids, attention_mask=attention_mask).logits
        total_loss += float(loss_fn(logits, labels)) * labels.size(0)
        correct += int((logits.argmax(dim=-1) == labels).sum())
        count += labels.size(0)
    return total_loss / count, correct / count


def fine_tune(
    train_rows: Sequence[TextRow],
    val_rows: Sequence[TextRow],
    config: FineTuneConfig,
    output_dir: str | Path,
) -> tuple[Path, Path]:
    """Fine-tune and save the model; returns (model directory, history file)."""
    if not train_rows or not val_rows:
        raise DataError("both training and validation rows are required")
    labels = [r.label for r in train_rows]
    weights = config.class_weights or derived_class_weights(labels)
    if len(set(labels)) < 2:
        raise DataError("training rows must contain both classes")

    torch.manual_seed(config.rng_seed)
    tokenizer, model = load_checkpoint(config.model_id)

    train_data = _encode(tokenizer, train_rows, config.max_length)
    val_data = _encode(tokenizer, val_rows, config.max_length)
    shuffle_rng = torch.Generator().manual_seed(config.rng_seed)
    train_loader = DataLoader(
        train_data, batch_size=config.batch_size, shuffle=True, generator=shuffle_rng
    )
    val_loader = DataLoader(val_data, batch_size=config.batch_size)

    loss_fn = torch.nn.CrossEntropyLoss(
        weight=torch.tensor([weights.negative, weights.positive], dtype=torch.float32)
    )
    optimizer = torch.optim.AdamW(
        model.parameters(), lr=config.learning_rate, weight_decay=config.weight_decay
    )
    total_steps = max(1, len(train_loader) * config.epochs)
    scheduler = _linear_schedule(optimizer, config.warmup_steps, total_steps)

    history: list[dict] = []
    best_val = float("inf")
    best_state = None
    stale = 0
    for epoch in range(1, config.epochs + 1):
        model.train()
        running = 0.0
        seen = 0
        for input_ids, attention_mask, batch_labels in train_loader:
            optimizer.zero_grad()
            logits = model(input_ids=input_ids, attention_mask=attention_mask).logits
            loss = loss_fn(logits, batch_labels)
            loss.backward()
            optimizer.step()
            scheduler.step()
            running += float(loss.detach()) * batch_labels.size(0)
            seen += batch_labels.size(0)
        val_loss, val_accuracy = _evaluate(model, val_loader, loss_fn)
        history.append({
            "epoch": epoch,
            "train_loss": running / seen,
            "val_loss": val_loss,
            "val_accuracy": val_accuracy,
        })
        if val_loss < best_val:
            best_val = val_loss
            best_state = copy.deepcopy(model.state_dict())
            stale = 0
        else:
            stale += 1
            if config.early_stopping_patience and stale >= config.early_stopping_patience:
                break
    if best_state is not None:
        model.load_state_dict(best_state)

    output_dir = Path(output_dir)
    model_dir = output_dir / "model"
    model_dir.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(model_dir)
    tokenizer.save_pretrained(model_dir)
    history_path = output_dir / "history.csv"
    write_history(history, history_path)
    return model_dir, history_path


def write_history(records: Sequence[dict], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(HISTORY_COLUMNS)
        for rec in records:
            writer.writerow([
                rec["epoch"],
                repr(float(rec["train_loss"])),
                repr(float(rec["val_loss"])),
                repr(float(rec["val_accuracy"])),
            ])


def read_history(path: str | Path) -> list[dict]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != HISTORY_COLUMNS:
            raise DataError(f"{path}: expected header {','.join(HISTORY_COLUMNS)}")
        return [
            {
                "epoch": int(rec["epoch"]),
                "train_loss": float(rec["train_loss"]),
                "val_loss": float(rec["val_loss"]),
                "val_accuracy": float(rec["val_accuracy"]),
            }
            for rec in reader
        ]
