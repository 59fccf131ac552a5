"""Command-line front end: fine-tune a checkpoint, export score files."""
from __future__ import annotations

import argparse
import sys

from . import data, export, training
from .errors import AdapterError


def cmd_fine_tune(args) -> int:
    train_rows = data.read_rows(args.train)
    val_rows = data.read_rows(args.val)
    config = training.FineTuneConfig(
        model_id=args.model_id,
        epochs=args.epochs,
        batch_size=args.batch_size,
        learning_rate=args.learning_rate,
        warmup_steps=args.warmup_steps,
        weight_decay=args.weight_decay,
        early_stopping_patience=args.patience,
        rng_seed=args.seed,
        max_length=args.max_length,
    )
    model_dir, history_path = training.fine_tune(train_rows, val_rows, config, args.out)
    records = training.read_history(history_path)
    print(f"saved model to {model_dir}")
    print(f"history ({len(records)} epochs) at {history_path}")
    last = records[-1]
    print(f"final: train_loss={last['train_loss']:.4f} val_loss={last['val_loss']:.4f} "
          f"val_accuracy={last['val_accuracy']:.4f}")
    return 0


def cmd_export_scores(args) -> int:
    rows = data.read_rows(args.test)
    out_path = export.export_scores(args.model, rows, args.scores)
    print(f"wrote {len(rows)} scores to {out_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="talentrank-adapter",
        description="Fine-tune transformer checkpoints on labeled-rows files and export score files",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fine-tune", help="fine-tune a checkpoint on labeled rows")
    p.add_argument("--model-id", required=True, help="checkpoint id or local path")
    p.add_argument("--train", required=True, help="training labeled-rows file")
    p.add_argument("--val", required=True, help="validation labeled-rows file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--epochs", type=int, default=15)
    p.add_argument("--batch-size", type=int, default=16, dest="batch_size")
    p.add_argument("--learning-rate", type=float, default=2e-5, dest="learning_rate")
    p.add_argument("--warmup-steps", type=int, default=1000, dest="warmup_steps")
    p.add_argument("--weight-decay", type=float, default=0.01, dest="weight_decay")
    p.add_argument("--patience", type=int, default=3)
    p.add_argument("--max-length", type=int, default=128, dest="max_length")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_fine_tune)

    p = sub.add_parser("export-scores", help="score labeled rows with a saved model")
    p.add_argument("--model", required=True, help="fine-tuned model directory")
    p.add_argument("--test", required=True, help="test labeled-rows file")
    p.add_argument("--scores", required=True, help="output score file path")
    p.set_defaults(func=cmd_export_scores)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AdapterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
