import csv
from pathlib import Path

import pytest

VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "strong", "weak", "school", "python", "java", "sql",
    "great", "plain", "coder", "builder", "lead", "junior",
    "ships", "reliable", "systems", "learning", "basics",
]


@pytest.fixture(scope="session", autouse=True)
def quiet_transformers():
    from transformers.utils import logging

    logging.set_verbosity_error()
    logging.disable_progress_bar()


@pytest.fixture(scope="session")
def tiny_checkpoint(tmp_path_factory) -> Path:
    """A local random-weight checkpoint so tests never touch the network."""
    from transformers import BertConfig, BertForSequenceClassification, BertTokenizer

    root = tmp_path_factory.mktemp("checkpoint")
    vocab_file = root / "vocab.txt"
    vocab_file.write_text("\n".join(VOCAB), encoding="utf-8")
    tokenizer = BertTokenizer(vocab_file=str(vocab_file))
    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=16,
        num_hidden_layers=1,
        num_attention_heads=2,
        intermediate_size=32,
        max_position_embeddings=64,
        num_labels=2,
    )
    import torch

    torch.manual_seed(1234)
    model = BertForSequenceClassification(config)
    model_dir = root / "tiny"
    model.save_pretrained(model_dir)
    tokenizer.save_pretrained(model_dir)
    return model_dir


def write_labeled_rows(path: Path, n_per_class: int) -> Path:
    """A synthetic labeled-rows file in the engine's file format."""
    header = ["id", "experience_years", "education", "skills", "about",
              "job_title", "overall_score", "label"]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for i in range(n_per_class):
            writer.writerow([
                f"pos{i}", 5.0 + i % 3, "strong school", "python;sql",
                "great reliable coder ships systems", "lead builder", 4, 1,
            ])
            writer.writerow([
                f"neg{i}", 1.0 + i % 2, "weak school", "java",
                "plain coder learning basics", "junior builder", 1, 0,
            ])
    return path


@pytest.fixture()
def forty_row_corpus(tmp_path) -> Path:
    return write_labeled_rows(tmp_path / "train.csv", 20)


@pytest.fixture()
def twelve_row_corpus(tmp_path) -> Path:
    return write_labeled_rows(tmp_path / "test.csv", 6)
