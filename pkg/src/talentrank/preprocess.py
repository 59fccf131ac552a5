"""Label mapping, synonym augmentation, class balancing, splitting, class weights.

Overall scores 0..2 map to the negative label 0, scores 3..5 to the positive
label 1. Augmentation swaps lexicon-covered tokens for synonyms using a
seeded generator, leaving token order, punctuation, and token count intact.
Balancing resamples the minority class with replacement up to the majority
count. All operations are deterministic functions of their inputs and seeds.
"""
from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError, RowError, SchemaError, SingleClassError
from .profiles import PROFILE_COLUMNS, CandidateProfile, _split_skills

LABELED_COLUMNS = PROFILE_COLUMNS + ("label",)

_TOKEN_SPLIT = re.compile(r"(\w+)", re.UNICODE)
_WORD = re.compile(r"\w+", re.UNICODE)

# fields rewritten by augmentation; skills tokens feed the ordinal encoder and
# must stay verbatim
AUGMENTED_TEXT_FIELDS = ("education", "about", "job_title")

_STREAM_IDS = {"split": 0, "augment": 1, "resample": 2}


def derive_seed(master_seed: int, stream: str) -> int:
    """Per-purpose 64-bit seed derived from one master seed and a stream name."""
    if stream not in _STREAM_IDS:
        raise DomainError(f"unknown rng stream {stream!r}")
    seq = np.random.SeedSequence((master_seed, _STREAM_IDS[stream]))
    return int(seq.generate_state(1, np.uint64)[0])


def map_score_to_label(overall_score: int) -> int:
    """0..2 -> 0 (unsuitable), 3..5 -> 1 (suitable)."""
    if not isinstance(overall_score, int) or isinstance(overall_score, bool):
        raise DomainError(f"overall score must be an integer, got {overall_score!r}")
    if not 0 <= overall_score <= 5:
        raise DomainError(f"overall score must be in 0..5, got {overall_score}")
    return 0 if overall_score <= 2 else 1


@dataclass(frozen=True)
class LabeledRow:
    """A candidate profile plus its derived binary label."""

    profile: CandidateProfile
    label: int

    def __post_init__(self):
        if self.label not in (0, 1):
            raise RowError(f"label must be 0 or 1, got {self.label!r}")


def label_dataset(profiles: Iterable[CandidateProfile]) -> list[LabeledRow]:
    return [LabeledRow(profile=p, label=map_score_to_label(p.overall_score)) for p in profiles]


# ---------------------------------------------------------------------------
# synonym lexicon and augmentation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SynonymLexicon:
    """Lowercase word -> ordered list of single-token synonyms."""

    entries: Mapping[str, tuple[str, ...]]

    def __post_init__(self):
        parsed: dict[str, tuple[str, ...]] = {}
        for word, synonyms in self.entries.items():
            key = str(word)
            if key != key.lower():
                raise SchemaError(f"lexicon key {key!r} must be lowercase")
            if not _WORD.fullmatch(key):
                raise SchemaError(f"lexicon key {key!r} must be a single word token")
            syns = tuple(str(s) for s in synonyms)
            if not syns:
                raise SchemaError(f"lexicon word {key!r} maps to an empty synonym list")
            for s in syns:
                if not _WORD.fullmatch(s):
                    raise SchemaError(f"synonym {s!r} for {key!r} must be a single word token")
            if syns == (key,):
                raise SchemaError(f"lexicon word {key!r} lists only itself as a synonym")
            parsed[key] = syns
        object.__setattr__(self, "entries", parsed)

    def __len__(self) -> int:
        return len(self.entries)

    def covers(self, token: str) -> bool:
        return token.lower() in self.entries

    def synonyms(self, token: str) -> tuple[str, ...]:
        return self.entries[token.lower()]


def load_lexicon(source: str | Path | Iterable[str]) -> SynonymLexicon:
    """Parse a lexicon file: ``word<TAB>syn1;syn2;...``, ``#`` comments."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return _parse_lexicon(fh)
    return _parse_lexicon(source)


def _parse_lexicon(lines: Iterable[str]) -> SynonymLexicon:
    entries: dict[str, tuple[str, ...]] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise SchemaError(f"lexicon line {lineno}: expected 'word<TAB>synonyms', got {line!r}")
        word, _, rest = line.partition("\t")
        word = word.strip().lower()
        synonyms = tuple(s.strip() for s in rest.split(";") if s.strip())
        if word in entries:
            raise SchemaError(f"lexicon line {lineno}: duplicate word {word!r}")
        entries[word] = synonyms
    return SynonymLexicon(entries=entries)


@dataclass(frozen=True)
class AugmentationConfig:
    """Fraction of covered token positions to replace, plus the generator seed."""

    replacement_fraction: float = 0.3
    rng_seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.replacement_fraction <= 1.0):
            raise DomainError(
                f"replacement_fraction must be in (0, 1], got {self.replacement_fraction}"
            )


def augment_with_synonyms(text: str, lexicon: SynonymLexicon, config: AugmentationConfig) -> str:
    """Replace ceil(fraction * k) of the k lexicon-covered token positions.

    Position selection and synonym choice come from a generator seeded by the
    config, so the output is a pure function of (text, lexicon, config).
    Non-covered tokens, punctuation, and token order are untouched.
    """
    if not text or len(lexicon) == 0:
        return text
    parts = _TOKEN_SPLIT.split(text)
    covered = [i for i in range(1, len(parts), 2) if lexicon.covers(parts[i])]
    if not covered:
        return text
    # round before ceil so exact multiples (0.1 * 10) are not bumped by float noise
    n_replace = math.ceil(round(config.replacement_fraction * len(covered), 9))
    rng = np.random.default_rng(config.rng_seed)
    chosen = rng.choice(len(covered), size=n_replace, replace=False)
    for pos in sorted(covered[int(c)] for c in chosen):
        options = lexicon.synonyms(parts[pos])
        parts[pos] = options[int(rng.integers(0, len(options)))]
    return "".join(parts)


def augment_row(row: LabeledRow, lexicon: SynonymLexicon, config: AugmentationConfig) -> LabeledRow:
    """One synonym-augmented variant of a labeled row, label preserved."""
    profile = row.profile
    updates: dict[str, str] = {}
    for k, fieldname in enumerate(AUGMENTED_TEXT_FIELDS):
        sub_seed = int(np.random.SeedSequence((config.rng_seed, k)).generate_state(1, np.uint64)[0])
        updates[fieldname] = augment_with_synonyms(
            getattr(profile, fieldname), lexicon, replace(config, rng_seed=sub_seed)
        )
    augmented = replace(profile, id=profile.id + "#aug", **updates)
    return LabeledRow(profile=augmented, label=row.label)


def augment_dataset(
    rows: Sequence[LabeledRow], lexicon: SynonymLexicon, config: AugmentationConfig
) -> list[LabeledRow]:
    """Originals followed by one augmented variant per row (2x the input size)."""
    variants = []
    for i, row in enumerate(rows):
        row_seed = int(np.random.SeedSequence((config.rng_seed, 1000 + i)).generate_state(1, np.uint64)[0])
        variants.append(augment_row(row, lexicon, replace(config, rng_seed=row_seed)))
    out = list(rows) + variants
    ids = [r.profile.id for r in out]
    if len(set(ids)) != len(ids):
        raise RowError("augmentation produced a duplicate id; source ids may not end in '#aug'")
    return out


# ---------------------------------------------------------------------------
# balancing, splitting, class weights
# ---------------------------------------------------------------------------

def class_counts(rows: Sequence[LabeledRow]) -> dict[int, int]:
    counts = {0: 0, 1: 0}
    for r in rows:
        counts[r.label] += 1
    return counts


def balance_classes(rows: Sequence[LabeledRow], rng_seed: int) -> list[LabeledRow]:
    """Equalize class counts by resampling the minority class with replacement.

    Every original row is retained; duplicates are drawn from the minority
    rows by a generator seeded with ``rng_seed``.
    """
    counts = class_counts(rows)
    if counts[0] == 0 or counts[1] == 0:
        raise SingleClassError("class balancing needs both classes present")
    if counts[0] == counts[1]:
        return list(rows)
    minority = 0 if counts[0] < counts[1] else 1
    deficit = abs(counts[0] - counts[1])
    pool = [r for r in rows if r.label == minority]
    rng = np.random.default_rng(rng_seed)
    draws = rng.integers(0, len(pool), size=deficit)
    return list(rows) + [pool[int(i)] for i in draws]


def train_test_split(
    rows: Sequence[LabeledRow], train_fraction: float, rng_seed: int
) -> tuple[list[LabeledRow], list[LabeledRow]]:
    """Seeded shuffle split; |train| = round(train_fraction * N), rest to test."""
    if not (0.0 < train_fraction < 1.0):
        raise DomainError(f"train_fraction must be in (0, 1), got {train_fraction}")
    if len(rows) < 2:
        raise DomainError("need at least 2 rows to split")
    rng = np.random.default_rng(rng_seed)
    order = rng.permutation(len(rows))
    n_train = round(train_fraction * len(rows))
    train = [rows[int(i)] for i in order[:n_train]]
    test = [rows[int(i)] for i in order[n_train:]]
    return train, test


@dataclass(frozen=True)
class ClassWeights:
    """Per-class loss multipliers, N / (K * n_c) with K = 2."""

    negative: float
    positive: float

    def __post_init__(self):
        for name in ("negative", "positive"):
            v = getattr(self, name)
            if not math.isfinite(v) or v <= 0:
                raise DomainError(f"class weight {name} must be positive and finite, got {v!r}")

    def of(self, label: int) -> float:
        return self.positive if label == 1 else self.negative

    def as_dict(self) -> dict[str, float]:
        return {"0": self.negative, "1": self.positive}


def compute_class_weights(labels: Sequence[int]) -> ClassWeights:
    """Inverse-frequency weights: weight(c) = N / (2 * n_c)."""
    n = len(labels)
    n_pos = sum(1 for y in labels if y == 1)
    n_neg = n - n_pos
    if n_pos == 0 or n_neg == 0:
        raise SingleClassError("class weights need both classes present")
    return ClassWeights(negative=n / (2.0 * n_neg), positive=n / (2.0 * n_pos))


# ---------------------------------------------------------------------------
# labeled-rows file: profile columns plus a trailing label column
# ---------------------------------------------------------------------------

def write_labeled_rows(rows: Sequence[LabeledRow], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(LABELED_COLUMNS)
        for r in rows:
            p = r.profile
            writer.writerow(
                [
                    p.id,
                    repr(p.experience_years),
                    p.education,
                    ";".join(p.skills),
                    p.about,
                    p.job_title,
                    p.overall_score,
                    r.label,
                ]
            )


def read_labeled_rows(source: str | Path | Iterable[str]) -> list[LabeledRow]:
    """Parse a labeled-rows file. Ids may repeat (resampled duplicates)."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return _parse_labeled(fh)
    return _parse_labeled(source)


def _parse_labeled(lines: Iterable[str]) -> list[LabeledRow]:
    reader = csv.DictReader(lines)
    header = reader.fieldnames
    if header is None:
        raise SchemaError("labeled-rows file is empty; expected a header row")
    for col in LABELED_COLUMNS:
        if col not in header:
            raise SchemaError(f"missing required column {col!r}")
    rows: list[LabeledRow] = []
    for rownum, record in enumerate(reader, start=1):
        try:
            experience = float(record["experience_years"])
        except ValueError:
            raise RowError(f"row {rownum}: experience_years {record['experience_years']!r} is not a number")
        try:
            overall = int(record["overall_score"])
        except ValueError:
            raise RowError(f"row {rownum}: overall_score {record['overall_score']!r} is not an integer")
        label_text = (record["label"] or "").strip()
        if label_text not in ("0", "1"):
            raise RowError(f"row {rownum}: label must be 0 or 1, got {label_text!r}")
        try:
            profile = CandidateProfile(
                id=(record["id"] or "").strip(),
                experience_years=experience,
                education=record["education"] or "",
                skills=_split_skills(record["skills"] or ""),
                about=record["about"] or "",
                job_title=record["job_title"] or "",
                overall_score=overall,
            )
        except RowError as exc:
            raise RowError(f"row {rownum}: {exc}") from None
        rows.append(LabeledRow(profile=profile, label=int(label_text)))
    return rows
