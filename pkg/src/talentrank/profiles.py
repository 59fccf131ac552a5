"""Candidate profile data model, CSV ingestion, ordinal encoding, correlations.

Profile files are UTF-8 CSV with the header columns

    id, experience_years, education, skills, about, job_title, overall_score

where the ``skills`` cell is a ``;``-separated token list. Categorical fields
become numbers only through an explicit :class:`EncodingConfig`; nothing is
inferred from the data, so an encoding is itself a declared, reviewable
artifact.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import DegenerateColumnError, DomainError, EncodingError, RowError, SchemaError

PROFILE_COLUMNS = (
    "id",
    "experience_years",
    "education",
    "skills",
    "about",
    "job_title",
    "overall_score",
)

CATEGORICAL_FIELDS = ("education", "skills", "about", "job_title")

FEATURE_COLUMNS = (
    "experience_years",
    "education",
    "skills",
    "about",
    "job_title",
    "overall_score",
)

REJECT = "reject"
RESERVED = "reserved"


@dataclass(frozen=True)
class CandidateProfile:
    """One person's profile attributes plus the expert overall rating (0..5)."""

    id: str
    experience_years: float
    education: str
    skills: tuple[str, ...]
    about: str
    job_title: str
    overall_score: int

    def __post_init__(self):
        if not self.id:
            raise RowError("profile id must be non-empty")
        if not math.isfinite(self.experience_years) or self.experience_years < 0:
            raise RowError(
                f"experience_years must be finite and >= 0, got {self.experience_years!r} (id {self.id!r})"
            )
        if not isinstance(self.overall_score, int) or isinstance(self.overall_score, bool):
            raise RowError(f"overall_score must be an integer, got {self.overall_score!r} (id {self.id!r})")
        if not 0 <= self.overall_score <= 5:
            raise RowError(f"overall_score must be in 0..5, got {self.overall_score} (id {self.id!r})")
        object.__setattr__(self, "skills", tuple(self.skills))

    def document_text(self) -> str:
        """All free-text content joined into one classification document."""
        return " ".join([self.education, " ".join(self.skills), self.about, self.job_title])


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of profiles with unique ids."""

    profiles: tuple[CandidateProfile, ...]

    def __post_init__(self):
        object.__setattr__(self, "profiles", tuple(self.profiles))
        seen: set[str] = set()
        for p in self.profiles:
            if p.id in seen:
                raise RowError(f"duplicate profile id {p.id!r}")
            seen.add(p.id)

    def __len__(self) -> int:
        return len(self.profiles)

    def __iter__(self) -> Iterator[CandidateProfile]:
        return iter(self.profiles)

    def ids(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.profiles)


@dataclass(frozen=True)
class EncodingConfig:
    """Declared ordinal maps per categorical field plus the unknown-value policy.

    A ``skills`` cell (a token list) encodes as the sum of its member-token
    codes; every other categorical field encodes its whole value as one
    category. Under ``reject`` an unmapped category is an error; under
    ``reserved`` it takes ``reserved_code``.
    """

    maps: Mapping[str, Mapping[str, int]]
    unknown_policy: str = REJECT
    reserved_code: int = -1

    def __post_init__(self):
        if self.unknown_policy not in (REJECT, RESERVED):
            raise SchemaError(f"unknown_policy must be '{REJECT}' or '{RESERVED}', got {self.unknown_policy!r}")
        maps = {f: dict(self.maps.get(f, {})) for f in CATEGORICAL_FIELDS}
        for extra in set(self.maps) - set(CATEGORICAL_FIELDS):
            raise SchemaError(f"encoding map for unknown field {extra!r}")
        for name, mapping in maps.items():
            codes = list(mapping.values())
            if len(set(codes)) != len(codes):
                raise SchemaError(f"codes within field {name!r} must be distinct")
            if self.unknown_policy == RESERVED and self.reserved_code in codes:
                raise SchemaError(
                    f"reserved code {self.reserved_code} collides with an assigned code in field {name!r}"
                )
        object.__setattr__(self, "maps", maps)

    def encode_value(self, fieldname: str, value: str) -> int:
        mapping = self.maps[fieldname]
        if value in mapping:
            return mapping[value]
        if self.unknown_policy == RESERVED:
            return self.reserved_code
        raise EncodingError(f"unknown category {value!r} in field {fieldname!r} under reject policy")


@dataclass(frozen=True)
class FeatureMatrix:
    """Encoded features, one row per profile in dataset order."""

    values: np.ndarray
    column_names: tuple[str, ...]
    row_ids: tuple[str, ...]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.ndim != 2:
            raise DomainError("feature matrix must be 2-dimensional")
        if values.shape != (len(self.row_ids), len(self.column_names)):
            raise DomainError("feature matrix shape does not match its row/column labels")
        if len(set(self.column_names)) != len(self.column_names):
            raise DomainError("feature column names must be unique")
        if not np.all(np.isfinite(values)):
            raise DomainError("feature matrix entries must all be finite")

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.column_names.index(name)]


# ---------------------------------------------------------------------------
# ingestion and serialization
# ---------------------------------------------------------------------------

def _split_skills(cell: str) -> tuple[str, ...]:
    return tuple(token.strip() for token in cell.split(";") if token.strip())


def load_profiles(
    source: str | Path | Iterable[str],
    columns: Mapping[str, str] | None = None,
) -> Dataset:
    """Read a profile CSV into a Dataset, preserving file order.

    ``columns`` optionally maps canonical field names to the header names used
    in the file. Errors carry the data-row number (first data row is row 1).
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return _parse_profiles(fh, columns)
    return _parse_profiles(source, columns)


def _parse_profiles(lines: Iterable[str], columns: Mapping[str, str] | None) -> Dataset:
    rename = dict(columns or {})
    for key in rename:
        if key not in PROFILE_COLUMNS:
            raise SchemaError(f"column map refers to unknown field {key!r}")
    reader = csv.DictReader(lines)
    header = reader.fieldnames
    if header is None:
        raise SchemaError("profile file is empty; expected a header row")
    for fieldname in PROFILE_COLUMNS:
        wanted = rename.get(fieldname, fieldname)
        if wanted not in header:
            raise SchemaError(f"missing required column {wanted!r}")

    profiles: list[CandidateProfile] = []
    for rownum, record in enumerate(reader, start=1):
        cell = {f: (record.get(rename.get(f, f)) or "") for f in PROFILE_COLUMNS}
        try:
            experience = float(cell["experience_years"])
        except ValueError:
            raise RowError(f"row {rownum}: experience_years {cell['experience_years']!r} is not a number")
        overall_text = cell["overall_score"].strip()
        try:
            overall = int(overall_text)
        except ValueError:
            raise RowError(f"row {rownum}: overall_score {overall_text!r} is not an integer")
        try:
            profiles.append(
                CandidateProfile(
                    id=cell["id"].strip(),
                    experience_years=experience,
                    education=cell["education"],
                    skills=_split_skills(cell["skills"]),
                    about=cell["about"],
                    job_title=cell["job_title"],
                    overall_score=overall,
                )
            )
        except RowError as exc:
            raise RowError(f"row {rownum}: {exc}") from None
    try:
        return Dataset(profiles=tuple(profiles))
    except RowError as exc:
        raise RowError(str(exc)) from None


def save_profiles(dataset: Dataset, path: str | Path) -> None:
    """Write a Dataset back to the canonical CSV format (round-trip stable)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(PROFILE_COLUMNS)
        for p in dataset:
            writer.writerow(
                [
                    p.id,
                    repr(p.experience_years),
                    p.education,
                    ";".join(p.skills),
                    p.about,
                    p.job_title,
                    p.overall_score,
                ]
            )


def load_encoding_config(path: str | Path) -> EncodingConfig:
    """Read an EncodingConfig from its JSON document."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"encoding config is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("encoding config must be a JSON object")
    maps = {}
    for fieldname in CATEGORICAL_FIELDS:
        mapping = doc.get(fieldname, {})
        if not isinstance(mapping, dict):
            raise SchemaError(f"encoding map for field {fieldname!r} must be an object")
        parsed = {}
        for category, code in mapping.items():
            if not isinstance(code, int) or isinstance(code, bool):
                raise SchemaError(f"code for {fieldname!r}/{category!r} must be an integer, got {code!r}")
            parsed[str(category)] = code
        maps[fieldname] = parsed
    return EncodingConfig(
        maps=maps,
        unknown_policy=doc.get("unknown_policy", REJECT),
        reserved_code=doc.get("reserved_code", -1),
    )


def save_encoding_config(config: EncodingConfig, path: str | Path) -> None:
    doc = {f: dict(config.maps[f]) for f in CATEGORICAL_FIELDS}
    doc["unknown_policy"] = config.unknown_policy
    doc["reserved_code"] = config.reserved_code
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# encoding and correlation
# ---------------------------------------------------------------------------

def encode_features(dataset: Dataset, config: EncodingConfig) -> FeatureMatrix:
    """Encode every profile into the fixed numeric feature columns.

    experience_years and overall_score pass through numerically; categorical
    fields go through the config's ordinal maps.
    """
    rows = []
    for p in dataset:
        skills_code = sum(config.encode_value("skills", token) for token in p.skills)
        rows.append(
            [
                p.experience_years,
                config.encode_value("education", p.education),
                skills_code,
                config.encode_value("about", p.about),
                config.encode_value("job_title", p.job_title),
                p.overall_score,
            ]
        )
    values = np.array(rows, dtype=float) if rows else np.zeros((0, len(FEATURE_COLUMNS)))
    return FeatureMatrix(values=values, column_names=FEATURE_COLUMNS, row_ids=dataset.ids())


def pearson_correlation_matrix(features: FeatureMatrix) -> np.ndarray:
    """Pairwise Pearson correlations of the feature columns.

    Symmetric with a unit diagonal; every column must vary.
    """
    values = features.values
    if values.shape[0] < 2:
        raise DomainError("correlation needs at least 2 rows")
    variances = np.var(values, axis=0)
    flat = np.flatnonzero(variances == 0.0)
    if flat.size:
        name = features.column_names[int(flat[0])]
        raise DegenerateColumnError(f"column {name!r} has zero variance; correlation undefined")
    corr = np.corrcoef(values, rowvar=False)
    corr = np.atleast_2d(corr)
    # mirror the upper triangle and pin the diagonal so symmetry and the
    # unit diagonal hold exactly, not just to rounding error
    upper = np.triu(corr, 1)
    corr = upper + upper.T
    np.fill_diagonal(corr, 1.0)
    return corr


def drop_column(features: FeatureMatrix, name: str) -> FeatureMatrix:
    """A copy of the matrix without the named column."""
    if name not in features.column_names:
        raise DomainError(f"no feature column named {name!r}")
    idx = features.column_names.index(name)
    kept = [j for j in range(len(features.column_names)) if j != idx]
    return replace(
        features,
        values=features.values[:, kept],
        column_names=tuple(n for j, n in enumerate(features.column_names) if j != idx),
    )
