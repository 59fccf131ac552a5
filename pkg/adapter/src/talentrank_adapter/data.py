"""Reader for the engine's labeled-rows file contract.

The file is UTF-8 CSV with header columns

    id, experience_years, education, skills, about, job_title, overall_score, label

where ``skills`` is a ``;``-separated token list and ``label`` is 0 or 1.
The classification text for a row is the engine's canonical assembly:
education, the skills joined by spaces, the about text, and the job title,
all space-joined. Ids may repeat (the engine resamples minority rows).
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import DataError

REQUIRED_COLUMNS = (
    "id",
    "experience_years",
    "education",
    "skills",
    "about",
    "job_title",
    "overall_score",
    "label",
)


@dataclass(frozen=True)
class TextRow:
    id: str
    text: str
    label: int


def assemble_text(record: dict[str, str]) -> str:
    skills = " ".join(t.strip() for t in (record["skills"] or "").split(";") if t.strip())
    return " ".join([record["education"] or "", skills, record["about"] or "", record["job_title"] or ""])


def read_rows(path: str | Path) -> list[TextRow]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if header is None:
            raise DataError(f"{path}: empty file, expected a header row")
        for col in REQUIRED_COLUMNS:
            if col not in header:
                raise DataError(f"{path}: missing required column {col!r}")
        rows: list[TextRow] = []
        for rownum, record in enumerate(reader, start=1):
            ident = (record["id"] or "").strip()
            if not ident:
                raise DataError(f"{path}: row {rownum}: empty id")
            label_text = (record["label"] or "").strip()
            if label_text not in ("0", "1"):
                raise DataError(f"{path}: row {rownum}: label must be 0 or 1, got {label_text!r}")
            rows.append(TextRow(id=ident, text=assemble_text(record), label=int(label_text)))
    if not rows:
        raise DataError(f"{path}: no data rows")
    return rows
