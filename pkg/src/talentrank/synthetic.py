"""Seeded synthetic candidate data for demos and end-to-end tests.

Profiles are drawn so that stronger candidates (higher expert score) carry
more experience, higher education tiers, broader skill sets, and confident
self-descriptions; weaker ones skew the other way. The signal is strong
enough for a desk-scale classifier to beat the majority baseline, and every
generated category is covered by :func:`demo_encoding_config`.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .preprocess import SynonymLexicon
from .profiles import CandidateProfile, Dataset, EncodingConfig, save_encoding_config, save_profiles

EDUCATION_TIERS = (
    "self taught",
    "bootcamp certificate",
    "associate degree",
    "bachelor of science",
    "master of science",
    "doctorate",
)

JOB_TITLES = (
    "intern developer",
    "junior developer",
    "software engineer",
    "senior software engineer",
    "staff engineer",
    "principal engineer",
)

SKILL_POOL = (
    "python", "java", "sql", "git", "linux", "docker", "kubernetes",
    "testing", "design", "architecture", "mentoring", "distributed systems",
)

_STRONG_PHRASES = (
    "proven leader shipping reliable systems",
    "deep expertise building scalable services",
    "drives architecture and mentors engineers",
    "excellent track record delivering complex projects",
)

_WEAK_PHRASES = (
    "eager beginner learning the basics",
    "junior coder seeking first role",
    "limited exposure to production systems",
    "still building foundational skills",
)


def synthetic_dataset(n_profiles: int = 100, seed: int = 7) -> Dataset:
    """Generate ``n_profiles`` score-correlated candidate profiles."""
    rng = np.random.default_rng(seed)
    profiles = []
    for i in range(n_profiles):
        score = int(rng.integers(0, 6))
        strength = score / 5.0
        experience = float(np.round(rng.gamma(2.0, 1.0 + 4.0 * strength), 1))
        education = EDUCATION_TIERS[min(score + int(rng.integers(0, 2)), 5)]
        title = JOB_TITLES[max(0, min(score + int(rng.integers(-1, 2)), 5))]
        n_skills = 2 + score + int(rng.integers(0, 3))
        skills = tuple(
            SKILL_POOL[int(j)] for j in rng.choice(len(SKILL_POOL), size=min(n_skills, len(SKILL_POOL)), replace=False)
        )
        pool = _STRONG_PHRASES if score >= 3 else _WEAK_PHRASES
        about = pool[int(rng.integers(0, len(pool)))]
        profiles.append(
            CandidateProfile(
                id=f"c{i:03d}",
                experience_years=experience,
                education=education,
                skills=tuple(sorted(skills)),
                about=about,
                job_title=title,
                overall_score=score,
            )
        )
    return Dataset(profiles=tuple(profiles))


def demo_encoding_config() -> EncodingConfig:
    """An encoding that covers every category the generator can emit."""
    about_map = {}
    for code, phrase in enumerate(_WEAK_PHRASES):
        about_map[phrase] = code
    for code, phrase in enumerate(_STRONG_PHRASES, start=len(_WEAK_PHRASES)):
        about_map[phrase] = code
    return EncodingConfig(
        maps={
            "education": {tier: i for i, tier in enumerate(EDUCATION_TIERS)},
            "skills": {skill: i + 1 for i, skill in enumerate(SKILL_POOL)},
            "about": about_map,
            "job_title": {title: i for i, title in enumerate(JOB_TITLES)},
        },
        unknown_policy="reject",
    )


def demo_lexicon() -> SynonymLexicon:
    """A small fixed lexicon covering the generator's prose vocabulary."""
    return SynonymLexicon(
        entries={
            "proven": ("seasoned", "established"),
            "reliable": ("dependable", "robust"),
            "deep": ("thorough", "extensive"),
            "excellent": ("outstanding", "superb"),
            "complex": ("intricate", "challenging"),
            "eager": ("keen", "enthusiastic"),
            "beginner": ("novice", "newcomer"),
            "junior": ("entry", "trainee"),
            "limited": ("minimal", "scant"),
            "basics": ("fundamentals", "essentials"),
            "senior": ("lead", "principal"),
            "engineer": ("developer", "programmer"),
        }
    )


def write_lexicon(lexicon: SynonymLexicon, path: str | Path) -> None:
    lines = ["# word<TAB>synonym;synonym;..."]
    for word in sorted(lexicon.entries):
        lines.append(f"{word}\t{';'.join(lexicon.entries[word])}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_demo_inputs(directory: str | Path, n_profiles: int = 100, seed: int = 7) -> dict[str, Path]:
    """Write profiles.csv, encoding.json, and lexicon.tsv into ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "profiles": directory / "profiles.csv",
        "encoding": directory / "encoding.json",
        "lexicon": directory / "lexicon.tsv",
    }
    save_profiles(synthetic_dataset(n_profiles, seed), paths["profiles"])
    save_encoding_config(demo_encoding_config(), paths["encoding"])
    write_lexicon(demo_lexicon(), paths["lexicon"])
    return paths
