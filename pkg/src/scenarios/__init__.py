"""
Scenario Corpus
===============

Bundled CONOP scenarios plus the baseline and flash-crowd confounders. Each
file carries the verdict it is expected to produce.
"""

from pathlib import Path
from typing import List

CORPUS_DIR = Path(__file__).parent

CORPUS = (
    "baseline",
    "conop1",
    "conop2",
    "conop3",
    "conop4",
    "conop5",
    "flashcrowd",
)


def corpus_files() -> List[Path]:
    return [CORPUS_DIR / f"{name}.yaml" for name in CORPUS]


def corpus_file(name: str) -> Path:
    if name not in CORPUS:
        raise KeyError(f"no bundled scenario named '{name}'")
    return CORPUS_DIR / f"{name}.yaml"


__all__ = ["CORPUS", "CORPUS_DIR", "corpus_file", "corpus_files"]
