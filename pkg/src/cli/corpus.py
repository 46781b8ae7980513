"""The example corpus shipped in `corpus/`, indexed by `manifest.yaml`."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import yaml

from src.cli.parser import parse
from src.cli.syntax import SessionSpec

_CORPUS_DIR = Path(__file__).parent.parent.parent / "corpus"


@dataclass(frozen=True)
class CorpusEntry:
    """One manifest entry."""

    name: str
    file: str
    description: str


def load_manifest() -> list[CorpusEntry]:
    """Read the manifest in its declared order."""
    with open(_CORPUS_DIR / "manifest.yaml") as f:
        data = yaml.safe_load(f)
    return [CorpusEntry(e["name"], e["file"], e["description"]) for e in data["entries"]]


def corpus_names() -> list[str]:
    """Names of all corpus entries."""
    return [e.name for e in load_manifest()]


def load_corpus_text(name: str) -> str:
    """Return the source text of a corpus entry.

    Raises:
        FileNotFoundError: If no entry has that name.
    """
    for entry in load_manifest():
        if entry.name == name:
            return (_CORPUS_DIR / entry.file).read_text(encoding="utf-8")
    raise FileNotFoundError(f"Corpus entry not found: {name}")


def corpus() -> list[tuple[str, SessionSpec]]:
    """Every corpus entry, parsed."""
    return [(name, parse(load_corpus_text(name))) for name in corpus_names()]
