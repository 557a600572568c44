"""Bundled semigroups and JSON loading.

A semigroup file is ``{"name": ..., "order": n, "table": [[...], ...]}``;
``source`` strings of the form ``corpus:NAME`` refer to the bundled files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Union

from .errors import ParseError
from .semigroup import Semigroup, validate_semigroup

CORPUS_PREFIX = "corpus:"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    semigroup: Semigroup
    notes: str

    @property
    def abelian(self) -> bool:
        return self.semigroup.is_abelian

    @property
    def monoid(self) -> bool:
        return self.semigroup.is_monoid

    @property
    def center_size(self) -> int:
        return len(self.semigroup.center)

    def summary(self) -> dict:
        return {
            "name": self.name,
            "order": self.semigroup.order,
            "abelian": self.abelian,
            "monoid": self.monoid,
            "identity": self.semigroup.identity,
            "center_size": self.center_size,
            "notes": self.notes,
        }


def _corpus_dir():
    return resources.files("semifeq") / "data" / "corpus"


def corpus_names() -> list[str]:
    names = [p.name[:-5] for p in _corpus_dir().iterdir() if p.name.endswith(".json")]
    # Z2..Z8 in numeric order, everything else alphabetically after them
    return sorted(names, key=lambda s: (0, int(s[1:]), "") if s[:1] == "Z" and s[1:].isdigit() else (1, 0, s))


def parse_semigroup(doc: dict, fallback_name: str = "") -> Semigroup:
    if not isinstance(doc, dict) or "table" not in doc:
        raise ParseError("semigroup JSON needs a 'table' field")
    table = doc["table"]
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise ParseError("'table' must be a list of rows")
    if any(len(r) != len(table) for r in table):
        raise ParseError("ragged or non-square table")
    if any(not isinstance(v, int) or isinstance(v, bool) for r in table for v in r):
        raise ParseError("table entries must be integers")
    if "order" in doc and doc["order"] != len(table):
        raise ParseError(f"'order' is {doc['order']} but the table has {len(table)} rows")
    return validate_semigroup(table, doc.get("name", fallback_name))


def _read_json(text: str, where: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}: {exc}") from exc


def load_corpus_entry(name: str) -> CorpusEntry:
    path = _corpus_dir() / f"{name}.json"
    if not path.is_file():
        raise ParseError(f"no bundled semigroup named {name!r}")
    doc = _read_json(path.read_text(), f"corpus:{name}")
    return CorpusEntry(name, parse_semigroup(doc, name), doc.get("notes", ""))


def load_corpus() -> list[CorpusEntry]:
    return [load_corpus_entry(n) for n in corpus_names()]


def load_semigroup(source: Union[str, Path]) -> Semigroup:
    """Load from a JSON file path or ``corpus:NAME``."""
    src = str(source)
    if src.startswith(CORPUS_PREFIX):
        return load_corpus_entry(src[len(CORPUS_PREFIX) :]).semigroup
    path = Path(src)
    if not path.is_file():
        raise ParseError(f"no such file: {src}")
    return parse_semigroup(_read_json(path.read_text(), src), path.stem)
