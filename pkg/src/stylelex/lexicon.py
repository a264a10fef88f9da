"""Style lexica: named categories of terms, offset-exact matching, coverage.

A lexicon is a per-language, ordered set of categories; each category holds
single- and multi-word terms. Matching reports exact character offsets into
the (NFC-normalized) utterance text and supports two segmentation modes:

* ``"whitespace"`` (e.g. En, Es): a term matches a token sequence delimited
  by whitespace/punctuation, case-insensitively.
* ``"substring"`` (e.g. Zh, Ja): a term matches any character substring,
  exactly.

Within one category, matches are non-overlapping: candidates are taken
greedily left-to-right, preferring the longest term, so a phrase term never
double-counts against its own words. Matches from different categories may
overlap freely.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Sequence

from .errors import SchemaError

SEGMENTATION_MODES = ("whitespace", "substring")


@dataclass(frozen=True)
class Category:
    """A named, ordered set of terms expressing one style strategy."""

    name: str
    terms: tuple[str, ...]

    def __post_init__(self):
        normed = tuple(unicodedata.normalize("NFC", t) for t in self.terms)
        object.__setattr__(self, "terms", normed)
        if any(not t for t in normed):
            raise ValueError(f"category {self.name!r}: empty term")
        if len(set(normed)) != len(normed):
            raise ValueError(f"category {self.name!r}: duplicate term after NFC normalization")


@dataclass(frozen=True)
class Lexicon:
    language: str
    categories: tuple[Category, ...]

    def __post_init__(self):
        names = [c.name for c in self.categories]
        if len(set(names)) != len(names):
            raise ValueError("duplicate category name in lexicon")

    def category_names(self) -> list[str]:
        return [c.name for c in self.categories]

    def category(self, name: str) -> Category:
        for c in self.categories:
            if c.name == name:
                return c
        raise KeyError(name)


@dataclass(frozen=True)
class TermMatch:
    """One occurrence of a lexicon term: category, term, and character span."""

    category: str
    term: str
    char_start: int
    char_end: int


@dataclass(frozen=True)
class CoverageStat:
    covered: int
    total: int

    @property
    def percent(self) -> float:
        return 100.0 * self.covered / self.total


def load_lexicon(source: IO[str] | IO[bytes] | str) -> Lexicon:
    """Parse the lexicon JSON schema {"language": str, "categories": {name: [terms]}}.

    Duplicate category keys and empty terms are schema errors; round-trips
    with :func:`save_lexicon`.
    """
    if hasattr(source, "read"):
        data = source.read()
    else:
        data = source
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid lexicon JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SchemaError("lexicon document must be a JSON object")
    if set(doc) != {"language", "categories"}:
        raise SchemaError("lexicon document must have exactly 'language' and 'categories'")
    language = doc["language"]
    cats = doc["categories"]
    if not isinstance(language, str) or not language:
        raise SchemaError("'language' must be a non-empty string")
    if not isinstance(cats, dict):
        raise SchemaError("'categories' must be an object of name -> term list")
    categories = []
    for name, terms in cats.items():
        if not isinstance(terms, list) or not all(isinstance(t, str) for t in terms):
            raise SchemaError(f"category {name!r}: terms must be a list of strings")
        try:
            categories.append(Category(name, tuple(terms)))
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
    return Lexicon(language, tuple(categories))


def save_lexicon(lex: Lexicon) -> str:
    """Serialize to the lexicon JSON schema (2-space indent, UTF-8 verbatim)."""
    doc = {
        "language": lex.language,
        "categories": {c.name: list(c.terms) for c in lex.categories},
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def match(lex: Lexicon, text: str, segmentation: str) -> list[TermMatch]:
    """All term occurrences in ``text``, with offsets into the NFC-normalized text.

    Within each category, occurrences are chosen greedily left-to-right,
    longest term first, and never overlap; different categories are matched
    independently. No matches yields an empty list.
    """
    _check_segmentation(segmentation)
    text = unicodedata.normalize("NFC", text)
    out: list[TermMatch] = []
    for cat in lex.categories:
        candidates: list[tuple[int, int, int, int]] = []
        for ti, term in enumerate(cat.terms):
            for start, end in _occurrences(term, text, segmentation):
                candidates.append((start, -(end - start), ti, end))
        candidates.sort()
        last_end = 0
        for start, _, ti, end in candidates:
            if start >= last_end:
                out.append(TermMatch(cat.name, cat.terms[ti], start, end))
                last_end = end
    return out


def coverage(lex: Lexicon, corpus: Sequence[str], segmentation: str) -> CoverageStat:
    """Percent of utterances containing at least one term of any category."""
    if not corpus:
        raise ValueError("coverage requires a non-empty corpus")
    covered = sum(1 for text in corpus if match(lex, text, segmentation))
    return CoverageStat(covered=covered, total=len(corpus))


def load_corpus_jsonl(lines: Iterable[str]) -> list[tuple[str, str]]:
    """Read a JSON-lines corpus of {"id": str, "text": str} rows."""
    out = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"line {lineno}: invalid JSON: {exc.msg}") from None
        if not isinstance(row, dict) or not isinstance(row.get("id"), str) \
                or not isinstance(row.get("text"), str):
            raise SchemaError(f"line {lineno}: expected {{'id': str, 'text': str}}")
        out.append((row["id"], row["text"]))
    return out


def load_corpus_text(lines: Iterable[str]) -> list[str]:
    """Read a plain-text corpus, one utterance per line (blank lines dropped)."""
    return [line.rstrip("\n") for line in lines if line.strip()]


def _check_segmentation(segmentation: str) -> None:
    if segmentation not in SEGMENTATION_MODES:
        raise ValueError(
            f"segmentation must be one of {SEGMENTATION_MODES}, got {segmentation!r}"
        )


def _occurrences(term: str, text: str, segmentation: str) -> Iterator[tuple[int, int]]:
    """Every (possibly overlapping) occurrence of one term, left to right."""
    if segmentation == "substring":
        pos = 0
        while (idx := text.find(term, pos)) != -1:
            yield idx, idx + len(term)
            pos = idx + 1
    else:
        # Token-sequence match: the surface must equal the term up to case,
        # with no word character adjacent on either side.
        pattern = re.compile(rf"(?<!\w){re.escape(term)}(?!\w)", re.IGNORECASE)
        pos = 0
        while (m := pattern.search(text, pos)) is not None:
            yield m.start(), m.end()
            pos = m.start() + 1


def _reject_duplicate_keys(pairs):
    seen = set()
    for key, _ in pairs:
        if key in seen:
            raise SchemaError(f"duplicate key {key!r} in JSON object")
        seen.add(key)
    return dict(pairs)
