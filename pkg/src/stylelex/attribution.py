"""Token-level attribution records and span-level importance aggregation.

Each record holds one utterance, its model label and base value, and a
sorted, non-overlapping list of per-token additive attribution values.
Any additive attribution method that emits per-token values fits the
record schema; the base value is stored but never added to importances.

A token is assigned to a query span when its midpoint character index
``(char_start + char_end) // 2`` falls inside the span. This midpoint rule
is deterministic and partition-additive even when subword tokens straddle
word boundaries, and reduces to plain containment when tokens nest cleanly
inside the span. Summation is plain left-to-right in token order, so any
partition of a record conserves the total of its token values exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .errors import SchemaError
from .lexicon import TermMatch


@dataclass(frozen=True)
class TokenAttribution:
    text: str
    char_start: int
    char_end: int
    value: float


@dataclass(frozen=True)
class SpanImportance:
    char_start: int
    char_end: int
    importance: float


@dataclass(frozen=True)
class AttributionRecord:
    """One utterance with per-token attribution values.

    Invariants: token spans are sorted by start, non-overlapping, and lie
    within the text; the label is on the [-2, 2] scale.
    """

    id: str
    language: str
    text: str
    label: float
    base_value: float
    tokens: tuple[TokenAttribution, ...]

    def __post_init__(self):
        if not math.isfinite(self.label) or not -2.0 <= self.label <= 2.0:
            raise ValueError(f"record {self.id!r}: label must be finite in [-2, 2]")
        if not math.isfinite(self.base_value):
            raise ValueError(f"record {self.id!r}: base_value must be finite")
        prev_end = 0
        for i, tok in enumerate(self.tokens):
            if not 0 <= tok.char_start < tok.char_end <= len(self.text):
                raise ValueError(
                    f"record {self.id!r}: token {i} span "
                    f"[{tok.char_start}, {tok.char_end}) out of bounds")
            if tok.char_start < prev_end:
                raise ValueError(
                    f"record {self.id!r}: token {i} overlaps its predecessor "
                    f"or is out of order")
            if not math.isfinite(tok.value):
                raise ValueError(f"record {self.id!r}: token {i} value not finite")
            prev_end = tok.char_end

    def total_value(self) -> float:
        total = 0.0
        for tok in self.tokens:
            total += tok.value
        return total


def load_records(lines: Iterable[str] | IO[str]) -> list[AttributionRecord]:
    """Read attribution records from JSON-lines, rejecting invariant violations.

    Schema per line: {"id", "language", "text", "label", "base_value",
    "tokens": [{"text", "start", "end", "value"}, ...]}. Errors carry the
    1-based line number; duplicate ids across the stream are rejected.
    """
    out: list[AttributionRecord] = []
    seen_ids: set[str] = set()
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"line {lineno}: invalid JSON: {exc.msg}") from None
        rec = _parse_record(row, lineno)
        if rec.id in seen_ids:
            raise SchemaError(f"line {lineno}: duplicate record id {rec.id!r}")
        seen_ids.add(rec.id)
        out.append(rec)
    return out


def save_records(records: Iterable[AttributionRecord]) -> str:
    """Serialize records to JSON-lines; inverse of :func:`load_records`."""
    lines = []
    for rec in records:
        lines.append(json.dumps({
            "id": rec.id,
            "language": rec.language,
            "text": rec.text,
            "label": rec.label,
            "base_value": rec.base_value,
            "tokens": [
                {"text": t.text, "start": t.char_start, "end": t.char_end, "value": t.value}
                for t in rec.tokens
            ],
        }, ensure_ascii=False))
    return "\n".join(lines) + ("\n" if lines else "")


def span_importance(rec: AttributionRecord, char_start: int, char_end: int) -> SpanImportance:
    """Sum of values of the tokens whose midpoint lies in [char_start, char_end)."""
    if not 0 <= char_start < char_end <= len(rec.text):
        raise ValueError(
            f"invalid span [{char_start}, {char_end}) for text of length {len(rec.text)}")
    total = 0.0
    for tok in rec.tokens:
        mid = (tok.char_start + tok.char_end) // 2
        if char_start <= mid < char_end:
            total += tok.value
    return SpanImportance(char_start, char_end, total)


def word_importances(
    rec: AttributionRecord, matches: Sequence[TermMatch]
) -> list[tuple[TermMatch, SpanImportance]]:
    """One span importance per term match (matches must come from rec.text).

    Matches from different categories sharing a span each receive the full
    span importance; category sums are independent downstream.
    """
    out = []
    for m in matches:
        out.append((m, span_importance(rec, m.char_start, m.char_end)))
    return out


def sentence_importances(
    rec: AttributionRecord, sentences: Sequence[tuple[int, int, str]]
) -> list[tuple[str, SpanImportance]]:
    """Per-sentence importances for (char_start, char_end, act_label) spans.

    Sentence spans must be sorted and non-overlapping (a partition or
    subset of the text); act labels are carried through unchanged.
    """
    prev_end = 0
    for start, end, _ in sentences:
        if start < prev_end:
            raise ValueError("sentence spans must be sorted and non-overlapping")
        prev_end = end
    out = []
    for start, end, act in sentences:
        out.append((act, span_importance(rec, start, end)))
    return out


def load_acts(lines: Iterable[str] | IO[str]) -> dict[str, list[tuple[int, int, str]]]:
    """Read the sentence/act JSON-lines file.

    Schema per line: {"id": str, "sentences": [{"start", "end", "act"}, ...]}.
    Returns a map from record id to its (start, end, act) triples.
    """
    out: dict[str, list[tuple[int, int, str]]] = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"line {lineno}: invalid JSON: {exc.msg}") from None
        if not isinstance(row, dict) or not isinstance(row.get("id"), str) \
                or not isinstance(row.get("sentences"), list):
            raise SchemaError(f"line {lineno}: expected {{'id': str, 'sentences': [...]}}")
        if row["id"] in out:
            raise SchemaError(f"line {lineno}: duplicate id {row['id']!r}")
        sentences = []
        for s in row["sentences"]:
            if not isinstance(s, dict) or not isinstance(s.get("start"), int) \
                    or not isinstance(s.get("end"), int) or not isinstance(s.get("act"), str):
                raise SchemaError(
                    f"line {lineno}: sentence must be {{'start': int, 'end': int, 'act': str}}")
            sentences.append((s["start"], s["end"], s["act"]))
        out[row["id"]] = sentences
    return out


def _parse_record(row: object, lineno: int) -> AttributionRecord:
    if not isinstance(row, dict):
        raise SchemaError(f"line {lineno}: record must be a JSON object")
    for key, typ in (("id", str), ("language", str), ("text", str)):
        if not isinstance(row.get(key), typ):
            raise SchemaError(f"line {lineno}: {key!r} must be a {typ.__name__}")
    for key in ("label", "base_value"):
        if not isinstance(row.get(key), (int, float)) or isinstance(row.get(key), bool):
            raise SchemaError(f"line {lineno}: {key!r} must be a number")
    if not isinstance(row.get("tokens"), list):
        raise SchemaError(f"line {lineno}: 'tokens' must be a list")
    tokens = []
    for i, t in enumerate(row["tokens"]):
        if not isinstance(t, dict) or not isinstance(t.get("text"), str) \
                or not isinstance(t.get("start"), int) or not isinstance(t.get("end"), int) \
                or not isinstance(t.get("value"), (int, float)) \
                or isinstance(t.get("value"), bool):
            raise SchemaError(
                f"line {lineno}: token {i} must be "
                f"{{'text': str, 'start': int, 'end': int, 'value': number}}")
        tokens.append(TokenAttribution(t["text"], t["start"], t["end"], float(t["value"])))
    try:
        return AttributionRecord(
            id=row["id"],
            language=row["language"],
            text=row["text"],
            label=float(row["label"]),
            base_value=float(row["base_value"]),
            tokens=tuple(tokens),
        )
    except ValueError as exc:
        raise SchemaError(f"line {lineno}: {exc}") from None
