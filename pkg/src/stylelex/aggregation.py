"""Category- and dialogue-act-level importance scores and comparison grids.

A category's importance is the mean word-level importance over every
occurrence of its terms in the dataset: occurrences N count matches, not
distinct words and not utterances, and a term belonging to two categories
contributes its full importance to each. An act's importance is the mean
sentence-level importance over the sentences labeled with it.

Summation order is fixed (dataset order, then match order) so repeated
runs are bit-identical; the optional thread pool maps records concurrently
but reduces in dataset order, leaving results unchanged.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence, TypeVar

from .attribution import AttributionRecord, sentence_importances, word_importances
from .errors import ContractError
from .lexicon import Lexicon, match

T = TypeVar("T")

CSV_HEADER = ["row", "language", "importance", "occurrences", "frequency_pct"]


@dataclass(frozen=True)
class CategoryImportance:
    """Importance of one category (or dialogue act) in one language.

    ``importance`` is None when the category never occurs (N = 0);
    ``frequency_pct`` is the percent of utterances (or sentences, per the
    configured granularity) containing the category.
    """

    category: str
    language: str
    importance: float | None
    occurrences: int
    frequency_pct: float


@dataclass
class ComparisonReport:
    """A (category | act) x language grid of importances.

    Cells are None where the row is absent in that language (the "NA"
    convention); a present cell with zero occurrences keeps its counts.
    """

    rows: list[str]
    languages: list[str]
    cells: dict[tuple[str, str], CategoryImportance | None]
    metadata: dict = field(default_factory=dict)

    def cell(self, row: str, language: str) -> CategoryImportance | None:
        return self.cells[(row, language)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in self.rows:
            for lang in self.languages:
                cell = self.cells[(row, lang)]
                if cell is None:
                    writer.writerow([row, lang, "", "", ""])
                else:
                    imp = "" if cell.importance is None else repr(cell.importance)
                    writer.writerow([row, lang, imp, cell.occurrences,
                                     repr(cell.frequency_pct)])
        return buf.getvalue()

    def to_json(self) -> str:
        cells = []
        for row in self.rows:
            for lang in self.languages:
                cell = self.cells[(row, lang)]
                if cell is None:
                    cells.append({"row": row, "language": lang, "absent": True})
                else:
                    cells.append({
                        "row": row,
                        "language": lang,
                        "absent": False,
                        "importance": cell.importance,
                        "occurrences": cell.occurrences,
                        "frequency_pct": cell.frequency_pct,
                    })
        doc = {
            "metadata": self.metadata,
            "rows": self.rows,
            "languages": self.languages,
            "cells": cells,
        }
        return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def category_importance(
    records: Sequence[AttributionRecord],
    lex: Lexicon,
    segmentation: str,
    granularity: str = "utterance",
    sentences: Mapping[str, Sequence[tuple]] | None = None,
    threads: int = 1,
) -> list[CategoryImportance]:
    """Per-category importance, occurrence count and frequency over a dataset.

    Records must all be in the lexicon's language. With sentence
    granularity, ``sentences`` must map every record id to its sentence
    spans; frequency then counts sentences containing a category match
    (assigned by match midpoint) instead of utterances.
    """
    if not records:
        raise ContractError("category_importance requires a non-empty record list")
    for rec in records:
        if rec.language != lex.language:
            raise ContractError(
                f"record {rec.id!r} language {rec.language!r} != lexicon "
                f"language {lex.language!r}")
    if granularity not in ("utterance", "sentence"):
        raise ValueError(f"granularity must be 'utterance' or 'sentence', got {granularity!r}")
    if granularity == "sentence" and sentences is None:
        raise ContractError("sentence granularity requires a sentence span map")

    def work(rec: AttributionRecord):
        matches = match(lex, rec.text, segmentation)
        return word_importances(rec, matches)

    per_record = _ordered_map(work, records, threads)

    names = lex.category_names()
    occurrences = {name: 0 for name in names}
    imp_sum = {name: 0.0 for name in names}
    covered = {name: 0 for name in names}
    total_units = 0
    for rec, imps in zip(records, per_record):
        if granularity == "utterance":
            units = [(0, len(rec.text))]
        else:
            if rec.id not in sentences:
                raise ContractError(f"record {rec.id!r} missing from the sentence span map")
            units = [(s[0], s[1]) for s in sentences[rec.id]]
        total_units += len(units)
        unit_hit = {name: set() for name in names}
        for m, span in imps:
            occurrences[m.category] += 1
            imp_sum[m.category] += span.importance
            mid = (m.char_start + m.char_end) // 2
            for ui, (us, ue) in enumerate(units):
                if us <= mid < ue:
                    unit_hit[m.category].add(ui)
                    break
        for name in names:
            covered[name] += len(unit_hit[name])

    out = []
    for name in names:
        n = occurrences[name]
        out.append(CategoryImportance(
            category=name,
            language=lex.language,
            importance=(imp_sum[name] / n) if n > 0 else None,
            occurrences=n,
            frequency_pct=100.0 * covered[name] / total_units if total_units else 0.0,
        ))
    return out


def act_importance(
    records: Sequence[AttributionRecord],
    acts: Mapping[str, Sequence[tuple[int, int, str]]],
    language: str,
    acts_universe: Sequence[str] | None = None,
    threads: int = 1,
) -> list[CategoryImportance]:
    """Per-dialogue-act importance, treating each act as a category.

    Every record id must be present in the acts map. N counts sentences
    labeled with the act; frequency is the percent of all sentences so
    labeled. Acts listed in ``acts_universe`` but absent from the dataset
    get N = 0 with no importance.
    """
    if not records:
        raise ContractError("act_importance requires a non-empty record list")
    for rec in records:
        if rec.id not in acts:
            raise ContractError(f"record {rec.id!r} missing from the acts file")

    def work(rec: AttributionRecord):
        return sentence_importances(rec, acts[rec.id])

    per_record = _ordered_map(work, records, threads)

    counts: dict[str, int] = {}
    imp_sum: dict[str, float] = {}
    total_sentences = 0
    for imps in per_record:
        total_sentences += len(imps)
        for act, span in imps:
            counts[act] = counts.get(act, 0) + 1
            imp_sum[act] = imp_sum.get(act, 0.0) + span.importance

    if acts_universe is not None:
        names = list(acts_universe)
    else:
        names = sorted(counts)
    out = []
    for name in names:
        n = counts.get(name, 0)
        out.append(CategoryImportance(
            category=name,
            language=language,
            importance=(imp_sum[name] / n) if n > 0 else None,
            occurrences=n,
            frequency_pct=100.0 * n / total_sentences if total_sentences else 0.0,
        ))
    return out


def compare(
    reports: Sequence[Sequence[CategoryImportance]],
    row_set: Sequence[str] | None = None,
    metadata: dict | None = None,
) -> ComparisonReport:
    """Align per-language importance lists into one grid.

    Needs at least two languages, each appearing once. Rows default to the
    union of row names in first-appearance order; rows missing in a
    language are marked absent.
    """
    if len(reports) < 2:
        raise ContractError("compare requires at least two languages")
    languages: list[str] = []
    by_lang: dict[str, dict[str, CategoryImportance]] = {}
    for rows in reports:
        if not rows:
            raise ContractError("compare received an empty per-language report")
        langs = {r.language for r in rows}
        if len(langs) != 1:
            raise ContractError(f"one per-language report mixes languages: {sorted(langs)}")
        lang = rows[0].language
        if lang in by_lang:
            raise ContractError(f"duplicate language {lang!r}")
        languages.append(lang)
        by_lang[lang] = {r.category: r for r in rows}

    if row_set is None:
        row_names: list[str] = []
        for rows in reports:
            for r in rows:
                if r.category not in row_names:
                    row_names.append(r.category)
    else:
        row_names = list(row_set)

    cells: dict[tuple[str, str], CategoryImportance | None] = {}
    for name in row_names:
        for lang in languages:
            cells[(name, lang)] = by_lang[lang].get(name)
    return ComparisonReport(
        rows=row_names,
        languages=languages,
        cells=cells,
        metadata=dict(metadata or {}),
    )


def _ordered_map(fn: Callable[[AttributionRecord], T],
                 records: Sequence[AttributionRecord], threads: int) -> list[T]:
    """Map records through fn, optionally on a thread pool, preserving order."""
    if threads == 1 or len(records) < 2:
        return [fn(rec) for rec in records]
    workers = threads if threads > 0 else None  # None lets the pool pick cpu count
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, records))
