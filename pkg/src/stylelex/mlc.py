"""Multilingual lexica creation: embedding-based expansion, then purification.

Starting from a machine-translated seed lexicon, synonym expansion appends
in-vocabulary nearest neighbors of each single-token seed word to its
category, and concept expansion appends neighbors of each category's
centroid. Purification then drops terms that are rare in a scored corpus
and terms whose presence does not correlate positively with the style
scores of the utterances covering their category.

Correlation is operationalized as the product-moment correlation between
the binary per-utterance indicator "contains this term" and the utterance
style score, computed over the sub-corpus of utterances containing at
least one term of the category (point-biserial construction). Terms with
undefined correlation (zero variance on either side) are kept and flagged.
All removal decisions within one filter call are computed from the
pre-filter lexicon in a single pass; nothing cascades.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field, fields
from typing import Iterable, Sequence

from . import embeddings as emb
from .errors import SchemaError
from .lexicon import Category, Lexicon, match

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MlcConfig:
    """Thresholds for expansion and purification."""

    syn_min_sim: float = 0.60
    concept_min_sim: float = 0.50
    syn_k: int = 10
    concept_k: int = 25
    min_occurrences: int = 3
    corr_threshold: float = 0.15

    def __post_init__(self):
        if not 0.0 < self.syn_min_sim <= 1.0:
            raise ValueError("syn_min_sim must be in (0, 1]")
        if not 0.0 < self.concept_min_sim <= 1.0:
            raise ValueError("concept_min_sim must be in (0, 1]")
        if self.syn_k < 1 or self.concept_k < 1:
            raise ValueError("syn_k and concept_k must be positive")
        if self.min_occurrences < 0:
            raise ValueError("min_occurrences must be non-negative")
        if not math.isfinite(self.corr_threshold):
            raise ValueError("corr_threshold must be finite")

    @classmethod
    def from_dict(cls, doc: dict) -> "MlcConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise SchemaError(f"unknown MLC config keys: {sorted(unknown)}")
        try:
            return cls(**doc)
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"bad MLC config: {exc}") from None


@dataclass(frozen=True)
class ScoredUtterance:
    """A corpus row with a style score on the Rude=-2 .. Polite=+2 scale."""

    id: str
    text: str
    score: float

    def __post_init__(self):
        if not math.isfinite(self.score) or not -2.0 <= self.score <= 2.0:
            raise ValueError(f"utterance {self.id!r}: score must be finite in [-2, 2]")


@dataclass(frozen=True)
class PurificationEntry:
    word: str
    category: str
    reason: str  # "rare" | "uncorrelated" (removed) | "undefined_r" (kept, flagged)
    occurrences: int
    r: float | None
    removed: bool


@dataclass
class PurificationReport:
    entries: list[PurificationEntry] = field(default_factory=list)
    skipped_categories: list[str] = field(default_factory=list)

    def removed(self) -> list[PurificationEntry]:
        return [e for e in self.entries if e.removed]

    def removed_words(self, category: str) -> set[str]:
        return {e.word for e in self.entries if e.removed and e.category == category}

    def merged_with(self, other: "PurificationReport") -> "PurificationReport":
        rep = PurificationReport(
            entries=sorted(self.entries + other.entries, key=lambda e: (e.category, e.word)),
            skipped_categories=sorted(set(self.skipped_categories + other.skipped_categories)),
        )
        return rep

    def to_jsonl(self) -> str:
        lines = []
        for e in self.entries:
            lines.append(json.dumps({
                "word": e.word,
                "category": e.category,
                "reason": e.reason,
                "occurrences": e.occurrences,
                "r": e.r,
                "removed": e.removed,
            }, ensure_ascii=False))
        for name in self.skipped_categories:
            lines.append(json.dumps(
                {"category": name, "reason": "no_covered_utterances"}, ensure_ascii=False))
        return "\n".join(lines) + ("\n" if lines else "")


def expand_synonyms(seed: Lexicon, table: emb.EmbeddingTable, cfg: MlcConfig) -> Lexicon:
    """Append nearest neighbors of every in-table single-token seed word.

    Multi-word seed terms are kept as-is but not queried. Neighbors equal
    to the seed word itself or already in the category are not appended.
    The category name set is unchanged.
    """
    new_cats = []
    for cat in seed.categories:
        members = set(cat.terms)
        terms = list(cat.terms)
        for term in cat.terms:
            if len(term.split()) != 1:
                continue
            vec = table.lookup(term)
            if vec is None:
                logger.warning("expand_synonyms: seed word %r not in table, skipped", term)
                continue
            for nb in emb.knn(table, vec, cfg.syn_k, cfg.syn_min_sim):
                if nb.word == term or nb.word in members:
                    continue
                terms.append(nb.word)
                members.add(nb.word)
        new_cats.append(Category(cat.name, tuple(terms)))
    return Lexicon(seed.language, tuple(new_cats))


def expand_concept(lex: Lexicon, table: emb.EmbeddingTable, cfg: MlcConfig) -> Lexicon:
    """Append nearest neighbors of each category's centroid embedding.

    The centroid averages the category's in-table single-token terms;
    categories with none are left unchanged (and logged).
    """
    new_cats = []
    for cat in lex.categories:
        in_table = [t for t in cat.terms if len(t.split()) == 1 and t in table]
        if not in_table:
            logger.warning("expand_concept: category %r has no in-table terms", cat.name)
            new_cats.append(cat)
            continue
        center = emb.centroid(table, in_table)
        members = set(cat.terms)
        terms = list(cat.terms)
        for nb in emb.knn(table, center, cfg.concept_k, cfg.concept_min_sim):
            if nb.word in members:
                continue
            terms.append(nb.word)
            members.add(nb.word)
        new_cats.append(Category(cat.name, tuple(terms)))
    return Lexicon(lex.language, tuple(new_cats))


def filter_rare(
    lex: Lexicon,
    corpus: Sequence[ScoredUtterance],
    segmentation: str,
    cfg: MlcConfig,
) -> tuple[Lexicon, PurificationReport]:
    """Remove terms whose total match count over the corpus is below the floor."""
    if not corpus:
        raise ValueError("filter_rare requires a non-empty corpus")
    counts = _match_counts(lex, corpus, segmentation)
    report = PurificationReport()
    new_cats = []
    for cat in lex.categories:
        kept = []
        for term in cat.terms:
            n = counts.get((cat.name, term), 0)
            if n < cfg.min_occurrences:
                report.entries.append(PurificationEntry(
                    word=term, category=cat.name, reason="rare",
                    occurrences=n, r=None, removed=True))
            else:
                kept.append(term)
        new_cats.append(Category(cat.name, tuple(kept)))
    report.entries.sort(key=lambda e: (e.category, e.word))
    return Lexicon(lex.language, tuple(new_cats)), report


def filter_uncorrelated(
    lex: Lexicon,
    corpus: Sequence[ScoredUtterance],
    segmentation: str,
    cfg: MlcConfig,
) -> tuple[Lexicon, PurificationReport]:
    """Remove terms not correlating positively with their category's scores.

    For each term the correlation r is computed over the utterances that
    contain at least one term of its category, between the term's presence
    indicator and the style score. r < the configured threshold removes the
    term; undefined r keeps it flagged. A category covering no utterance is
    skipped entirely and reported.
    """
    if not corpus:
        raise ValueError("filter_uncorrelated requires a non-empty corpus")
    per_utt = [frozenset((m.category, m.term) for m in match(lex, u.text, segmentation))
               for u in corpus]
    counts = _match_counts(lex, corpus, segmentation)
    report = PurificationReport()
    new_cats = []
    for cat in lex.categories:
        sub = [i for i, present in enumerate(per_utt)
               if any(c == cat.name for c, _ in present)]
        if not sub:
            if cat.terms:
                report.skipped_categories.append(cat.name)
            new_cats.append(cat)
            continue
        scores = [corpus[i].score for i in sub]
        kept = []
        for term in cat.terms:
            indicator = [1.0 if (cat.name, term) in per_utt[i] else 0.0 for i in sub]
            r = _pearson(indicator, scores)
            n = counts.get((cat.name, term), 0)
            if r is None:
                report.entries.append(PurificationEntry(
                    word=term, category=cat.name, reason="undefined_r",
                    occurrences=n, r=None, removed=False))
                kept.append(term)
            elif r < cfg.corr_threshold:
                report.entries.append(PurificationEntry(
                    word=term, category=cat.name, reason="uncorrelated",
                    occurrences=n, r=r, removed=True))
            else:
                kept.append(term)
        new_cats.append(Category(cat.name, tuple(kept)))
    report.entries.sort(key=lambda e: (e.category, e.word))
    return Lexicon(lex.language, tuple(new_cats)), report


def run_mlc(
    seed: Lexicon,
    table: emb.EmbeddingTable,
    corpus: Sequence[ScoredUtterance],
    segmentation: str,
    cfg: MlcConfig | None = None,
) -> tuple[Lexicon, PurificationReport]:
    """Full pipeline: synonym expansion, concept expansion, rare filter,
    correlation filter. Returns the purified lexicon and the merged report."""
    cfg = cfg or MlcConfig()
    lex = expand_synonyms(seed, table, cfg)
    lex = expand_concept(lex, table, cfg)
    lex, rare_report = filter_rare(lex, corpus, segmentation, cfg)
    lex, corr_report = filter_uncorrelated(lex, corpus, segmentation, cfg)
    return lex, rare_report.merged_with(corr_report)


def load_scored_corpus(lines: Iterable[str]) -> list[ScoredUtterance]:
    """Read a JSON-lines scored corpus of {"id", "text", "score"} rows."""
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
                or not isinstance(row.get("text"), str) \
                or not isinstance(row.get("score"), (int, float)) \
                or isinstance(row.get("score"), bool):
            raise SchemaError(
                f"line {lineno}: expected {{'id': str, 'text': str, 'score': number}}")
        try:
            out.append(ScoredUtterance(row["id"], row["text"], float(row["score"])))
        except ValueError as exc:
            raise SchemaError(f"line {lineno}: {exc}") from None
    return out


def _match_counts(lex, corpus, segmentation) -> dict[tuple[str, str], int]:
    counts: dict[tuple[str, str], int] = {}
    for u in corpus:
        for m in match(lex, u.text, segmentation):
            key = (m.category, m.term)
            counts[key] = counts.get(key, 0) + 1
    return counts


def _pearson(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Product-moment correlation; None when either side has zero variance."""
    n = len(x)
    if n < 2:
        return None
    mx = sum(x) / n
    my = sum(y) / n
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    if sxx == 0.0 or syy == 0.0:
        return None
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    # Rounding can push the quotient a few ulps past +/-1; the true value
    # cannot exceed that range, so clamp to keep threshold comparisons sane.
    return max(-1.0, min(1.0, sxy / math.sqrt(sxx * syy)))
