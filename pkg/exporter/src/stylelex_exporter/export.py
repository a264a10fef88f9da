"""Export jobs: score a corpus, or attribute per-token contributions.

Output files follow the aggregation toolkit's JSON-lines contracts exactly,
so they feed straight into its loaders:

- scored corpus: ``{"id", "text", "score"}`` per line, scores in [-2, 2];
- attributions: ``{"id", "language", "text", "label", "base_value",
  "tokens": [{"text", "start", "end", "value"}, ...]}`` per line, token
  offsets slicing the original text.

Attribution settings (sampling method, seed, masking strategy) are not part
of those contracts, so they go into a ``<out>.meta.json`` sidecar instead.
Writes are atomic and records keep input order, so identical jobs produce
byte-identical outputs.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import SchemaError
from .model import SCORE_MAX, SCORE_MIN, StyleScorer
from .shapley import permutation_values

logger = logging.getLogger(__name__)

ATTRIBUTION_METHOD = "permutation-shapley"
MASKING = "pad-and-attention-zero"


@dataclass(frozen=True)
class ExportJob:
    """One scoring or attribution run over a corpus."""

    model: str
    corpus: str
    out: str
    language: str = "en"
    batch_size: int = 16
    max_length: int = 512
    samples: int = 8
    seed: int = 0

    def __post_init__(self):
        if not self.language:
            raise ValueError("language must be non-empty")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.max_length < 2:
            raise ValueError("max_length must leave room for special tokens")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")


def read_corpus(path: str) -> list[tuple[str, str]]:
    """Read ``(id, text)`` utterances.

    JSON-lines files need ``{"id", "text"}`` per line (extra keys are
    ignored, so a scored corpus works as input too); any other file is
    plain text, one utterance per line, with ids generated from line
    numbers.
    """
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(path)
    raw = p.read_text(encoding="utf-8")
    if p.suffix in (".jsonl", ".ndjson"):
        out: list[tuple[str, str]] = []
        seen: set[str] = set()
        for lineno, line in enumerate(raw.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"line {lineno}: invalid JSON: {exc.msg}") from None
            if not isinstance(row, dict) or not isinstance(row.get("id"), str) \
                    or not isinstance(row.get("text"), str):
                raise SchemaError(f"line {lineno}: expected {{'id': str, 'text': str}}")
            if row["id"] in seen:
                raise SchemaError(f"line {lineno}: duplicate id {row['id']!r}")
            seen.add(row["id"])
            out.append((row["id"], row["text"]))
        return out
    return [(f"u{lineno:04d}", line)
            for lineno, line in enumerate(raw.splitlines(), start=1)]


def score_corpus(job: ExportJob) -> int:
    """Score every utterance; write a scored-corpus file. Returns the count."""
    scorer = _load_scorer(job)
    corpus = read_corpus(job.corpus)
    for rec_id, text in corpus:
        if scorer.encode(text).truncated:
            logger.warning("utterance %s exceeds %d tokens; truncated",
                           rec_id, job.max_length)
    scores = scorer.score_texts([text for _, text in corpus], job.batch_size)
    lines = [json.dumps({"id": rec_id, "text": text, "score": score},
                        ensure_ascii=False)
             for (rec_id, text), score in zip(corpus, scores)]
    _write_atomic(Path(job.out), "".join(line + "\n" for line in lines))
    return len(lines)


def export_attributions(job: ExportJob) -> tuple[int, int]:
    """Write per-token attributions for every utterance.

    Token values are permutation-sampling Shapley values of the clipped
    model score, so ``base_value`` plus the token values recovers ``label``
    up to float rounding. Records whose tokenizer offsets cannot slice the
    input text are skipped with a diagnostic. Returns ``(written, skipped)``.
    """
    scorer = _load_scorer(job)
    corpus = read_corpus(job.corpus)
    rng = np.random.default_rng(job.seed)
    lines = []
    skipped = 0
    for rec_id, text in corpus:
        encoded = scorer.encode(text)
        if encoded.truncated:
            logger.warning("utterance %s exceeds %d tokens; truncated",
                           rec_id, job.max_length)
        problem = _offset_problem(text, encoded.offsets)
        if problem:
            logger.warning("record %s skipped: %s", rec_id, problem)
            skipped += 1
            continue
        n = len(encoded.content_positions)
        base, values = permutation_values(
            lambda masks: scorer.score_masked(encoded, masks, job.batch_size),
            n, job.samples, rng)
        label = scorer.score_masked(encoded, [(True,) * n], job.batch_size)[0]
        tokens = [{"text": text[start:end], "start": start, "end": end,
                   "value": value}
                  for (start, end), value in zip(encoded.offsets, values)]
        lines.append(json.dumps({
            "id": rec_id,
            "language": job.language,
            "text": text,
            "label": label,
            "base_value": base,
            "tokens": tokens,
        }, ensure_ascii=False))
    _write_atomic(Path(job.out), "".join(line + "\n" for line in lines))
    _write_atomic(Path(job.out + ".meta.json"), json.dumps({
        "method": ATTRIBUTION_METHOD,
        "samples": job.samples,
        "seed": job.seed,
        "masking": MASKING,
        "model": job.model,
        "language": job.language,
        "max_length": job.max_length,
        "score_clip": [SCORE_MIN, SCORE_MAX],
        "records": len(lines),
        "skipped": skipped,
    }, indent=2) + "\n")
    return len(lines), skipped


def _load_scorer(job: ExportJob) -> StyleScorer:
    if not Path(job.model).exists():
        raise FileNotFoundError(job.model)
    return StyleScorer(job.model, job.max_length)


def _offset_problem(text: str, offsets: list[tuple[int, int]]) -> str | None:
    previous_end = 0
    for start, end in offsets:
        if not (0 <= start < end <= len(text)):
            return f"offset [{start},{end}) does not slice a text of length {len(text)}"
        if start < previous_end:
            return f"offset [{start},{end}) overlaps the previous token"
        previous_end = end
    return None


def _write_atomic(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(content)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
