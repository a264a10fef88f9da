"""Transformer regression scorer with offset-aware encoding.

Wraps a fine-tuned sequence-regression checkpoint (one output per
utterance) behind the two operations the exporter needs: score a batch of
texts, and score masked variants of one encoded utterance for attribution.
Scores are clipped to the rude-polite scale [-2, 2].
"""

from __future__ import annotations

from dataclasses import dataclass

import torch
from transformers import AutoModelForSequenceClassification, AutoTokenizer
from transformers.utils import logging as hf_logging

SCORE_MIN = -2.0
SCORE_MAX = 2.0


@dataclass
class EncodedUtterance:
    """One tokenized utterance, ready for masking.

    ``content_positions`` indexes the non-special tokens within
    ``input_ids``; ``offsets`` gives the character span of each of those
    tokens in the original text, in the same order.
    """

    input_ids: list[int]
    content_positions: list[int]
    offsets: list[tuple[int, int]]
    truncated: bool


class StyleScorer:
    """Score utterances with a single-output regression checkpoint."""

    def __init__(self, model_path: str, max_length: int = 512):
        if max_length < 2:
            raise ValueError("max_length must leave room for special tokens")
        hf_logging.disable_progress_bar()
        self.tokenizer = AutoTokenizer.from_pretrained(model_path)
        self.model = AutoModelForSequenceClassification.from_pretrained(model_path)
        if getattr(self.model.config, "num_labels", None) != 1:
            raise ValueError(
                f"model at {model_path!r} has {self.model.config.num_labels} outputs; "
                "scoring needs a single regression output")
        self.model.eval()
        self.max_length = max_length
        self.pad_id = self.tokenizer.pad_token_id
        if self.pad_id is None:
            raise ValueError(f"tokenizer at {model_path!r} defines no pad token")

    def score_texts(self, texts: list[str], batch_size: int = 16) -> list[float]:
        """One clipped score per text, in input order."""
        scores: list[float] = []
        for start in range(0, len(texts), batch_size):
            batch = texts[start:start + batch_size]
            enc = self.tokenizer(batch, padding=True, truncation=True,
                                 max_length=self.max_length, verbose=False,
                                 return_tensors="pt")
            with torch.no_grad():
                logits = self.model(input_ids=enc["input_ids"],
                                    attention_mask=enc["attention_mask"]).logits
            scores.extend(_clip(float(v)) for v in logits[:, 0])
        return scores

    def encode(self, text: str) -> EncodedUtterance:
        """Tokenize one utterance, keeping character offsets for content tokens."""
        full = self.tokenizer(text, verbose=False)["input_ids"]
        truncated = len(full) > self.max_length
        enc = self.tokenizer(text, truncation=True, max_length=self.max_length,
                             verbose=False, return_offsets_mapping=True,
                             return_special_tokens_mask=True)
        positions = []
        offsets = []
        for i, special in enumerate(enc["special_tokens_mask"]):
            if not special:
                positions.append(i)
                offsets.append(tuple(enc["offset_mapping"][i]))
        return EncodedUtterance(enc["input_ids"], positions, offsets, truncated)

    def score_masked(self, encoded: EncodedUtterance,
                     masks: list[tuple[bool, ...]],
                     batch_size: int = 64) -> list[float]:
        """Score variants of one utterance with some content tokens hidden.

        Each mask flags which content tokens stay visible; hidden ones are
        replaced by the pad token and excluded from attention, so the model
        sees the utterance as if those tokens were absent.
        """
        base_ids = torch.tensor(encoded.input_ids)
        positions = torch.tensor(encoded.content_positions, dtype=torch.long)
        scores: list[float] = []
        for start in range(0, len(masks), batch_size):
            chunk = masks[start:start + batch_size]
            ids = base_ids.repeat(len(chunk), 1)
            attention = torch.ones_like(ids)
            for row, mask in enumerate(chunk):
                hidden = positions[torch.tensor([not keep for keep in mask],
                                                dtype=torch.bool)]
                ids[row, hidden] = self.pad_id
                attention[row, hidden] = 0
            with torch.no_grad():
                logits = self.model(input_ids=ids, attention_mask=attention).logits
            scores.extend(_clip(float(v)) for v in logits[:, 0])
        return scores


def _clip(score: float) -> float:
    return min(SCORE_MAX, max(SCORE_MIN, score))
