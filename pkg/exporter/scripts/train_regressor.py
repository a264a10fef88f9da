"""Fine-tune a regression head on a scored corpus.

Turns any base checkpoint into the single-output style regressor the
exporter expects: politeness is treated as regression onto the [-2, 2]
scale, one model per language. Training data is a scored-corpus JSON-lines
file ({"id", "text", "score"} per line), typically mean annotator scores.

Example:
    python scripts/train_regressor.py \
        --base-model xlm-roberta-base --train scored_ja.jsonl \
        --out models/ja --epochs 3 --lr 2e-5

The saved directory loads directly with ``exporter score``/``attribute``.
This script is deliberately minimal — no early stopping, no eval split,
no schedulers; bring your own if the corpus warrants it.
"""

from __future__ import annotations

import argparse
import json
import sys

import torch
from torch.utils.data import DataLoader
from transformers import AutoModelForSequenceClassification, AutoTokenizer


def read_scored(path: str) -> tuple[list[str], list[float]]:
    texts, scores = [], []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            row = json.loads(line)
            if not isinstance(row.get("text"), str) \
                    or not isinstance(row.get("score"), (int, float)):
                raise ValueError(f"line {lineno}: expected 'text' and numeric 'score'")
            texts.append(row["text"])
            scores.append(float(row["score"]))
    if not texts:
        raise ValueError(f"{path}: no training rows")
    return texts, scores


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--base-model", required=True,
                        help="checkpoint to start from (path or hub id)")
    parser.add_argument("--train", required=True, help="scored corpus JSON-lines")
    parser.add_argument("--out", required=True, help="directory for the fine-tuned model")
    parser.add_argument("--epochs", type=int, default=3)
    parser.add_argument("--lr", type=float, default=2e-5)
    parser.add_argument("--batch-size", type=int, default=16)
    parser.add_argument("--max-length", type=int, default=512)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    torch.manual_seed(args.seed)
    tokenizer = AutoTokenizer.from_pretrained(args.base_model)
    model = AutoModelForSequenceClassification.from_pretrained(
        args.base_model, num_labels=1, problem_type="regression")
    device = torch.device("cuda" if torch.cuda.is_available() else "cpu")
    model.to(device)

    texts, scores = read_scored(args.train)
    encoded = tokenizer(texts, truncation=True, max_length=args.max_length,
                        padding=True, return_tensors="pt")
    dataset = list(zip(encoded["input_ids"], encoded["attention_mask"],
                       torch.tensor(scores)))
    loader = DataLoader(dataset, batch_size=args.batch_size, shuffle=True,
                        generator=torch.Generator().manual_seed(args.seed))

    optimizer = torch.optim.AdamW(model.parameters(), lr=args.lr)
    model.train()
    for epoch in range(args.epochs):
        total = 0.0
        for input_ids, attention_mask, targets in loader:
            optimizer.zero_grad()
            logits = model(input_ids=input_ids.to(device),
                           attention_mask=attention_mask.to(device)).logits[:, 0]
            loss = torch.nn.functional.mse_loss(logits, targets.to(device))
            loss.backward()
            optimizer.step()
            total += loss.item() * len(targets)
        print(f"epoch {epoch + 1}/{args.epochs}: mse {total / len(dataset):.4f}")

    model.save_pretrained(args.out)
    tokenizer.save_pretrained(args.out)
    print(f"saved {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
