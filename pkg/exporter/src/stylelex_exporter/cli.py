"""Command-line entry point: ``exporter score | attribute``.

Exit codes: 0 ok, 2 missing input or model path, 3 malformed input,
4 contract violation (bad arguments, unusable model).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import SchemaError
from .export import ExportJob, export_attributions, score_corpus

EXIT_OK = 0
EXIT_MISSING_INPUT = 2
EXIT_MALFORMED_INPUT = 3
EXIT_CONTRACT = 4


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        job = ExportJob(
            model=args.model,
            corpus=args.corpus,
            out=args.out,
            language=args.lang,
            batch_size=args.batch_size,
            max_length=args.max_length,
            samples=getattr(args, "samples", 8),
            seed=getattr(args, "seed", 0),
        )
        if args.command == "score":
            written = score_corpus(job)
            print(f"scored {written} utterances -> {job.out}")
        else:
            written, skipped = export_attributions(job)
            print(f"attributed {written} records ({skipped} skipped) -> {job.out}")
    except FileNotFoundError as exc:
        print(f"error: missing input: {exc}", file=sys.stderr)
        return EXIT_MISSING_INPUT
    except (SchemaError, json.JSONDecodeError) as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED_INPUT
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exporter",
        description="Score utterances with a style regressor and export "
                    "per-token additive attributions.")
    sub = parser.add_subparsers(dest="command", required=True)
    score = sub.add_parser("score", help="write a scored corpus")
    attribute = sub.add_parser(
        "attribute", help="write per-token attributions plus a settings sidecar")
    for p in (score, attribute):
        p.add_argument("--model", required=True,
                       help="path to a fine-tuned regression checkpoint")
        p.add_argument("--in", dest="corpus", required=True,
                       help="input corpus (.jsonl with id/text, or plain text lines)")
        p.add_argument("--out", required=True, help="output JSON-lines path")
        p.add_argument("--lang", default="en",
                       help="language tag stamped on attribution records")
        p.add_argument("--batch-size", type=int, default=16)
        p.add_argument("--max-length", type=int, default=512,
                       help="truncate utterances beyond this many tokens")
    attribute.add_argument("--samples", type=int, default=8,
                           help="sampled token orderings per record")
    attribute.add_argument("--seed", type=int, default=0,
                           help="seed for ordering sampling")
    return parser


if __name__ == "__main__":
    sys.exit(main())
