"""Command-line entry point: ``stylelex expand | coverage | aggregate``.

One JSON config file drives a run, so a single file records how outputs
were produced; a few flags override it. Commands are randomness-free and write
outputs atomically (temp file + rename), so rerunning with identical
inputs produces byte-identical outputs and failures leave no partial
files.

Exit codes: 0 ok, 2 missing input path, 3 malformed input, 4 contract
violation mid-pipeline.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path

from . import aggregation, attribution, lexicon, mlc
from .embeddings import load_table
from .errors import ContractError, SchemaError

EXIT_OK = 0
EXIT_MISSING_INPUT = 2
EXIT_MALFORMED_INPUT = 3
EXIT_CONTRACT = 4


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        if args.out:
            config["out_dir"] = args.out
        out_dir = Path(config.get("out_dir", "."))
        out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "expand":
            _cmd_expand(config, out_dir)
        elif args.command == "coverage":
            _cmd_coverage(config, out_dir)
        else:
            _cmd_aggregate(config, out_dir, args.lang, args.threads)
    except FileNotFoundError as exc:
        print(f"error: missing input: {exc}", file=sys.stderr)
        return EXIT_MISSING_INPUT
    except (SchemaError, json.JSONDecodeError) as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED_INPUT
    except (ContractError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stylelex",
        description="Expand/purify style lexica, measure coverage, aggregate importances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("expand", "expand and purify a seed lexicon; writes lexicon + purification report"),
        ("coverage", "coverage of each configured lexicon over a corpus"),
        ("aggregate", "category- and act-level importance grids across languages"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="pipeline config JSON")
        p.add_argument("--out", help="override the config's output directory")
        p.add_argument("--lang", action="append", default=None,
                       help="restrict aggregation to this language (repeatable)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads for aggregation; 0 = auto")
    return parser


def _load_config(path: str) -> dict:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(path)
    with open(p, encoding="utf-8") as f:
        doc = json.load(f)
    if not isinstance(doc, dict):
        raise SchemaError("config must be a JSON object")
    doc["_hash"] = hashlib.sha256(
        json.dumps({k: v for k, v in doc.items() if k != "_hash"},
                   sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")
    ).hexdigest()
    return doc


def _require_paths(*paths: str) -> None:
    missing = [p for p in paths if not Path(p).is_file()]
    if missing:
        raise FileNotFoundError(", ".join(missing))


def _segmentation_for(config: dict, language: str) -> str:
    seg = config.get("segmentation", {})
    if not isinstance(seg, dict):
        raise SchemaError("'segmentation' must map language to mode")
    return seg.get(language, "whitespace")


def _cmd_expand(config: dict, out_dir: Path) -> None:
    section = config.get("expand")
    if not isinstance(section, dict):
        raise SchemaError("config needs an 'expand' section")
    for key in ("embeddings", "seed_lexicon", "scored_corpus"):
        if not isinstance(section.get(key), str):
            raise SchemaError(f"'expand.{key}' must be a path string")
    _require_paths(section["embeddings"], section["seed_lexicon"], section["scored_corpus"])

    with open(section["seed_lexicon"], encoding="utf-8") as f:
        seed = lexicon.load_lexicon(f)
    with open(section["embeddings"], encoding="utf-8") as f:
        table = load_table(f)
    with open(section["scored_corpus"], encoding="utf-8") as f:
        corpus = mlc.load_scored_corpus(f)
    cfg = mlc.MlcConfig.from_dict(config.get("mlc", {}))
    seg = _segmentation_for(config, seed.language)

    result, report = mlc.run_mlc(seed, table, corpus, seg, cfg)
    _write_atomic(out_dir / f"lexicon_{seed.language}.json", lexicon.save_lexicon(result))
    _write_atomic(out_dir / f"purification_{seed.language}.jsonl", report.to_jsonl())


def _cmd_coverage(config: dict, out_dir: Path) -> None:
    section = config.get("coverage")
    if not isinstance(section, dict):
        raise SchemaError("config needs a 'coverage' section")
    corpus_path = section.get("corpus")
    lexicon_paths = section.get("lexicons")
    if not isinstance(corpus_path, str) or not isinstance(lexicon_paths, list):
        raise SchemaError("'coverage' needs 'corpus' (path) and 'lexicons' (list of paths)")
    _require_paths(corpus_path, *lexicon_paths)

    texts = _read_corpus(corpus_path)
    rows = []
    for lex_path in lexicon_paths:
        with open(lex_path, encoding="utf-8") as f:
            lex = lexicon.load_lexicon(f)
        seg = _segmentation_for(config, lex.language)
        stat = lexicon.coverage(lex, texts, seg)
        rows.append({
            "lexicon": Path(lex_path).name,
            "language": lex.language,
            "corpus": Path(corpus_path).name,
            "covered": stat.covered,
            "total": stat.total,
            "percent": stat.percent,
        })
    doc = {"config_hash": config["_hash"], "rows": rows}
    _write_atomic(out_dir / "coverage.json",
                  json.dumps(doc, ensure_ascii=False, indent=2) + "\n")


def _cmd_aggregate(config: dict, out_dir: Path, langs: list[str] | None,
                   threads: int) -> None:
    section = config.get("aggregate")
    if not isinstance(section, dict) or not isinstance(section.get("languages"), dict):
        raise SchemaError("config needs an 'aggregate.languages' section")
    languages: dict[str, dict] = section["languages"]
    if langs:
        unknown = [l for l in langs if l not in languages]
        if unknown:
            raise ContractError(f"--lang not in config: {', '.join(unknown)}")
        languages = {l: languages[l] for l in langs}
    granularity = config.get("granularity", "utterance")

    for lang, entry in languages.items():
        if not isinstance(entry, dict) or not isinstance(entry.get("lexicon"), str) \
                or not isinstance(entry.get("attributions"), str):
            raise SchemaError(f"aggregate language {lang!r} needs 'lexicon' and 'attributions'")
        paths = [entry["lexicon"], entry["attributions"]]
        if entry.get("acts"):
            paths.append(entry["acts"])
        _require_paths(*paths)

    cat_reports = []
    act_reports = []
    datasets = {}
    for lang, entry in languages.items():
        with open(entry["lexicon"], encoding="utf-8") as f:
            lex = lexicon.load_lexicon(f)
        if lex.language != lang:
            raise ContractError(
                f"lexicon {entry['lexicon']} is for {lex.language!r}, expected {lang!r}")
        with open(entry["attributions"], encoding="utf-8") as f:
            records = attribution.load_records(f)
        datasets[lang] = Path(entry["attributions"]).name
        acts = None
        if entry.get("acts"):
            with open(entry["acts"], encoding="utf-8") as f:
                acts = attribution.load_acts(f)
        seg = _segmentation_for(config, lang)
        sentences = acts if granularity == "sentence" else None
        cat_reports.append(aggregation.category_importance(
            records, lex, seg, granularity=granularity, sentences=sentences,
            threads=threads))
        if acts is not None:
            act_reports.append((records, acts, lang))

    metadata = {
        "config_hash": config["_hash"],
        "granularity": granularity,
        "datasets": datasets,
    }
    cat_grid = aggregation.compare(cat_reports, metadata=metadata)
    _write_atomic(out_dir / "categories.csv", cat_grid.to_csv())
    _write_atomic(out_dir / "categories.json", cat_grid.to_json())

    if act_reports:
        universe = sorted({act for _, acts, _ in act_reports
                           for spans in acts.values() for _, _, act in spans})
        rows = [aggregation.act_importance(records, acts, lang, acts_universe=universe,
                                           threads=threads)
                for records, acts, lang in act_reports]
        act_grid = aggregation.compare(rows, row_set=universe, metadata=metadata)
        _write_atomic(out_dir / "acts.csv", act_grid.to_csv())
        _write_atomic(out_dir / "acts.json", act_grid.to_json())


def _read_corpus(path: str) -> list[str]:
    with open(path, encoding="utf-8") as f:
        if path.endswith((".jsonl", ".ndjson")):
            return [text for _, text in lexicon.load_corpus_jsonl(f)]
        return lexicon.load_corpus_text(f)


def _write_atomic(path: Path, data: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


if __name__ == "__main__":
    raise SystemExit(main())
