"""Command-line subcommands: outputs, exit codes, atomicity, reruns."""

import json

import pytest

from stylelex import cli, lexicon, mlc
from stylelex.embeddings import load_table


def write_json(path, doc):
    path.write_text(json.dumps(doc, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    return str(path)


@pytest.fixture()
def expand_config(tmp_path, fixtures_dir):
    return write_json(tmp_path / "expand.json", {
        "out_dir": str(tmp_path / "out"),
        "expand": {
            "embeddings": str(fixtures_dir / "table_es.vec"),
            "seed_lexicon": str(fixtures_dir / "seed_es.json"),
            "scored_corpus": str(fixtures_dir / "scored_es.jsonl"),
        },
    })


@pytest.fixture()
def aggregate_config(tmp_path, fixtures_dir):
    agg_dir = fixtures_dir / "agg"
    return write_json(tmp_path / "aggregate.json", {
        "out_dir": str(tmp_path / "out"),
        "segmentation": {"zh": "substring", "ja": "substring"},
        "aggregate": {"languages": {
            lang: {
                "lexicon": str(agg_dir / f"lex_{lang}.json"),
                "attributions": str(agg_dir / f"records_{lang}.jsonl"),
                "acts": str(agg_dir / f"acts_{lang}.jsonl"),
            } for lang in ("en", "es", "zh", "ja")
        }},
    })


# ---------------------------------------------------------------- expand

def test_expand_writes_lexicon_and_report(expand_config, tmp_path, fixtures_dir):
    assert cli.main(["expand", "--config", expand_config]) == 0
    out = tmp_path / "out"
    lex = lexicon.load_lexicon((out / "lexicon_es.json").read_text(encoding="utf-8"))
    assert lex.category("Hedge").terms == (
        "quizás", "posible", "supone", "evidente", "aparente")
    rows = [json.loads(line) for line in
            (out / "purification_es.jsonl").read_text(encoding="utf-8").splitlines()]
    removed = [r for r in rows if r.get("removed")]
    assert [(r["word"], r["reason"]) for r in removed] == [("señala", "uncorrelated")]


def test_expand_identity_config_reproduces_seed(tmp_path, fixtures_dir):
    config = write_json(tmp_path / "cfg.json", {
        "out_dir": str(tmp_path / "out"),
        "expand": {
            "embeddings": str(fixtures_dir / "table_es.vec"),
            "seed_lexicon": str(fixtures_dir / "seed_es.json"),
            "scored_corpus": str(fixtures_dir / "scored_es.jsonl"),
        },
        "mlc": {"syn_min_sim": 1.0, "concept_min_sim": 1.0,
                "min_occurrences": 0, "corr_threshold": -1.0},
    })
    assert cli.main(["expand", "--config", config]) == 0
    produced = (tmp_path / "out" / "lexicon_es.json").read_text(encoding="utf-8")
    assert produced == (fixtures_dir / "seed_es.json").read_text(encoding="utf-8")


def test_expand_rejects_unknown_mlc_key(tmp_path, fixtures_dir):
    config = write_json(tmp_path / "cfg.json", {
        "out_dir": str(tmp_path / "out"),
        "expand": {
            "embeddings": str(fixtures_dir / "table_es.vec"),
            "seed_lexicon": str(fixtures_dir / "seed_es.json"),
            "scored_corpus": str(fixtures_dir / "scored_es.jsonl"),
        },
        "mlc": {"min_count": 3},
    })
    assert cli.main(["expand", "--config", config]) == cli.EXIT_MALFORMED_INPUT


# ---------------------------------------------------------------- coverage

def test_coverage_report(tmp_path, fixtures_dir):
    config = write_json(tmp_path / "cfg.json", {
        "out_dir": str(tmp_path / "out"),
        "coverage": {
            "corpus": str(fixtures_dir / "coverage_en.jsonl"),
            "lexicons": [str(fixtures_dir / "coverage_lex_en.json")],
        },
    })
    assert cli.main(["coverage", "--config", config]) == 0
    doc = json.loads((tmp_path / "out" / "coverage.json").read_text(encoding="utf-8"))
    assert len(doc["config_hash"]) == 64
    row, = doc["rows"]
    assert (row["covered"], row["total"], row["percent"]) == (7, 10, 70.0)
    assert row["language"] == "en"
    assert row["lexicon"] == "coverage_lex_en.json"


# ---------------------------------------------------------------- aggregate

def test_aggregate_matches_goldens(aggregate_config, tmp_path, fixtures_dir):
    assert cli.main(["aggregate", "--config", aggregate_config]) == 0
    out = tmp_path / "out"
    golden = fixtures_dir / "golden"
    assert (out / "categories.csv").read_text(encoding="utf-8") == \
        (golden / "categories.csv").read_text(encoding="utf-8")
    assert (out / "acts.csv").read_text(encoding="utf-8") == \
        (golden / "acts.csv").read_text(encoding="utf-8")
    doc = json.loads((out / "categories.json").read_text(encoding="utf-8"))
    assert doc["metadata"]["granularity"] == "utterance"
    assert doc["metadata"]["datasets"]["zh"] == "records_zh.jsonl"


def test_aggregate_lang_filter(aggregate_config, tmp_path):
    assert cli.main(["aggregate", "--config", aggregate_config,
                     "--lang", "en", "--lang", "es"]) == 0
    csv_text = (tmp_path / "out" / "categories.csv").read_text(encoding="utf-8")
    assert ",zh," not in csv_text and ",ja," not in csv_text
    assert "Gratitude,en,1.0,1,50.0" in csv_text


def test_aggregate_unknown_lang_is_contract_error(aggregate_config):
    assert cli.main(["aggregate", "--config", aggregate_config,
                     "--lang", "fr"]) == cli.EXIT_CONTRACT


def test_aggregate_threads_flag_gives_same_bytes(aggregate_config, tmp_path):
    assert cli.main(["aggregate", "--config", aggregate_config]) == 0
    first = (tmp_path / "out" / "categories.csv").read_bytes()
    assert cli.main(["aggregate", "--config", aggregate_config, "--threads", "4"]) == 0
    assert (tmp_path / "out" / "categories.csv").read_bytes() == first


def test_aggregate_sentence_granularity(aggregate_config, tmp_path):
    doc = json.loads((tmp_path / "aggregate.json").read_text(encoding="utf-8"))
    doc["granularity"] = "sentence"
    config = write_json(tmp_path / "sentence.json", doc)
    assert cli.main(["aggregate", "--config", config]) == 0
    out = json.loads((tmp_path / "out" / "categories.json").read_text(encoding="utf-8"))
    assert out["metadata"]["granularity"] == "sentence"


def test_aggregate_language_mismatch_is_contract_error(tmp_path, fixtures_dir):
    agg_dir = fixtures_dir / "agg"
    config = write_json(tmp_path / "cfg.json", {
        "out_dir": str(tmp_path / "out"),
        "aggregate": {"languages": {
            "en": {"lexicon": str(agg_dir / "lex_es.json"),
                   "attributions": str(agg_dir / "records_en.jsonl")},
            "es": {"lexicon": str(agg_dir / "lex_es.json"),
                   "attributions": str(agg_dir / "records_es.jsonl")},
        }},
    })
    assert cli.main(["aggregate", "--config", config]) == cli.EXIT_CONTRACT


# ---------------------------------------------------------------- plumbing

def test_out_flag_overrides_config(expand_config, tmp_path):
    override = tmp_path / "elsewhere"
    assert cli.main(["expand", "--config", expand_config, "--out", str(override)]) == 0
    assert (override / "lexicon_es.json").exists()
    assert not (tmp_path / "out").exists()


def test_missing_config_is_exit_2(tmp_path):
    assert cli.main(["expand", "--config", str(tmp_path / "none.json")]) == \
        cli.EXIT_MISSING_INPUT


def test_missing_input_path_is_exit_2(tmp_path, fixtures_dir):
    config = write_json(tmp_path / "cfg.json", {
        "expand": {
            "embeddings": str(tmp_path / "no.vec"),
            "seed_lexicon": str(fixtures_dir / "seed_es.json"),
            "scored_corpus": str(fixtures_dir / "scored_es.jsonl"),
        },
    })
    assert cli.main(["expand", "--config", config]) == cli.EXIT_MISSING_INPUT


def test_malformed_config_is_exit_3(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text("{not json", encoding="utf-8")
    assert cli.main(["expand", "--config", str(p)]) == cli.EXIT_MALFORMED_INPUT
    q = tmp_path / "list.json"
    q.write_text("[1]", encoding="utf-8")
    assert cli.main(["expand", "--config", str(q)]) == cli.EXIT_MALFORMED_INPUT


def test_malformed_embeddings_is_exit_3(tmp_path, fixtures_dir):
    bad = tmp_path / "bad.vec"
    bad.write_text("2 3\na 1 2\n", encoding="utf-8")
    config = write_json(tmp_path / "cfg.json", {
        "out_dir": str(tmp_path / "out"),
        "expand": {
            "embeddings": str(bad),
            "seed_lexicon": str(fixtures_dir / "seed_es.json"),
            "scored_corpus": str(fixtures_dir / "scored_es.jsonl"),
        },
    })
    assert cli.main(["expand", "--config", config]) == cli.EXIT_MALFORMED_INPUT


def test_empty_coverage_corpus_is_exit_4(tmp_path, fixtures_dir):
    empty = tmp_path / "empty.txt"
    empty.write_text("", encoding="utf-8")
    config = write_json(tmp_path / "cfg.json", {
        "out_dir": str(tmp_path / "out"),
        "coverage": {"corpus": str(empty),
                     "lexicons": [str(fixtures_dir / "coverage_lex_en.json")]},
    })
    assert cli.main(["coverage", "--config", config]) == cli.EXIT_CONTRACT


def test_reruns_are_byte_identical_and_leave_no_temp_files(
        aggregate_config, tmp_path):
    assert cli.main(["aggregate", "--config", aggregate_config]) == 0
    out = tmp_path / "out"
    before = {p.name: p.read_bytes() for p in out.iterdir()}
    assert cli.main(["aggregate", "--config", aggregate_config]) == 0
    after = {p.name: p.read_bytes() for p in out.iterdir()}
    assert before == after
    assert not [p for p in out.iterdir() if p.name.startswith(".")]


def test_failed_run_leaves_no_partial_outputs(tmp_path, fixtures_dir):
    # lexicon list contains one good and one missing file: nothing is written
    config = write_json(tmp_path / "cfg.json", {
        "out_dir": str(tmp_path / "out"),
        "coverage": {"corpus": str(fixtures_dir / "coverage_en.jsonl"),
                     "lexicons": [str(fixtures_dir / "coverage_lex_en.json"),
                                  str(tmp_path / "ghost.json")]},
    })
    assert cli.main(["coverage", "--config", config]) == cli.EXIT_MISSING_INPUT
    assert not (tmp_path / "out" / "coverage.json").exists()


def test_expand_output_agrees_with_library(expand_config, tmp_path, fixtures_dir):
    assert cli.main(["expand", "--config", expand_config]) == 0
    with open(fixtures_dir / "table_es.vec", encoding="utf-8") as f:
        table = load_table(f)
    seed = lexicon.load_lexicon((fixtures_dir / "seed_es.json").read_text(encoding="utf-8"))
    with open(fixtures_dir / "scored_es.jsonl", encoding="utf-8") as f:
        corpus = mlc.load_scored_corpus(f)
    expected, _ = mlc.run_mlc(seed, table, corpus, "whitespace")
    produced = (tmp_path / "out" / "lexicon_es.json").read_text(encoding="utf-8")
    assert produced == lexicon.save_lexicon(expected)
