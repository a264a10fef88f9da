"""Lexicon expansion and purification against the Spanish fixture corpus."""

import json
import logging

import numpy as np
import pytest
from scipy import stats

from stylelex import embeddings as emb
from stylelex import mlc
from stylelex.errors import SchemaError
from stylelex.lexicon import Category, Lexicon, match

U = mlc.ScoredUtterance


def make_lex(cats: dict, language="en") -> Lexicon:
    return Lexicon(language, tuple(Category(n, tuple(t)) for n, t in cats.items()))


# ---------------------------------------------------------------- config

def test_config_defaults():
    cfg = mlc.MlcConfig()
    assert (cfg.syn_min_sim, cfg.concept_min_sim) == (0.60, 0.50)
    assert (cfg.syn_k, cfg.concept_k) == (10, 25)
    assert (cfg.min_occurrences, cfg.corr_threshold) == (3, 0.15)


@pytest.mark.parametrize("kwargs", [
    {"syn_min_sim": 0.0}, {"syn_min_sim": 1.2}, {"concept_min_sim": -0.5},
    {"syn_k": 0}, {"concept_k": -1}, {"min_occurrences": -1},
    {"corr_threshold": float("nan")},
])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        mlc.MlcConfig(**kwargs)


def test_config_from_dict():
    cfg = mlc.MlcConfig.from_dict({"syn_k": 5, "corr_threshold": 0.2})
    assert (cfg.syn_k, cfg.corr_threshold) == (5, 0.2)
    with pytest.raises(SchemaError, match="unknown"):
        mlc.MlcConfig.from_dict({"syn_kk": 5})
    with pytest.raises(SchemaError, match="bad MLC config"):
        mlc.MlcConfig.from_dict({"syn_k": 0})


# ---------------------------------------------------------------- scored corpus

def test_scored_utterance_range():
    with pytest.raises(ValueError, match="-2, 2"):
        U("u", "text", 2.5)
    with pytest.raises(ValueError, match="-2, 2"):
        U("u", "text", float("nan"))


def test_load_scored_corpus():
    lines = ['{"id": "a", "text": "hola", "score": 1.5}', "",
             '{"id": "b", "text": "adios", "score": -2}']
    corpus = mlc.load_scored_corpus(lines)
    assert [(u.id, u.score) for u in corpus] == [("a", 1.5), ("b", -2.0)]
    with pytest.raises(SchemaError, match="line 1"):
        mlc.load_scored_corpus(["{bad"])
    with pytest.raises(SchemaError, match="line 1"):
        mlc.load_scored_corpus(['{"id": "a", "text": "x", "score": true}'])
    with pytest.raises(SchemaError, match="line 2"):
        mlc.load_scored_corpus(['{"id": "a", "text": "x", "score": 0}',
                                '{"id": "b", "text": "x", "score": 9}'])


def test_fixture_corpus_loads(es_corpus):
    assert len(es_corpus) == 23
    assert all(-2.0 <= u.score <= 2.0 for u in es_corpus)


# ---------------------------------------------------------------- expansion

def test_expand_synonyms_appends_neighbors_in_rank_order(es_seed, es_table):
    out = mlc.expand_synonyms(es_seed, es_table, mlc.MlcConfig())
    assert out.category("Apologetic").terms == ("disculpa", "lo siento", "perdón", "perdona")
    # hedge seeds have no neighbor at syn_min_sim, so the category is untouched
    assert out.category("Hedge").terms == es_seed.category("Hedge").terms
    assert out.language == "es"


def test_expand_synonyms_skips_multi_word_and_oov_seeds(es_table, caplog):
    lex = make_lex({"A": ["lo siento"], "B": ["fantasma"]}, language="es")
    with caplog.at_level(logging.WARNING):
        out = mlc.expand_synonyms(lex, es_table, mlc.MlcConfig())
    # multi-word seeds are kept but not used as queries; OOV seeds warn
    assert out.category("A").terms == ("lo siento",)
    assert out.category("B").terms == ("fantasma",)
    assert any("fantasma" in r.message for r in caplog.records)


def test_expand_concept_appends_centroid_neighbors(es_seed, es_table):
    expanded = mlc.expand_synonyms(es_seed, es_table, mlc.MlcConfig())
    out = mlc.expand_concept(expanded, es_table, mlc.MlcConfig())
    assert out.category("Hedge").terms == (
        "quizás", "posible", "supone", "evidente", "aparente", "señala")
    # apology neighbors were already added by synonym expansion
    assert out.category("Apologetic").terms == expanded.category("Apologetic").terms


def test_expand_concept_leaves_category_without_vectors(es_table, caplog):
    lex = make_lex({"A": ["lo siento", "fantasma"]}, language="es")
    with caplog.at_level(logging.WARNING):
        out = mlc.expand_concept(lex, es_table, mlc.MlcConfig())
    assert out.category("A").terms == ("lo siento", "fantasma")
    assert any("no in-table terms" in r.message for r in caplog.records)


def test_expansion_threshold_sensitivity(es_seed, es_table):
    # dropping concept_min_sim below the señala similarity admits nothing new;
    # raising it above evidente's shuts concept expansion off entirely
    tight = mlc.MlcConfig(concept_min_sim=0.59)
    out = mlc.expand_concept(es_seed, es_table, tight)
    assert out.category("Hedge").terms == es_seed.category("Hedge").terms


# ---------------------------------------------------------------- rare filter

def test_filter_rare_removes_below_floor():
    lex = make_lex({"A": ["common", "scarce"]})
    corpus = [U("u1", "common words are common", 0.0),
              U("u2", "common and scarce", 0.5),
              U("u3", "common again", 1.0)]
    out, report = mlc.filter_rare(lex, corpus, "whitespace", mlc.MlcConfig(min_occurrences=2))
    assert out.category("A").terms == ("common",)
    entry, = report.entries
    assert (entry.word, entry.reason, entry.occurrences, entry.removed) == (
        "scarce", "rare", 1, True)
    assert entry.r is None


def test_filter_rare_zero_floor_removes_nothing(es_seed, es_corpus):
    out, report = mlc.filter_rare(es_seed, es_corpus, "whitespace",
                                  mlc.MlcConfig(min_occurrences=0))
    assert out == es_seed
    assert report.entries == []


def test_filter_rare_requires_corpus():
    with pytest.raises(ValueError, match="non-empty"):
        mlc.filter_rare(make_lex({"A": ["x"]}), [], "whitespace", mlc.MlcConfig())


# ---------------------------------------------------------------- correlation filter

def test_filter_uncorrelated_against_scipy():
    lex = make_lex({"A": ["good", "bad"]})
    corpus = [U("u1", "good stuff", 1.5), U("u2", "good work", 1.0),
              U("u3", "good and bad", 0.5), U("u4", "bad day", -1.0),
              U("u5", "bad luck", -1.5), U("u6", "good morning", 0.8)]
    out, report = mlc.filter_uncorrelated(lex, corpus, "whitespace", mlc.MlcConfig())
    scores = [u.score for u in corpus]
    r_good = stats.pearsonr([1, 1, 1, 0, 0, 1], scores).statistic
    r_bad = stats.pearsonr([0, 0, 1, 1, 1, 0], scores).statistic
    assert r_good > 0.15 > r_bad
    assert out.category("A").terms == ("good",)
    entry, = report.entries
    assert entry.word == "bad"
    assert entry.r == pytest.approx(r_bad, rel=1e-12)
    assert entry.occurrences == 3


def test_filter_uncorrelated_keeps_and_flags_undefined_r():
    # "always" appears in every covering utterance: zero-variance indicator
    lex = make_lex({"A": ["always", "often"]})
    corpus = [U("u1", "always and often", 1.0), U("u2", "always alone", -1.0),
              U("u3", "always often", 0.0), U("u4", "nothing", 0.5)]
    out, report = mlc.filter_uncorrelated(lex, corpus, "whitespace", mlc.MlcConfig())
    assert "always" in out.category("A").terms
    flagged = [e for e in report.entries if e.reason == "undefined_r"]
    assert [(e.word, e.removed) for e in flagged] == [("always", False)]


def test_filter_uncorrelated_skips_uncovered_category():
    lex = make_lex({"A": ["present"], "B": ["ghost"]})
    corpus = [U("u1", "present here", 1.0), U("u2", "present too", -1.0)]
    out, report = mlc.filter_uncorrelated(lex, corpus, "whitespace", mlc.MlcConfig())
    assert report.skipped_categories == ["B"]
    assert out.category("B").terms == ("ghost",)  # skipped, not emptied


def test_filter_uncorrelated_single_pass_no_cascade():
    # removal decisions all come from the pre-filter lexicon: dropping one
    # term does not shrink another term's covering sub-corpus mid-pass
    lex = make_lex({"A": ["hi", "bye"]})
    corpus = [U("u1", "hi", 1.0), U("u2", "bye", -1.5), U("u3", "hi bye", 0.5),
              U("u4", "hi again", 0.8)]
    _, report = mlc.filter_uncorrelated(lex, corpus, "whitespace",
                                        mlc.MlcConfig(corr_threshold=0.99))
    scores = [1.0, -1.5, 0.5, 0.8]
    r_hi = stats.pearsonr([1, 0, 1, 1], scores).statistic
    r_bye = stats.pearsonr([0, 1, 1, 0], scores).statistic
    by_word = {e.word: e.r for e in report.entries}
    assert by_word["hi"] == pytest.approx(r_hi, rel=1e-12)
    assert by_word["bye"] == pytest.approx(r_bye, rel=1e-12)


def test_pearson_matches_scipy_and_stays_in_range():
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.integers(2, 30))
        x = rng.integers(0, 2, size=n).astype(float)
        y = rng.normal(size=n)
        if x.std() == 0.0:
            assert mlc._pearson(list(x), list(y)) is None
            continue
        r = mlc._pearson(list(x), list(y))
        assert -1.0 <= r <= 1.0
        assert r == pytest.approx(stats.pearsonr(x, y).statistic, rel=1e-9, abs=1e-12)
    # perfectly correlated pairs sit exactly on the boundary
    assert mlc._pearson([0.0, 1.0], [-3.0, 9.5]) == 1.0
    assert mlc._pearson([0.0, 1.0], [4.0, -1.0]) == -1.0
    assert mlc._pearson([1.0], [0.5]) is None


# ---------------------------------------------------------------- full pipeline

def test_run_mlc_spanish_fixture(es_seed, es_table, es_corpus):
    final, report = mlc.run_mlc(es_seed, es_table, es_corpus, "whitespace")
    assert final.category("Apologetic").terms == (
        "disculpa", "lo siento", "perdón", "perdona")
    assert final.category("Hedge").terms == (
        "quizás", "posible", "supone", "evidente", "aparente")
    removed = report.removed()
    assert [(e.word, e.category, e.reason) for e in removed] == [
        ("señala", "Hedge", "uncorrelated")]
    assert removed[0].occurrences == 6
    assert removed[0].r == pytest.approx(-0.0871, abs=5e-4)
    assert report.removed_words("Hedge") == {"señala"}
    assert report.skipped_categories == []


def test_run_mlc_report_round_trips_as_jsonl(es_seed, es_table, es_corpus):
    _, report = mlc.run_mlc(es_seed, es_table, es_corpus, "whitespace")
    lines = report.to_jsonl().splitlines()
    rows = [json.loads(line) for line in lines]
    assert {"word": "señala", "category": "Hedge", "reason": "uncorrelated",
            "occurrences": 6, "r": report.entries[-1].r, "removed": True} in rows


def test_report_merge_sorts_and_deduplicates_skips():
    a = mlc.PurificationReport(
        entries=[mlc.PurificationEntry("z", "B", "rare", 0, None, True)],
        skipped_categories=["C"])
    b = mlc.PurificationReport(
        entries=[mlc.PurificationEntry("a", "A", "uncorrelated", 4, -0.2, True)],
        skipped_categories=["C", "D"])
    merged = a.merged_with(b)
    assert [(e.category, e.word) for e in merged.entries] == [("A", "a"), ("B", "z")]
    assert merged.skipped_categories == ["C", "D"]


def test_report_jsonl_skip_lines():
    rep = mlc.PurificationReport(skipped_categories=["Empty"])
    assert json.loads(rep.to_jsonl()) == {
        "category": "Empty", "reason": "no_covered_utterances"}


def test_match_counts_respect_category_greedy(es_table):
    # "lo siento" must not double-count as neither "lo" nor "siento" exist
    lex = make_lex({"A": ["lo siento", "siento"]}, language="es")
    corpus = [U("u1", "lo siento mucho", 0.0)]
    counts = mlc._match_counts(lex, corpus, "whitespace")
    assert counts == {("A", "lo siento"): 1}
