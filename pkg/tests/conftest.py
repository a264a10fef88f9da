"""Shared fixtures: checked-in file paths and small loaded datasets."""

from pathlib import Path

import pytest

from stylelex import embeddings, lexicon, mlc

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def es_table() -> embeddings.EmbeddingTable:
    with open(FIXTURES / "table_es.vec", encoding="utf-8") as f:
        return embeddings.load_table(f)


@pytest.fixture(scope="session")
def es_seed() -> lexicon.Lexicon:
    with open(FIXTURES / "seed_es.json", encoding="utf-8") as f:
        return lexicon.load_lexicon(f)


@pytest.fixture(scope="session")
def es_corpus() -> list[mlc.ScoredUtterance]:
    with open(FIXTURES / "scored_es.jsonl", encoding="utf-8") as f:
        return mlc.load_scored_corpus(f)
