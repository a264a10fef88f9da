"""Shared fixtures: tiny offline checkpoints and the sample corpus."""

import pytest
import torch
from transformers import AutoConfig, AutoTokenizer, BertForSequenceClassification

from tiny_model import FIXTURES, build_tiny_model


@pytest.fixture(scope="session")
def model_dir(tmp_path_factory) -> str:
    dest = tmp_path_factory.mktemp("tiny_model")
    build_tiny_model(dest)
    return str(dest)


@pytest.fixture(scope="session")
def classifier_dir(tmp_path_factory, model_dir) -> str:
    """Same tokenizer, but a two-label classification head (not a regressor)."""
    dest = tmp_path_factory.mktemp("tiny_classifier")
    config = AutoConfig.from_pretrained(model_dir)
    config.num_labels = 2
    torch.manual_seed(0)
    AutoTokenizer.from_pretrained(model_dir).save_pretrained(dest)
    BertForSequenceClassification(config).save_pretrained(dest)
    return str(dest)


@pytest.fixture(scope="session")
def sample_corpus() -> str:
    return str(FIXTURES / "sample_20.jsonl")
