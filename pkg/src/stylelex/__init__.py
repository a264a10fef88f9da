"""Comparable style lexica across languages, and importance aggregation.

Two capabilities, usable separately:

* build a style lexicon in a target language by expanding a translated
  seed lexicon through word embeddings and purifying it against a scored
  corpus (:mod:`stylelex.mlc`, backed by :mod:`stylelex.embeddings` and
  :mod:`stylelex.lexicon`);
* consolidate per-token additive attribution values from style models
  into category-level and dialogue-act-level importance scores for
  cross-language comparison (:mod:`stylelex.attribution`,
  :mod:`stylelex.aggregation`).
"""

from .aggregation import (
    CategoryImportance,
    ComparisonReport,
    act_importance,
    category_importance,
    compare,
)
from .attribution import (
    AttributionRecord,
    SpanImportance,
    TokenAttribution,
    load_acts,
    load_records,
    save_records,
    sentence_importances,
    span_importance,
    word_importances,
)
from .embeddings import EmbeddingTable, Neighbor, centroid, cosine, knn, load_table, save_table
from .errors import ContractError, SchemaError
from .lexicon import (
    Category,
    CoverageStat,
    Lexicon,
    TermMatch,
    coverage,
    load_lexicon,
    match,
    save_lexicon,
)
from .mlc import (
    MlcConfig,
    PurificationEntry,
    PurificationReport,
    ScoredUtterance,
    expand_concept,
    expand_synonyms,
    filter_rare,
    filter_uncorrelated,
    load_scored_corpus,
    run_mlc,
)

__version__ = "0.1.0"
