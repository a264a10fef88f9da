"""Score corpora with a transformer style regressor and export per-token
additive attributions in the aggregation toolkit's file formats."""

from .errors import SchemaError
from .export import ExportJob, export_attributions, read_corpus, score_corpus
from .model import SCORE_MAX, SCORE_MIN, EncodedUtterance, StyleScorer
from .shapley import permutation_values

__version__ = "0.1.0"

__all__ = [
    "ExportJob",
    "EncodedUtterance",
    "SCORE_MAX",
    "SCORE_MIN",
    "SchemaError",
    "StyleScorer",
    "export_attributions",
    "permutation_values",
    "read_corpus",
    "score_corpus",
    "__version__",
]
