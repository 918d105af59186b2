"""nswcat: non-standard-word detection and NSW-based text categorization."""

from .corpus import (
    Corpus,
    CorpusStats,
    LabeledDocument,
    corpus_stats,
    load_corpus,
    stats_from_counts,
    tokenize,
)
from .classifiers import Hyperparameters, TrainingSet, train
from .errors import NswcatError
from .features import (
    FeatureMatrix,
    FrequencyVector,
    StatFeatures,
    build_matrix,
    derived_features,
    frequency_vector,
    load_matrix,
    statistical_vector,
    union_vector,
)
from .harness import (
    EvaluationReport,
    ExperimentConfig,
    FoldAssignment,
    accuracy,
    cross_validate,
    kfold_split,
    run_experiment,
)
from .lexer import (
    Lexicon,
    NSWOccurrence,
    RuleSet,
    classify_token,
    extract_nsws,
    load_lexicon,
    load_rules,
)
from .model_io import deserialize_model, load_model, save_model, serialize_model
from .taxonomy import NSWType, Taxonomy, load_taxonomy

__version__ = "0.1.0"
