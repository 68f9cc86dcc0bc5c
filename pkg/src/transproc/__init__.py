"""Translation-process classification for English-French phrase pairs.

Pipeline: annotation bundles (corpus) -> linguistic resources (resources)
-> eleven feature families (features) -> classifiers (classic, neural)
-> cross-validated experiments, grouping tasks and ablation (evaluation)
-> reports (reporting), all driven by one YAML config (config, cli).
"""

__version__ = "0.1.0"

from .corpus import (
    AnnotatedSentencePair, BundleError, PhrasePair, ProcessLabel, Token,
    all_phrase_pairs, class_census, load_bundle, map_label, normalize_corpus,
    serialize_bundle,
)
from .resources import ResourceError, ResourceSet, load_resources
from .features import FeatureConfig, FeatureVector, assemble, extract_matrix
from .evaluation import (
    ExperimentConfig, MetricsReport, TASKS, ablation_study, compute_metrics,
    run_experiment, task_dataset,
)
from .config import RunConfig, load_config

__all__ = [
    "AnnotatedSentencePair", "BundleError", "PhrasePair", "ProcessLabel",
    "Token", "all_phrase_pairs", "class_census", "load_bundle", "map_label",
    "normalize_corpus", "serialize_bundle", "ResourceError", "ResourceSet",
    "load_resources", "FeatureConfig", "FeatureVector", "assemble",
    "extract_matrix", "ExperimentConfig", "MetricsReport", "TASKS",
    "ablation_study", "compute_metrics", "run_experiment", "task_dataset",
    "RunConfig", "load_config", "__version__",
]
