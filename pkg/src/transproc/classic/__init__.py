"""Feature-based classifiers: tree, forest, feature MLP, baselines, voting."""

from .tree import DecisionTree
from .forest import RandomForest
from .mlp import FeatureMLP
from .baselines import StratifiedDummy, VotingEnsemble

__all__ = [
    "DecisionTree", "RandomForest", "FeatureMLP", "StratifiedDummy",
    "VotingEnsemble",
]
