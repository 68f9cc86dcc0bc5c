"""From-scratch neural models: tape autodiff, GRU encoder, two heads."""

from .autodiff import Tensor, backward
from .models import AlignmentCNN, MeanConcatMLP
from .training import TrainConfig, train_model, gradient_check

__all__ = [
    "Tensor", "backward", "AlignmentCNN", "MeanConcatMLP", "TrainConfig",
    "train_model", "gradient_check",
]
