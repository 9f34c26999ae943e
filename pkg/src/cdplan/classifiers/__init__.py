"""Elementary collision classifiers and the DOF-decomposed composite."""

from .base import COLLISION, FREE, ElementaryClassifier
from .composite import (
    CompositeClassifier,
    LevelSpec,
    coalesce_effective_dofs,
    load_composite,
)
from .knn import KnnClassifier
from .svm import SvmClassifier, SvmConvergenceError

__all__ = [
    "COLLISION",
    "FREE",
    "ElementaryClassifier",
    "KnnClassifier",
    "SvmClassifier",
    "SvmConvergenceError",
    "CompositeClassifier",
    "LevelSpec",
    "coalesce_effective_dofs",
    "load_composite",
]
