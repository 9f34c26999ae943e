"""Shared contract for elementary binary collision classifiers.

Labels are uint8: 0 = FREE, 1 = COLLISION. Ambiguity is always resolved
toward COLLISION: a false in-collision call only costs a sample, while a
false free call costs an exact check and a repair downstream.
"""

from abc import ABC, abstractmethod

import numpy as np

FREE = 0
COLLISION = 1


class ElementaryClassifier(ABC):
    """Binary predictor of membership in one level's free subspace."""

    kind: str

    @abstractmethod
    def fit(self, X: np.ndarray, y: np.ndarray):
        """Train on points (m, d) with labels (m,) in {FREE, COLLISION}."""

    @abstractmethod
    def predict(self, x: np.ndarray) -> int:
        """Label for a single point (d,)."""

    @abstractmethod
    def predict_batch(self, X: np.ndarray) -> np.ndarray:
        """Labels for points (m, d), returned as uint8 (m,)."""

    @abstractmethod
    def update(self, x: np.ndarray, y: int):
        """Online-insert one labeled point; refines, never invalidates."""
