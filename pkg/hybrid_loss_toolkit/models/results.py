"""Loss, metric and scoring result models."""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Sequence

import numpy as np

from ..errors import NonFiniteLossError
from .stft_config import StftConfig


@dataclass(frozen=True)
class LossResult:
    """A scalar loss paired with its gradient.

    The gradient has the shape of the differentiated input: the estimated
    waveform for waveform losses, the estimated magnitude spectrogram for the
    spectral sub-losses.
    """

    value: float
    gradient: np.ndarray

    def __post_init__(self) -> None:
        """Validate that value and gradient are finite."""
        gradient = np.asarray(self.gradient, dtype=np.float64)
        if not np.isfinite(self.value):
            raise NonFiniteLossError(f"LossResult value must be finite, got {self.value}")
        if not np.all(np.isfinite(gradient)):
            raise NonFiniteLossError("LossResult gradient must be finite")
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "gradient", gradient)


@dataclass(frozen=True)
class SuppressionReport:
    """Over-/under-suppression MAE of an estimate against its reference."""

    mae_over: float
    mae_under: float
    config: StftConfig

    def __post_init__(self) -> None:
        """Validate that both components are nonnegative."""
        if self.mae_over < 0 or self.mae_under < 0:
            raise ValueError(
                f"MAE components must be >= 0 (over={self.mae_over}, under={self.mae_under})"
            )

    @property
    def total(self) -> float:
        """Total per-bin L1 MAE (over + under)."""
        return self.mae_over + self.mae_under

    def to_dict(self) -> Dict[str, Any]:
        return {"mae_over": self.mae_over, "mae_under": self.mae_under}


class TranscriptUnit(Enum):
    """Tokenization unit of an error rate."""

    WORD = "word"
    CHARACTER = "character"


@dataclass(frozen=True)
class TranscriptPair:
    """Reference and hypothesis token sequences scored at one unit."""

    reference: Sequence[str]
    hypothesis: Sequence[str]
    unit: TranscriptUnit = TranscriptUnit.WORD

    def __post_init__(self) -> None:
        """Validate word tokens."""
        object.__setattr__(self, "reference", tuple(self.reference))
        object.__setattr__(self, "hypothesis", tuple(self.hypothesis))
        if self.unit == TranscriptUnit.WORD:
            for token in (*self.reference, *self.hypothesis):
                if not token:
                    raise ValueError("Word tokens must be non-empty strings")

    @classmethod
    def from_text(
        cls, reference: str, hypothesis: str, unit: TranscriptUnit = TranscriptUnit.WORD
    ) -> "TranscriptPair":
        """Tokenize two transcripts.

        Words are split on whitespace; characters are taken as-is, so spaces
        count as characters for CER.
        """
        if unit == TranscriptUnit.WORD:
            return cls(reference.split(), hypothesis.split(), unit)
        return cls(list(reference), list(hypothesis), unit)


@dataclass(frozen=True)
class EditDistanceResult:
    """Levenshtein alignment counts and the normalized error rate."""

    substitutions: int
    insertions: int
    deletions: int
    reference_length: int

    @property
    def errors(self) -> int:
        return self.substitutions + self.insertions + self.deletions

    @property
    def rate(self) -> float:
        return self.errors / self.reference_length

    def to_dict(self) -> Dict[str, Any]:
        return {
            "errors": self.errors,
            "substitutions": self.substitutions,
            "insertions": self.insertions,
            "deletions": self.deletions,
            "rate": self.rate,
        }


@dataclass
class GradientCheck:
    """Outcome of one finite-difference gradient check."""

    name: str
    max_relative_error: float
    tolerance: float
    coordinates: List[int]

    @property
    def passed(self) -> bool:
        return self.max_relative_error <= self.tolerance


@dataclass(frozen=True)
class RowFailure:
    """A manifest line that could not be scored or mixed."""

    line: int
    message: str
