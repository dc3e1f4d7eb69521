"""Base loss strategy."""

from abc import ABC, abstractmethod

from ..errors import LengthMismatchError, SignalTooShortError
from ..models.results import LossResult
from ..models.waveform import Waveform


def check_pair(estimate: Waveform, reference: Waveform, min_length: int = 1) -> None:
    """Validate an (estimate, reference) pair.

    Args:
        estimate: Estimated waveform
        reference: Reference waveform
        min_length: Minimum number of samples each must hold

    Raises:
        LengthMismatchError: If the lengths differ
        SignalTooShortError: If the signals are shorter than ``min_length``
    """
    if len(estimate) != len(reference):
        raise LengthMismatchError(
            f"Estimate ({len(estimate)} samples) and reference ({len(reference)} samples) "
            "must have equal lengths"
        )
    if len(reference) < min_length:
        raise SignalTooShortError(
            f"Signals of {len(reference)} samples are shorter than the required {min_length}"
        )


class LossFunction(ABC):
    """Abstract base class for differentiable waveform losses."""

    name: str = "loss"

    @abstractmethod
    def compute(self, estimate: Waveform, reference: Waveform) -> LossResult:
        """Evaluate the loss and its gradient with respect to ``estimate``.

        Args:
            estimate: Estimated waveform
            reference: Reference waveform

        Returns:
            LossResult whose gradient is shaped like ``estimate.samples``
        """
        pass

    def __call__(self, estimate: Waveform, reference: Waveform) -> LossResult:
        return self.compute(estimate, reference)
