"""Spectrogram models."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .stft_config import StftConfig


@dataclass(frozen=True)
class ComplexSpectrogram:
    """One-sided complex STFT of a signal (frames x bins)."""

    data: np.ndarray
    config: StftConfig
    source_length: int
    sample_rate: int = 16000

    def __post_init__(self) -> None:
        """Validate shape against the config."""
        data = np.asarray(self.data, dtype=np.complex128)
        if data.ndim != 2 or data.shape[1] != self.config.n_bins:
            raise ValueError(
                f"ComplexSpectrogram data must be (frames, {self.config.n_bins}), "
                f"got {data.shape}"
            )
        if self.source_length < self.config.covered_length(data.shape[0]):
            raise ValueError(
                f"source_length {self.source_length} too short for {data.shape[0]} frames "
                f"at {self.config}"
            )
        object.__setattr__(self, "data", data)

    @property
    def shape(self) -> Tuple[int, int]:
        return (int(self.data.shape[0]), int(self.data.shape[1]))

    @property
    def n_frames(self) -> int:
        return int(self.data.shape[0])


@dataclass(frozen=True)
class MagnitudeSpectrogram:
    """Nonnegative magnitude spectrogram (frames x bins)."""

    data: np.ndarray
    config: StftConfig

    def __post_init__(self) -> None:
        """Validate that every entry is a finite nonnegative real."""
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 2:
            raise ValueError(f"MagnitudeSpectrogram data must be 2-D, got {data.shape}")
        if np.any(data < 0) or not np.all(np.isfinite(data)):
            raise ValueError("MagnitudeSpectrogram entries must be finite and >= 0")
        object.__setattr__(self, "data", data)

    @property
    def shape(self) -> Tuple[int, int]:
        return (int(self.data.shape[0]), int(self.data.shape[1]))
