"""Data models for the hybrid continuity loss toolkit."""

from .demo import AbReport, ArmReport, LossKind, MaskParams
from .loss_config import DEFAULT_RESOLUTIONS, DeltaConfig, HybridConfig
from .mix import MixResult, MixSpec
from .results import (
    EditDistanceResult,
    GradientCheck,
    LossResult,
    RowFailure,
    SuppressionReport,
    TranscriptPair,
    TranscriptUnit,
)
from .spectrogram import ComplexSpectrogram, MagnitudeSpectrogram
from .stft_config import ResolutionBank, StftConfig, WindowKind
from .waveform import WavEncoding, Waveform

__all__ = [
    "AbReport",
    "ArmReport",
    "ComplexSpectrogram",
    "DEFAULT_RESOLUTIONS",
    "DeltaConfig",
    "EditDistanceResult",
    "GradientCheck",
    "HybridConfig",
    "LossKind",
    "LossResult",
    "MagnitudeSpectrogram",
    "MaskParams",
    "MixResult",
    "MixSpec",
    "ResolutionBank",
    "RowFailure",
    "StftConfig",
    "SuppressionReport",
    "TranscriptPair",
    "TranscriptUnit",
    "WavEncoding",
    "Waveform",
    "WindowKind",
]
