"""Differentiable waveform losses."""

from .base import LossFunction, check_pair
from .hybrid import HybridLoss, build_loss, frequency_terms, hybrid_loss
from .si_sdr import SiSdrLoss, si_sdr_loss
from .spectral import (
    DeltaSpectrumLoss,
    delta_spectrum_loss,
    log_magnitude_delta,
    spectral_convergence_delta,
)

__all__ = [
    "DeltaSpectrumLoss",
    "HybridLoss",
    "LossFunction",
    "SiSdrLoss",
    "build_loss",
    "check_pair",
    "delta_spectrum_loss",
    "frequency_terms",
    "hybrid_loss",
    "log_magnitude_delta",
    "si_sdr_loss",
    "spectral_convergence_delta",
]
