"""Signal-level evaluation metrics."""

import math

import numpy as np

from ..errors import SilentSignalError
from ..losses.base import check_pair
from ..losses.si_sdr import si_sdr_loss
from ..models.results import SuppressionReport
from ..models.stft_config import StftConfig
from ..models.waveform import Waveform
from ..signal.transforms import magnitude_stft

SUPPRESSION_CONFIG = StftConfig(1024, 120, 600)


def si_sdr_metric(estimate: Waveform, reference: Waveform, norm_floor: float = 1e-8) -> float:
    """SI-SDR in dB (negated SI-SDR loss, floor-capped)."""
    return -si_sdr_loss(estimate, reference, zero_mean=False, norm_floor=norm_floor).value


def sdr_metric(estimate: Waveform, reference: Waveform, norm_floor: float = 1e-8) -> float:
    """Plain signal-to-distortion ratio ``10*log10(|s|^2 / |s_hat - s|^2)`` in dB.

    Unlike SI-SDR this is sensitive to the estimate's gain.

    Raises:
        LengthMismatchError: If the lengths differ
        SilentSignalError: If the reference is silent
    """
    check_pair(estimate, reference)
    if reference.energy <= norm_floor:
        raise SilentSignalError(
            f"Reference energy {reference.energy:.3e} is at or below the floor {norm_floor:.0e}"
        )

    error = estimate.samples - reference.samples
    return 10.0 * math.log10(
        reference.energy / max(float(np.dot(error, error)), norm_floor)
    )


def suppression_mae(
    estimate: Waveform, reference: Waveform, config: StftConfig = SUPPRESSION_CONFIG
) -> SuppressionReport:
    """Over- and under-suppression mean absolute error of magnitude spectrograms.

    ``mae_over`` averages ``ReLU(|S| - |S_hat|)`` and ``mae_under`` averages
    ``ReLU(|S_hat| - |S|)`` over all time-frequency bins.

    Raises:
        LengthMismatchError: If the lengths differ
        SignalTooShortError: If the signals are shorter than one window
    """
    check_pair(estimate, reference, min_length=config.win_length)
    est_mag = magnitude_stft(estimate, config).data
    ref_mag = magnitude_stft(reference, config).data

    mae_over = float(np.mean(np.maximum(ref_mag - est_mag, 0.0)))
    mae_under = float(np.mean(np.maximum(est_mag - ref_mag, 0.0)))
    return SuppressionReport(mae_over=mae_over, mae_under=mae_under, config=config)
