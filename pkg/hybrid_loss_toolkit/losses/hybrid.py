"""Hybrid continuity loss: SI-SDR plus the multi-resolution delta spectrum loss."""

from typing import List

import numpy as np

from ..models.demo import LossKind
from ..models.loss_config import HybridConfig
from ..models.results import LossResult
from ..models.waveform import Waveform
from .base import LossFunction, check_pair
from .si_sdr import SiSdrLoss, si_sdr_loss
from .spectral import delta_spectrum_loss


def frequency_terms(
    estimate: Waveform, reference: Waveform, config: HybridConfig
) -> List[LossResult]:
    """Delta spectrum loss at every resolution of ``config``, in order."""
    return [
        delta_spectrum_loss(
            estimate,
            reference,
            resolution,
            config.delta,
            log_floor=config.log_floor,
            norm_floor=config.norm_floor,
            use_sc=config.use_sc,
            use_mag=config.use_mag,
            use_delta=config.use_delta,
        )
        for resolution in config.resolutions
    ]


def hybrid_loss(
    estimate: Waveform,
    reference: Waveform,
    config: HybridConfig = HybridConfig(),
    zero_mean: bool = False,
) -> LossResult:
    """SI-SDR loss plus gamma times the mean delta spectrum loss over resolutions.

    With ``gamma == 0`` the SI-SDR result is returned unchanged.

    Raises:
        LengthMismatchError: If the lengths differ
        SignalTooShortError: If the signals are shorter than the longest window
        SilentSignalError: If the reference is silent
    """
    check_pair(estimate, reference, min_length=config.resolutions.max_win_length)
    time_term = si_sdr_loss(estimate, reference, zero_mean=zero_mean, norm_floor=config.norm_floor)
    if config.gamma == 0:
        return time_term

    terms = frequency_terms(estimate, reference, config)
    count = config.resolution_count
    value = time_term.value + config.gamma * (sum(t.value for t in terms) / count)
    mean_gradient = np.sum([t.gradient for t in terms], axis=0) / count
    gradient = time_term.gradient + config.gamma * mean_gradient
    return LossResult(value=value, gradient=gradient)


class HybridLoss(LossFunction):
    """Hybrid continuity loss as a strategy object."""

    name = "hybrid"

    def __init__(self, config: HybridConfig = HybridConfig(), zero_mean: bool = False) -> None:
        self.config = config
        self.zero_mean = zero_mean

    def compute(self, estimate: Waveform, reference: Waveform) -> LossResult:
        return hybrid_loss(estimate, reference, self.config, self.zero_mean)


def build_loss(kind: LossKind, config: HybridConfig = HybridConfig()) -> LossFunction:
    """Loss strategy for an optimization arm; both arms share the SI-SDR floor."""
    if kind == LossKind.HYBRID:
        return HybridLoss(config)
    return SiSdrLoss(norm_floor=config.norm_floor)
