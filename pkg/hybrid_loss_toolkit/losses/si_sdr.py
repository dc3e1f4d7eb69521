"""Negative scale-invariant signal-to-distortion ratio loss."""

import math

import numpy as np

from ..errors import SilentSignalError
from ..models.results import LossResult
from ..models.waveform import Waveform
from .base import LossFunction, check_pair

DB_PER_NEPER = 10.0 / math.log(10.0)


def si_sdr_loss(
    estimate: Waveform,
    reference: Waveform,
    zero_mean: bool = False,
    norm_floor: float = 1e-8,
) -> LossResult:
    """Negative SI-SDR in dB and its gradient.

    The estimate is projected onto the reference, ``alpha = <s_hat, s> / |s|^2``,
    and the loss is ``-10*log10(|alpha*s|^2 / |s_hat - alpha*s|^2)``. Both
    energies are floored at ``norm_floor``, so a perfect estimate gives the
    capped value ``-10*log10(|s|^2 / norm_floor)`` instead of infinity.

    Args:
        estimate: Estimated waveform
        reference: Reference waveform
        zero_mean: Subtract each signal's mean before projecting
        norm_floor: Energy floor

    Returns:
        LossResult with the gradient with respect to ``estimate``

    Raises:
        LengthMismatchError: If the lengths differ
        SilentSignalError: If the reference energy is at or below ``norm_floor``
    """
    check_pair(estimate, reference)
    s_hat = estimate.samples
    s = reference.samples
    if zero_mean:
        s_hat = s_hat - s_hat.mean()
        s = s - s.mean()

    reference_energy = float(np.dot(s, s))
    if reference_energy <= norm_floor:
        raise SilentSignalError(
            f"Reference energy {reference_energy:.3e} is at or below the floor {norm_floor:.0e}"
        )

    alpha = float(np.dot(s_hat, s)) / reference_energy
    target = alpha * s
    error = s_hat - target
    target_energy = float(np.dot(target, target))
    error_energy = float(np.dot(error, error))

    value = -10.0 * math.log10(max(target_energy, norm_floor) / max(error_energy, norm_floor))

    gradient = np.zeros_like(s_hat)
    if target_energy > norm_floor:
        gradient -= DB_PER_NEPER * 2.0 * target / target_energy
    if error_energy > norm_floor:
        gradient += DB_PER_NEPER * 2.0 * error / error_energy
    if zero_mean:
        gradient -= gradient.mean()

    return LossResult(value=value, gradient=gradient)


class SiSdrLoss(LossFunction):
    """SI-SDR loss as a strategy object."""

    name = "si_sdr_only"

    def __init__(self, zero_mean: bool = False, norm_floor: float = 1e-8) -> None:
        self.zero_mean = zero_mean
        self.norm_floor = norm_floor

    def compute(self, estimate: Waveform, reference: Waveform) -> LossResult:
        return si_sdr_loss(estimate, reference, self.zero_mean, self.norm_floor)
