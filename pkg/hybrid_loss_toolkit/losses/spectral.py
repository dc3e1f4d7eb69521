"""Delta spectrum loss: spectral convergence and log-magnitude terms with delta features."""

from functools import partial
from typing import Callable, List, Tuple, Union

import numpy as np

from ..errors import ShapeMismatchError
from ..models.loss_config import DeltaConfig
from ..models.results import LossResult
from ..models.spectrogram import MagnitudeSpectrogram
from ..models.stft_config import StftConfig
from ..models.waveform import Waveform
from ..signal.delta_features import (
    acceleration,
    acceleration_adjoint,
    delta,
    delta_adjoint,
)
from ..signal.transforms import magnitude_stft, magnitude_stft_vjp
from .base import LossFunction, check_pair

MatrixLike = Union[MagnitudeSpectrogram, np.ndarray]
LinearMap = Callable[[np.ndarray], np.ndarray]


def _identity(matrix: np.ndarray) -> np.ndarray:
    return matrix


def feature_maps(
    delta_cfg: DeltaConfig, include_delta: bool
) -> List[Tuple[LinearMap, LinearMap]]:
    """(map, adjoint) pairs: raw, then differential and acceleration."""
    maps: List[Tuple[LinearMap, LinearMap]] = [(_identity, _identity)]
    if include_delta:
        maps.append((partial(delta, config=delta_cfg), partial(delta_adjoint, config=delta_cfg)))
        maps.append(
            (
                partial(acceleration, config=delta_cfg),
                partial(acceleration_adjoint, config=delta_cfg),
            )
        )
    return maps


def _as_pair(est_mag: MatrixLike, ref_mag: MatrixLike) -> Tuple[np.ndarray, np.ndarray]:
    est = np.asarray(getattr(est_mag, "data", est_mag), dtype=np.float64)
    ref = np.asarray(getattr(ref_mag, "data", ref_mag), dtype=np.float64)
    if est.shape != ref.shape:
        raise ShapeMismatchError(
            f"Estimated magnitude {est.shape} and reference magnitude {ref.shape} differ in shape"
        )
    return est, ref


def spectral_convergence_delta(
    est_mag: MatrixLike,
    ref_mag: MatrixLike,
    delta_cfg: DeltaConfig = DeltaConfig(),
    norm_floor: float = 1e-8,
    include_delta: bool = True,
) -> LossResult:
    """Spectral convergence on raw, differential and acceleration magnitudes.

    Each term is ``|f(R) - f(E)|_F / max(|f(R)|_F, norm_floor)``. The gradient
    of a term whose numerator is zero is taken as zero.

    Args:
        est_mag: Estimated magnitude spectrogram E
        ref_mag: Reference magnitude spectrogram R
        delta_cfg: Delta regression order
        norm_floor: Denominator floor
        include_delta: Add the differential and acceleration terms

    Returns:
        LossResult whose gradient is shaped like ``est_mag``

    Raises:
        ShapeMismatchError: If the shapes differ
    """
    est, ref = _as_pair(est_mag, ref_mag)
    value = 0.0
    gradient = np.zeros_like(est)

    for feature, adjoint in feature_maps(delta_cfg, include_delta):
        ref_feature = feature(ref)
        diff = feature(est) - ref_feature
        numerator = float(np.linalg.norm(diff))
        denominator = max(float(np.linalg.norm(ref_feature)), norm_floor)
        value += numerator / denominator
        if numerator > 0:
            gradient += adjoint(diff) / (numerator * denominator)

    return LossResult(value=value, gradient=gradient)


def log_magnitude_delta(
    est_mag: MatrixLike,
    ref_mag: MatrixLike,
    delta_cfg: DeltaConfig = DeltaConfig(),
    log_floor: float = 1e-7,
    include_delta: bool = True,
) -> LossResult:
    """Mean absolute error of log magnitudes and of their delta features.

    Magnitudes are floored at ``log_floor`` before the natural log; each term
    is an L1 norm divided by N, the number of time-frequency bins. The
    subgradient at an L1 kink is zero.

    Raises:
        ShapeMismatchError: If the shapes differ
    """
    est, ref = _as_pair(est_mag, ref_mag)
    log_diff = np.log(np.maximum(est, log_floor)) - np.log(np.maximum(ref, log_floor))
    n_bins = log_diff.size

    value = 0.0
    log_gradient = np.zeros_like(est)
    for feature, adjoint in feature_maps(delta_cfg, include_delta):
        term = feature(log_diff)
        value += float(np.sum(np.abs(term))) / n_bins
        log_gradient += adjoint(np.sign(term)) / n_bins

    above_floor = est > log_floor
    gradient = np.zeros_like(est)
    gradient[above_floor] = log_gradient[above_floor] / est[above_floor]
    return LossResult(value=value, gradient=gradient)


def delta_spectrum_loss(
    estimate: Waveform,
    reference: Waveform,
    config: StftConfig,
    delta_cfg: DeltaConfig = DeltaConfig(),
    log_floor: float = 1e-7,
    norm_floor: float = 1e-8,
    use_sc: bool = True,
    use_mag: bool = True,
    use_delta: bool = True,
) -> LossResult:
    """Single-resolution delta spectrum loss on waveforms.

    Sum of :func:`spectral_convergence_delta` and :func:`log_magnitude_delta`
    on ``|STFT|`` at ``config``; the gradient is chained back to the
    estimate through :func:`magnitude_stft_vjp`. ``use_sc``/``use_mag``/
    ``use_delta`` drop terms for component ablations.

    Raises:
        LengthMismatchError: If the lengths differ
        SignalTooShortError: If the signals are shorter than one window
    """
    check_pair(estimate, reference, min_length=config.win_length)
    est_mag = magnitude_stft(estimate, config)
    ref_mag = magnitude_stft(reference, config)

    value = 0.0
    mag_gradient = np.zeros(est_mag.shape)
    if use_sc:
        sc = spectral_convergence_delta(est_mag, ref_mag, delta_cfg, norm_floor, use_delta)
        value += sc.value
        mag_gradient += sc.gradient
    if use_mag:
        mag = log_magnitude_delta(est_mag, ref_mag, delta_cfg, log_floor, use_delta)
        value += mag.value
        mag_gradient += mag.gradient

    gradient = magnitude_stft_vjp(estimate, config, mag_gradient)
    return LossResult(value=value, gradient=gradient)


class DeltaSpectrumLoss(LossFunction):
    """Single-resolution delta spectrum loss as a strategy object."""

    name = "delta_spectrum"

    def __init__(
        self,
        config: StftConfig,
        delta_cfg: DeltaConfig = DeltaConfig(),
        log_floor: float = 1e-7,
        norm_floor: float = 1e-8,
        use_sc: bool = True,
        use_mag: bool = True,
        use_delta: bool = True,
    ) -> None:
        self.config = config
        self.delta_cfg = delta_cfg
        self.log_floor = log_floor
        self.norm_floor = norm_floor
        self.use_sc = use_sc
        self.use_mag = use_mag
        self.use_delta = use_delta

    def compute(self, estimate: Waveform, reference: Waveform) -> LossResult:
        return delta_spectrum_loss(
            estimate,
            reference,
            self.config,
            self.delta_cfg,
            log_floor=self.log_floor,
            norm_floor=self.norm_floor,
            use_sc=self.use_sc,
            use_mag=self.use_mag,
            use_delta=self.use_delta,
        )
