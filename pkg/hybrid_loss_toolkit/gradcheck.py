"""Central finite-difference checks of every analytic gradient in the toolkit.

Each check perturbs a few randomly chosen coordinates by ``±step`` and
compares ``(f(x+h) - f(x-h)) / 2h`` with the analytic gradient. The error of
a check is ``max|fd - analytic| / max(max|fd|, max|analytic|, 1e-12)``.

The log-magnitude terms are L1 norms, which have kinks where a feature
crosses zero. A coordinate whose ``±step`` perturbation flips the sign of any
such feature is skipped and another one is drawn.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from .demo.mask_optimizer import (
    DEMO_CONFIG,
    apply_mask,
    mask_chain_gradient,
    mask_frame_count,
    mixture_spectrogram,
)
from .losses.hybrid import build_loss, hybrid_loss
from .losses.si_sdr import si_sdr_loss
from .losses.spectral import delta_spectrum_loss, feature_maps
from .models.demo import LossKind, MaskParams
from .models.loss_config import HybridConfig
from .models.results import GradientCheck, LossResult
from .models.stft_config import StftConfig
from .models.waveform import Waveform
from .signal.transforms import magnitude_stft

logger = logging.getLogger(__name__)

DEFAULT_LENGTH = 4096
DEFAULT_COORDINATES = 20
DEFAULT_STEP = 1e-4
DEFAULT_TOLERANCE = 1e-4
SAMPLE_RATE = 16000
ERROR_FLOOR = 1e-12

Objective = Callable[[np.ndarray], float]
SignPattern = Callable[[np.ndarray], np.ndarray]


@dataclass
class _Case:
    name: str
    objective: Objective
    point: np.ndarray
    gradient: np.ndarray
    signs: Optional[SignPattern] = None


def relative_error(numeric: np.ndarray, analytic: np.ndarray) -> float:
    """Max absolute difference over the larger of the two max magnitudes."""
    scale = max(float(np.max(np.abs(numeric))), float(np.max(np.abs(analytic))), ERROR_FLOOR)
    return float(np.max(np.abs(numeric - analytic))) / scale


def _perturbed(point: np.ndarray, index: int, delta: float) -> np.ndarray:
    shifted = point.copy()
    shifted.flat[index] += delta
    return shifted


def _select_coordinates(
    rng: np.random.Generator, case: _Case, count: int, step: float
) -> List[int]:
    """Draw up to ``count`` coordinates away from L1 kinks, in draw order."""
    if case.signs is None:
        return sorted(int(i) for i in rng.choice(case.point.size, size=count, replace=False))

    base = case.signs(case.point)
    chosen: List[int] = []
    for index in rng.permutation(case.point.size):
        index = int(index)
        plus = case.signs(_perturbed(case.point, index, step))
        minus = case.signs(_perturbed(case.point, index, -step))
        if np.array_equal(plus, base) and np.array_equal(minus, base):
            chosen.append(index)
            if len(chosen) == count:
                break
        else:
            logger.debug("%s: coordinate %d straddles an L1 kink, skipped", case.name, index)
    return sorted(chosen)


def check_gradient(
    case: _Case, rng: np.random.Generator, coordinates: int, step: float, tolerance: float
) -> GradientCheck:
    """Compare central differences with the analytic gradient of one case."""
    chosen = _select_coordinates(rng, case, min(coordinates, case.point.size), step)
    numeric = np.array(
        [
            (
                case.objective(_perturbed(case.point, i, step))
                - case.objective(_perturbed(case.point, i, -step))
            )
            / (2.0 * step)
            for i in chosen
        ]
    )
    analytic = case.gradient.ravel()[chosen]
    error = relative_error(numeric, analytic) if chosen else float("inf")
    logger.debug("%s: max relative error %.3e over %d coordinates", case.name, error, len(chosen))
    return GradientCheck(
        name=case.name, max_relative_error=error, tolerance=tolerance, coordinates=chosen
    )


def log_feature_signs(
    estimate: np.ndarray, reference: Waveform, config: HybridConfig, resolutions: List[StftConfig]
) -> np.ndarray:
    """Signs of every L1 log-magnitude feature the loss evaluates at ``estimate``."""
    if not config.use_mag:
        return np.zeros(0)
    wave = reference.with_samples(estimate)
    parts = []
    for resolution in resolutions:
        est = np.log(np.maximum(magnitude_stft(wave, resolution).data, config.log_floor))
        ref = np.log(np.maximum(magnitude_stft(reference, resolution).data, config.log_floor))
        for feature, _ in feature_maps(config.delta, config.use_delta):
            parts.append(np.sign(feature(est - ref)).ravel())
    return np.concatenate(parts)


def _waveform_cases(
    estimate: np.ndarray, reference: Waveform, config: HybridConfig
) -> List[_Case]:
    def wave(x: np.ndarray) -> Waveform:
        return reference.with_samples(x)

    def signs_for(resolutions: List[StftConfig]) -> SignPattern:
        return lambda x: log_feature_signs(x, reference, config, resolutions)

    cases = [
        _Case(
            "si_sdr",
            lambda x: si_sdr_loss(wave(x), reference, norm_floor=config.norm_floor).value,
            estimate,
            si_sdr_loss(wave(estimate), reference, norm_floor=config.norm_floor).gradient,
        )
    ]

    for resolution in config.resolutions:

        def spectral(x: np.ndarray, resolution: StftConfig = resolution) -> LossResult:
            return delta_spectrum_loss(
                wave(x),
                reference,
                resolution,
                config.delta,
                log_floor=config.log_floor,
                norm_floor=config.norm_floor,
                use_sc=config.use_sc,
                use_mag=config.use_mag,
                use_delta=config.use_delta,
            )

        cases.append(
            _Case(
                f"delta_spectrum[{resolution}]",
                lambda x, f=spectral: f(x).value,
                estimate,
                spectral(estimate).gradient,
                signs_for([resolution]),
            )
        )

    cases.append(
        _Case(
            "hybrid",
            lambda x: hybrid_loss(wave(x), reference, config).value,
            estimate,
            hybrid_loss(wave(estimate), reference, config).gradient,
            signs_for(config.resolutions.to_list()),
        )
    )
    return cases


def _mask_case(
    kind: LossKind,
    mixture: Waveform,
    target: Waveform,
    logits: np.ndarray,
    config: HybridConfig,
    demo_config: StftConfig,
) -> _Case:
    loss_fn = build_loss(kind, config)
    spec = mixture_spectrogram(mixture, demo_config)

    def extract(point: np.ndarray) -> Waveform:
        return apply_mask(mixture, MaskParams(point, demo_config))

    mask = MaskParams(logits, demo_config)
    gradient = mask_chain_gradient(spec, mask, loss_fn(extract(logits), target).gradient)

    signs: Optional[SignPattern] = None
    if kind == LossKind.HYBRID and config.gamma > 0:
        resolutions = config.resolutions.to_list()
        signs = lambda point: log_feature_signs(  # noqa: E731
            extract(point).samples, target, config, resolutions
        )

    return _Case(
        f"mask_chain[{kind.value}]",
        lambda point: loss_fn(extract(point), target).value,
        logits,
        gradient,
        signs,
    )


def run_gradient_checks(
    seed: int = 0,
    length: int = DEFAULT_LENGTH,
    coordinates: int = DEFAULT_COORDINATES,
    step: float = DEFAULT_STEP,
    tolerance: float = DEFAULT_TOLERANCE,
    hybrid_config: Optional[HybridConfig] = None,
    demo_config: StftConfig = DEMO_CONFIG,
) -> List[GradientCheck]:
    """Run the full gradient suite on seeded random signals.

    Covers the SI-SDR loss, the delta spectrum loss at each resolution, the
    hybrid loss, and the mask-to-loss chain of the demo under both losses.

    Args:
        seed: Seed of the signals, logits and sampled coordinates
        length: Signal length in samples (at least the longest window)
        coordinates: Coordinates sampled per check
        step: Finite-difference step
        tolerance: Maximum accepted relative error
        hybrid_config: Loss parameters; defaults to the standard hybrid loss
        demo_config: Mask STFT of the chain checks

    Returns:
        One GradientCheck per check, in suite order

    Raises:
        ValueError: If ``length`` is shorter than the longest window or
            ``coordinates``/``step`` are not positive
    """
    config = hybrid_config or HybridConfig()
    longest = max(config.resolutions.max_win_length, demo_config.win_length)
    if length < longest:
        raise ValueError(f"length must be >= {longest} samples, got {length}")
    if coordinates < 1 or step <= 0:
        raise ValueError(f"coordinates and step must be positive, got {coordinates}, {step}")

    rng = np.random.Generator(np.random.PCG64(seed))
    reference = Waveform(0.5 * rng.standard_normal(length), SAMPLE_RATE)
    interference = 0.5 * rng.standard_normal(length)
    estimate = reference.samples + 0.5 * interference

    cases = _waveform_cases(estimate, reference, config)

    mixture = reference.with_samples(reference.samples + interference)
    logits = rng.standard_normal((mask_frame_count(length, demo_config), demo_config.n_bins))
    for kind in (LossKind.SI_SDR_ONLY, LossKind.HYBRID):
        cases.append(_mask_case(kind, mixture, reference, logits, config, demo_config))

    return [check_gradient(case, rng, coordinates, step, tolerance) for case in cases]
