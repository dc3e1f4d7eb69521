"""Free time-frequency mask on the mixture STFT, optimized by gradient descent.

The mixture is placed ``win_length`` zeros into an analysis buffer that ends
at least ``win_length`` zeros after it, so every mixture sample sits where
the overlap-added window is at full strength. The buffer is analysed,
multiplied bin-wise by ``sigmoid(logits)`` (phase kept), resynthesized with
the least-squares inverse STFT and cut back to the mixture span.
"""

import logging
from typing import Optional, Tuple

import numpy as np

from ..errors import DivergenceError, NonFiniteLossError, ShapeMismatchError
from ..losses.base import LossFunction, check_pair
from ..losses.hybrid import build_loss
from ..metrics.signal_metrics import SUPPRESSION_CONFIG, si_sdr_metric, suppression_mae
from ..models.demo import ArmReport, LossKind, MaskParams
from ..models.loss_config import HybridConfig
from ..models.results import LossResult
from ..models.spectrogram import ComplexSpectrogram
from ..models.stft_config import StftConfig
from ..models.waveform import Waveform
from ..signal.transforms import istft, istft_adjoint, stft

logger = logging.getLogger(__name__)

# The mask and the reported suppression MAE share one STFT.
DEMO_CONFIG = SUPPRESSION_CONFIG

MAX_HALVINGS = 20


def mask_offset(config: StftConfig) -> int:
    """Index of the first mixture sample inside the analysis buffer."""
    return config.win_length


def padded_length(num_samples: int, config: StftConfig) -> int:
    """Smallest frame-aligned buffer with a window of zeros on each side of the mixture."""
    needed = num_samples + 2 * config.win_length
    hops = -(-(needed - config.win_length) // config.hop)
    return config.win_length + hops * config.hop


def mask_frame_count(num_samples: int, config: StftConfig) -> int:
    """Frame count of the mask for a mixture of ``num_samples`` samples."""
    return config.frame_count(padded_length(num_samples, config))


def initial_mask(
    mixture: Waveform, config: StftConfig = DEMO_CONFIG, seed: int = 0, init_noise: float = 0.0
) -> MaskParams:
    """Zero logits (mask 0.5), optionally jittered by N(0, init_noise) drawn from ``seed``."""
    params = MaskParams.constant(mask_frame_count(len(mixture), config), config)
    if init_noise == 0:
        return params
    rng = np.random.Generator(np.random.PCG64(seed))
    return MaskParams(params.logits + rng.normal(0.0, init_noise, params.logits.shape), config)


def _padded(mixture: Waveform, config: StftConfig) -> Waveform:
    offset = mask_offset(config)
    padded = np.zeros(padded_length(len(mixture), config))
    padded[offset : offset + len(mixture)] = mixture.samples
    return mixture.with_samples(padded)


def _check_mask(mixture: Waveform, mask: MaskParams) -> None:
    expected = mask_frame_count(len(mixture), mask.config)
    if mask.logits.shape[0] != expected:
        raise ShapeMismatchError(
            f"Mask has {mask.logits.shape[0]} frames; a mixture of {len(mixture)} samples "
            f"needs {expected} at {mask.config}"
        )


def mixture_spectrogram(
    mixture: Waveform, config: StftConfig = DEMO_CONFIG
) -> ComplexSpectrogram:
    """STFT of the zero-padded analysis buffer."""
    return stft(_padded(mixture, config), config)


def masked_spectrogram(mixture: Waveform, mask: MaskParams) -> ComplexSpectrogram:
    """Mixture STFT scaled bin-wise by the mask.

    Raises:
        ShapeMismatchError: If the mask does not match the mixture
    """
    _check_mask(mixture, mask)
    spec = mixture_spectrogram(mixture, mask.config)
    return ComplexSpectrogram(
        data=spec.data * mask.mask,
        config=spec.config,
        source_length=spec.source_length,
        sample_rate=spec.sample_rate,
    )


def apply_mask(mixture: Waveform, mask: MaskParams) -> Waveform:
    """Masked resynthesis of the mixture, cut back to the mixture span.

    Raises:
        ShapeMismatchError: If the mask does not match the mixture
    """
    resynthesized = istft(masked_spectrogram(mixture, mask))
    offset = mask_offset(mask.config)
    return mixture.with_samples(resynthesized.samples[offset : offset + len(mixture)])


def mask_chain_gradient(
    mixture_spec: ComplexSpectrogram, mask: MaskParams, upstream: np.ndarray
) -> np.ndarray:
    """Gradient with respect to the logits given ``dL/d(extracted samples)``.

    Args:
        mixture_spec: STFT of the padded mixture
        mask: Point at which the chain is linearized
        upstream: Loss gradient on the extraction

    Returns:
        Array shaped like ``mask.logits``
    """
    offset = mask_offset(mask.config)
    padded = np.zeros(mixture_spec.source_length)
    padded[offset : offset + len(upstream)] = upstream
    grad_spec = istft_adjoint(padded, mask.config, mixture_spec.n_frames)
    grad_mask = np.real(grad_spec * np.conj(mixture_spec.data))
    m = mask.mask
    return grad_mask * m * (1.0 - m)


def _evaluate(
    loss_fn: LossFunction, mixture: Waveform, target: Waveform, mask: MaskParams, step: int
) -> Tuple[Waveform, LossResult]:
    extracted = apply_mask(mixture, mask)
    try:
        return extracted, loss_fn(extracted, target)
    except NonFiniteLossError as exc:
        raise DivergenceError(f"{loss_fn.name} loss became non-finite at step {step}") from exc


def _descend(
    loss_fn: LossFunction,
    mixture: Waveform,
    target: Waveform,
    mask: MaskParams,
    current: LossResult,
    gradient: np.ndarray,
    learning_rate: float,
    step: int,
) -> Optional[Tuple[MaskParams, Waveform, LossResult]]:
    """First step along ``-gradient`` that does not raise the loss, halving from ``learning_rate``.

    Returns None when ``MAX_HALVINGS`` halvings find no such step.
    """
    rate = learning_rate
    for _ in range(MAX_HALVINGS + 1):
        logits = mask.logits - rate * gradient
        if not np.all(np.isfinite(logits)):
            raise DivergenceError(f"{loss_fn.name} mask logits became non-finite at step {step}")
        trial = MaskParams(logits, mask.config)
        extracted, result = _evaluate(loss_fn, mixture, target, trial, step)
        if result.value <= current.value:
            logger.debug(
                "%s step %d: loss %.6f at rate %.3g", loss_fn.name, step, result.value, rate
            )
            return trial, extracted, result
        rate *= 0.5
    return None


def optimize_mask(
    mixture: Waveform,
    target: Waveform,
    loss: LossKind,
    steps: int,
    learning_rate: float,
    seed: int = 0,
    hybrid_config: Optional[HybridConfig] = None,
    config: StftConfig = DEMO_CONFIG,
    suppression_config: StftConfig = SUPPRESSION_CONFIG,
    init_noise: float = 0.0,
) -> Tuple[Waveform, ArmReport]:
    """Gradient descent on mask logits under the chosen loss.

    Each update tries ``learning_rate`` first and halves the step until the
    loss does not rise, so the loss curve never increases. When no step within
    ``MAX_HALVINGS`` halvings qualifies the mask is stationary at this
    precision and the remaining curve entries repeat the last value.

    ``loss_curve[k]`` is the loss before update ``k``; the returned extraction
    uses the logits after the last update.

    Args:
        mixture: Mixture waveform
        target: Clean target, same length as the mixture
        loss: Training objective
        steps: Number of updates (>= 1)
        learning_rate: Initial step size of every update
        seed: Seed of the optional logit jitter
        hybrid_config: Hybrid loss parameters (also supplies the SI-SDR floor)
        config: STFT of the mask
        suppression_config: STFT of the reported MAE
        init_noise: Standard deviation of the initial logit jitter

    Returns:
        Tuple of (extracted waveform, arm report)

    Raises:
        ValueError: If steps < 1 or the learning rate is not positive
        LengthMismatchError: If the mixture and target lengths differ
        DivergenceError: If the loss or the logits become non-finite
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if not learning_rate > 0:
        raise ValueError(f"learning_rate must be > 0, got {learning_rate}")
    check_pair(mixture, target)

    hybrid_config = hybrid_config or HybridConfig()
    loss_fn = build_loss(loss, hybrid_config)
    mixture_spec = mixture_spectrogram(mixture, config)
    mask = initial_mask(mixture, config, seed, init_noise)
    extracted, result = _evaluate(loss_fn, mixture, target, mask, 0)

    curve = []
    for step in range(steps):
        curve.append(result.value)
        gradient = mask_chain_gradient(mixture_spec, mask, result.gradient)
        accepted = _descend(loss_fn, mixture, target, mask, result, gradient, learning_rate, step)
        if accepted is None:
            logger.debug("%s step %d: no descent step, mask is stationary", loss.value, step)
            curve.extend([result.value] * (steps - step - 1))
            break
        mask, extracted, result = accepted

    suppression = suppression_mae(extracted, target, suppression_config)
    report = ArmReport(
        loss_name=loss.value,
        final_si_sdr_db=si_sdr_metric(extracted, target, hybrid_config.norm_floor),
        mae_over=suppression.mae_over,
        mae_under=suppression.mae_under,
        loss_curve=curve,
        mixture_si_sdr_db=si_sdr_metric(mixture, target, hybrid_config.norm_floor),
    )
    return extracted, report
