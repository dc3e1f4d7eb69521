"""Framing, STFT, magnitude, their adjoints, and overlap-add resynthesis.

Frames lie fully inside the signal (no centering or edge padding). Each frame
is multiplied by a periodic window of ``win_length`` samples and zero-padded to
``fft_size`` before the real FFT.
"""

from functools import lru_cache

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.signal import get_window

from ..errors import DegenerateWindowError, ShapeMismatchError, SignalTooShortError
from ..models.spectrogram import ComplexSpectrogram, MagnitudeSpectrogram
from ..models.stft_config import StftConfig, WindowKind
from ..models.waveform import Waveform

MODULUS_EPS = 1e-12
WINDOW_SUM_FLOOR = 1e-8


@lru_cache(maxsize=32)
def analysis_window(kind: WindowKind, win_length: int) -> np.ndarray:
    """Periodic (DFT-even) window of ``win_length`` samples, read-only."""
    window = get_window(kind.value, win_length, fftbins=True).astype(np.float64)
    window.flags.writeable = False
    return window


def _frames(samples: np.ndarray, win_length: int, hop: int) -> np.ndarray:
    return sliding_window_view(samples, win_length)[::hop].copy()


def frame_signal(wave: Waveform, config: StftConfig) -> np.ndarray:
    """Split a waveform into overlapping frames.

    Frame k holds ``samples[k*hop : k*hop + win_length]``; tail samples that do
    not fill a whole frame are dropped.

    Args:
        wave: Input waveform
        config: Framing parameters

    Returns:
        Array of shape (frames, win_length)

    Raises:
        SignalTooShortError: If the signal is shorter than one window
    """
    if len(wave) < config.win_length:
        raise SignalTooShortError(
            f"Signal of {len(wave)} samples is shorter than one window ({config.win_length})"
        )
    return _frames(wave.samples, config.win_length, config.hop)


def stft(wave: Waveform, config: StftConfig) -> ComplexSpectrogram:
    """One-sided complex STFT.

    Raises:
        SignalTooShortError: If the signal is shorter than one window
    """
    frames = frame_signal(wave, config) * analysis_window(config.window, config.win_length)
    data = np.fft.rfft(frames, n=config.fft_size, axis=1)
    return ComplexSpectrogram(
        data=data, config=config, source_length=len(wave), sample_rate=wave.sample_rate
    )


def magnitude(spec: ComplexSpectrogram) -> MagnitudeSpectrogram:
    """Elementwise modulus of a complex spectrogram."""
    data = np.sqrt(spec.data.real**2 + spec.data.imag**2)
    return MagnitudeSpectrogram(data=data, config=spec.config)


def magnitude_stft(wave: Waveform, config: StftConfig) -> MagnitudeSpectrogram:
    """Shorthand for ``magnitude(stft(wave, config))``."""
    return magnitude(stft(wave, config))


def magnitude_stft_vjp(wave: Waveform, config: StftConfig, upstream: np.ndarray) -> np.ndarray:
    """Gradient of ``sum(upstream * |STFT(wave)|)`` with respect to the samples.

    The modulus derivative uses ``sqrt(re^2 + im^2 + 1e-12)`` so all-zero
    frames give a zero (finite) gradient.

    Args:
        wave: Point at which the map is linearized
        config: STFT parameters
        upstream: (frames, bins) weights on the magnitude spectrogram

    Returns:
        Array shaped like ``wave.samples``

    Raises:
        ShapeMismatchError: If ``upstream`` does not match the spectrogram shape
    """
    spec = stft(wave, config)
    upstream = np.asarray(upstream, dtype=np.float64)
    if upstream.shape != spec.shape:
        raise ShapeMismatchError(
            f"upstream shape {upstream.shape} does not match spectrogram shape {spec.shape}"
        )

    modulus = np.sqrt(spec.data.real**2 + spec.data.imag**2 + MODULUS_EPS)
    grad_spec = upstream * spec.data / modulus

    # Adjoint of the one-sided real DFT: interior bins appear once in the
    # spectrum but twice in irfft's Hermitian sum.
    grad_spec[:, 1:-1] *= 0.5
    grad_frames = config.fft_size * np.fft.irfft(grad_spec, n=config.fft_size, axis=1)
    grad_frames = grad_frames[:, : config.win_length] * analysis_window(
        config.window, config.win_length
    )
    return overlap_add(grad_frames, config.hop, len(wave))


def overlap_add(frames: np.ndarray, hop: int, total_length: int) -> np.ndarray:
    """Scatter frames additively at stride ``hop``.

    Args:
        frames: (frames, win_length) array
        hop: Stride in samples
        total_length: Output length; must give exactly ``len(frames)`` full frames

    Returns:
        Array of ``total_length`` samples

    Raises:
        ShapeMismatchError: If ``total_length`` is inconsistent with the frame count
    """
    frames = np.asarray(frames)
    if frames.ndim != 2 or frames.shape[0] == 0:
        raise ShapeMismatchError(f"Expected a non-empty (frames, win) array, got {frames.shape}")

    n_frames, win_length = frames.shape
    if total_length < win_length or (total_length - win_length) // hop + 1 != n_frames:
        raise ShapeMismatchError(
            f"total_length {total_length} is inconsistent with {n_frames} frames of "
            f"{win_length} samples at hop {hop}"
        )

    output = np.zeros(total_length, dtype=frames.dtype)
    for k in range(n_frames):
        output[k * hop : k * hop + win_length] += frames[k]
    return output


def window_sum_square(config: StftConfig, n_frames: int, total_length: int) -> np.ndarray:
    """Overlap-added squared analysis window."""
    window = analysis_window(config.window, config.win_length)
    return overlap_add(np.tile(window**2, (n_frames, 1)), config.hop, total_length)


def _interior_check(window_sum: np.ndarray, config: StftConfig) -> None:
    interior = window_sum[config.win_length : len(window_sum) - config.win_length]
    if interior.size and np.min(interior) < WINDOW_SUM_FLOOR:
        raise DegenerateWindowError(
            f"Window sum falls below {WINDOW_SUM_FLOOR} inside the signal at {config}; "
            "the hop/window pair does not cover every sample"
        )


def istft(spec: ComplexSpectrogram) -> Waveform:
    """Least-squares inverse STFT.

    Frames are inverse transformed, multiplied by the synthesis window,
    overlap-added and divided by the overlap-added squared window. Samples
    whose window sum is below 1e-8 (signal edges, uncovered tail) are zero.

    Raises:
        DegenerateWindowError: If the window sum vanishes at an interior sample
    """
    config = spec.config
    window = analysis_window(config.window, config.win_length)
    frames = np.fft.irfft(spec.data, n=config.fft_size, axis=1)[:, : config.win_length]
    summed = overlap_add(frames * window, config.hop, spec.source_length)

    window_sum = window_sum_square(config, spec.n_frames, spec.source_length)
    _interior_check(window_sum, config)

    covered = window_sum >= WINDOW_SUM_FLOOR
    samples = np.zeros(spec.source_length)
    samples[covered] = summed[covered] / window_sum[covered]
    return Waveform(samples=samples, sample_rate=spec.sample_rate)


def istft_adjoint(
    upstream: np.ndarray, config: StftConfig, n_frames: int
) -> np.ndarray:
    """Gradient of ``sum(upstream * istft(Y))`` with respect to Y.

    The result is complex: its real and imaginary parts are the derivatives
    with respect to the real and imaginary parts of each bin of Y.

    Args:
        upstream: Weights on the resynthesized samples
        config: STFT parameters of Y
        n_frames: Frame count of Y

    Returns:
        Complex (n_frames, bins) array

    Raises:
        ShapeMismatchError: If ``upstream`` length is inconsistent with ``n_frames``
    """
    upstream = np.asarray(upstream, dtype=np.float64)
    total_length = upstream.shape[0]
    if config.frame_count(total_length) != n_frames:
        raise ShapeMismatchError(
            f"upstream of {total_length} samples does not hold {n_frames} frames at {config}"
        )

    window_sum = window_sum_square(config, n_frames, total_length)
    _interior_check(window_sum, config)

    normalized = np.zeros(total_length)
    covered = window_sum >= WINDOW_SUM_FLOOR
    normalized[covered] = upstream[covered] / window_sum[covered]

    window = analysis_window(config.window, config.win_length)
    frames = _frames(normalized, config.win_length, config.hop) * window

    grad = np.fft.rfft(frames, n=config.fft_size, axis=1) * (2.0 / config.fft_size)
    grad[:, 0] *= 0.5
    grad[:, -1] *= 0.5
    return grad
