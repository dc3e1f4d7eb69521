"""Length matching, SNR scaling and additive mixing of sources."""

import math

import numpy as np

from ..errors import SilentSignalError
from ..models.mix import MixResult, MixSpec
from ..models.waveform import Waveform

SILENCE_FLOOR = 1e-8


def fit_length(signal: Waveform, target_length: int) -> Waveform:
    """Truncate (keeping the first samples) or zero-pad at the end to ``target_length``.

    Raises:
        ValueError: If target_length is not positive
    """
    if target_length < 1:
        raise ValueError(f"target_length must be at least 1, got {target_length}")

    if len(signal) == target_length:
        return signal
    if len(signal) > target_length:
        return signal.with_samples(signal.samples[:target_length])
    padded = np.zeros(target_length)
    padded[: len(signal)] = signal.samples
    return signal.with_samples(padded)


def _require_audible(wave: Waveform, role: str) -> None:
    if wave.energy <= SILENCE_FLOOR:
        raise SilentSignalError(
            f"The {role} is silent (energy {wave.energy:.3e} <= {SILENCE_FLOOR:.0e})"
        )


def snr_gain(signal: Waveform, reference: Waveform, snr_db: float) -> float:
    """Gain g with ``10*log10(|reference|^2 / |g*signal|^2) == snr_db``.

    Raises:
        SilentSignalError: If either signal is silent
    """
    _require_audible(signal, "signal to scale")
    _require_audible(reference, "reference")
    return math.sqrt(reference.energy / (signal.energy * 10.0 ** (snr_db / 10.0)))


def scale_to_snr(signal: Waveform, reference: Waveform, snr_db: float) -> Waveform:
    """Scale ``signal`` so it sits ``snr_db`` below ``reference`` in energy."""
    return signal.scaled(snr_gain(signal, reference, snr_db))


def measured_snr_db(reference: Waveform, component: Waveform) -> float:
    """Target-relative SNR of an already scaled component."""
    return 10.0 * math.log10(reference.energy / component.energy)


def make_mixture(spec: MixSpec) -> MixResult:
    """Sum the unscaled target with each source fit to its length and SNR.

    Raises:
        SilentSignalError: If the target or any source is silent
        ValueError: If a source sample rate differs from the target's
    """
    target = spec.target
    _require_audible(target, "target")

    sources = list(zip(spec.interferences, spec.interference_snr_db))
    if spec.noise is not None and spec.noise_snr_db is not None:
        sources.append((spec.noise, spec.noise_snr_db))
    for source, _ in sources:
        if source.sample_rate != target.sample_rate:
            raise ValueError(
                f"Source sample rate {source.sample_rate} Hz differs from the target's "
                f"{target.sample_rate} Hz"
            )

    components = [
        scale_to_snr(fit_length(source, len(target)), target, snr_db) for source, snr_db in sources
    ]

    mixture = target.samples.copy()
    for component in components:
        mixture += component.samples
    return MixResult(
        mixture=target.with_samples(mixture), target=target, scaled_components=components
    )
