"""Deterministic sampling of interference sources and SNRs for a target."""

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from ..errors import EmptyPoolError
from ..models.mix import MixSpec
from ..models.waveform import Waveform
from ..signal.wav_io import load_wav

INTERFERENCE_SNR_RANGE_DB = (-10.0, 10.0)
NOISE_SNR_RANGE_DB = (-5.0, 15.0)

SourceLoader = Callable[[str], Waveform]


def _load_path(source_id: str) -> Waveform:
    return load_wav(Path(source_id))


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator; the same seed gives the same stream on every platform."""
    return np.random.Generator(np.random.PCG64(seed))


def derive_seed(seed: int, index: int) -> int:
    """Sub-seed for row ``index`` of a batch seeded with ``seed``.

    Rows draw from independent streams, so the result does not depend on the
    order in which rows are processed.
    """
    return int(np.random.SeedSequence([seed, index]).generate_state(1, dtype=np.uint32)[0])


def _check_range(snr_range_db: Tuple[float, float], name: str) -> Tuple[float, float]:
    low, high = (float(v) for v in snr_range_db)
    if not (np.isfinite(low) and np.isfinite(high)) or low > high:
        raise ValueError(
            f"{name} must be a finite (low, high) pair with low <= high, got {snr_range_db}"
        )
    return low, high


@dataclass(frozen=True)
class MixDraw:
    """Source choices and SNRs drawn for one target, before any audio is loaded."""

    target_id: str
    interference_id: str
    interference_snr_db: float
    seed: int
    noise_id: Optional[str] = None
    noise_snr_db: Optional[float] = None


def draw_mix(
    target_id: str,
    candidate_pool: Sequence[str],
    rng_seed: int,
    snr_range_db: Tuple[float, float] = INTERFERENCE_SNR_RANGE_DB,
    noise_pool: Optional[Sequence[str]] = None,
    noise_snr_range_db: Tuple[float, float] = NOISE_SNR_RANGE_DB,
) -> MixDraw:
    """Uniformly draw one interference, one optional noise and their SNRs.

    Draw order is fixed: interference index, interference SNR, then noise
    index and noise SNR when a noise pool is given.

    Args:
        target_id: Identifier of the target utterance
        candidate_pool: Interference identifiers; must not contain the target
        rng_seed: Seed of the PCG64 generator
        snr_range_db: Interference SNR interval in dB
        noise_pool: Optional noise identifiers
        noise_snr_range_db: Noise SNR interval in dB

    Returns:
        MixDraw with the chosen identifiers and SNRs

    Raises:
        EmptyPoolError: If the candidate pool (or a given noise pool) is empty
        ValueError: If the pool contains the target or a range is invalid
    """
    if not candidate_pool:
        raise EmptyPoolError(f"No interference candidates for target '{target_id}'")
    if target_id in candidate_pool:
        raise ValueError(f"Candidate pool contains the target utterance '{target_id}'")
    if noise_pool is not None and not noise_pool:
        raise EmptyPoolError("Noise pool is empty")
    low, high = _check_range(snr_range_db, "snr_range_db")

    rng = make_rng(rng_seed)
    interference_id = candidate_pool[int(rng.integers(len(candidate_pool)))]
    interference_snr = float(rng.uniform(low, high))

    noise_id = None
    noise_snr = None
    if noise_pool:
        noise_low, noise_high = _check_range(noise_snr_range_db, "noise_snr_range_db")
        noise_id = noise_pool[int(rng.integers(len(noise_pool)))]
        noise_snr = float(rng.uniform(noise_low, noise_high))

    return MixDraw(
        target_id=target_id,
        interference_id=interference_id,
        interference_snr_db=interference_snr,
        seed=rng_seed,
        noise_id=noise_id,
        noise_snr_db=noise_snr,
    )


def spec_from_draw(draw: MixDraw, loader: SourceLoader = _load_path) -> MixSpec:
    """Load the drawn sources and build the mixture spec."""
    noise = loader(draw.noise_id) if draw.noise_id is not None else None
    return MixSpec(
        target=loader(draw.target_id),
        interferences=[loader(draw.interference_id)],
        noise=noise,
        interference_snr_db=[draw.interference_snr_db],
        noise_snr_db=draw.noise_snr_db,
        seed=draw.seed,
        target_id=draw.target_id,
        interference_ids=[draw.interference_id],
        noise_id=draw.noise_id,
    )


def sample_mix_plan(
    target_id: str,
    candidate_pool: Sequence[str],
    rng_seed: int,
    snr_range_db: Tuple[float, float] = INTERFERENCE_SNR_RANGE_DB,
    noise_pool: Optional[Sequence[str]] = None,
    noise_snr_range_db: Tuple[float, float] = NOISE_SNR_RANGE_DB,
    loader: SourceLoader = _load_path,
) -> MixSpec:
    """Draw sources for ``target_id`` and return a ready-to-mix spec.

    ``loader`` maps identifiers to waveforms; by default identifiers are WAV paths.
    See :func:`draw_mix` for the sampling rules and errors.
    """
    draw = draw_mix(
        target_id, candidate_pool, rng_seed, snr_range_db, noise_pool, noise_snr_range_db
    )
    return spec_from_draw(draw, loader)
