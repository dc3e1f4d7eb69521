"""SI-SDR-only versus hybrid A/B runs of the mask optimizer."""

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.signal import chirp

from ..errors import LengthMismatchError
from ..metrics.signal_metrics import SUPPRESSION_CONFIG
from ..mixsim.mixer import make_mixture
from ..models.demo import AbReport, LossKind
from ..models.loss_config import HybridConfig
from ..models.mix import MixSpec
from ..models.stft_config import StftConfig
from ..models.waveform import Waveform
from ..signal.wav_io import load_wav
from .mask_optimizer import DEMO_CONFIG, optimize_mask

logger = logging.getLogger(__name__)

TARGET_TONE_HZ = 440.0
CHIRP_START_HZ = 600.0
CHIRP_END_HZ = 1200.0
INTERFERENCE_TONE_HZ = 300.0
SOURCE_AMPLITUDE = 0.5

ARM_ORDER = (LossKind.SI_SDR_ONLY, LossKind.HYBRID)


def build_synthetic_scenario(
    duration_s: float = 2.0, sample_rate: int = 16000, snr_db: float = 0.0
) -> MixSpec:
    """Target of a 440 Hz tone plus a linear 600 to 1200 Hz chirp, against a 300 Hz tone.

    Raises:
        ValueError: If the duration or sample rate is not positive
    """
    if duration_s <= 0 or sample_rate <= 0:
        raise ValueError(
            f"duration_s and sample_rate must be positive, got {duration_s}, {sample_rate}"
        )

    t = np.arange(int(round(duration_s * sample_rate))) / sample_rate
    tone = np.sin(2 * np.pi * TARGET_TONE_HZ * t)
    sweep = chirp(t, f0=CHIRP_START_HZ, t1=duration_s, f1=CHIRP_END_HZ, method="linear")
    target = Waveform(SOURCE_AMPLITUDE * (tone + sweep), sample_rate)
    interference = Waveform(
        SOURCE_AMPLITUDE * np.sin(2 * np.pi * INTERFERENCE_TONE_HZ * t), sample_rate
    )
    return MixSpec(
        target=target,
        interferences=[interference],
        interference_snr_db=[snr_db],
        target_id=f"synthetic:{TARGET_TONE_HZ:g}Hz+chirp{CHIRP_START_HZ:g}-{CHIRP_END_HZ:g}Hz",
        interference_ids=[f"synthetic:{INTERFERENCE_TONE_HZ:g}Hz"],
    )


def scenario_from_wavs(
    target_path: Path, interference_path: Path, snr_db: float = 0.0
) -> MixSpec:
    """Scenario from a user (target, interference) WAV pair.

    Raises:
        LengthMismatchError: If the two files differ in length
        ValueError: If the sample rates differ
    """
    target = load_wav(target_path)
    interference = load_wav(interference_path)
    if len(target) != len(interference):
        raise LengthMismatchError(
            f"Target ({len(target)} samples) and interference ({len(interference)} samples) "
            "must have equal lengths"
        )
    if target.sample_rate != interference.sample_rate:
        raise ValueError(
            f"Sample rates differ: {target.sample_rate} Hz vs {interference.sample_rate} Hz"
        )
    return MixSpec(
        target=target,
        interferences=[interference],
        interference_snr_db=[snr_db],
        target_id=str(target_path),
        interference_ids=[str(interference_path)],
    )


def run_ab_experiment(
    scenario: MixSpec,
    steps: int,
    learning_rate: float,
    seed: int = 0,
    hybrid_config: Optional[HybridConfig] = None,
    config: StftConfig = DEMO_CONFIG,
    suppression_config: StftConfig = SUPPRESSION_CONFIG,
) -> AbReport:
    """Mix the scenario and optimize one mask per loss from the same start.

    Args:
        scenario: Sources and SNRs of the mixture
        steps: Gradient steps per arm
        learning_rate: Step size on the logits
        seed: Seed shared by both arms
        hybrid_config: Hybrid loss parameters
        config: Mask STFT
        suppression_config: STFT of the reported MAE

    Returns:
        AbReport with one arm per loss, keyed by loss name
    """
    mixed = make_mixture(scenario)
    arms = {}
    for kind in ARM_ORDER:
        logger.info("Optimizing %s arm for %d steps", kind.value, steps)
        _, arm = optimize_mask(
            mixed.mixture,
            mixed.target,
            kind,
            steps,
            learning_rate,
            seed=seed,
            hybrid_config=hybrid_config,
            config=config,
            suppression_config=suppression_config,
        )
        arms[kind.value] = arm
    return AbReport(
        arms=arms, steps=steps, learning_rate=learning_rate, seed=seed, config=config
    )


def run_snr_sweep(
    target: Waveform,
    interference: Waveform,
    snrs_db: Sequence[float],
    steps: int,
    learning_rate: float,
    seed: int = 0,
    hybrid_config: Optional[HybridConfig] = None,
    config: StftConfig = DEMO_CONFIG,
    suppression_config: StftConfig = SUPPRESSION_CONFIG,
) -> List[Tuple[float, AbReport]]:
    """A/B experiment at each target-to-interference SNR, in the given order."""
    results = []
    for snr_db in snrs_db:
        scenario = MixSpec(
            target=target, interferences=[interference], interference_snr_db=[snr_db]
        )
        report = run_ab_experiment(
            scenario, steps, learning_rate, seed, hybrid_config, config, suppression_config
        )
        results.append((float(snr_db), report))
    return results

