"""Mask-optimization demo comparing the SI-SDR and hybrid losses."""

from .experiment import (
    build_synthetic_scenario,
    run_ab_experiment,
    run_snr_sweep,
    scenario_from_wavs,
)
from .mask_optimizer import (
    DEMO_CONFIG,
    apply_mask,
    initial_mask,
    mask_chain_gradient,
    mask_frame_count,
    masked_spectrogram,
    mixture_spectrogram,
    optimize_mask,
    padded_length,
)
from .report import (
    AB_REPORT_FIELDS,
    ARM_FIELDS,
    render_markdown,
    sweep_to_dict,
    write_loss_curves_csv,
    write_markdown,
    write_report_json,
    write_sweep_json,
)

__all__ = [
    "AB_REPORT_FIELDS",
    "ARM_FIELDS",
    "DEMO_CONFIG",
    "apply_mask",
    "build_synthetic_scenario",
    "initial_mask",
    "mask_chain_gradient",
    "mask_frame_count",
    "masked_spectrogram",
    "mixture_spectrogram",
    "optimize_mask",
    "padded_length",
    "render_markdown",
    "run_ab_experiment",
    "run_snr_sweep",
    "scenario_from_wavs",
    "sweep_to_dict",
    "write_loss_curves_csv",
    "write_markdown",
    "write_report_json",
    "write_sweep_json",
]
