"""Mixture simulation: length matching, SNR scaling, sampling and manifests."""

from .manifest import (
    PROVENANCE_COLUMNS,
    PROVENANCE_FILE,
    MixRow,
    ProvenanceRow,
    generate_mixtures,
    parse_mix_manifest,
    resolve_row,
    write_provenance,
)
from .mixer import fit_length, make_mixture, measured_snr_db, scale_to_snr, snr_gain
from .planner import MixDraw, derive_seed, draw_mix, make_rng, sample_mix_plan, spec_from_draw

__all__ = [
    "PROVENANCE_COLUMNS",
    "PROVENANCE_FILE",
    "MixDraw",
    "MixRow",
    "ProvenanceRow",
    "derive_seed",
    "draw_mix",
    "fit_length",
    "generate_mixtures",
    "make_mixture",
    "make_rng",
    "measured_snr_db",
    "parse_mix_manifest",
    "resolve_row",
    "sample_mix_plan",
    "scale_to_snr",
    "snr_gain",
    "spec_from_draw",
    "write_provenance",
]
