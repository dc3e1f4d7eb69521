"""Mixture specification and result models."""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .waveform import Waveform


@dataclass(frozen=True)
class MixSpec:
    """Sources and SNRs of one mixture.

    SNRs are target-relative: ``10*log10(|target|^2 / |scaled source|^2)``.
    The ``*_id`` fields are provenance only and do not affect mixing.
    """

    target: Waveform
    interferences: List[Waveform] = field(default_factory=list)
    noise: Optional[Waveform] = None
    interference_snr_db: List[float] = field(default_factory=list)
    noise_snr_db: Optional[float] = None
    seed: int = 0
    target_id: Optional[str] = None
    interference_ids: List[Optional[str]] = field(default_factory=list)
    noise_id: Optional[str] = None

    def __post_init__(self) -> None:
        """Validate SNR bookkeeping."""
        object.__setattr__(self, "interferences", list(self.interferences))
        snrs = [float(s) for s in self.interference_snr_db]
        object.__setattr__(self, "interference_snr_db", snrs)

        if len(self.interference_snr_db) != len(self.interferences):
            raise ValueError(
                f"interference_snr_db has {len(self.interference_snr_db)} entries for "
                f"{len(self.interferences)} interferences"
            )
        if not all(np.isfinite(s) for s in self.interference_snr_db):
            raise ValueError("All interference SNR values must be finite")

        if self.noise is not None and self.noise_snr_db is None:
            raise ValueError("noise_snr_db is required when noise is given")
        if self.noise_snr_db is not None and not np.isfinite(self.noise_snr_db):
            raise ValueError(f"noise_snr_db must be finite, got {self.noise_snr_db}")


@dataclass(frozen=True)
class MixResult:
    """A mixture and the scaled sources summed into it.

    ``scaled_components`` holds the scaled interferences in order, followed by
    the scaled noise when present; the target is added unscaled.
    """

    mixture: Waveform
    target: Waveform
    scaled_components: List[Waveform]
