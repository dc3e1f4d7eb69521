"""Loss configuration models."""

from dataclasses import dataclass, field
from typing import Tuple

from .stft_config import ResolutionBank, StftConfig

DEFAULT_RESOLUTIONS: Tuple[StftConfig, ...] = (
    StftConfig(512, 50, 240),
    StftConfig(1024, 120, 600),
    StftConfig(2048, 240, 1200),
)


@dataclass(frozen=True)
class DeltaConfig:
    """Regression-window order of the differential feature."""

    order: int = 2

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"Delta order must be >= 1, got {self.order}")


@dataclass(frozen=True)
class HybridConfig:
    """Parameters of the hybrid continuity loss.

    ``use_sc``/``use_mag``/``use_delta`` select the terms of each delta
    spectrum loss, so component ablations can be run with the same code path.
    """

    resolutions: ResolutionBank = field(
        default_factory=lambda: ResolutionBank(DEFAULT_RESOLUTIONS)
    )
    gamma: float = 1.0
    delta: DeltaConfig = field(default_factory=DeltaConfig)
    log_floor: float = 1e-7
    norm_floor: float = 1e-8
    use_sc: bool = True
    use_mag: bool = True
    use_delta: bool = True

    def __post_init__(self) -> None:
        """Validate weights, floors and term selection."""
        if not isinstance(self.resolutions, ResolutionBank):
            object.__setattr__(self, "resolutions", ResolutionBank(tuple(self.resolutions)))
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.log_floor <= 0 or self.norm_floor <= 0:
            raise ValueError(
                f"Floors must be > 0 (log_floor={self.log_floor}, norm_floor={self.norm_floor})"
            )
        if not (self.use_sc or self.use_mag):
            raise ValueError("At least one of use_sc / use_mag must be enabled")

    @property
    def resolution_count(self) -> int:
        """M, the number of averaged delta spectrum losses."""
        return len(self.resolutions)
