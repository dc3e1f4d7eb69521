"""Mask-optimization demo models."""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List

import numpy as np
from scipy.special import expit

from .stft_config import StftConfig


class LossKind(Enum):
    """Training objective of one optimization arm."""

    SI_SDR_ONLY = "si_sdr_only"
    HYBRID = "hybrid"


@dataclass(frozen=True)
class MaskParams:
    """Free time-frequency mask parameterized by logits (mask = sigmoid(logits))."""

    logits: np.ndarray
    config: StftConfig

    def __post_init__(self) -> None:
        """Validate logit shape."""
        logits = np.asarray(self.logits, dtype=np.float64)
        if logits.ndim != 2 or logits.shape[1] != self.config.n_bins:
            raise ValueError(
                f"Mask logits must be (frames, {self.config.n_bins}), got {logits.shape}"
            )
        object.__setattr__(self, "logits", logits)

    @property
    def mask(self) -> np.ndarray:
        """Mask values, strictly inside (0, 1)."""
        return expit(self.logits)

    @classmethod
    def constant(cls, n_frames: int, config: StftConfig, value: float = 0.0) -> "MaskParams":
        """Logits filled with ``value`` (0 gives a mask of 0.5)."""
        return cls(np.full((n_frames, config.n_bins), float(value)), config)


@dataclass
class ArmReport:
    """Scores and loss history of one optimization arm."""

    loss_name: str
    final_si_sdr_db: float
    mae_over: float
    mae_under: float
    loss_curve: List[float] = field(default_factory=list)
    mixture_si_sdr_db: float = 0.0

    def __post_init__(self) -> None:
        """Validate the loss history."""
        if not all(np.isfinite(v) for v in self.loss_curve):
            raise ValueError(f"Arm '{self.loss_name}' has non-finite loss_curve values")

    @property
    def si_sdr_improvement_db(self) -> float:
        """SI-SDR gain over the unprocessed mixture."""
        return self.final_si_sdr_db - self.mixture_si_sdr_db

    @property
    def steps(self) -> int:
        return len(self.loss_curve)

    def to_dict(self, include_curve: bool = True) -> Dict[str, Any]:
        data = asdict(self)
        data["si_sdr_improvement_db"] = self.si_sdr_improvement_db
        if not include_curve:
            data.pop("loss_curve")
        return data


@dataclass
class AbReport:
    """Side-by-side report of the SI-SDR-only and hybrid arms."""

    arms: Dict[str, ArmReport]
    steps: int
    learning_rate: float
    seed: int
    config: StftConfig

    @property
    def over_suppression_reduction(self) -> float:
        """Relative drop of mae_over from the SI-SDR-only arm to the hybrid arm."""
        baseline = self.arms[LossKind.SI_SDR_ONLY.value].mae_over
        hybrid = self.arms[LossKind.HYBRID.value].mae_over
        if baseline == 0:
            return 0.0
        return (baseline - hybrid) / baseline

    def to_dict(self, include_curves: bool = True) -> Dict[str, Any]:
        return {
            "steps": self.steps,
            "learning_rate": self.learning_rate,
            "seed": self.seed,
            "stft": {
                "fft_size": self.config.fft_size,
                "hop": self.config.hop,
                "win_length": self.config.win_length,
            },
            "over_suppression_reduction": self.over_suppression_reduction,
            "arms": {
                name: arm.to_dict(include_curve=include_curves)
                for name, arm in self.arms.items()
            },
        }
