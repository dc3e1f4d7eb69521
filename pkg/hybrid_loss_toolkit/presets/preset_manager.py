"""Preset management: toolkit defaults loaded from YAML."""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml

from ..models.loss_config import DeltaConfig, HybridConfig
from ..models.stft_config import ResolutionBank, StftConfig

DEFAULT_PRESETS = Path(__file__).parent.parent / "data" / "presets.yaml"


@dataclass(frozen=True)
class DemoDefaults:
    """Default parameters of the mask-optimization demo."""

    steps: int
    learning_rate: float
    seed: int
    duration_s: float
    sample_rate: int
    interference_snr_db: float


@dataclass(frozen=True)
class GradCheckDefaults:
    """Default parameters of the finite-difference gradient suite."""

    length: int
    coordinates: int
    step: float
    tolerance: float


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class PresetManager:
    """Loads the toolkit presets and builds config objects from them."""

    def __init__(
        self, override_file: Optional[Path] = None, presets_file: Optional[Path] = None
    ) -> None:
        """Initialize the preset manager.

        Args:
            override_file: Optional YAML file whose keys override the defaults
            presets_file: Defaults file. If None, uses the packaged presets.
        """
        self.presets_file = Path(presets_file) if presets_file else DEFAULT_PRESETS
        self._data = self._load(self.presets_file)
        if override_file is not None:
            self._data = _deep_merge(self._data, self._load(Path(override_file)))

    @staticmethod
    def _load(path: Path) -> Dict[str, Any]:
        """Read one YAML mapping.

        Raises:
            FileNotFoundError: If the file does not exist
            ValueError: If the file is not a YAML mapping
        """
        if not path.exists():
            raise FileNotFoundError(f"Preset file not found: {path}")

        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)

        if not isinstance(data, dict):
            raise ValueError(
                f"Preset file {path} must contain a mapping, got {type(data).__name__}"
            )
        return data

    def _section(self, name: str) -> Dict[str, Any]:
        if name not in self._data:
            raise KeyError(f"Preset section not found: {name}")
        return self._data[name]

    @staticmethod
    def _stft(entry: Dict[str, Any]) -> StftConfig:
        return StftConfig(int(entry["fft_size"]), int(entry["hop"]), int(entry["win_length"]))

    def resolutions(self) -> ResolutionBank:
        """The multi-resolution loss bank."""
        return ResolutionBank(tuple(self._stft(e) for e in self._section("hybrid")["resolutions"]))

    def hybrid_config(self) -> HybridConfig:
        """Hybrid loss configuration with the preset weights and floors."""
        section = self._section("hybrid")
        return HybridConfig(
            resolutions=self.resolutions(),
            gamma=float(section["gamma"]),
            delta=DeltaConfig(int(section["delta_order"])),
            log_floor=float(section["log_floor"]),
            norm_floor=float(section["norm_floor"]),
        )

    def suppression_config(self) -> StftConfig:
        """STFT used for the over-/under-suppression MAE."""
        return self._stft(self._section("suppression"))

    def demo_config(self) -> StftConfig:
        """STFT used by the mask-optimization demo."""
        return self._stft(self._section("demo")["stft"])

    def interference_snr_range(self) -> Tuple[float, float]:
        low, high = self._section("mixing")["interference_snr_db"]
        return (float(low), float(high))

    def noise_snr_range(self) -> Tuple[float, float]:
        low, high = self._section("mixing")["noise_snr_db"]
        return (float(low), float(high))

    def demo_defaults(self) -> DemoDefaults:
        section = self._section("demo")
        return DemoDefaults(
            steps=int(section["steps"]),
            learning_rate=float(section["learning_rate"]),
            seed=int(section["seed"]),
            duration_s=float(section["duration_s"]),
            sample_rate=int(section["sample_rate"]),
            interference_snr_db=float(section["interference_snr_db"]),
        )

    def grad_check_defaults(self) -> GradCheckDefaults:
        section = self._section("grad_check")
        return GradCheckDefaults(
            length=int(section["length"]),
            coordinates=int(section["coordinates"]),
            step=float(section["step"]),
            tolerance=float(section["tolerance"]),
        )
