"""STFT framing configuration and resolution banks."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Sequence, Tuple


class WindowKind(Enum):
    """Analysis window families."""

    HANN = "hann"


@dataclass(frozen=True)
class StftConfig:
    """Framing parameters of one STFT resolution."""

    fft_size: int
    hop: int
    win_length: int
    window: WindowKind = WindowKind.HANN

    def __post_init__(self) -> None:
        """Validate framing parameters."""
        if self.fft_size <= 0 or self.fft_size & (self.fft_size - 1):
            raise ValueError(f"fft_size must be a positive power of two, got {self.fft_size}")

        if not 0 < self.hop <= self.win_length <= self.fft_size:
            raise ValueError(
                f"Invalid STFT config (fft={self.fft_size}, hop={self.hop}, "
                f"win={self.win_length}): require 0 < hop <= win_length <= fft_size"
            )

    @property
    def n_bins(self) -> int:
        """Number of one-sided frequency bins."""
        return self.fft_size // 2 + 1

    def frame_count(self, num_samples: int) -> int:
        """Number of frames fully inside a signal of ``num_samples`` samples.

        Returns 0 when the signal is shorter than one window.
        """
        if num_samples < self.win_length:
            return 0
        return (num_samples - self.win_length) // self.hop + 1

    def covered_length(self, n_frames: int) -> int:
        """Number of samples spanned by ``n_frames`` consecutive frames."""
        return (n_frames - 1) * self.hop + self.win_length

    def as_tuple(self) -> Tuple[int, int, int]:
        """(fft_size, hop, win_length)."""
        return (self.fft_size, self.hop, self.win_length)

    def __str__(self) -> str:
        return f"{self.fft_size}/{self.hop}/{self.win_length}"


@dataclass(frozen=True)
class ResolutionBank:
    """An ordered, non-empty set of STFT resolutions."""

    configs: Tuple[StftConfig, ...]

    def __post_init__(self) -> None:
        """Validate that the bank is non-empty."""
        if not self.configs:
            raise ValueError("ResolutionBank must hold at least one StftConfig")
        object.__setattr__(self, "configs", tuple(self.configs))

    @classmethod
    def from_lists(
        cls, fft_sizes: Sequence[int], hops: Sequence[int], wins: Sequence[int]
    ) -> "ResolutionBank":
        """Zip parallel lists of FFT sizes, hops and window lengths.

        Raises:
            ValueError: If the lists differ in length
        """
        if not len(fft_sizes) == len(hops) == len(wins):
            raise ValueError(
                f"fft_sizes ({len(fft_sizes)}), hops ({len(hops)}) and wins ({len(wins)}) "
                "must have the same length"
            )
        return cls(tuple(StftConfig(f, h, w) for f, h, w in zip(fft_sizes, hops, wins)))

    @property
    def max_win_length(self) -> int:
        """Longest analysis window across the bank."""
        return max(config.win_length for config in self.configs)

    def __len__(self) -> int:
        return len(self.configs)

    def __iter__(self) -> Iterator[StftConfig]:
        return iter(self.configs)

    def to_list(self) -> List[StftConfig]:
        return list(self.configs)
