"""Signal core: WAV I/O, STFT and delta features."""

from .delta_features import acceleration, acceleration_adjoint, delta, delta_adjoint
from .transforms import (
    analysis_window,
    frame_signal,
    istft,
    istft_adjoint,
    magnitude,
    magnitude_stft,
    magnitude_stft_vjp,
    overlap_add,
    stft,
)
from .wav_io import load_wav, save_wav

__all__ = [
    "acceleration",
    "acceleration_adjoint",
    "analysis_window",
    "delta",
    "delta_adjoint",
    "frame_signal",
    "istft",
    "istft_adjoint",
    "load_wav",
    "magnitude",
    "magnitude_stft",
    "magnitude_stft_vjp",
    "overlap_add",
    "save_wav",
    "stft",
]
