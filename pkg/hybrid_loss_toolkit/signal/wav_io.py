"""RIFF/WAVE reading and writing for PCM-16 and IEEE float-32 files."""

import logging
import struct
from pathlib import Path
from typing import Union

import numpy as np
from scipy.io import wavfile

from ..errors import (
    UnsupportedEncodingError,
    WavFileNotFoundError,
    WavFormatError,
    WavWriteError,
)
from ..models.waveform import WavEncoding, Waveform

logger = logging.getLogger(__name__)

PCM16_SCALE = 32768.0

PathLike = Union[str, Path]


def load_wav(path: PathLike) -> Waveform:
    """Read a WAV file as a mono waveform.

    Multichannel files are averaged to mono. PCM-16 samples are divided by
    32768 so they land in [-1, 1); float-32 samples are kept as stored.

    Args:
        path: Path of the WAV file

    Returns:
        Mono Waveform at the file's sample rate

    Raises:
        WavFileNotFoundError: If the file does not exist
        WavFormatError: If the RIFF/WAVE structure cannot be parsed
        UnsupportedEncodingError: If samples are not PCM-16 or float-32
    """
    path = Path(path)
    if not path.is_file():
        raise WavFileNotFoundError(f"WAV file not found: {path}")

    try:
        sample_rate, data = wavfile.read(path)
    except (ValueError, EOFError, struct.error) as e:
        message = str(e)
        if "Unknown wave file format" in message or "Unsupported" in message:
            raise UnsupportedEncodingError(f"{path}: {message}") from e
        raise WavFormatError(f"Malformed WAV file {path}: {message}") from e

    if data.dtype == np.int16:
        samples = data.astype(np.float64) / PCM16_SCALE
    elif data.dtype == np.float32:
        samples = data.astype(np.float64)
    else:
        raise UnsupportedEncodingError(
            f"{path}: unsupported sample type {data.dtype} (expected PCM-16 or float-32)"
        )

    if samples.ndim == 2:
        samples = samples.mean(axis=1)

    return Waveform(samples=samples, sample_rate=sample_rate)


def save_wav(
    wave: Waveform, path: PathLike, encoding: WavEncoding = WavEncoding.FLOAT32
) -> int:
    """Write a waveform to a mono WAV file.

    Under PCM-16, samples outside [-1, 1] are clipped and counted.

    Args:
        wave: Waveform to write
        path: Destination path (parent directory must exist)
        encoding: Sample encoding

    Returns:
        Number of clipped samples (always 0 for float-32)

    Raises:
        WavWriteError: If the file cannot be written
    """
    path = Path(path)
    clipped = 0

    if encoding == WavEncoding.PCM16:
        clipped = int(np.count_nonzero(np.abs(wave.samples) > 1.0))
        if clipped:
            logger.warning("Clipped %d samples writing %s as PCM-16", clipped, path)
        scaled = np.round(np.clip(wave.samples, -1.0, 1.0) * PCM16_SCALE)
        data = np.clip(scaled, -PCM16_SCALE, PCM16_SCALE - 1).astype(np.int16)
    else:
        data = wave.samples.astype(np.float32)

    try:
        wavfile.write(path, wave.sample_rate, data)
    except OSError as e:
        raise WavWriteError(f"Cannot write WAV file {path}: {e}") from e

    return clipped
