"""Exception kinds raised by the toolkit.

Each class subclasses the closest builtin so callers can catch either the
specific kind or the generic ``ValueError``/``OSError``.
"""


class WavFileNotFoundError(FileNotFoundError):
    """Raised when a WAV path does not exist."""


class WavFormatError(ValueError):
    """Raised when a file is not a well-formed RIFF/WAVE file."""


class UnsupportedEncodingError(ValueError):
    """Raised for WAV encodings other than PCM-16 and IEEE float-32."""


class WavWriteError(OSError):
    """Raised when a WAV file cannot be written."""


class SignalTooShortError(ValueError):
    """Raised when a signal is shorter than one analysis window."""


class ShapeMismatchError(ValueError):
    """Raised when matrix shapes disagree."""


class LengthMismatchError(ValueError):
    """Raised when two waveforms that must align have different lengths."""


class SilentSignalError(ValueError):
    """Raised when a signal's energy is at or below the silence floor."""


class DegenerateWindowError(ValueError):
    """Raised when overlap-add coverage vanishes inside the signal."""


class EmptyReferenceError(ValueError):
    """Raised when an error rate is requested against an empty reference."""


class EmptyPoolError(ValueError):
    """Raised when a mixture plan is sampled from an empty pool."""


class ManifestError(ValueError):
    """Raised when a manifest file cannot be parsed."""


class DivergenceError(RuntimeError):
    """Raised when an optimization loss becomes non-finite."""


class NonFiniteLossError(ValueError):
    """Raised when a loss value or gradient is NaN or infinite."""
