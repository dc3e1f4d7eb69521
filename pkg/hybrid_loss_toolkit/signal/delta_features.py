"""Differential and acceleration features along the time axis.

For order L the differential of a trajectory v is

    d(t) = sum_{l=1..L} l * (v(t+l) - v(t-l)) / sum_{l=1..L} 2*l^2

with edge replication outside [0, T). Both maps are linear, so their adjoints
are exact transposes and are used to back-propagate spectral losses.
"""

from typing import Iterator, Tuple

import numpy as np

from ..models.loss_config import DeltaConfig


def _validate(matrix: np.ndarray) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] < 1 or matrix.shape[1] < 1:
        raise ValueError(f"Expected a non-empty (frames, bins) matrix, got shape {matrix.shape}")
    return matrix


def _taps(n_frames: int, order: int) -> Iterator[Tuple[float, np.ndarray, np.ndarray]]:
    """Yield (weight, forward index, backward index) per lag, edges replicated."""
    denominator = 2.0 * sum(l * l for l in range(1, order + 1))
    t = np.arange(n_frames)
    for l in range(1, order + 1):
        yield (
            l / denominator,
            np.clip(t + l, 0, n_frames - 1),
            np.clip(t - l, 0, n_frames - 1),
        )


def delta(matrix: np.ndarray, config: DeltaConfig = DeltaConfig()) -> np.ndarray:
    """Differential feature of each bin's time trajectory.

    Args:
        matrix: (frames, bins) matrix
        config: Regression order

    Returns:
        Matrix of the same shape

    Raises:
        ValueError: If the matrix is empty
    """
    matrix = _validate(matrix)
    output = np.zeros_like(matrix)
    for weight, forward, backward in _taps(matrix.shape[0], config.order):
        output += weight * (matrix[forward] - matrix[backward])
    return output


def acceleration(matrix: np.ndarray, config: DeltaConfig = DeltaConfig()) -> np.ndarray:
    """Differential applied twice."""
    return delta(delta(matrix, config), config)


def delta_adjoint(upstream: np.ndarray, config: DeltaConfig = DeltaConfig()) -> np.ndarray:
    """Transpose of :func:`delta`, including the replicated-edge terms.

    Satisfies ``<delta(x), y> == <x, delta_adjoint(y)>``.
    """
    upstream = _validate(upstream)
    output = np.zeros_like(upstream)
    for weight, forward, backward in _taps(upstream.shape[0], config.order):
        np.add.at(output, forward, weight * upstream)
        np.add.at(output, backward, -weight * upstream)
    return output


def acceleration_adjoint(upstream: np.ndarray, config: DeltaConfig = DeltaConfig()) -> np.ndarray:
    """Transpose of :func:`acceleration`."""
    return delta_adjoint(delta_adjoint(upstream, config), config)
