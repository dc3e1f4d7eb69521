"""Hybrid Loss Toolkit - SI-SDR plus multi-resolution delta spectrum losses."""

__version__ = "1.0.0"
__description__ = (
    "Hybrid continuity loss, suppression metrics, mixture simulation and a mask-optimization demo"
)
