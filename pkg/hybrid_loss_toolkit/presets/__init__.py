"""Preset management."""

from .preset_manager import DemoDefaults, GradCheckDefaults, PresetManager

__all__ = ["DemoDefaults", "GradCheckDefaults", "PresetManager"]
