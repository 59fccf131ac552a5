"""Transformer fine-tuning adapter for the talentrank engine.

Consumes the engine's labeled-rows CSV files, fine-tunes a pretrained
sequence-classification checkpoint, and exports per-row probabilities in the
engine's score-file format. The two packages share nothing but those file
contracts.
"""

from .errors import AdapterError, CheckpointError

__version__ = "0.1.0"

__all__ = ["AdapterError", "CheckpointError", "__version__"]
