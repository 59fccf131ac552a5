class AdapterError(ValueError):
    """Base class for adapter validation and contract errors."""


class CheckpointError(AdapterError):
    """A pretrained checkpoint could not be resolved or loaded."""


class DataError(AdapterError):
    """A labeled-rows file is malformed or unusable for training."""
