"""talentrank: batch candidate ranking and binary classifier evaluation.

The library side is plain numpy: a TOPSIS ranking engine, ranking-agreement
metrics, classifier evaluation (confusion matrices, ROC/AUC, Youden
thresholds), text preprocessing (synonym augmentation, balancing, splitting),
and a small class-weighted logistic scorer. The ``talentrank`` command wires
them into a reproducible batch pipeline.
"""

from .errors import TalentRankError

__version__ = "0.1.0"

__all__ = ["TalentRankError", "__version__"]
