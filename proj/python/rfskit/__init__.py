"""Point-pattern likelihood models.

Observations are finite multisets of feature vectors ("bags") whose size
carries information. The model couples a cardinality distribution with
i.i.d. features from a common density, giving a proper set density that is
invariant under a change of measurement units. On top of it: separable
maximum-likelihood fitting, MAP classification across per-class models, and
novelty detection via a training-score quantile threshold.
"""

from ._core import (
    Classifier,
    Detector,
    Model,
    NumericError,
    Pattern,
    ValidationError,
    __version__,
    fit,
    fit_threshold,
    load_jsonl,
    save_jsonl,
    simulate,
)

__all__ = [
    "Classifier",
    "Detector",
    "Model",
    "NumericError",
    "Pattern",
    "ValidationError",
    "__version__",
    "fit",
    "fit_threshold",
    "load_jsonl",
    "save_jsonl",
    "simulate",
]
