"""CNNLOH detection in BAF sequences.

Thin re-export of the compiled ``_lohseg`` extension: a transformed-BAF
inflated-beta mixture with EM fitting and CUSUM segmentation.
"""

from ._lohseg import (
    ComputationError,
    ConfusionCounts,
    EmReport,
    Metrics,
    MixtureModel,
    OneInflatedBeta,
    Segment,
    Segmentation,
    Thresholds,
    ValidationError,
    ZeroInflatedBeta,
    __version__,
    calibrate_threshold,
    compare_to_gold,
    confusion,
    derive_loh_model,
    fit_em,
    floored,
    generate,
    log_density,
    metrics,
    sample,
    segment,
    tbaf_transform,
)

__all__ = [
    "ComputationError",
    "ConfusionCounts",
    "EmReport",
    "Metrics",
    "MixtureModel",
    "OneInflatedBeta",
    "Segment",
    "Segmentation",
    "Thresholds",
    "ValidationError",
    "ZeroInflatedBeta",
    "__version__",
    "calibrate_threshold",
    "compare_to_gold",
    "confusion",
    "derive_loh_model",
    "fit_em",
    "floored",
    "generate",
    "log_density",
    "metrics",
    "sample",
    "segment",
    "tbaf_transform",
]
