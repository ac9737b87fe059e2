"""Population scaling: ANSUR ingestion, percentiles, tiers, BSP assignment."""

from openj.anthro.bsp import apply_bsp, body_segment_parameters, load_deleva
from openj.anthro.database import (
    AnsurColumns,
    AnthroDatabase,
    AnthroError,
    load_ansur,
    load_default_database,
    percentile_dimensions,
)
from openj.anthro.regression import (
    RegressionModel,
    RegressionSet,
    fit_tier2_regressions,
    load_derived_dimensions,
)
from openj.anthro.scaling import (
    SegmentDim,
    SegmentDimensions,
    TargetProfile,
    build_scaled_model,
    scale_segments,
)

__all__ = [
    "AnsurColumns",
    "AnthroDatabase",
    "AnthroError",
    "load_ansur",
    "load_default_database",
    "percentile_dimensions",
    "RegressionModel",
    "RegressionSet",
    "fit_tier2_regressions",
    "load_derived_dimensions",
    "SegmentDim",
    "SegmentDimensions",
    "TargetProfile",
    "build_scaled_model",
    "scale_segments",
    "apply_bsp",
    "body_segment_parameters",
    "load_deleva",
]
