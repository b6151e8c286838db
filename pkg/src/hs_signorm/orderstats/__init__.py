"""Order-statistics sampling and Monte-Carlo signature estimators."""

from .estimators import (
    circle_wasserstein_estimator,
    kernel_estimator,
    kernel_summands,
    norm_estimator,
    norm_summands,
    turning_angles,
)
from .result import EstimatorResult
from .sampling import OrderStatSample, sample_order_stats, sample_order_stats_block
from .series import (
    angle_sum_functional,
    arcsine_closed_form,
    series_coefficient,
    series_partial_sum,
)

__all__ = [
    "OrderStatSample",
    "sample_order_stats",
    "sample_order_stats_block",
    "series_coefficient",
    "series_partial_sum",
    "arcsine_closed_form",
    "angle_sum_functional",
    "EstimatorResult",
    "turning_angles",
    "norm_summands",
    "kernel_summands",
    "norm_estimator",
    "kernel_estimator",
    "circle_wasserstein_estimator",
]
