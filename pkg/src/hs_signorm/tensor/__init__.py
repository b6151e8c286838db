"""Truncated signatures and axis-path closed forms."""

from .axis import (
    MultinomialSpec,
    axis_norm_squared,
    compositions,
    h2_coefficient,
    h2_expansion,
    h2_norm_approx,
    laplace_norm_approx,
    renyi_entropy,
)
from .series import (
    TruncatedTensorSeries,
    chen_product,
    hs_inner,
    hs_norm,
    pairwise_sum,
    segment_exponential,
    signature,
)

__all__ = [
    "TruncatedTensorSeries",
    "segment_exponential",
    "chen_product",
    "pairwise_sum",
    "signature",
    "hs_inner",
    "hs_norm",
    "MultinomialSpec",
    "compositions",
    "axis_norm_squared",
    "renyi_entropy",
    "laplace_norm_approx",
    "h2_coefficient",
    "h2_expansion",
    "h2_norm_approx",
]
