"""One-dimensional optimal transport and the curvature distribution."""

from .distribution import DistributionF, inverse_transform, solve_distribution
from .empirical import EmpiricalMeasure, sorted_cost, wasserstein_p
from .functionals import (
    BoundFactors,
    bound_factors,
    empirical_wasserstein_mean,
    expected_wasserstein_bound,
    j_p_functional,
    k_p_functional,
)

__all__ = [
    "EmpiricalMeasure",
    "sorted_cost",
    "wasserstein_p",
    "DistributionF",
    "solve_distribution",
    "inverse_transform",
    "BoundFactors",
    "bound_factors",
    "j_p_functional",
    "k_p_functional",
    "expected_wasserstein_bound",
    "empirical_wasserstein_mean",
]
