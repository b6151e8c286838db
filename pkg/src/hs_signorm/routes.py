"""
The routes to the length-normalised signature norm.

Every route maps ``(curve, degree, settings, stream)`` to a RouteValue. Norm
routes report ``(n! ||X^n|| / l^n)^2``; the limit routes report the squared
limit constant ``c^2`` on the configured grid and ignore the degree.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Dict

from .curves.analytic import CircleArc
from .curves.base import Curve
from .curves.profile import curvature_profile
from .errors import ValidationError
from .limit.bridge import r_nD
from .limit.expansion import expansion_terms, hambly_lyons_limit
from .orderstats.estimators import (
    circle_wasserstein_estimator,
    kernel_estimator,
    norm_estimator,
)
from .orderstats.result import EstimatorResult
from .registry.base import RouteSettings, RouteValue
from .tensor.series import hs_inner, signature

logger = logging.getLogger(__name__)

RouteFunction = Callable[[Curve, int, RouteSettings, int], RouteValue]


def _require_seed(settings: RouteSettings) -> int:
    if settings.seed is None:
        raise ValidationError("Monte-Carlo routes need a seed")
    return settings.seed


def _from_estimate(result: EstimatorResult) -> RouteValue:
    return RouteValue(result.mean, result.stderr, dict(result.diagnostics))


def tensor_route(curve: Curve, degree: int, settings: RouteSettings, stream: int) -> RouteValue:
    """``(n!)^2 ||S^n||^2 / l^{2n}`` from Chen products of the chord polyline."""
    series = signature(curve, degree, segments=settings.segments)
    log_scale = 2.0 * (math.lgamma(degree + 1) - degree * math.log(curve.length))
    value = hs_inner(series, series, degree) * math.exp(log_scale)
    return RouteValue(value, None, {"segments": settings.segments})


def mc_product_route(
    curve: Curve, degree: int, settings: RouteSettings, stream: int
) -> RouteValue:
    result = norm_estimator(
        curve, degree, settings.replicates, "product", _require_seed(settings), stream
    )
    return _from_estimate(result)


def mc_exponential_route(
    curve: Curve, degree: int, settings: RouteSettings, stream: int
) -> RouteValue:
    result = norm_estimator(
        curve, degree, settings.replicates, "exponential", _require_seed(settings), stream
    )
    return _from_estimate(result)


def kernel_route(curve: Curve, degree: int, settings: RouteSettings, stream: int) -> RouteValue:
    """Truncated-series kernel of the curve with itself."""
    result = kernel_estimator(
        curve,
        curve,
        degree,
        settings.replicates,
        truncation=settings.truncation,
        seed=_require_seed(settings),
        stream=stream,
    )
    return _from_estimate(result)


def wasserstein_route(
    curve: Curve, degree: int, settings: RouteSettings, stream: int
) -> RouteValue:
    if not isinstance(curve, CircleArc):
        raise ValidationError("the wasserstein route needs a circle-arc curve")
    result = circle_wasserstein_estimator(
        curve, degree, settings.replicates, _require_seed(settings), stream
    )
    return _from_estimate(result)


def _limit_profile(curve: Curve, settings: RouteSettings):
    return curvature_profile(curve, settings.grid)


def limit_ode_route(curve: Curve, degree: int, settings: RouteSettings, stream: int) -> RouteValue:
    """``c^2 = psi(1)^{-1/2}`` for the atomic measure ``(2 l^2 / n) Gamma_j delta_{j/n}``."""
    profile = _limit_profile(curve, settings)
    value = r_nD(profile, curve.length**2 / 2.0, route="ode")
    return RouteValue(value, None, {"grid": settings.grid})


def limit_mc_route(curve: Curve, degree: int, settings: RouteSettings, stream: int) -> RouteValue:
    """Bridge Monte Carlo of the same functional as ``limit-ode``."""
    profile = _limit_profile(curve, settings)
    result = r_nD(
        profile,
        curve.length**2 / 2.0,
        route="mc",
        replicates=settings.replicates,
        seed=_require_seed(settings),
        stream=stream,
    )
    return _from_estimate(result)


def limit_continuous_route(
    curve: Curve, degree: int, settings: RouteSettings, stream: int
) -> RouteValue:
    """``c^2`` from the continuous Sturm-Liouville problem solved to ``settings.tolerance``."""
    value = hambly_lyons_limit(curve, tolerance=settings.tolerance)
    return RouteValue(value**2, None, {"tolerance": settings.tolerance})


def expansion_route(curve: Curve, degree: int, settings: RouteSettings, stream: int) -> RouteValue:
    """First expansion term on the grid ``j/n`` with ``n = degree``."""
    terms = expansion_terms(curvature_profile(curve, degree))
    return RouteValue(terms.term1, None, {"term2": terms.term2, "xi2_sums": terms.xi2_sums})


ROUTE_FUNCTIONS: Dict[str, RouteFunction] = {
    "tensor": tensor_route,
    "mc-product": mc_product_route,
    "mc-exponential": mc_exponential_route,
    "kernel": kernel_route,
    "limit-mc": limit_mc_route,
    "limit-ode": limit_ode_route,
    "limit-continuous": limit_continuous_route,
    "expansion": expansion_route,
    "wasserstein": wasserstein_route,
}
