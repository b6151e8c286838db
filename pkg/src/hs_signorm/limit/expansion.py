"""Limit constants, higher-order expansion sums and extrapolation in the degree."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np

from ..config_loader import get_limit_defaults
from ..curves.base import Curve
from ..curves.profile import CurvatureProfile
from ..errors import DomainError, UnsupportedDerivative, ValidationError
from .sturm_liouville import solve_psi_continuous

logger = logging.getLogger(__name__)

EXPONENTS = {"quarter": 0.25, "half": 0.5}
CONVENTIONS = ("squared", "unsquared")


def limit_constant(psi1: float, exponent: str = "quarter", length: float = 1.0) -> float:
    """
    Return ``psi1^{-l/4}`` (``quarter``) or ``psi1^{-l/2}`` (``half``).

    Densities that already carry the ``l^2`` factor are paired with ``length=1``.

    Raises:
        DomainError: If ``psi1 <= 0``
    """
    if not psi1 > 0:
        raise DomainError(f"psi(1) must be > 0, got {psi1}")
    if exponent not in EXPONENTS:
        raise ValidationError(f"exponent must be one of {tuple(EXPONENTS)}, got {exponent!r}")
    return psi1 ** (-EXPONENTS[exponent] * length)


@dataclass(frozen=True)
class ExpansionTerms:
    """
    Sums entering the ``1/n`` expansion of ``(n! ||X^n||)^{1/n}``.

    ``term2`` is ``xi2_sums / n^6`` without a leading constant; the constant
    differs between conventions and is applied by the caller.
    """

    term1: float
    term2: float
    xi2_sums: float
    xi2: np.ndarray


def expansion_terms(profile: CurvatureProfile, n: Optional[int] = None) -> ExpansionTerms:
    """
    Compute the first and second expansion sums from a curvature profile.

    With ``S_i = sum_{s<=i} s Gamma_s``:

    * ``term1 = (2/n^4) sum_{i=1}^{n-1} S_i``
    * ``xi_2^j = sum_{1<=s1<s2<=j} S_{s1} Gamma_{s2}``
    * ``xi2_sums = sum_{i=1}^{n-1} xi_2^i`` and ``term2 = xi2_sums / n^6``

    Raises:
        ValidationError: If ``n`` differs from the profile's grid size
    """
    n = profile.n if n is None else n
    if n != profile.n:
        raise ValidationError(f"profile has {profile.n} nodes, expected {n}")
    gamma = profile.gamma
    s = np.arange(1, n + 1, dtype=float)
    partial = np.cumsum(s * gamma)
    # C_{k} = sum_{s<=k} S_s, shifted so position j holds C_{j-1}
    running = np.concatenate([[0.0], np.cumsum(partial)[:-1]])
    xi2 = np.cumsum(gamma * running)
    term1 = 2.0 * float(np.sum(partial[:-1])) / n**4
    xi2_sums = float(np.sum(xi2[:-1]))
    return ExpansionTerms(term1, xi2_sums / n**6, xi2_sums, xi2)


def richardson_limit(degrees: Sequence[int], values: Sequence[float], order: int = 1) -> float:
    """
    Extrapolate ``values[k] ~ a + b_1/n + ... + b_order/n^order`` to ``n -> infinity``.

    Least-squares fit in powers of ``1/n``; with ``order + 1`` points it is the
    classical Richardson elimination.
    """
    degrees = np.asarray(degrees, dtype=float)
    values = np.asarray(values, dtype=float)
    if degrees.shape != values.shape or degrees.size < order + 1:
        raise ValidationError(f"need at least {order + 1} matching points")
    coefficients = np.polynomial.polynomial.polyfit(1.0 / degrees, values, order)
    return float(coefficients[0])


def limit_density(curve: Curve, convention: str = "squared"):
    """
    Density on ``[0, 1]`` of the measure whose ``psi`` gives the limit constant.

    ``squared``: ``2 l^2 |gamma''(l t)|^2``; ``unsquared``: ``2 l |gamma''(l t)|``.
    """
    if convention not in CONVENTIONS:
        raise ValidationError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    if not curve.has_curvature:
        raise UnsupportedDerivative(f"{curve.kind.value} curves have no curvature density")
    l = curve.length

    def density(t: float) -> float:
        kappa = float(curve.curvature(min(max(t, 0.0), 1.0) * l)[0])
        return 2.0 * l * l * kappa * kappa if convention == "squared" else 2.0 * l * kappa

    return density


def hambly_lyons_limit(
    curve: Curve,
    exponent: Optional[str] = None,
    convention: Optional[str] = None,
    tolerance: Optional[float] = None,
) -> float:
    """
    Limit of ``n! ||X^n|| / l^n`` for a smooth unit-speed curve.

    Solves ``psi'' = rho psi`` with :func:`limit_density` and applies
    :func:`limit_constant`. With the ``squared`` convention and ``quarter``
    exponent this is the limit of the tensor route; ``unsquared`` reproduces the
    alternative circle constant.
    """
    defaults = get_limit_defaults()
    exponent = exponent or defaults["exponent"]
    convention = convention or defaults["convention"]
    psi1 = solve_psi_continuous(limit_density(curve, convention), tolerance).value
    value = limit_constant(psi1, exponent)
    logger.info(f"Limit constant for {curve!r}: {value:.8g} ({convention}, {exponent})")
    return value


def circle_limit_candidates(curvature: float, length: float = 1.0) -> Dict[str, float]:
    """
    Closed-form limit constants of a circle arc under both density conventions.

    ``squared``: ``(x / sinh x)^{1/4}`` with ``x = sqrt(2) kappa l``;
    ``unsquared``: same with ``x = sqrt(2 kappa l)``.
    """
    if curvature <= 0 or length <= 0:
        raise DomainError("curvature and length must be > 0")

    def constant(x: float) -> float:
        return (x / math.sinh(x)) ** 0.25

    return {
        "squared": constant(math.sqrt(2.0) * curvature * length),
        "unsquared": constant(math.sqrt(2.0 * curvature * length)),
    }
