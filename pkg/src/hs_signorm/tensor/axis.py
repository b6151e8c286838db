"""
Closed forms for axis paths.

The level-``n`` signature of a concatenation of orthogonal straight segments
with lengths ``l_1..l_m`` (summing to one) satisfies

    ||n! X^n||^2 = sum_k P(k)^2,

where ``P`` is the multinomial pmf with ``n`` trials and cell probabilities
``l``. The right-hand side is the collision probability ``exp(-H_2)`` of that
multinomial, which gives the Renyi-entropy and Laplace-approximation forms below.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np
from scipy.special import gammaln, logsumexp
from scipy.stats import binom

from ..curves.analytic import AxisPath
from ..errors import DomainError, ValidationError

logger = logging.getLogger(__name__)

# above this degree multinomial coefficients are built from log-gamma
EXACT_FACTORIAL_LIMIT = 30


@dataclass(frozen=True)
class MultinomialSpec:
    """Direction weights ``l_1..l_m`` (positive, summing to 1) and degree ``n``."""

    weights: Tuple[float, ...]
    n: int

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if not weights:
            raise ValidationError("at least one direction weight is required")
        if any(w <= 0 for w in weights):
            raise ValidationError(f"weights must be > 0, got {weights}")
        if abs(sum(weights) - 1.0) > 1e-12:
            raise ValidationError(f"weights must sum to 1, got {sum(weights)!r}")
        if self.n < 0:
            raise ValidationError(f"degree must be >= 0, got {self.n}")

    @property
    def m(self) -> int:
        return len(self.weights)

    @classmethod
    def from_axis_path(cls, path: AxisPath, n: int) -> "MultinomialSpec":
        """Spec of an axis path with distinct directions, lengths normalised to sum 1."""
        if len(set(path.directions)) != len(path.directions):
            raise ValidationError("axis path directions must be pairwise distinct")
        lengths = path.lengths / path.length
        # absorb rounding so the weights sum to one
        lengths[-1] = 1.0 - lengths[:-1].sum()
        return cls(tuple(lengths), n)


def compositions(n: int, m: int) -> Iterator[Tuple[int, ...]]:
    """
    Yield every ``(k_1, ..., k_m)`` with ``k_i >= 0`` and ``sum k_i = n`` in colex order.

    Iterative; the first composition is ``(n, 0, ..., 0)``.
    """
    if m < 1:
        return
    k = [n] + [0] * (m - 1)
    while True:
        yield tuple(k)
        i = next((j for j in range(m - 1) if k[j] > 0), None)
        if i is None:
            return
        t = k[i]
        k[i] = 0
        k[0] = t - 1
        k[i + 1] += 1


def _log_pmf(spec: MultinomialSpec) -> np.ndarray:
    """Log-probabilities of all compositions of ``spec.n``."""
    n, weights = spec.n, spec.weights
    if spec.m == 1:
        return np.zeros(1)
    if spec.m == 2:
        return binom.logpmf(np.arange(n + 1), n, weights[0])

    table = np.array(list(compositions(n, spec.m)), dtype=np.int64)
    log_weights = np.log(np.asarray(weights))
    if n <= EXACT_FACTORIAL_LIMIT:
        fact = [math.factorial(k) for k in range(n + 1)]
        log_coeff = np.array(
            [math.log(fact[n] // math.prod(fact[k] for k in row)) for row in table]
        )
    else:
        log_coeff = gammaln(n + 1) - np.sum(gammaln(table + 1), axis=1)
    return log_coeff + table @ log_weights


def axis_norm_squared(spec: MultinomialSpec) -> float:
    """
    Return ``||n! X^n||^2`` of the axis path with weights ``spec.weights``.

    Computed as the multinomial collision probability ``sum_k P(k)^2`` by exact
    enumeration of compositions, accumulated in log space.
    """
    return float(np.exp(logsumexp(2.0 * _log_pmf(spec))))


def renyi_entropy(spec: MultinomialSpec, alpha: float) -> float:
    """
    Renyi entropy ``log(sum_k P(k)^alpha) / (1 - alpha)`` of the multinomial.

    Raises:
        DomainError: If ``alpha <= 0`` or ``alpha == 1``
    """
    if alpha <= 0 or alpha == 1:
        raise DomainError(f"Renyi order must be > 0 and != 1, got {alpha}")
    return float(logsumexp(alpha * _log_pmf(spec)) / (1.0 - alpha))


def laplace_norm_approx(spec: MultinomialSpec) -> float:
    """Laplace approximation ``2 sqrt(pi n) prod_j (4 pi n l_j)^{-1/2}`` of ``||n! X^n||^2``."""
    if spec.n < 1:
        raise ValidationError("the Laplace approximation needs n >= 1")
    n = spec.n
    log_value = math.log(2.0) + 0.5 * math.log(math.pi * n)
    log_value -= 0.5 * sum(math.log(4.0 * math.pi * n * w) for w in spec.weights)
    return math.exp(log_value)


def h2_coefficient(l: float) -> float:
    """Coefficient ``(1 - 6 s2) / (16 s2)`` of the ``1/n`` term, ``s2 = l (1 - l)``."""
    s2 = l * (1.0 - l)
    return (1.0 - 6.0 * s2) / (16.0 * s2)


def h2_expansion(l: float, n: int, terms: int = 1, printed_sign: bool = False) -> float:
    """
    Large-``n`` expansion of the collision entropy of ``Binomial(n, l)``.

    ``H_2 ~ 0.5 log(4 pi s2 n) - c / n`` with ``s2 = l (1 - l)`` and
    ``c = h2_coefficient(l)``. At ``l = 1/2`` this reads
    ``0.5 log(pi n) + 1 / (8 n)``, matching the exact central-binomial value.

    Args:
        l: Weight of the first direction, in ``(0, 1)``
        n: Degree, at least 1
        terms: 0 for the logarithmic term only, 1 to add the ``1/n`` correction
        printed_sign: Add ``+c / n`` instead (the opposite sign convention)

    Raises:
        DomainError: If ``l`` is outside ``(0, 1)`` or ``n < 1``
    """
    if not 0.0 < l < 1.0:
        raise DomainError(f"weight must lie in (0, 1), got {l}")
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    if terms not in (0, 1):
        raise ValidationError(f"terms must be 0 or 1, got {terms}")
    s2 = l * (1.0 - l)
    value = 0.5 * math.log(4.0 * math.pi * s2 * n)
    if terms == 1:
        correction = h2_coefficient(l) / n
        value += correction if printed_sign else -correction
    return value


def h2_norm_approx(l: float, n: int, terms: int = 1, printed_sign: bool = False) -> float:
    """Norm approximation ``exp(-H_2)`` implied by :func:`h2_expansion`."""
    return math.exp(-h2_expansion(l, n, terms=terms, printed_sign=printed_sign))
