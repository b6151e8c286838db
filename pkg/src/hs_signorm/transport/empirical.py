"""Empirical measures on the line and their Wasserstein distances."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import SizeMismatch, ValidationError


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Uniformly weighted sample on the real line, stored sorted."""

    atoms: np.ndarray

    def __post_init__(self):
        atoms = np.sort(np.asarray(self.atoms, dtype=float).ravel())
        if atoms.size < 1:
            raise ValidationError("an empirical measure needs at least one atom")
        if not np.all(np.isfinite(atoms)):
            raise ValidationError("empirical measure atoms must be finite")
        atoms.setflags(write=False)
        object.__setattr__(self, "atoms", atoms)

    @property
    def n(self) -> int:
        return self.atoms.size

    def __len__(self) -> int:
        return self.atoms.size


def sorted_cost(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """
    Sorted-matching transport cost ``mean_j |a_(j) - b_(j)|^p`` along the last axis.

    Inputs are sorted here; leading axes are treated as independent replicates.
    """
    a = np.sort(np.asarray(a, dtype=float), axis=-1)
    b = np.sort(np.asarray(b, dtype=float), axis=-1)
    if a.shape != b.shape:
        raise SizeMismatch(f"sample shapes differ: {a.shape} vs {b.shape}")
    return np.mean(np.abs(a - b) ** p, axis=-1)


def wasserstein_p(a: EmpiricalMeasure, b: EmpiricalMeasure, p: int) -> float:
    """
    p-Wasserstein distance between two empirical measures of equal size.

    In one dimension the sorted matching is optimal, so
    ``W_p^p = (1/n) sum_j |a_(j) - b_(j)|^p``.

    Raises:
        SizeMismatch: If the sample sizes differ
        ValidationError: If ``p < 1``
    """
    if p < 1:
        raise ValidationError(f"p must be >= 1, got {p}")
    if a.n != b.n:
        raise SizeMismatch(f"sample sizes differ: {a.n} vs {b.n}")
    return float(sorted_cost(a.atoms, b.atoms, p)) ** (1.0 / p)
