"""Container for Monte-Carlo means shared by the estimator modules."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional

import numpy as np


@dataclass
class EstimatorResult:
    """Monte-Carlo mean with its standard error and provenance."""

    mean: float
    stderr: float
    replicates: int
    seed: int
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_values(
        cls, values: np.ndarray, seed: int, diagnostics: Optional[Dict[str, Any]] = None
    ) -> "EstimatorResult":
        values = np.asarray(values, dtype=float)
        count = values.size
        stderr = float(np.std(values, ddof=1) / math.sqrt(count)) if count > 1 else math.nan
        return cls(float(np.mean(values)), stderr, count, int(seed), diagnostics or {})

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
