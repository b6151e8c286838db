"""Base class for signature-norm routes with metadata and execution tracking."""

from __future__ import annotations

import asyncio
import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional

from ..curves.base import Curve

logger = logging.getLogger(__name__)

# degrees of one route share a stream block of this width
STREAM_STRIDE = 100_000


class RouteKind(Enum):
    """How a route produces its value."""

    DETERMINISTIC = "deterministic"  # exact or quadrature/ODE based
    MONTE_CARLO = "monte-carlo"  # needs a seed, reports a standard error


@dataclass
class RouteSettings:
    """Numerical knobs shared by all routes of one experiment."""

    replicates: int = 10_000
    seed: Optional[int] = None
    truncation: int = 8
    grid: int = 1000
    tolerance: Optional[float] = None
    segments: int = 512

    def to_dict(self) -> Dict[str, Any]:
        return {
            "replicates": self.replicates,
            "seed": self.seed,
            "truncation": self.truncation,
            "grid": self.grid,
            "tolerance": self.tolerance,
            "segments": self.segments,
        }


@dataclass
class RouteValue:
    """Value of one route at one degree."""

    value: float
    stderr: Optional[float] = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)


@dataclass
class RouteMetadata:
    """Metadata for a route."""

    name: str
    description: str
    kind: RouteKind
    stream: int = 0
    version: str = "1.0.0"
    tags: List[str] = field(default_factory=list)
    comparable: bool = True  # reports the normalised squared norm at the given degree
    estimated_duration_ms: Optional[int] = None

    @property
    def requires_seed(self) -> bool:
        return self.kind is RouteKind.MONTE_CARLO

    def to_dict(self) -> Dict[str, Any]:
        """Convert metadata to dictionary."""
        return {
            "name": self.name,
            "description": self.description,
            "kind": self.kind.value,
            "stream": self.stream,
            "version": self.version,
            "tags": self.tags,
            "comparable": self.comparable,
            "requires_seed": self.requires_seed,
            "estimated_duration_ms": self.estimated_duration_ms,
        }


class BaseRoute(ABC):
    """
    Base class for all routes to the signature norm.

    Provides:
    - Metadata management (kind, stream label, tags)
    - Execution wrapper that runs the computation in a worker thread
    - Performance tracking

    Usage:
        class MyRoute(BaseRoute):
            def compute(self, curve, degree, settings) -> RouteValue:
                return RouteValue(1.0)
    """

    def __init__(self, metadata: RouteMetadata):
        """
        Initialize route with metadata.

        Args:
            metadata: Route metadata including name, kind and stream label
        """
        self.metadata = metadata
        self._execution_count = 0
        self._total_duration_ms = 0.0
        self._error_count = 0

    @property
    def name(self) -> str:
        return self.metadata.name

    @property
    def description(self) -> str:
        return self.metadata.description

    @property
    def kind(self) -> RouteKind:
        return self.metadata.kind

    def cell_stream(self, degree: int) -> int:
        """Random-stream label of the (route, degree) cell."""
        return self.metadata.stream * STREAM_STRIDE + degree

    @abstractmethod
    def compute(self, curve: Curve, degree: int, settings: RouteSettings) -> RouteValue:
        """
        Compute the route's value for ``curve`` at ``degree``.

        Raises:
            SignormError: If the curve or settings are outside the route's contract
        """

    async def execute_with_tracking(
        self, curve: Curve, degree: int, settings: RouteSettings
    ) -> tuple[RouteValue, float]:
        """
        Run :meth:`compute` in a worker thread with timing and error counting.

        Returns:
            ``(value, wall time in milliseconds)``

        Raises:
            Exception: Re-raises any exception from compute()
        """
        start_time = time.perf_counter()
        try:
            result = await asyncio.to_thread(self.compute, curve, degree, settings)
        except Exception:
            self._error_count += 1
            raise
        duration_ms = (time.perf_counter() - start_time) * 1000.0
        self._execution_count += 1
        self._total_duration_ms += duration_ms
        logger.info(f"{self.name} degree={degree} finished in {duration_ms:.1f} ms")
        return result, duration_ms

    def get_statistics(self) -> Dict[str, Any]:
        """Get route execution statistics."""
        attempts = self._execution_count + self._error_count
        avg_duration = (
            self._total_duration_ms / self._execution_count if self._execution_count > 0 else 0
        )
        return {
            "name": self.name,
            "execution_count": self._execution_count,
            "total_duration_ms": int(self._total_duration_ms),
            "average_duration_ms": int(avg_duration),
            "error_count": self._error_count,
            "error_rate": self._error_count / attempts if attempts > 0 else 0,
        }

    def matches_query(self, query: str) -> bool:
        """Check whether the name, description, tags or kind mention ``query``."""
        query_lower = query.lower()
        if query_lower in self.name.lower():
            return True
        if query_lower in self.description.lower():
            return True
        if any(query_lower in tag.lower() for tag in self.metadata.tags):
            return True
        return query_lower in self.kind.value

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} name={self.name} kind={self.kind.value}>"


class FunctionRoute(BaseRoute):
    """
    Wrapper for function-based routes.

    Usage:
        def tensor_route(curve, degree, settings, stream) -> RouteValue:
            ...

        route = FunctionRoute(metadata, tensor_route)
    """

    def __init__(self, metadata: RouteMetadata, func: Callable[..., RouteValue]):
        super().__init__(metadata)
        self.func = func

    def compute(self, curve: Curve, degree: int, settings: RouteSettings) -> RouteValue:
        """Call the wrapped function with the cell's stream label."""
        return self.func(curve, degree, settings, self.cell_stream(degree))
