"""Route registry: metadata, tracked execution and config-driven registration."""

from .base import (
    STREAM_STRIDE,
    BaseRoute,
    FunctionRoute,
    RouteKind,
    RouteMetadata,
    RouteSettings,
    RouteValue,
)
from .route_registry import RouteRegistry, get_global_registry, reset_global_registry

__all__ = [
    "STREAM_STRIDE",
    "BaseRoute",
    "FunctionRoute",
    "RouteKind",
    "RouteMetadata",
    "RouteSettings",
    "RouteValue",
    "RouteRegistry",
    "get_global_registry",
    "reset_global_registry",
]
