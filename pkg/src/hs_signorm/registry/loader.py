"""Route loader with registration from `config/routes.yaml`."""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from ..routes import ROUTE_FUNCTIONS
from .base import FunctionRoute, RouteKind, RouteMetadata
from .route_registry import RouteRegistry, get_global_registry

logger = logging.getLogger(__name__)


def load_route_config() -> Dict[str, Any]:
    """
    Load route configuration from YAML.

    Returns:
        Route configuration dictionary (``{"routes": {}}`` when no file is found)
    """
    possible_paths = [
        Path("config") / "routes.yaml",
        Path(__file__).resolve().parents[3] / "config" / "routes.yaml",
    ]

    for path in possible_paths:
        if os.path.exists(path):
            try:
                with open(path, "r", encoding="utf-8") as f:
                    return yaml.safe_load(f) or {"routes": {}}
            except Exception as e:
                logger.error(f"Failed to load route config from {path}: {e}")
                return {"routes": {}}

    logger.warning("Route config not found, using defaults")
    return {"routes": {}}


def _metadata(name: str, conf: Dict[str, Any], position: int) -> RouteMetadata:
    kind_str = str(conf.get("kind", "deterministic"))
    try:
        kind = RouteKind(kind_str)
    except ValueError:
        logger.warning(f"Unknown kind {kind_str} for route {name}, defaulting to deterministic")
        kind = RouteKind.DETERMINISTIC

    return RouteMetadata(
        name=name,
        description=conf.get("description", f"Route {name}"),
        kind=kind,
        stream=int(conf.get("stream", position)),
        version=str(conf.get("version", "1.0.0")),
        tags=list(conf.get("tags", [])),
        comparable=bool(conf.get("comparable", True)),
        estimated_duration_ms=conf.get("estimated_duration_ms"),
    )


def register_all_routes(registry: Optional[RouteRegistry] = None) -> RouteRegistry:
    """
    Register every built-in route, with metadata from `config/routes.yaml`.

    Config entries without a built-in implementation are skipped with a warning;
    built-in routes missing from the config get default metadata.
    """
    registry = registry or get_global_registry()
    config = load_route_config().get("routes") or {}

    for name in config:
        if name not in ROUTE_FUNCTIONS:
            logger.warning(f"Route {name} is configured but not implemented, skipping")

    for position, (name, func) in enumerate(ROUTE_FUNCTIONS.items()):
        conf = config.get(name) or {}
        if not conf:
            logger.debug(f"Route {name} has no config entry, using defaults")
        registry.register_route(FunctionRoute(_metadata(name, conf, position), func))

    logger.info(f"Registered {len(ROUTE_FUNCTIONS)} routes")
    return registry
