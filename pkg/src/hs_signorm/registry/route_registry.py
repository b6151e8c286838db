"""Route registry for lookup, filtering and tracked execution."""

from __future__ import annotations

import logging
from collections import defaultdict
from typing import Any, Dict, List, Optional

from ..curves.base import Curve
from ..errors import ValidationError
from .base import BaseRoute, RouteKind, RouteSettings, RouteValue

logger = logging.getLogger(__name__)

# Global registry instance
_global_registry: Optional["RouteRegistry"] = None


class RouteRegistry:
    """
    Central registry of routes to the signature norm.

    Usage:
        registry = RouteRegistry()
        registry.register_route(my_route)

        mc_routes = registry.get_routes_by_kind(RouteKind.MONTE_CARLO)
        value, wall_ms = await registry.execute_route("tensor", curve, 4, settings)
    """

    def __init__(self):
        self._routes: Dict[str, BaseRoute] = {}
        self._by_kind: Dict[RouteKind, List[str]] = defaultdict(list)
        self._by_tag: Dict[str, List[str]] = defaultdict(list)
        self._search_count = 0

    def register_route(self, route: BaseRoute) -> None:
        """Register a route, replacing any route of the same name."""
        if route.name in self._routes:
            logger.warning(f"Route {route.name} already registered, overwriting")
            self._unindex(route.name)
        self._routes[route.name] = route
        self._by_kind[route.kind].append(route.name)
        for tag in route.metadata.tags:
            self._by_tag[tag].append(route.name)
        logger.debug(f"Registered route: {route.name}")

    def _unindex(self, name: str) -> None:
        for names in list(self._by_kind.values()) + list(self._by_tag.values()):
            if name in names:
                names.remove(name)

    def get_route(self, name: str) -> Optional[BaseRoute]:
        return self._routes.get(name)

    def require_route(self, name: str) -> BaseRoute:
        """
        Get a route by name.

        Raises:
            ValidationError: If no route has that name
        """
        route = self._routes.get(name)
        if route is None:
            known = ", ".join(sorted(self._routes))
            raise ValidationError(f"unknown route {name!r} (known: {known})")
        return route

    def get_all_routes(self) -> List[BaseRoute]:
        return list(self._routes.values())

    def get_route_names(self) -> List[str]:
        return list(self._routes.keys())

    def get_routes_by_kind(self, kind: RouteKind) -> List[BaseRoute]:
        return [self._routes[name] for name in self._by_kind.get(kind, [])]

    def get_routes_by_tag(self, tag: str) -> List[BaseRoute]:
        return [self._routes[name] for name in self._by_tag.get(tag, [])]

    def search_routes(self, query: str, limit: int = 10) -> List[BaseRoute]:
        """
        Search routes whose name, description, tags or kind mention ``query``.

        Exact name matches come first, then shorter names.
        """
        self._search_count += 1
        results = [route for route in self._routes.values() if route.matches_query(query)]
        query_lower = query.lower()
        results.sort(key=lambda r: (0 if r.name.lower() == query_lower else 1, len(r.name)))
        return results[:limit]

    async def execute_route(
        self, name: str, curve: Curve, degree: int, settings: RouteSettings
    ) -> tuple[RouteValue, float]:
        """Execute a route with tracking; returns ``(value, wall_ms)``."""
        return await self.require_route(name).execute_with_tracking(curve, degree, settings)

    def get_statistics(self) -> Dict[str, Any]:
        """Get registry statistics."""
        return {
            "total_routes": len(self._routes),
            "search_count": self._search_count,
            "routes_by_kind": {kind.value: len(names) for kind, names in self._by_kind.items()},
            "routes": {name: route.get_statistics() for name, route in self._routes.items()},
        }

    def clear(self) -> None:
        """Clear all routes from registry (for testing)."""
        self._routes.clear()
        self._by_kind.clear()
        self._by_tag.clear()
        self._search_count = 0


def get_global_registry() -> RouteRegistry:
    """Get the global route registry instance."""
    global _global_registry
    if _global_registry is None:
        _global_registry = RouteRegistry()
    return _global_registry


def reset_global_registry() -> None:
    """Reset the global registry (for testing)."""
    global _global_registry
    _global_registry = None
