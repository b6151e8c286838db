"""Integration tests for the route registry and loader."""

import pytest

from hs_signorm.errors import ValidationError
from hs_signorm.registry import get_global_registry
from hs_signorm.registry.base import (
    STREAM_STRIDE,
    BaseRoute,
    FunctionRoute,
    RouteKind,
    RouteMetadata,
    RouteSettings,
    RouteValue,
)
from hs_signorm.registry.loader import load_route_config, register_all_routes
from hs_signorm.routes import ROUTE_FUNCTIONS


class ConstantRoute(BaseRoute):
    """Route returning a fixed value, for registry tests."""

    def compute(self, curve, degree, settings) -> RouteValue:
        return RouteValue(float(degree))


class FailingRoute(BaseRoute):
    def compute(self, curve, degree, settings) -> RouteValue:
        raise ValidationError("always fails")


def make_metadata(name, kind=RouteKind.DETERMINISTIC, tags=None, stream=0):
    return RouteMetadata(
        name=name, description=f"{name} route", kind=kind, tags=tags or [], stream=stream
    )


@pytest.mark.asyncio
async def test_registry_initialization():
    """Test that registry is initialized empty."""
    registry = get_global_registry()
    assert registry is not None
    assert len(registry.get_all_routes()) == 0


@pytest.mark.asyncio
async def test_loader_registration(registry):
    """Test full registration process via loader."""
    reg = register_all_routes(registry)
    stats = reg.get_statistics()
    assert stats["total_routes"] == len(ROUTE_FUNCTIONS)
    assert set(reg.get_route_names()) == set(ROUTE_FUNCTIONS)
    assert stats["routes_by_kind"]["monte-carlo"] == 5
    assert stats["routes_by_kind"]["deterministic"] == 4


@pytest.mark.asyncio
async def test_metadata_from_config(registry):
    """Streams, kinds and comparability come from config/routes.yaml."""
    register_all_routes(registry)
    streams = [route.metadata.stream for route in registry.get_all_routes()]
    assert len(set(streams)) == len(streams)
    assert registry.require_route("tensor").kind is RouteKind.DETERMINISTIC
    assert registry.require_route("mc-product").metadata.requires_seed
    assert registry.require_route("mc-product").metadata.comparable
    for name in ("mc-exponential", "kernel", "wasserstein"):
        assert not registry.require_route(name).metadata.comparable
    for name in ("limit-ode", "limit-mc", "limit-continuous", "expansion"):
        assert not registry.require_route(name).metadata.comparable


@pytest.mark.asyncio
async def test_search_routes(registry):
    """Search hits names, tags and kinds; exact names come first."""
    register_all_routes(registry)
    results = registry.search_routes("tensor")
    assert results[0].name == "tensor"
    names = [r.name for r in registry.search_routes("bridge")]
    assert names == ["limit-mc"]
    assert len(registry.search_routes("monte-carlo")) == 5
    assert registry.get_statistics()["search_count"] == 3


@pytest.mark.asyncio
async def test_routes_by_kind_and_tag(registry):
    """Kind and tag indexes."""
    register_all_routes(registry)
    for route in registry.get_routes_by_kind(RouteKind.MONTE_CARLO):
        assert route.kind is RouteKind.MONTE_CARLO
    norm_routes = {r.name for r in registry.get_routes_by_tag("norm")}
    assert {"tensor", "mc-product", "mc-exponential", "kernel", "wasserstein"} == norm_routes


def test_re_registration_overwrites(registry):
    """Registering a name twice keeps one entry in every index."""
    registry.register_route(ConstantRoute(make_metadata("const", tags=["a"])))
    registry.register_route(ConstantRoute(make_metadata("const", RouteKind.MONTE_CARLO, ["b"])))
    assert len(registry.get_all_routes()) == 1
    assert registry.get_routes_by_kind(RouteKind.DETERMINISTIC) == []
    assert registry.get_routes_by_tag("a") == []
    assert [r.name for r in registry.get_routes_by_tag("b")] == ["const"]


def test_unknown_route(registry):
    """require_route names the known routes."""
    registry.register_route(ConstantRoute(make_metadata("const")))
    assert registry.get_route("missing") is None
    with pytest.raises(ValidationError, match="const"):
        registry.require_route("missing")


def test_cell_stream():
    """Each (route, degree) cell has its own stream label."""
    route = ConstantRoute(make_metadata("const", stream=3))
    assert route.cell_stream(4) == 3 * STREAM_STRIDE + 4
    assert route.cell_stream(5) != route.cell_stream(4)


@pytest.mark.asyncio
async def test_execute_route_tracks_statistics(registry, straight_line):
    """Successful and failing executions are counted."""
    registry.register_route(ConstantRoute(make_metadata("const")))
    registry.register_route(FailingRoute(make_metadata("fail")))

    value, wall_ms = await registry.execute_route("const", straight_line, 7, RouteSettings())
    assert value.value == 7.0
    assert wall_ms >= 0.0

    with pytest.raises(ValidationError):
        await registry.execute_route("fail", straight_line, 1, RouteSettings())

    stats = registry.get_statistics()["routes"]
    assert stats["const"]["execution_count"] == 1
    assert stats["fail"]["error_count"] == 1
    assert stats["fail"]["error_rate"] == 1.0


@pytest.mark.asyncio
async def test_function_route_passes_stream(straight_line):
    """FunctionRoute hands the cell stream to the wrapped function."""
    seen = []

    def record(curve, degree, settings, stream):
        seen.append(stream)
        return RouteValue(0.0)

    route = FunctionRoute(make_metadata("record", stream=2), record)
    await route.execute_with_tracking(straight_line, 3, RouteSettings())
    assert seen == [2 * STREAM_STRIDE + 3]


def test_config_loading():
    """Test that configuration can be loaded."""
    config = load_route_config()
    assert "routes" in config
    assert set(config["routes"]) == set(ROUTE_FUNCTIONS)


def test_metadata_to_dict():
    """Serialised metadata exposes the seed requirement."""
    data = make_metadata("mc", RouteKind.MONTE_CARLO).to_dict()
    assert data["kind"] == "monte-carlo"
    assert data["requires_seed"] is True
