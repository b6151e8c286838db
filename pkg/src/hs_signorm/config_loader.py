"""Configuration loader for hs-signorm."""

from __future__ import annotations

import logging
from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml

logger = logging.getLogger(__name__)

_DEFAULT_CONFIG: dict[str, Any] = {
    "numerics": {
        "ode_tolerance": 1e-10,
        "psi_tolerance": 1e-12,
        "max_refinements": 12,
        "initial_steps": 64,
        "quadrature_points": 4097,
        "lipschitz_grid": 10_000,
        "curvature_floor": 1e-9,
    },
    "monte_carlo": {
        "block_size": 1024,
        "replicates": 10_000,
        "truncation": 8,
        "workers": 4,
    },
    "limit": {
        "grid": 1000,
        "exponent": "quarter",
        "convention": "squared",
    },
    "tensor": {
        "polyline_segments": 512,
    },
    "output": {
        "format": "csv",
        "z_threshold": 3.0,
    },
}


def _project_root() -> Path:
    """Return project root directory (repository root)."""
    cwd = Path.cwd()
    if (cwd / "config" / "defaults.yaml").exists():
        return cwd

    # Fallback for running from source tree.
    return Path(__file__).resolve().parents[2]


def _merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


@lru_cache(maxsize=1)
def load_defaults() -> dict[str, Any]:
    """Load numerical defaults from `config/defaults.yaml`.

    Returns:
        Parsed configuration merged over the built-in defaults. If the file
        doesn't exist or can't be read, the built-in defaults are returned.
    """
    config_path = _project_root() / "config" / "defaults.yaml"
    if not config_path.exists():
        return _DEFAULT_CONFIG

    try:
        raw = yaml.safe_load(config_path.read_text(encoding="utf-8"))
        if not isinstance(raw, dict):
            logger.warning("defaults.yaml root is not a mapping; using built-in defaults")
            return _DEFAULT_CONFIG
        return _merge(_DEFAULT_CONFIG, raw)
    except Exception as exc:
        logger.warning(f"Failed to read config at {config_path}: {exc}. Using defaults.")
        return _DEFAULT_CONFIG


def _section(name: str) -> dict[str, Any]:
    section = load_defaults().get(name, {})
    return section if isinstance(section, dict) else {}


def _number(section: str, key: str, cast: type) -> Any:
    fallback = _DEFAULT_CONFIG[section][key]
    try:
        return cast(_section(section).get(key, fallback))
    except (TypeError, ValueError):
        return fallback


def get_ode_tolerance() -> float:
    """Return the step-halving tolerance of the distribution ODE."""
    return _number("numerics", "ode_tolerance", float)


def get_psi_tolerance() -> float:
    """Return the step-halving tolerance of the continuous Sturm-Liouville solver."""
    return _number("numerics", "psi_tolerance", float)


def get_max_refinements() -> int:
    """Return the maximum number of RK4 step halvings."""
    return _number("numerics", "max_refinements", int)


def get_initial_steps() -> int:
    """Return the number of RK4 steps before the first halving."""
    return _number("numerics", "initial_steps", int)


def get_quadrature_points() -> int:
    """Return the default composite Simpson point count."""
    return _number("numerics", "quadrature_points", int)


def get_lipschitz_grid() -> int:
    """Return the grid size of the finite-difference Lipschitz estimator."""
    return _number("numerics", "lipschitz_grid", int)


def get_curvature_floor() -> float:
    """Return the curvature magnitude below which the F-ODE is rejected."""
    return _number("numerics", "curvature_floor", float)


def get_stream_block_size() -> int:
    """Return the number of replicates drawn from one random stream."""
    return _number("monte_carlo", "block_size", int)


def get_default_replicates() -> int:
    """Return the default Monte-Carlo replicate count."""
    return _number("monte_carlo", "replicates", int)


def get_default_truncation() -> int:
    """Return the default series truncation of the kernel scheme."""
    return _number("monte_carlo", "truncation", int)


def get_default_workers() -> int:
    """Return how many experiment cells may run concurrently."""
    return _number("monte_carlo", "workers", int)


def get_limit_defaults() -> dict[str, Any]:
    """Return grid, exponent and density convention of the limit routes."""
    limit = _section("limit")
    return {
        "grid": int(limit.get("grid", 1000)),
        "exponent": str(limit.get("exponent", "quarter")),
        "convention": str(limit.get("convention", "squared")),
    }


def get_polyline_segments() -> int:
    """Return the segment count used to discretise smooth curves for the tensor route."""
    return _number("tensor", "polyline_segments", int)


def get_output_defaults() -> dict[str, Any]:
    """Return output format and the z-score threshold of the compare report."""
    output = _section("output")
    return {
        "format": str(output.get("format", "csv")),
        "z_threshold": float(output.get("z_threshold", 3.0)),
    }
