"""
Curve-spec files.

One curve per file, flat ``key = value`` lines, ``#`` starts a comment::

    kind = circle-arc
    curvature = 6.283185307179586
    length = 1

Keys by kind:

* ``circle-arc``: ``curvature``, ``length``, optional ``phase``, ``dim``
* ``axis-path``: ``directions`` (comma-separated axis indices), ``lengths``, optional ``dim``
* ``piecewise-circular``: ``curvatures``, ``orientations``, ``lengths``, optional ``phase``
* ``polyline``: ``vertices`` (``x,y;x,y;...``), optional ``times``, ``renormalize``, ``dim``
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .curves.analytic import AxisPath, CircleArc, PiecewiseCircular
from .curves.base import Curve, CurveKind
from .curves.polyline import Polyline
from .errors import ConfigError, ValidationError

logger = logging.getLogger(__name__)

ALLOWED_KEYS: Dict[str, set] = {
    CurveKind.CIRCLE_ARC.value: {"curvature", "length", "phase", "dim"},
    CurveKind.AXIS_PATH.value: {"directions", "lengths", "dim"},
    CurveKind.PIECEWISE_CIRCULAR.value: {"curvatures", "orientations", "lengths", "phase", "dim"},
    CurveKind.POLYLINE.value: {"vertices", "times", "renormalize", "dim"},
}


def parse_curve_spec(text: str) -> Dict[str, str]:
    """
    Parse ``key = value`` lines into a dict of raw strings.

    Raises:
        ConfigError: On malformed or duplicate lines
    """
    params: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in params:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        params[key] = value
    return params


def parse_inline(pairs: Iterable[str]) -> Dict[str, str]:
    """Parse ``key=value`` command-line pairs with the same rules as a file."""
    return parse_curve_spec("\n".join(pairs))


def _floats(value: str, key: str) -> List[float]:
    try:
        return [float(x) for x in value.split(",") if x.strip()]
    except ValueError as e:
        raise ConfigError(f"{key}: expected comma-separated numbers, got {value!r}") from e


def _float(value: str, key: str) -> float:
    items = _floats(value, key)
    if len(items) != 1:
        raise ConfigError(f"{key}: expected one number, got {value!r}")
    return items[0]


def _ints(value: str, key: str) -> List[int]:
    try:
        return [int(x) for x in value.split(",") if x.strip()]
    except ValueError as e:
        raise ConfigError(f"{key}: expected comma-separated integers, got {value!r}") from e


def _bool(value: str, key: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ConfigError(f"{key}: expected true or false, got {value!r}")


def _points(value: str) -> List[List[float]]:
    return [_floats(chunk, "vertices") for chunk in value.split(";") if chunk.strip()]


def _required(params: Dict[str, str], key: str) -> str:
    if key not in params:
        raise ConfigError(f"missing key {key!r} for kind {params.get('kind')!r}")
    return params[key]


def _circle(params: Dict[str, str]) -> Curve:
    return CircleArc(
        curvature=_float(_required(params, "curvature"), "curvature"),
        length=_float(_required(params, "length"), "length"),
        phase=_float(params.get("phase", "0"), "phase"),
        dim=int(_float(params.get("dim", "2"), "dim")),
    )


def _axis(params: Dict[str, str]) -> Curve:
    dim = int(_float(params["dim"], "dim")) if "dim" in params else None
    return AxisPath(
        _ints(_required(params, "directions"), "directions"),
        _floats(_required(params, "lengths"), "lengths"),
        dim=dim,
    )


def _piecewise(params: Dict[str, str]) -> Curve:
    if "dim" in params and int(_float(params["dim"], "dim")) != 2:
        raise ConfigError("piecewise-circular curves are planar (dim = 2)")
    return PiecewiseCircular(
        _floats(_required(params, "curvatures"), "curvatures"),
        _ints(_required(params, "orientations"), "orientations"),
        _floats(_required(params, "lengths"), "lengths"),
        phase=_float(params.get("phase", "0"), "phase"),
    )


def _polyline(params: Dict[str, str]) -> Curve:
    vertices = _points(_required(params, "vertices"))
    if len({len(v) for v in vertices}) != 1:
        raise ConfigError("all vertices must have the same dimension")
    if "dim" in params and int(_float(params["dim"], "dim")) != len(vertices[0]):
        raise ConfigError("dim does not match the vertex coordinates")
    times = _floats(params["times"], "times") if "times" in params else None
    renormalize = _bool(params.get("renormalize", "false"), "renormalize")
    return Polyline(vertices, times=times, renormalize=renormalize)


_BUILDERS: Dict[str, Callable[[Dict[str, str]], Curve]] = {
    CurveKind.CIRCLE_ARC.value: _circle,
    CurveKind.AXIS_PATH.value: _axis,
    CurveKind.PIECEWISE_CIRCULAR.value: _piecewise,
    CurveKind.POLYLINE.value: _polyline,
}


def build_curve(params: Dict[str, str]) -> Curve:
    """
    Construct a curve from parsed parameters.

    Raises:
        ConfigError: For an unknown kind, unknown keys or malformed values
        ValidationError: If the curve constructor rejects the parameters
    """
    kind = params.get("kind")
    if kind not in _BUILDERS:
        raise ConfigError(f"kind must be one of {sorted(_BUILDERS)}, got {kind!r}")
    unknown = set(params) - ALLOWED_KEYS[kind] - {"kind"}
    if unknown:
        raise ConfigError(f"unknown keys for {kind}: {', '.join(sorted(unknown))}")
    curve = _BUILDERS[kind](params)
    logger.debug(f"Built {curve!r} from curve spec")
    return curve


def load_curve(
    path: Optional[str | Path] = None, overrides: Optional[Dict[str, str]] = None
) -> Tuple[Curve, Dict[str, str]]:
    """
    Build a curve from a curve-spec file with inline parameters layered on top.

    Returns:
        The curve and the merged parameters it was built from

    Raises:
        ConfigError: If the file cannot be read or the parameters are malformed
        ValidationError: If neither a file nor inline parameters are given
    """
    params: Dict[str, str] = {}
    if path:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read curve file {path}: {e}") from e
        params = parse_curve_spec(text)
    params.update(overrides or {})
    if not params:
        raise ValidationError("a curve is required (--curve PATH or --set kind=...)")
    return build_curve(params), params
