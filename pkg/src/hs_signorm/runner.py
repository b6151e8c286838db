"""
Experiment execution: one cell per (route, degree), rows sorted by (route, degree).

Cells run concurrently in worker threads; every Monte-Carlo cell draws from its
own random stream, so values do not depend on scheduling.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .config_loader import get_default_workers, get_output_defaults
from .curves.base import Curve
from .errors import SignormError, ValidationError
from .registry.base import RouteKind, RouteSettings
from .registry.route_registry import RouteRegistry
from .utils import measure_time, run_parallel

logger = logging.getLogger(__name__)

CSV_HEADER = ("route", "degree", "value", "stderr", "wall_ms", "seed")
FORMATS = ("csv", "json")


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce one run."""

    curve: Curve
    degrees: List[int]
    routes: List[str]
    settings: RouteSettings = field(default_factory=RouteSettings)
    curve_source: Dict[str, Any] = field(default_factory=dict)
    output: Optional[str] = None
    format: str = "csv"
    workers: int = 0
    timing: bool = True

    def validate(self, registry: RouteRegistry) -> None:
        """
        Check degrees, routes, replicates and seed.

        Raises:
            ValidationError: On the first violated constraint
        """
        if not self.degrees:
            raise ValidationError("at least one degree is required")
        if any(d < 1 for d in self.degrees):
            raise ValidationError(f"degrees must be >= 1, got {self.degrees}")
        if not self.routes:
            raise ValidationError("at least one route is required")
        if self.format not in FORMATS:
            raise ValidationError(f"format must be one of {FORMATS}, got {self.format!r}")
        routes = [registry.require_route(name) for name in self.routes]
        if any(route.kind is RouteKind.MONTE_CARLO for route in routes):
            if self.settings.replicates < 2:
                raise ValidationError("Monte-Carlo routes need replicates >= 2")
            if self.settings.seed is None:
                raise ValidationError("Monte-Carlo routes need --seed")
            if not 0 <= self.settings.seed < 2**64:
                raise ValidationError("seed must be an unsigned 64-bit integer")
        if self.settings.truncation < 1:
            raise ValidationError("truncation must be >= 1")
        if self.settings.grid < 1:
            raise ValidationError("grid must be >= 1")

    def resolved(self) -> Dict[str, Any]:
        """JSON-friendly provenance record."""
        return {
            "version": __version__,
            "curve": self.curve_source or self.curve.describe(),
            "degrees": list(self.degrees),
            "routes": list(self.routes),
            "settings": self.settings.to_dict(),
            "format": self.format,
            "workers": self.workers,
        }


@dataclass
class Row:
    """One emitted record."""

    route: str
    degree: int
    value: float
    stderr: Optional[float]
    wall_ms: float
    seed: Optional[int]
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    comparable: bool = True

    def csv_fields(self, timing: bool = True) -> List[str]:
        return [
            self.route,
            str(self.degree),
            repr(float(self.value)),
            "" if self.stderr is None else repr(float(self.stderr)),
            f"{self.wall_ms:.3f}" if timing else "",
            "" if self.seed is None else str(self.seed),
        ]


@measure_time
async def run_experiment(config: ExperimentConfig, registry: RouteRegistry) -> List[Row]:
    """
    Execute every (route, degree) cell.

    All cells run to completion; the first failure is re-raised afterwards.

    Returns:
        Rows sorted by (route, degree)
    """
    config.validate(registry)
    cells = sorted(set(itertools.product(config.routes, config.degrees)))
    workers = config.workers or get_default_workers()
    logger.info(f"Running {len(cells)} cells on {workers} workers")

    def make_task(route_name: str, degree: int):
        async def task():
            return await registry.execute_route(route_name, config.curve, degree, config.settings)

        return task

    results = await run_parallel(*[make_task(r, d) for r, d in cells], max_concurrent=workers)

    rows: List[Row] = []
    failures: List[BaseException] = []
    for (route_name, degree), result in zip(cells, results):
        if isinstance(result, BaseException):
            level = logging.DEBUG if isinstance(result, SignormError) else logging.ERROR
            logger.log(level, f"{route_name} degree={degree} failed: {result}")
            failures.append(result)
            continue
        value, wall_ms = result
        route = registry.require_route(route_name)
        seed = config.settings.seed if route.kind is RouteKind.MONTE_CARLO else None
        rows.append(
            Row(
                route_name,
                degree,
                value.value,
                value.stderr,
                wall_ms,
                seed,
                value.diagnostics,
                route.metadata.comparable,
            )
        )
    if failures:
        raise failures[0]
    return rows


def format_csv(rows: Sequence[Row], timing: bool = True) -> str:
    """Render rows with the fixed header ``route,degree,value,stderr,wall_ms,seed``."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields(timing))
    return buffer.getvalue()


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if hasattr(value, "item"):
        return _json_safe(value.item())
    return value


def format_json(rows: Sequence[Row], config: ExperimentConfig) -> str:
    """Rows plus the resolved configuration and the compare report."""
    records = []
    for row in rows:
        record = asdict(row)
        if not config.timing:
            record["wall_ms"] = None
        records.append(record)
    document = {
        "config": config.resolved(),
        "rows": records,
        "compare": compare_report(rows),
    }
    return json.dumps(_json_safe(document), indent=2, sort_keys=True) + "\n"


def emit(rows: Sequence[Row], config: ExperimentConfig) -> str:
    """Render rows in the configured format and write them to ``config.output`` if set."""
    text = format_json(rows, config) if config.format == "json" else format_csv(rows, config.timing)
    if config.output and config.output != "-":
        Path(config.output).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {len(rows)} rows to {config.output}")
    return text


def compare_report(
    rows: Sequence[Row],
    z_threshold: Optional[float] = None,
    exact_tolerance: float = 1e-12,
) -> Dict[str, Any]:
    """
    Pairwise agreement of comparable routes that share a degree.

    For every degree and every pair of rows, ``z = |v1 - v2| / sqrt(se1^2 + se2^2)``
    (missing standard errors count as 0). Pairs without any standard error are
    flagged ``exact_match`` when the values agree within ``exact_tolerance``
    (relative) and fail otherwise.

    Returns:
        ``{"degrees": {degree: [pair, ...]}, "passed": bool, "threshold": float}``
    """
    threshold = z_threshold if z_threshold is not None else get_output_defaults()["z_threshold"]
    by_degree: Dict[int, List[Row]] = {}
    for row in (r for r in rows if r.comparable):
        by_degree.setdefault(row.degree, []).append(row)

    report: Dict[int, List[Dict[str, Any]]] = {}
    passed = True
    for degree in sorted(by_degree):
        pairs = []
        for a, b in itertools.combinations(sorted(by_degree[degree], key=lambda r: r.route), 2):
            delta = abs(a.value - b.value)
            scale = math.hypot(a.stderr or 0.0, b.stderr or 0.0)
            if scale == 0.0:
                exact = delta <= exact_tolerance * max(1.0, abs(a.value), abs(b.value))
                entry = {"z": None, "exact_match": exact, "passed": exact}
            else:
                z = delta / scale
                entry = {"z": z, "exact_match": False, "passed": z <= threshold}
            entry.update({"routes": [a.route, b.route], "delta": delta})
            passed = passed and entry["passed"]
            pairs.append(entry)
        if pairs:
            report[degree] = pairs
    return {"degrees": report, "passed": passed, "threshold": threshold}


def as_signorm_error(exc: BaseException) -> SignormError:
    """Wrap unexpected exceptions so the CLI can always report one error line."""
    if isinstance(exc, SignormError):
        return exc
    wrapped = SignormError(f"{type(exc).__name__}: {exc}")
    wrapped.__cause__ = exc
    return wrapped
