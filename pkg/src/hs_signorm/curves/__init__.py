"""Unit-speed curves, chord discretisation and curvature profiles."""

from .analytic import AxisPath, CircleArc, PiecewiseCircular
from .base import Curve, CurveKind
from .polyline import Polyline, as_polyline, random_polyline, sample_polyline
from .profile import CurvatureProfile, curvature_profile, estimate_lipschitz

__all__ = [
    "Curve",
    "CurveKind",
    "CircleArc",
    "AxisPath",
    "PiecewiseCircular",
    "Polyline",
    "sample_polyline",
    "as_polyline",
    "random_polyline",
    "CurvatureProfile",
    "curvature_profile",
    "estimate_lipschitz",
]
