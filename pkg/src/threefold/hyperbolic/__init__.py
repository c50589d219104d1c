"""Hyperbolic structures on ideal triangulations.

Gluing equations, Newton solving, interval certification, volume and cusp
invariants, injectivity-radius bounds, root bounds and comparison.
"""
from __future__ import annotations

from .certify import CertifiedSolution, certify, evaluate
from .compare import Distinct, Inconclusive, IsomorphicTriangulations, compare, symmetries
from .gluing import REGULAR, GluingSystem, Row, ShapeVector, build_gluing_system, develop_cusp
from .injectivity import ball_volume, ibound, injectivity_radius_lower_bound, injectivity_report, truncated_cell
from .interval import CInterval, Interval
from .invariants import V_REGULAR, bloch_wigner, bloch_wigner_interval, cusp_areas, cusp_shapes, volume
from .newton import newton_solve
from .roots import root_magnitude_bounds

__all__ = [
    "CInterval",
    "CertifiedSolution",
    "Distinct",
    "GluingSystem",
    "Inconclusive",
    "Interval",
    "IsomorphicTriangulations",
    "REGULAR",
    "Row",
    "ShapeVector",
    "V_REGULAR",
    "ball_volume",
    "bloch_wigner",
    "bloch_wigner_interval",
    "build_gluing_system",
    "certify",
    "compare",
    "cusp_areas",
    "cusp_shapes",
    "develop_cusp",
    "evaluate",
    "ibound",
    "injectivity_radius_lower_bound",
    "injectivity_report",
    "newton_solve",
    "root_magnitude_bounds",
    "symmetries",
    "truncated_cell",
    "volume",
]
