"""Normal surfaces: coordinates, solution cones and surface topology."""
from __future__ import annotations

from .cone import contejean_devie, fundamental_solutions, vertex_solutions
from .quadsearch import admissible_fundamental
from .surface import (
    Component,
    NormalSurface,
    find_essential_sphere_candidates,
    find_klein_bottles,
    find_non_vertex_linking_spheres,
    find_normal_tori,
    fundamental_surfaces,
    reconstruct,
    thin_edge_link_vectors,
)
from .coords import MatchingSystem, is_admissible, matching_system, vertex_link_vector, vertex_link_vectors

__all__ = [
    "Component",
    "MatchingSystem",
    "NormalSurface",
    "admissible_fundamental",
    "contejean_devie",
    "find_essential_sphere_candidates",
    "find_klein_bottles",
    "find_non_vertex_linking_spheres",
    "find_normal_tori",
    "fundamental_surfaces",
    "reconstruct",
    "thin_edge_link_vectors",
    "fundamental_solutions",
    "is_admissible",
    "matching_system",
    "vertex_link_vector",
    "vertex_link_vectors",
    "vertex_solutions",
]
