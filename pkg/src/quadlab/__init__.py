"""Labyrinth fractals on convex quadrilaterals, in exact rational arithmetic."""

from .geometry import (BaryCoords, Point, Quad, apply_map, evaluate, make_quad, polygon_area,
                       represent, segment_intersects_polygon_interior)
from .iteration import StageSet, composed_geometry, stage_area, stage_geometry, substitute
from .pattern import E4_TEXT, Pattern, parse_pattern, serialize, validate
from .subdivision import CellIndex, cell_vertices, grid_of, index_at, index_set

__all__ = [
    "BaryCoords", "CellIndex", "E4_TEXT", "Pattern", "Point", "Quad", "StageSet",
    "apply_map", "cell_vertices", "composed_geometry", "evaluate", "grid_of", "index_at",
    "index_set", "make_quad", "parse_pattern", "polygon_area", "represent",
    "segment_intersects_polygon_interior", "serialize", "stage_area", "stage_geometry",
    "substitute", "validate",
]

__version__ = "0.1.0"
