"""Exact dynamic nearest-neighbor search on lattice points."""

from .geom import ExactPoint, GeometryError
from .levels import Config, Structure, insert
from .query import jump, nn_query
from .voronoi import DomainError

__all__ = ["Config", "DomainError", "ExactPoint", "GeometryError", "Structure", "insert", "jump", "nn_query"]
