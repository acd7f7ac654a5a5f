"""Exact geodetic convexity computations on Kneser graphs K(2n+k, n)."""

from .core import (
    GraphParams, IntersectionClass, KneserError, KVertex, classify_intersection, diameter,
    diametral_bounds, distance, h_function, intersection_size, is_adjacent, is_diametral_pair,
    make_vertex, parse_vertex, rank, unrank,
)
from .geodesy import (
    DistanceOracle, VertexSet, bfs_distances, hull_closure, interval, interval_of_set,
    is_convex, is_geodetic_set, is_hull_set, iterated_interval,
)
from .search import BudgetExceeded, Report, SearchBudget, min_geodetic_set, min_hull_set, sweep_verify

__version__ = "0.1.0"
