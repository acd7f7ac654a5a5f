"""Explicit geodetic and hull sets of Kneser graphs, and their sizes.

Constructions return ranks wrapped in :class:`VertexSet` (or plain
vertices for the small hull witnesses). None of them verify themselves;
callers check geodeticity or hull coverage through :mod:`geodesy`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import core
from .core import GraphParams, KVertex
from .geodesy import DistanceOracle, VertexSet, vertex_masks


class ConstructionError(ValueError):
    pass


class DiameterNotTwo(ConstructionError):
    pass


class PivotOutOfRange(ConstructionError):
    pass


class HullPairUnavailable(ConstructionError):
    pass


class PreconditionViolated(ConstructionError):
    pass


def _require_diameter_two(params: GraphParams) -> None:
    if not params.diameter_two:
        raise DiameterNotTwo(
            f"{params.label()} needs n >= 2 and k >= n-1 (got n={params.n}, k={params.k})"
        )


@dataclass(frozen=True)
class LevelStructure:
    """BFS levels around a root: ``level[x]`` and the layers they induce."""

    root: int
    level: np.ndarray
    layers: list[VertexSet]


def level_structure(oracle: DistanceOracle, root: int) -> LevelStructure:
    level = oracle.row(root).copy()
    layers = [VertexSet.from_mask(level == i) for i in range(int(level.max()) + 1)]
    return LevelStructure(root, level, layers)


def diametrically_opposed_set(oracle: DistanceOracle, r: int) -> VertexSet:
    """Vertices at distance diam from ``r``, cross-checked against the intersection window."""
    params = oracle.params
    by_distance = VertexSet.from_mask(oracle.row(r) == core.diameter(params))
    lo, hi = core.diametral_bounds(params)
    s = np.bitwise_count(oracle.masks & oracle.masks[r])
    by_window = VertexSet.from_mask((s >= lo) & (s <= hi) & (np.arange(oracle.size) != r))
    if by_distance != by_window:
        raise ConstructionError(
            f"diametral set of rank {r} differs between distances and intersection window"
        )
    return by_distance


def geodetic_set_theorem3(oracle: DistanceOracle, r: int) -> VertexSet:
    """The root together with every vertex diametrically opposed to it."""
    return diametrically_opposed_set(oracle, r) | VertexSet.from_ranks(oracle.size, [r])


def _lowest(mask: int, count: int) -> int:
    """The ``count`` smallest elements of ``mask``."""
    out = 0
    for _ in range(count):
        if not mask:
            raise ConstructionError("not enough elements to choose from")
        low = mask & -mask
        out |= low
        mask ^= low
    return out


def deeper_neighbor(params: GraphParams, r: int, x: int, y: int) -> KVertex:
    """A neighbour of ``x`` one level further from ``r`` than ``x``.

    ``y`` must be a neighbour of ``x`` one level closer to ``r``. For even
    levels the result trades elements of ``y`` outside ``r`` for elements of
    ``r`` missing from both ``x`` and ``y``; for odd levels it drops elements
    of ``r`` shared with ``y`` and refills from outside ``r``, ``x``, ``y``.
    Free choices always take the smallest elements.
    """
    rv, xv, yv = (core.unrank(params, i) for i in (r, x, y))
    diam = core.diameter(params)
    i = core.distance(params, rv, xv)
    if not 1 <= i < diam:
        raise PreconditionViolated(f"level of x is {i}, need 1 <= level < {diam}")
    if not core.is_adjacent(xv, yv):
        raise PreconditionViolated("x and y are not adjacent")
    if core.distance(params, rv, yv) != i - 1:
        raise PreconditionViolated("y is not one level closer to r than x")

    lo, hi = core.diametral_bounds(params)
    n, k = params.n, params.k
    ground = (1 << params.ground) - 1
    common = rv.mask & yv.mask
    shared = common.bit_count()
    if i % 2 == 0:
        take = min(k, lo - shared)
        z1 = _lowest(rv.mask & ~(xv.mask | yv.mask), take)
        z2 = _lowest(yv.mask & ~rv.mask, n - take - shared)
        z = common | z1 | z2
    else:
        drop = min(k, shared - hi)
        z3 = _lowest(common, drop)
        z4 = _lowest(ground & ~(rv.mask | xv.mask | yv.mask), drop)
        z = (yv.mask & ~z3) | z4
    return KVertex(z)


def gn_upper_bound(params: GraphParams) -> int:
    return 1 + core.diametral_count(params)


def geodetic_set_diam2(params: GraphParams, pivot: int = 1) -> VertexSet:
    """Every vertex containing ``pivot``; a minimum geodetic set when the diameter is two."""
    _require_diameter_two(params)
    if not 1 <= pivot <= params.ground:
        raise PivotOutOfRange(f"pivot {pivot} not in [1, {params.ground}]")
    masks = vertex_masks(params)
    return VertexSet.from_mask((masks >> np.uint64(pivot - 1)) & np.uint64(1) == 1)


def gn_diam2(params: GraphParams) -> int:
    _require_diameter_two(params)
    return core.binom(params.ground - 1, params.n - 1)


def hull_triple_lemma6(params: GraphParams) -> tuple[KVertex, KVertex, KVertex]:
    """Three vertices sharing {1..n-1}, completed by n, n+1 and n+2."""
    _require_diameter_two(params)
    base = (1 << (params.n - 1)) - 1
    n = params.n
    return KVertex(base | 1 << (n - 1)), KVertex(base | 1 << n), KVertex(base | 1 << (n + 1))


def hull_pair(params: GraphParams) -> tuple[KVertex, KVertex]:
    """Two vertices meeting in n-1 elements; a hull set once k > 2."""
    _require_diameter_two(params)
    if params.k <= 2:
        raise HullPairUnavailable(
            f"{params.label()} has k={params.k} <= 2, so no two vertices form a hull set"
        )
    x, y, _ = hull_triple_lemma6(params)
    return x, y


def ghn_diam2(params: GraphParams) -> int:
    _require_diameter_two(params)
    return 2 if params.k > 2 else 3
