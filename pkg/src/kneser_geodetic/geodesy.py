"""Geodetic intervals, iterated intervals and hull closures on Kneser graphs.

Distances come from a :class:`DistanceOracle`, either the closed form
(``"formula"``) or breadth-first search over the disjointness relation
(``"bfs"``). The two are independent routes to the same numbers; the test
suite checks them against each other.

Interval membership uses the metric identity
``d(u, w) + d(w, v) == d(u, v)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import core
from .core import GraphParams, KVertex

# Above this many vertices the BFS oracle computes rows on demand.
TABLE_LIMIT = 1 << 13


@dataclass(frozen=True)
class VertexSet:
    """A set of vertex ranks stored as the bits of a Python integer."""

    size: int
    bits: int = 0

    @classmethod
    def from_ranks(cls, size: int, ranks: Iterable[int]) -> "VertexSet":
        bits = 0
        for r in ranks:
            if not 0 <= r < size:
                raise core.RankOutOfBounds(f"rank {r} not in [0, {size})")
            bits |= 1 << r
        return cls(size, bits)

    @classmethod
    def from_mask(cls, flags: np.ndarray) -> "VertexSet":
        packed = np.packbits(np.asarray(flags, dtype=bool), bitorder="little")
        return cls(len(flags), int.from_bytes(packed.tobytes(), "little"))

    @classmethod
    def full(cls, size: int) -> "VertexSet":
        return cls(size, (1 << size) - 1)

    def to_mask(self) -> np.ndarray:
        raw = self.bits.to_bytes((self.size + 7) // 8, "little")
        flags = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return flags[: self.size].astype(bool)

    def ranks(self) -> list[int]:
        return np.flatnonzero(self.to_mask()).tolist()

    def is_full(self) -> bool:
        return self.bits == (1 << self.size) - 1

    def issubset(self, other: "VertexSet") -> bool:
        return self.bits & ~other.bits == 0

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.ranks())

    def __contains__(self, r: int) -> bool:
        return 0 <= r < self.size and (self.bits >> r) & 1 == 1

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.size, self.bits | other.bits)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.size, self.bits & other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.size, self.bits & ~other.bits)


def vertex_masks(params: GraphParams) -> np.ndarray:
    return np.fromiter(core.iter_masks(params), dtype=np.uint64, count=params.vertex_count)


def bfs_distances(params: GraphParams, source: int, masks: np.ndarray | None = None) -> np.ndarray:
    """Shortest-path lengths from ``source`` where edges join disjoint subsets."""
    if masks is None:
        masks = vertex_masks(params)
    dist = np.full(len(masks), -1, dtype=np.int16)
    dist[source] = 0
    frontier = np.array([source])
    level = 0
    while frontier.size:
        level += 1
        hit = np.zeros(len(masks), dtype=bool)
        for start in range(0, frontier.size, 256):
            block = masks[frontier[start:start + 256]]
            hit |= ((block[:, None] & masks[None, :]) == 0).any(axis=0)
        new = np.flatnonzero(hit & (dist < 0))
        dist[new] = level
        frontier = new
    return dist.astype(np.uint8)


class DistanceOracle:
    """All distances of one Kneser graph, by closed form or by BFS."""

    MODES = ("formula", "bfs")

    def __init__(self, params: GraphParams, mode: str = "formula") -> None:
        if mode not in self.MODES:
            raise ValueError(f"unknown oracle mode {mode!r}")
        self.params = params
        self.mode = mode
        self.masks = vertex_masks(params)
        self.size = len(self.masks)
        self._table = np.array(core.distance_table(params), dtype=np.uint8)
        self._matrix: np.ndarray | None = None
        if self.size <= TABLE_LIMIT:
            self._matrix = self._build_matrix()

    @classmethod
    def formula(cls, params: GraphParams) -> "DistanceOracle":
        return cls(params, "formula")

    @classmethod
    def bfs(cls, params: GraphParams) -> "DistanceOracle":
        return cls(params, "bfs")

    def _compute_row(self, u: int) -> np.ndarray:
        if self.mode == "bfs":
            return bfs_distances(self.params, u, self.masks)
        s = np.bitwise_count(self.masks & self.masks[u])
        return self._table[s]

    def _build_matrix(self) -> np.ndarray:
        if self.mode == "bfs":
            return np.stack([self._compute_row(u) for u in range(self.size)])
        s = np.bitwise_count(self.masks[:, None] & self.masks[None, :])
        return self._table[s]

    @property
    def materialized(self) -> bool:
        return self._matrix is not None

    def matrix(self) -> np.ndarray:
        if self._matrix is None:
            raise MemoryError(f"{self.size} vertices exceeds the table limit {TABLE_LIMIT}")
        return self._matrix

    def row(self, u: int) -> np.ndarray:
        if self._matrix is not None:
            return self._matrix[u]
        return self._compute_row(u)

    def rows(self, us: list[int]) -> np.ndarray:
        if self._matrix is not None:
            return self._matrix[us]
        return np.stack([self._compute_row(u) for u in us])

    def dist(self, u: int, v: int) -> int:
        if self._matrix is not None:
            return int(self._matrix[u, v])
        return int(self.row(u)[v])

    def rank_of(self, v: KVertex) -> int:
        return core.rank(self.params, v)

    def vertex(self, r: int) -> KVertex:
        return KVertex(int(self.masks[r]))

    def empty(self) -> VertexSet:
        return VertexSet(self.size)

    def everything(self) -> VertexSet:
        return VertexSet.full(self.size)

    def set_of(self, vertices: Iterable[KVertex]) -> VertexSet:
        return VertexSet.from_ranks(self.size, (self.rank_of(v) for v in vertices))

    def vertices_of(self, w: VertexSet) -> list[KVertex]:
        return [self.vertex(r) for r in w.ranks()]


def interval(oracle: DistanceOracle, u: int, v: int) -> VertexSet:
    """All vertices on some shortest u-v path."""
    du, dv = oracle.row(u), oracle.row(v)
    on_path = du.astype(np.int16) + dv == du[v]
    return VertexSet.from_mask(on_path)


def _grow(oracle: DistanceOracle, new: list[int], old: list[int], stop_when_full: bool) -> np.ndarray:
    """Union of I[a, b] over a in ``new`` and b in ``new + old``, as a flag array."""
    acc = np.zeros(oracle.size, dtype=bool)
    acc[new] = True
    if not new:
        return acc
    members = new + old
    rows = oracle.rows(members).astype(np.int16)
    for i in range(len(new)):
        rest = rows[i + 1:]
        if rest.shape[0]:
            targets = rows[i, members[i + 1:]][:, None]
            acc |= ((rows[i] + rest) == targets).any(axis=0)
        if stop_when_full and acc.all():
            break
    return acc


def interval_of_set(oracle: DistanceOracle, w: VertexSet) -> VertexSet:
    """I[W]: union of I[u, v] over all unordered pairs of W."""
    return VertexSet.from_mask(_grow(oracle, w.ranks(), [], False)) | w


def iterated_interval(oracle: DistanceOracle, w: VertexSet, t: int) -> VertexSet:
    if t < 0:
        raise ValueError("t must be non-negative")
    cur = w
    for _ in range(t):
        nxt = interval_of_set(oracle, cur)
        if nxt == cur:
            break
        cur = nxt
    return cur


def hull_closure(oracle: DistanceOracle, w: VertexSet) -> tuple[VertexSet, int]:
    """Least g-convex superset of ``w`` and the number of interval rounds it took.

    Each round only re-examines pairs with an endpoint added in the previous
    round; pairs among older vertices cannot contribute anything new.
    """
    closure = w
    fresh = w.ranks()
    old: list[int] = []
    steps = 0
    while fresh:
        grown = VertexSet.from_mask(_grow(oracle, fresh, old, False)) | closure
        added = grown - closure
        if not added.bits:
            break
        steps += 1
        old = closure.ranks()
        fresh = added.ranks()
        closure = grown
    return closure, steps


def is_convex(oracle: DistanceOracle, w: VertexSet) -> bool:
    return interval_of_set(oracle, w) == w


def is_geodetic_set(oracle: DistanceOracle, w: VertexSet) -> bool:
    if not w.bits:
        return oracle.size == 0
    return bool(_grow(oracle, w.ranks(), [], True).all())


def is_hull_set(oracle: DistanceOracle, w: VertexSet) -> bool:
    return hull_closure(oracle, w)[0].is_full()
