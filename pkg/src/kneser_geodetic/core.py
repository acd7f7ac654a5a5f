"""Kneser graph vertices as subset bitmasks, and closed-form metric queries.

A vertex of K(2n+k, n) is an n-subset of {1, ..., 2n+k}. Element ``i`` is
stored as bit ``i - 1`` of an integer mask, so intersection sizes are a
single popcount. Vertices are indexed densely by colexicographic rank, which
coincides with numeric order of the masks.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_GROUND = 64
_VERTEX_TEXT = re.compile(r"[0-9]+(,[0-9]+)*")


class KneserError(ValueError):
    """Base class for invalid parameters or vertex data."""


class InvalidParams(KneserError):
    pass


class WrongSize(KneserError):
    pass


class OutOfRange(KneserError):
    pass


class Duplicate(KneserError):
    pass


class RankOutOfBounds(KneserError):
    pass


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True, order=True)
class GraphParams:
    """The pair (n, k) defining K(2n+k, n)."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if not (isinstance(self.n, int) and isinstance(self.k, int)):
            raise InvalidParams("n and k must be integers")
        if self.n < 1 or self.k < 1:
            raise InvalidParams(f"n and k must be positive, got n={self.n}, k={self.k}")
        if 2 * self.n + self.k > MAX_GROUND:
            raise InvalidParams(f"ground set 2n+k={2 * self.n + self.k} exceeds {MAX_GROUND}")

    @property
    def ground(self) -> int:
        return 2 * self.n + self.k

    @property
    def vertex_count(self) -> int:
        return math.comb(self.ground, self.n)

    @property
    def degree(self) -> int:
        return math.comb(self.n + self.k, self.n)

    @property
    def diameter_two(self) -> bool:
        """True when n >= 2 and k >= n - 1 (n = 1 gives complete graphs)."""
        return self.n >= 2 and self.k >= self.n - 1

    def label(self) -> str:
        return f"K({self.ground},{self.n})"

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "ground": self.ground}


@dataclass(frozen=True, order=True)
class KVertex:
    """An n-subset encoded as a bitmask; bit ``i - 1`` holds element ``i``."""

    mask: int

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def elements(self) -> list[int]:
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(low.bit_length())
            m ^= low
        return out

    def text(self) -> str:
        return ",".join(str(e) for e in self.elements())

    def __str__(self) -> str:
        return "{" + self.text() + "}"


def make_vertex(params: GraphParams, elements: Iterable[int]) -> KVertex:
    elements = list(elements)
    if len(set(elements)) != len(elements):
        raise Duplicate(f"repeated elements in {elements}")
    if len(elements) != params.n:
        raise WrongSize(f"expected {params.n} elements, got {len(elements)}")
    mask = 0
    for e in elements:
        if not isinstance(e, int) or not 1 <= e <= params.ground:
            raise OutOfRange(f"element {e!r} not in [1, {params.ground}]")
        mask |= 1 << (e - 1)
    return KVertex(mask)


def parse_vertex(params: GraphParams, text: str) -> KVertex:
    """Parse the comma-separated 1-based text form, e.g. ``"1,2,3"``."""
    if not _VERTEX_TEXT.fullmatch(text):
        raise KneserError(f"malformed vertex text {text!r}")
    return make_vertex(params, [int(p) for p in text.split(",")])


def check_vertex(params: GraphParams, v: KVertex) -> None:
    if v.mask >> params.ground:
        raise OutOfRange(f"{v} has elements beyond {params.ground}")
    if v.size != params.n:
        raise WrongSize(f"{v} does not have {params.n} elements")


def rank(params: GraphParams, v: KVertex) -> int:
    """Colexicographic rank: sum of C(e_i - 1, i) over sorted elements."""
    check_vertex(params, v)
    return sum(math.comb(e - 1, i) for i, e in enumerate(v.elements(), start=1))


def unrank(params: GraphParams, r: int) -> KVertex:
    if not 0 <= r < params.vertex_count:
        raise RankOutOfBounds(f"rank {r} not in [0, {params.vertex_count})")
    mask = 0
    top = params.ground
    for i in range(params.n, 0, -1):
        # largest e with C(e - 1, i) <= r
        e = top
        while math.comb(e - 1, i) > r:
            e -= 1
        r -= math.comb(e - 1, i)
        mask |= 1 << (e - 1)
        top = e - 1
    return KVertex(mask)


def iter_masks(params: GraphParams) -> Iterator[int]:
    """All vertex masks in increasing (= colex) order, by Gosper's hack."""
    m = (1 << params.n) - 1
    limit = 1 << params.ground
    while m < limit:
        yield m
        low = m & -m
        ripple = m + low
        m = ripple | (((m ^ ripple) >> 2) // low)


def all_vertices(params: GraphParams) -> list[KVertex]:
    return [KVertex(m) for m in iter_masks(params)]


def intersection_size(u: KVertex, v: KVertex) -> int:
    return (u.mask & v.mask).bit_count()


def is_adjacent(u: KVertex, v: KVertex) -> bool:
    return u.mask & v.mask == 0


def distance_for_intersection(params: GraphParams, s: int) -> int:
    """Distance between two vertices meeting in ``s`` elements."""
    n, k = params.n, params.k
    if s == n:
        return 0
    if s == 0:
        return 1
    if k >= n - 1:
        return 2
    return min(2 * ceil_div(n - s, k), 2 * ceil_div(s, k) + 1)


def distance_table(params: GraphParams) -> tuple[int, ...]:
    """Distances indexed by intersection size 0..n."""
    return tuple(distance_for_intersection(params, s) for s in range(params.n + 1))


def distance(params: GraphParams, u: KVertex, v: KVertex) -> int:
    return distance_for_intersection(params, intersection_size(u, v))


def diameter(params: GraphParams) -> int:
    return ceil_div(params.n - 1, params.k) + 1


def h_function(params: GraphParams) -> int:
    """Width of the window of intersection sizes realizing the diameter."""
    n, k = params.n, params.k
    m = n % k
    if m <= 1:
        return max(m + k - 2, 0)
    return m - 2


def diametral_bounds(params: GraphParams) -> tuple[int, int]:
    n, k = params.n, params.k
    lo = (ceil_div(n - 1, 2 * k) - 1) * k + 1
    return lo, lo + h_function(params)


def is_diametral_pair(params: GraphParams, u: KVertex, v: KVertex) -> bool:
    lo, hi = diametral_bounds(params)
    return lo <= intersection_size(u, v) <= hi


class IntersectionClass(enum.Enum):
    FORCED_ODD = "ForcedOdd"
    FORCED_EVEN = "ForcedEven"
    DIAMETRAL = "Diametral"


def classify_intersection(params: GraphParams, s: int) -> IntersectionClass:
    if not 0 <= s <= params.n:
        raise KneserError(f"intersection size {s} not in [0, {params.n}]")
    lo, hi = diametral_bounds(params)
    if s < lo:
        return IntersectionClass.FORCED_ODD
    if s > hi:
        return IntersectionClass.FORCED_EVEN
    return IntersectionClass.DIAMETRAL


def binom(a: int, b: int) -> int:
    """C(a, b), zero outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def diametral_count(params: GraphParams) -> int:
    """Number of vertices diametrically opposed to any fixed vertex."""
    lo, hi = diametral_bounds(params)
    n, k = params.n, params.k
    return sum(binom(n, i) * binom(n + k, n - i) for i in range(lo, hi + 1))


def sweep_params(max_vertices: int, min_n: int = 2) -> list[GraphParams]:
    """All (n, k) with n >= min_n, k >= 1 and at most ``max_vertices`` vertices."""
    out = []
    n = min_n
    while math.comb(2 * n + 1, n) <= max_vertices and 2 * n + 1 <= MAX_GROUND:
        k = 1
        while 2 * n + k <= MAX_GROUND and math.comb(2 * n + k, n) <= max_vertices:
            out.append(GraphParams(n, k))
            k += 1
        n += 1
    return out


def vertices_text(vs: Sequence[KVertex]) -> list[str]:
    return [v.text() for v in vs]
