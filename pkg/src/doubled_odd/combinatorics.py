"""Vertices, distances and distance-regularity data of doubled Odd graphs.

For the ground set S = {1, ..., 2m+1} the doubled Odd graph has all m-subsets
and all (m+1)-subsets of S as vertices, two of them adjacent exactly when one
strictly contains the other.  Subsets are stored as integer bitmasks (bit e-1
set <=> element e present), so sizes and intersections are popcounts.  The
canonical vertex order -- all m-subsets before all (m+1)-subsets, each group
by ascending mask value -- fixes every matrix row/column index in the package.

The graph is bipartite with diameter 2m+1, and the distance between vertices
y and z is |y| + |z| - 2|y n z|; a breadth-first search oracle for this
formula lives in the test suite, not here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .linalg import SparseExactMatrix


@dataclass(frozen=True)
class GroundSet:
    """The point set S = {1, ..., 2m+1} of one doubled Odd graph."""

    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")

    @property
    def n_points(self) -> int:
        return 2 * self.m + 1

    @property
    def diameter(self) -> int:
        return 2 * self.m + 1

    @property
    def full_mask(self) -> int:
        return (1 << self.n_points) - 1

    @property
    def base_vertex(self) -> int:
        """The distinguished base vertex {1, ..., m} as a bitmask."""
        return (1 << self.m) - 1


class DistanceRegularityError(Exception):
    """Witness that some intersection number depends on the chosen pair."""

    def __init__(self, x: int, y: int, i: int, j: int):
        self.x, self.y, self.i, self.j = x, y, i, j
        super().__init__(
            f"intersection count for (i={i}, j={j}) differs at the pair "
            f"x={sorted(elements_of(x))}, y={sorted(elements_of(y))}"
        )


def mask_of(elements) -> int:
    mask = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"elements are 1-based, got {e}")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def vertex_count(g: GroundSet) -> int:
    return 2 * comb(g.n_points, g.m)


@lru_cache(maxsize=32)
def _vertices(m: int) -> tuple[int, ...]:
    n = 2 * m + 1
    def masks(k: int) -> list[int]:
        return sorted(sum(1 << b for b in combo) for combo in combinations(range(n), k))
    return tuple(masks(m) + masks(m + 1))


@lru_cache(maxsize=32)
def _vertex_index(m: int) -> dict[int, int]:
    return {v: i for i, v in enumerate(_vertices(m))}


def enumerate_vertices(g: GroundSet) -> list[int]:
    """All vertices as bitmasks in the canonical order."""
    return list(_vertices(g.m))


def vertex_index(g: GroundSet, v: int) -> int:
    """Ordinal of a vertex in the canonical order."""
    try:
        return _vertex_index(g.m)[v]
    except KeyError:
        raise ValueError(f"{v:#b} is not a vertex for m={g.m}") from None


def distance(y: int, z: int) -> int:
    """Graph distance |y| + |z| - 2|y n z| between two vertex bitmasks."""
    return y.bit_count() + z.bit_count() - 2 * (y & z).bit_count()


def adjacency_matrix(g: GroundSet) -> SparseExactMatrix:
    """0/1 adjacency matrix in the canonical vertex order."""
    verts = _vertices(g.m)
    index = _vertex_index(g.m)
    half = comb(g.n_points, g.m)
    n = len(verts)
    rows: dict[int, dict[int, object]] = {}
    full = g.full_mask
    for yi in range(half):
        y = verts[yi]
        rest = full & ~y
        while rest:
            bit = rest & -rest
            rest ^= bit
            zi = index[y | bit]
            rows.setdefault(yi, {})[zi] = 1
            rows.setdefault(zi, {})[yi] = 1
    return SparseExactMatrix(n, n, rows)


@lru_cache(maxsize=8)
def _distance_matrices(m: int) -> tuple[SparseExactMatrix, ...]:
    verts = _vertices(m)
    n = len(verts)
    diam = 2 * m + 1
    rows_by_i: list[dict[int, dict[int, object]]] = [{} for _ in range(diam + 1)]
    for yi, y in enumerate(verts):
        ysz = y.bit_count()
        for zi, z in enumerate(verts):
            d = ysz + z.bit_count() - 2 * (y & z).bit_count()
            rows_by_i[d].setdefault(yi, {})[zi] = 1
    return tuple(SparseExactMatrix(n, n, rows) for rows in rows_by_i)


def distance_matrix(g: GroundSet, i: int) -> SparseExactMatrix:
    """0/1 matrix of pairs at distance exactly i; rejects i outside [0, 2m+1]."""
    if not 0 <= i <= g.diameter:
        raise ValueError(f"distance index {i} outside [0, {g.diameter}]")
    return _distance_matrices(g.m)[i]


def distance_matrices(g: GroundSet) -> list[SparseExactMatrix]:
    return list(_distance_matrices(g.m))


@dataclass(frozen=True)
class IntersectionNumbers:
    """The table p^h_{ij} = #{z : d(x,z) = i, d(z,y) = j} for d(x,y) = h."""

    m: int
    table: dict[tuple[int, int, int], int]

    def p(self, h: int, i: int, j: int) -> int:
        return self.table.get((h, i, j), 0)

    @property
    def valency(self) -> int:
        return self.p(0, 1, 1)


def intersection_numbers(g: GroundSet) -> IntersectionNumbers:
    """Exhaustively recompute every p^h_{ij} over all ordered vertex pairs.

    Raises DistanceRegularityError with the first offending witness if any
    count depends on the chosen pair (it never should).
    """
    verts = _vertices(g.m)
    n = len(verts)
    sizes = [v.bit_count() for v in verts]
    dist = [
        [sizes[a] + sizes[b] - 2 * (verts[a] & verts[b]).bit_count() for b in range(n)]
        for a in range(n)
    ]
    reference: dict[int, dict[tuple[int, int], int]] = {}
    for xi in range(n):
        dx = dist[xi]
        for yi in range(n):
            dy = dist[yi]
            h = dx[yi]
            profile: dict[tuple[int, int], int] = {}
            for zi in range(n):
                key = (dx[zi], dy[zi])
                profile[key] = profile.get(key, 0) + 1
            seen = reference.get(h)
            if seen is None:
                reference[h] = profile
            elif seen != profile:
                for (i, j) in sorted(set(seen) | set(profile)):
                    if seen.get((i, j), 0) != profile.get((i, j), 0):
                        raise DistanceRegularityError(verts[xi], verts[yi], i, j)
    table = {
        (h, i, j): count
        for h in sorted(reference)
        for (i, j), count in sorted(reference[h].items())
    }
    return IntersectionNumbers(m=g.m, table=table)
