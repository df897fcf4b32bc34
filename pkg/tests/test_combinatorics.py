"""Vertex enumeration, distances and intersection numbers at small m."""

from collections import deque
from math import comb

import pytest

from doubled_odd.combinatorics import (
    GroundSet,
    adjacency_matrix,
    distance,
    distance_matrices,
    distance_matrix,
    elements_of,
    enumerate_vertices,
    intersection_numbers,
    mask_of,
    vertex_count,
    vertex_index,
)
from doubled_odd.linalg import SparseExactMatrix


def test_mask_round_trip():
    for elements in [(), (1,), (1, 3), (2, 5, 7)]:
        assert elements_of(mask_of(elements)) == elements


def test_vertex_counts_and_order():
    for m, expected in [(1, 6), (2, 20), (3, 70), (4, 252)]:
        g = GroundSet(m)
        verts = enumerate_vertices(g)
        assert vertex_count(g) == expected
        assert len(verts) == expected
        half = expected // 2
        assert all(bin(v).count("1") == m for v in verts[:half])
        assert all(bin(v).count("1") == m + 1 for v in verts[half:])
        # ascending masks inside each half, so the order is reproducible
        assert verts[:half] == sorted(verts[:half])
        assert verts[half:] == sorted(verts[half:])
        assert all(v & ~g.full_mask == 0 for v in verts)


def test_vertex_index_round_trip():
    for m in (1, 2, 3):
        g = GroundSet(m)
        for idx, v in enumerate(enumerate_vertices(g)):
            assert vertex_index(g, v) == idx
        with pytest.raises(ValueError):
            vertex_index(g, 0)
        if m >= 2:
            with pytest.raises(ValueError):
                vertex_index(g, g.full_mask)


def test_ground_set_validation():
    with pytest.raises(ValueError):
        GroundSet(0)


def _bfs_distances(g: GroundSet) -> dict[tuple[int, int], int]:
    verts = enumerate_vertices(g)
    adj = adjacency_matrix(g)
    neigh: dict[int, list[int]] = {i: [] for i in range(len(verts))}
    for r, c, _ in adj.entries():
        neigh[r].append(c)
    dist = {}
    for s in range(len(verts)):
        seen = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in neigh[u]:
                if w not in seen:
                    seen[w] = seen[u] + 1
                    queue.append(w)
        for t, d in seen.items():
            dist[(s, t)] = d
    return dist


def test_distance_formula_matches_bfs():
    for m in (1, 2, 3):
        g = GroundSet(m)
        verts = enumerate_vertices(g)
        oracle = _bfs_distances(g)
        n = len(verts)
        assert len(oracle) == n * n, "graph must be connected"
        for a in range(n):
            for b in range(n):
                assert distance(verts[a], verts[b]) == oracle[(a, b)]
        assert max(oracle.values()) == g.diameter == 2 * m + 1


def test_adjacency_is_bipartite_containment():
    for m in (1, 2, 3):
        g = GroundSet(m)
        verts = enumerate_vertices(g)
        a1 = adjacency_matrix(g)
        assert a1 == a1.transpose()
        half = len(verts) // 2
        for r, c, v in a1.entries():
            assert v == 1
            y, z = verts[r], verts[c]
            # every edge joins an m-subset to an (m+1)-superset
            assert (r < half) != (c < half)
            small, big = (y, z) if r < half else (z, y)
            assert small & big == small
        # valency m+1 on every row
        for r in range(len(verts)):
            assert sum(1 for _ in a1._rows.get(r, {})) == m + 1


def test_distance_matrices_partition_all_pairs():
    for m in (1, 2, 3):
        g = GroundSet(m)
        mats = distance_matrices(g)
        assert len(mats) == 2 * m + 2
        n = vertex_count(g)
        assert mats[0] == SparseExactMatrix.identity(n)
        assert mats[1] == adjacency_matrix(g)
        total = SparseExactMatrix.zero(n, n)
        for mat in mats:
            total = total + mat
        ones = SparseExactMatrix.from_entries(
            n, n, ((r, c, 1) for r in range(n) for c in range(n))
        )
        assert total == ones
        assert sum(mat.nnz for mat in mats) == n * n


def test_distance_matrix_rejects_bad_index():
    g = GroundSet(2)
    with pytest.raises(ValueError):
        distance_matrix(g, -1)
    with pytest.raises(ValueError):
        distance_matrix(g, 6)


def test_intersection_numbers_m2_table():
    g = GroundSet(2)
    table = intersection_numbers(g)
    assert table.valency == 3
    assert table.p(0, 1, 1) == 3
    # symmetry in the lower indices
    for (h, i, j), value in table.table.items():
        assert table.p(h, j, i) == value
    # row sums recover the sphere sizes around any vertex
    verts = enumerate_vertices(g)
    x0 = verts[0]
    sphere = {}
    for v in verts:
        sphere[distance(x0, v)] = sphere.get(distance(x0, v), 0) + 1
    for h in range(2 * g.m + 2):
        for i in range(2 * g.m + 2):
            assert sum(table.p(h, i, j) for j in range(2 * g.m + 2)) == sphere[i]


def test_intersection_numbers_match_direct_count_m1():
    g = GroundSet(1)
    table = intersection_numbers(g)
    verts = enumerate_vertices(g)
    for x in verts:
        for y in verts:
            h = distance(x, y)
            for i in range(4):
                for j in range(4):
                    direct = sum(
                        1 for z in verts if distance(x, z) == i and distance(z, y) == j
                    )
                    assert table.p(h, i, j) == direct
