import itertools

import pytest

from conveyor.errors import GraphError, NotCubic, NotThreeConnected
from conveyor.graphs import (
    CubicPlanarGraph, PlanarTriangulation, cube_graph, dual_graph, is_three_connected,
    maximal_planar_graphs, octahedron, tetrahedron, tetrahedron_graph, triangulation_from_faces,
)


def brute_canon(t):
    """Least sorted edge list over all vertex relabellings."""
    best = None
    for perm in itertools.permutations(range(t.n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in t.edges))
        if best is None or key < best:
            best = key
    return best


def test_counts_up_to_eight():
    graphs = maximal_planar_graphs(8, even_only=False)
    by_n = {}
    for t in graphs:
        by_n[t.n] = by_n.get(t.n, 0) + 1
    # number of triangulations of the sphere with n vertices
    assert by_n == {4: 1, 5: 1, 6: 2, 7: 5, 8: 14}
    assert [t.n for t in maximal_planar_graphs(8)] == [4, 6, 6] + [8] * 14


def test_small_sizes_pairwise_non_isomorphic():
    graphs = [t for t in maximal_planar_graphs(7, even_only=False)]
    keys = [brute_canon(t) for t in graphs]
    assert len(set(keys)) == len(keys)


@pytest.mark.parametrize("t", maximal_planar_graphs(8, even_only=False), ids=lambda t: f"n{t.n}")
def test_corpus_is_triangulated_and_three_connected(t):
    assert len(t.edges) == 3 * t.n - 6
    assert len(t.interior_faces) == 2 * t.n - 5
    assert is_three_connected(t.adjacency())


def test_triangulation_validation():
    with pytest.raises(GraphError):
        PlanarTriangulation(4, ((0, 1, 2),), (0, 1, 2))
    faces = list(tetrahedron().faces)
    faces[0] = faces[0][::-1]  # wrong orientation: an edge repeats a direction
    with pytest.raises(GraphError):
        PlanarTriangulation(4, tuple(faces), faces[1])
    with pytest.raises(GraphError):
        PlanarTriangulation(4, tetrahedron().faces, (7, 8, 9))
    t = triangulation_from_faces(octahedron().faces)
    assert t.n == 6


def test_cubic_validation():
    with pytest.raises(NotCubic):
        CubicPlanarGraph(((1, 2), (0, 2), (0, 1)))
    # cubic, but the edges 0-6 and 3-4 form a 2-edge cut
    rot = (
        (1, 2, 6), (0, 2, 3), (0, 1, 3), (1, 2, 4),
        (3, 5, 7), (4, 6, 7), (0, 5, 7), (4, 5, 6),
    )
    g = CubicPlanarGraph(rot)
    assert not is_three_connected(g.adjacency())
    with pytest.raises((NotThreeConnected, GraphError)):
        g.validate()


def test_cube_dual_is_octahedron():
    info = dual_graph(cube_graph())
    t = info.triangulation
    assert t.n == 6 and len(t.faces) == 8
    assert brute_canon(t) == brute_canon(octahedron())
    assert dual_graph(tetrahedron_graph()).triangulation.n == 4
    for v, tri in info.vertex_triangle.items():
        # the three faces around a cube vertex all contain it
        assert all(v in info.face_cycles[f] for f in tri)
