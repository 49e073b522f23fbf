#!/usr/bin/env python3
"""
Tests for rotation systems, face tracing and triangulation validation
"""

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from census_errors import EulerViolation, FaceNotFound, NotSimple, NotSymmetric, NotTriangular, TooSmall
from generators import double_wheel, k4, random_triangulation, stacked
from plane_graph import (
    RotationSystem,
    delete_vertex,
    edge_key,
    four_connected_by_cuts,
    from_rotation_system,
    has_small_cut,
    is_four_connected,
    near_triangulation,
    near_triangulation_from_faces,
    relabel,
    rotation_from_faces,
)

K4_ROT = [[2, 3, 1], [0, 3, 2], [1, 3, 0], [2, 1, 0]]


def test_k4_from_rotation():
    G = from_rotation_system(K4_ROT)
    assert (G.n, G.m, len(G.faces)) == (4, 6, 4)
    assert all(len(face) == 3 for face in G.faces)
    assert G.connectivity_check == "brute-force"


def test_faces_partition_darts(octahedron):
    darts = [d for face in octahedron.faces for d in face.darts()]
    assert len(darts) == len(set(darts)) == 2 * octahedron.m


def test_face_trace_rule():
    rs = RotationSystem(K4_ROT)
    for face in rs.trace_faces():
        for (a, b), (c, d) in zip(face.darts(), face.darts()[1:]):
            assert c == b and d == rs.pred(b, a)


def test_asymmetric_rotation_rejected():
    with pytest.raises(NotSymmetric):
        RotationSystem([[1, 2], [2], [0, 1]])


def test_repeated_neighbour_rejected():
    with pytest.raises(NotSimple):
        RotationSystem([[1, 1], [0], []])


def test_loop_rejected():
    with pytest.raises(NotSimple):
        RotationSystem([[0, 1], [0]])


def test_too_small():
    with pytest.raises(TooSmall):
        from_rotation_system([[1, 2], [2, 0], [0, 1]])


def test_wrong_orientation_is_not_triangular():
    # reversing a single rotation breaks the facial walks
    rot = [list(r) for r in K4_ROT]
    rot[3] = list(reversed(rot[3]))
    with pytest.raises((NotTriangular, EulerViolation)):
        from_rotation_system(rot)


def test_non_planar_rotation_fails_euler():
    # K5 has no planar embedding; any rotation gives a face count off Euler
    rot = [[u for u in range(5) if u != v] for v in range(5)]
    with pytest.raises((NotTriangular, EulerViolation)):
        from_rotation_system(rot)


def test_octahedron_properties(octahedron):
    assert (octahedron.n, octahedron.m, len(octahedron.faces)) == (6, 12, 8)
    assert octahedron.separating_triangles() == []
    assert is_four_connected(octahedron)


def test_k4_is_not_four_connected(tetrahedron):
    assert not is_four_connected(tetrahedron)


def test_stacked_separating_triangles():
    G = stacked(1)
    assert G.n == 8
    assert sorted(G.separating_triangles()) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    assert not is_four_connected(G)


def test_apex_is_third_vertex(octahedron):
    for u, v in octahedron.edges():
        w = octahedron.apex(u, v)
        assert w not in (u, v)
        assert octahedron.has_edge(u, w) and octahedron.has_edge(v, w)
        assert octahedron.apex(u, v) != octahedron.apex(v, u)


def test_find_face(octahedron):
    face = octahedron.faces[3]
    assert octahedron.find_face(3) is face
    assert octahedron.find_face(face.vertex_set()) == face
    with pytest.raises(FaceNotFound):
        octahedron.find_face(99)
    with pytest.raises(FaceNotFound):
        octahedron.find_face({0, 1, 2, 3})


def test_rotation_from_faces_roundtrip(octahedron):
    faces = [face.boundary for face in octahedron.faces]
    assert rotation_from_faces(faces) == octahedron.rs


def test_near_triangulation_reroot(octahedron):
    NT = near_triangulation(octahedron, 2)
    assert NT.outer_face.id == 2
    assert len(NT.bounded_faces) == 7
    assert len(NT.outer_cycle()) == 3


def test_delete_vertex_outer_is_link(octahedron):
    NT = delete_vertex(octahedron, 5)
    assert NT.n == 5
    assert set(NT.outer_cycle()) == set(octahedron.neighbors(5))
    assert all(len(face) == 3 for face in NT.bounded_faces)


def test_near_triangulation_from_faces():
    NT = near_triangulation_from_faces([(0, 1, 2), (0, 2, 3)])
    assert NT.n == 4
    assert set(NT.outer_cycle()) == {0, 1, 2, 3}


def test_has_small_cut():
    path = nx.path_graph(4)
    assert has_small_cut(path, 1)
    assert not has_small_cut(nx.complete_graph(5), 3)
    cycle = nx.cycle_graph(6)
    assert has_small_cut(cycle, 2)
    assert not has_small_cut(cycle, 1)


def test_edge_key():
    assert edge_key(3, 1) == (1, 3)
    assert edge_key(1, 3) == (1, 3)


@settings(deadline=None, max_examples=30)
@given(st.integers(min_value=5, max_value=12), st.integers(min_value=0, max_value=10_000))
def test_random_triangulation_structure(n, seed):
    G = random_triangulation(n, seed)
    assert len(G.faces) == 2 * n - 4
    assert G.m == 3 * n - 6
    assert nx.check_planarity(G.graph())[0]
    assert not has_small_cut(G.graph(), 2)


@settings(deadline=None, max_examples=30)
@given(st.integers(min_value=5, max_value=10), st.integers(min_value=0, max_value=10_000))
def test_four_connectivity_agrees_with_cut_search(n, seed):
    G = random_triangulation(n, seed)
    assert is_four_connected(G) == four_connected_by_cuts(G)


@settings(deadline=None, max_examples=20)
@given(st.integers(min_value=5, max_value=10), st.randoms(use_true_random=False))
def test_relabel_is_isomorphic(n, rnd):
    G = double_wheel(n)
    perm = list(range(n))
    rnd.shuffle(perm)
    H = relabel(G, perm)
    assert nx.is_isomorphic(G.graph(), H.graph())
    assert len(H.faces) == len(G.faces)


def test_k4_fixture_matches_rotation(tetrahedron):
    assert nx.is_isomorphic(tetrahedron.graph(), from_rotation_system(K4_ROT).graph())
    assert nx.is_isomorphic(k4().graph(), nx.complete_graph(4))


if __name__ == "__main__":
    pytest.main([__file__])
