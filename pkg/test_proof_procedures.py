#!/usr/bin/env python3
"""
Tests for zigzag paths, the outer-cycle interval procedure, induced dual
paths and the anchored short-cycle families
"""

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from census_errors import BadAnchor, OutOfRange
from cycles import Cycle, cycle_sides
from dual import dual
from generators import double_wheel, fan, quadrilateral_with_chord, random_triangulation, wheel_disk
from plane_graph import near_triangulation, relabel
from proof_procedures import (
    DEGREE_PROFILE,
    anchored_boundaries,
    dual_induced_path,
    dual_radius,
    good_edges,
    lemma2_cycles,
    theorem3_families,
    theorem3_family,
    zigzag_paths,
)


def test_good_edges(tetrahedron, octahedron):
    assert len(good_edges(tetrahedron)) == 6
    assert len(good_edges(octahedron)) == 12


def test_zigzag_paths_are_paths(octahedron):
    paths = zigzag_paths(octahedron)
    assert len(paths) == 24
    for z in paths:
        assert len(set(z.vertices())) == 4
        assert all(octahedron.has_edge(*e) for e in z.edges())
        assert z.swapped() in paths


def test_degree_profile_filter(tetrahedron, octahedron):
    assert zigzag_paths(tetrahedron, DEGREE_PROFILE) == []
    assert len(zigzag_paths(octahedron, DEGREE_PROFILE)) == 24
    with pytest.raises(ValueError):
        zigzag_paths(octahedron, "everything")


def test_lemma2_quadrilateral():
    result = lemma2_cycles(quadrilateral_with_chord(), 0, 1, 2)
    assert (result.lo, result.hi) == (3, 4)
    assert result.lengths() == [3, 4]
    assert result.cycles[3].verts == (0, 1, 2)
    assert len(result.deleted) == 1


def test_lemma2_wheel():
    result = lemma2_cycles(wheel_disk(5), 5, 1, 2)
    assert (result.lo, result.hi) == (4, 5)
    for k, cycle in result.cycles.items():
        assert len(cycle) == k
        assert cycle.contains_edges([(5, 1), (1, 2)])
    assert result.boundary_lengths[0] == 5
    assert result.boundary_lengths[-1] == 4
    steps = zip(result.boundary_lengths, result.boundary_lengths[1:])
    assert all(abs(a - b) == 1 for a, b in steps)


def test_lemma2_octahedron_rooted_at_face(octahedron):
    NT = near_triangulation(octahedron, 0)
    v1, v2, v3 = NT.outer_cycle()
    result = lemma2_cycles(NT, v1, v2, v3)
    assert result.lengths() == [3, 4, 5]
    for cycle in result.cycles.values():
        assert cycle.is_cycle_of(NT)
        assert cycle.contains_edges([(v1, v2), (v2, v3)])


def test_lemma2_with_fourth_anchor():
    # vertex 1 of the fan is an ear: 0 1 2 is a bounded face
    result = lemma2_cycles(fan(3), 4, 0, 1, 2)
    assert (result.lo, result.hi) == (5, 5)
    assert result.cycles[5].contains_edges([(4, 0), (0, 1), (1, 2)])


def test_lemma2_rejects_bad_anchors():
    W = wheel_disk(5)
    with pytest.raises(BadAnchor):
        lemma2_cycles(W, 1, 2, 4)
    with pytest.raises(BadAnchor):
        lemma2_cycles(W, 1, 0, 2)
    with pytest.raises(BadAnchor):
        lemma2_cycles(W, 5, 1, 2, 3)
    with pytest.raises(BadAnchor):
        lemma2_cycles(quadrilateral_with_chord(), 3, 0, 1, 3)


def test_dual_path_in_k4(tetrahedron):
    path = dual_induced_path(tetrahedron, 1, 2)
    assert path.faces == (1, 2)
    assert path.root == 0
    assert len(path.boundary) == 4


def test_dual_paths_in_octahedron(octahedron):
    D = dual(octahedron)
    for a, b in itertools.combinations(range(len(octahedron.faces)), 2):
        path = dual_induced_path(octahedron, a, b)
        assert path.faces[0] == a and path.faces[-1] == b
        assert len(path) >= nx.shortest_path_length(D.graph, a, b) + 1
        assert len(path.boundary) == len(path) + 2
        assert path.root not in path.faces


def test_dual_path_needs_two_faces(octahedron):
    with pytest.raises(ValueError):
        dual_induced_path(octahedron, 3, 3)


def test_anchored_boundaries(octahedron):
    anchored = anchored_boundaries(octahedron, 0)
    assert dual_radius(octahedron) == 3
    assert [len(c) for c in anchored.cycles] == [4, 5, 6]
    assert len(anchored.fixed_edges) == 2
    assert anchored.fixed_edges <= octahedron.faces[0].edges()
    for cycle in anchored.cycles:
        assert cycle.contains_edges(anchored.fixed_edges)
        assert cycle.is_cycle_of(octahedron)


def test_theorem3_families_octahedron(octahedron):
    families = theorem3_families(octahedron)
    assert sorted(families) == [3, 4, 5, 6]
    assert len(families[3]) == 8
    for k, family in families.items():
        assert family
        assert all(len(c) == k for c in family)
    assert families[5] == theorem3_family(octahedron, 5)


def test_theorem3_family_double_wheel():
    G = double_wheel(10)
    family = theorem3_family(G, 5)
    assert len(family) >= 8
    assert len(set(family)) == len(family)
    assert all(isinstance(c, Cycle) and c.is_cycle_of(G) for c in family)


def test_theorem3_family_out_of_range(octahedron):
    with pytest.raises(OutOfRange):
        theorem3_family(octahedron, 7)
    with pytest.raises(OutOfRange):
        theorem3_family(octahedron, 2)


def test_faces_form_the_three_family(octahedron):
    expected = sorted({Cycle.canonical(face.boundary) for face in octahedron.faces})
    assert theorem3_family(octahedron, 3) == expected


@pytest.mark.parametrize("seed", [3, 7, 8, 12, 14])
def test_hamiltonian_family_of_five_vertex_triangulation(seed):
    G = random_triangulation(5, seed)
    family = theorem3_family(G, 5)
    assert len(family) >= 3
    assert all(c.is_cycle_of(G) and len(c) == 5 for c in family)


def test_dual_induced_path_with_explicit_root(octahedron):
    path = dual_induced_path(octahedron, 0, 7, root=3)
    assert path.root == 3
    assert path.faces[0] == 0 and path.faces[-1] == 7
    with pytest.raises(ValueError):
        dual_induced_path(octahedron, 0, 7, root=7)


def _assert_families_hold(G):
    for k, family in theorem3_families(G).items():
        assert len(family) >= G.n - 2
        for cycle in family:
            assert len(cycle) == k and cycle.is_cycle_of(G)
            interior, exterior = cycle_sides(G, cycle)
            assert not interior or not exterior


@settings(deadline=None, max_examples=20)
@given(st.integers(min_value=5, max_value=9), st.integers(min_value=0, max_value=10_000))
def test_families_have_n_minus_two_cycles(n, seed):
    _assert_families_hold(random_triangulation(n, seed))


@settings(deadline=None, max_examples=10)
@given(st.integers(min_value=5, max_value=8), st.integers(min_value=0, max_value=10_000), st.randoms(use_true_random=False))
def test_families_hold_after_relabelling(n, seed, rnd):
    perm = list(range(n))
    rnd.shuffle(perm)
    _assert_families_hold(relabel(random_triangulation(n, seed), perm))


if __name__ == "__main__":
    pytest.main([__file__])
