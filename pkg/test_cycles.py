#!/usr/bin/env python3
"""
Tests for cycle enumeration, cycles through paths and separating cycles
"""

from collections import Counter
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from census_errors import BadPath, BudgetExceeded, NotACycle
from cycles import (
    Cycle,
    CycleSpectrum,
    circumference_and_hamiltonian,
    cycle_sides,
    cycles_through,
    cycles_through_edge,
    enumerate_cycles,
    five_cycle_flag,
    has_cycle_of_length,
    iota,
    separating_cycles,
    spectrum,
)
from generators import double_wheel, g_p, random_triangulation, stacked
from plane_graph import relabel

OCTAHEDRON_SPECTRUM = {3: 8, 4: 15, 5: 24, 6: 16}


def oracle_counts(G):
    """Cycle counts by length from networkx"""
    return dict(Counter(len(c) for c in nx.simple_cycles(G.graph(), length_bound=G.n)))


def test_k4_spectrum(tetrahedron):
    spec = spectrum(tetrahedron)
    assert spec.counts == {3: 4, 4: 3}
    assert spec.longest() == 4
    assert spec.total() == 7


def test_octahedron_spectrum(octahedron):
    spec = spectrum(octahedron)
    assert spec.counts == OCTAHEDRON_SPECTRUM
    assert spec.to_dict() == {"3": 8, "4": 15, "5": 24, "6": 16}
    # equality case of the five-cycle maximum
    assert spec[5] == 2 * 36 - 60 + 12


def test_spectrum_window(octahedron):
    spec = spectrum(octahedron, min_len=5, max_len=6)
    assert spec.counts == {5: 24, 6: 16}
    assert spec[3] == 0
    assert spectrum(octahedron, max_len=2).counts == {}


def test_spectrum_parallel_matches_sequential():
    G = double_wheel(9)
    assert spectrum(G, jobs=2).counts == spectrum(G).counts


@pytest.mark.parametrize("n", [6, 7, 8, 9, 10])
def test_double_wheel_hamiltonian_count(n):
    circ, h = circumference_and_hamiltonian(double_wheel(n))
    assert circ == n
    assert h == 2 * (n - 2) * (n - 4)


def test_budget_exceeded(octahedron):
    with pytest.raises(BudgetExceeded) as info:
        spectrum(octahedron, budget=10)
    assert info.value.budget == 10


def test_enumerate_matches_spectrum(octahedron):
    cycles = enumerate_cycles(octahedron)
    assert Counter(len(c) for c in cycles) == Counter(OCTAHEDRON_SPECTRUM)
    assert len(set(cycles)) == len(cycles)
    for c in cycles:
        assert Cycle.canonical(c.verts) == c
        assert c.is_cycle_of(octahedron)


def test_canonical_form():
    assert Cycle.canonical((3, 1, 2)).verts == (1, 2, 3)
    assert Cycle.canonical((1, 3, 2)).verts == (1, 2, 3)
    assert Cycle.canonical((5, 0, 4, 2)).verts == (0, 4, 2, 5)
    with pytest.raises(NotACycle):
        Cycle.canonical((1, 2))
    with pytest.raises(NotACycle):
        Cycle.canonical((1, 2, 1, 3))


def test_cycle_edges():
    c = Cycle.canonical((0, 1, 2, 3))
    assert c.edges() == {(0, 1), (1, 2), (2, 3), (0, 3)}
    assert c.contains_edges([(1, 0), (3, 2)])
    assert not c.contains_edges([(0, 2)])


def test_every_edge_on_two_triangles(octahedron):
    for edge in octahedron.edges():
        assert cycles_through_edge(octahedron, edge, 3) == 2
        assert cycles_through_edge(octahedron, edge, 4) >= 4


def test_cycles_through_path(octahedron):
    found = cycles_through(octahedron, (0, 1, 2), 4)
    assert found
    for c in found:
        assert len(c) == 4
        assert c.contains_edges([(0, 1), (1, 2)])
    assert found == sorted(found)


def test_cycles_through_rejects_bad_path(octahedron):
    with pytest.raises(BadPath):
        cycles_through(octahedron, (4, 5), 4)
    with pytest.raises(BadPath):
        cycles_through(octahedron, (0, 1, 0), 4)
    assert cycles_through(octahedron, (0, 1, 2, 3), 3) == []


def test_cycle_sides_of_equator(octahedron):
    sides = cycle_sides(octahedron, (0, 1, 2, 3))
    assert set(sides) == {frozenset({4}), frozenset({5})}


def test_facial_cycle_has_empty_side(octahedron):
    interior, exterior = cycle_sides(octahedron, octahedron.faces[3].boundary)
    assert not interior or not exterior


def test_octahedron_separating_four_cycles(octahedron):
    S = separating_cycles(octahedron, 4)
    assert len(S) == 3
    assert iota(S) == 0
    assert separating_cycles(octahedron, 3) == []


def test_stacked_separating_triangles():
    assert len(separating_cycles(stacked(1), 3)) == 4


def test_separating_cycles_rejects_other_lengths(octahedron):
    with pytest.raises(ValueError):
        separating_cycles(octahedron, 5)


def test_iota_counts_single_edge_intersections():
    a = Cycle.canonical((0, 1, 2, 3))
    b = Cycle.canonical((0, 1, 4, 5))
    c = Cycle.canonical((2, 6, 0, 7))
    assert iota([a, b]) == 2
    assert iota([a, c]) == 0


def test_has_cycle_of_length(octahedron):
    assert has_cycle_of_length(octahedron, 6)
    assert not has_cycle_of_length(octahedron, 7)
    assert not has_cycle_of_length(octahedron, 2)


def test_five_cycle_flag(octahedron):
    assert five_cycle_flag(spectrum(octahedron))
    assert not five_cycle_flag(CycleSpectrum(4, {5: 30}))


def test_g_p_is_weakly_pancyclic():
    G = g_p(1)
    spec = spectrum(G)
    circ = spec.longest()
    assert all(spec[k] > 0 for k in range(3, circ + 1))


@settings(deadline=None, max_examples=25)
@given(st.integers(min_value=5, max_value=9), st.integers(min_value=0, max_value=10_000))
def test_spectrum_matches_networkx(n, seed):
    G = random_triangulation(n, seed)
    expected = oracle_counts(G)
    assert spectrum(G).counts == {k: expected.get(k, 0) for k in range(3, n + 1)}


@settings(deadline=None, max_examples=20)
@given(st.integers(min_value=5, max_value=9), st.integers(min_value=0, max_value=10_000), st.randoms(use_true_random=False))
def test_spectrum_is_relabel_invariant(n, seed, rnd):
    G = random_triangulation(n, seed)
    perm = list(range(n))
    rnd.shuffle(perm)
    assert spectrum(relabel(G, perm)).counts == spectrum(G).counts


@settings(deadline=None, max_examples=20)
@given(st.integers(min_value=5, max_value=10), st.integers(min_value=0, max_value=10_000))
def test_weak_pancyclicity(n, seed):
    spec = spectrum(random_triangulation(n, seed))
    assert all(spec[k] > 0 for k in range(3, spec.longest() + 1))
    if n != 7:
        assert spec[5] <= 2 * n * n - 10 * n + 12


def test_seven_vertex_double_wheel_exceeds_five_cycle_maximum():
    spec = spectrum(double_wheel(7))
    assert {k: spec[k] for k in range(3, 8)} == {3: 10, 4: 20, 5: 41, 6: 50, 7: 30}
    assert spec[5] == 2 * 7 * 7 - 10 * 7 + 12 + 1


@settings(deadline=None, max_examples=10)
@given(st.integers(min_value=6, max_value=16))
def test_double_wheel_triangles_are_facial(n):
    G = double_wheel(n)
    assert spectrum(G, max_len=3)[3] == 2 * n - 4 == len(G.faces)


def test_double_wheel_four_cycles_grow_quadratically():
    ratios = []
    for n in (8, 10, 12, 14):
        r = n - 2
        c4 = spectrum(double_wheel(n), max_len=4)[4]
        # hub-rim-hub-rim plus hub over three consecutive rim vertices
        assert c4 == r * (r - 1) // 2 + 2 * r
        ratios.append(Fraction(c4, n * n))
    assert ratios == sorted(ratios)
    assert all(ratio < Fraction(1, 2) for ratio in ratios)


@pytest.mark.slow
def test_stacked_depth_two_is_not_hamiltonian():
    G = stacked(2)
    circ, h = circumference_and_hamiltonian(G)
    assert h == 0
    assert circ < G.n


if __name__ == "__main__":
    pytest.main([__file__])
