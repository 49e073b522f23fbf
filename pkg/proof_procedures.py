"""
Constructive procedures
Good edges and zigzag paths, the outer-cycle interval generator for near
triangulations, induced dual paths between two faces, and the anchored
short-cycle families built from them.

Both deletion procedures break ties by removing the smallest face id.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple, Union

import networkx as nx

from census_errors import BadAnchor, NonTermination, NotACycle, OutOfRange, ProcedureFault, StuckDeletion
from cycles import Cycle, cycle_sides, map_jobs
from dual import DualGraph, boundary_cycle, dual, is_path_graph, radius_diameter, weak_dual
from plane_graph import Edge, Face, NearTriangulation, PlanarTriangulation, PlaneGraph, edge_key, near_triangulation

logger = logging.getLogger(__name__)

GOOD_INTERNAL_EDGE = "good_internal_edge"
DEGREE_PROFILE = "degree_profile"
ZIGZAG_FILTERS = (GOOD_INTERNAL_EDGE, DEGREE_PROFILE)


def common_neighbours(G: PlaneGraph, u: int, v: int) -> Set[int]:
    return set(G.neighbors(u)) & set(G.neighbors(v))


def good_edges(G: PlanarTriangulation) -> List[Edge]:
    """Edges whose ends have exactly two common neighbours, one end of degree <= 6"""
    return [
        (u, v)
        for u, v in G.edges()
        if len(common_neighbours(G, u, v)) == 2 and min(G.degree(u), G.degree(v)) <= 6
    ]


@dataclass(frozen=True, order=True)
class ZigzagPath:
    """w1-u-v-w2 where w1 and w2 are the apexes of the two faces on uv"""

    w1: int
    u: int
    v: int
    w2: int

    @property
    def internal_edge(self) -> Edge:
        return edge_key(self.u, self.v)

    def vertices(self) -> Tuple[int, int, int, int]:
        return (self.w1, self.u, self.v, self.w2)

    def edges(self) -> Tuple[Edge, Edge, Edge]:
        return (edge_key(self.w1, self.u), edge_key(self.u, self.v), edge_key(self.v, self.w2))

    def swapped(self) -> "ZigzagPath":
        """w1-v-u-w2, the other zigzag path on the same internal edge"""
        return ZigzagPath(self.w1, self.v, self.u, self.w2)


def _profile_ok(G: PlaneGraph, u: int, v: int) -> bool:
    du, dv = G.degree(u), G.degree(v)
    return du >= 4 and dv >= 4 and min(du, dv) <= 6


def zigzag_paths(G: PlanarTriangulation, filter: str = GOOD_INTERNAL_EDGE) -> List[ZigzagPath]:
    """Both zigzag paths on every internal edge accepted by the filter"""
    if filter == GOOD_INTERNAL_EDGE:
        internal = good_edges(G)
    elif filter == DEGREE_PROFILE:
        internal = [(u, v) for u, v in G.edges() if _profile_ok(G, u, v)]
    else:
        raise ValueError(f"unknown zigzag filter {filter!r}; expected one of {', '.join(ZIGZAG_FILTERS)}")

    paths = []
    for u, v in internal:
        wa, wb = G.apex(u, v), G.apex(v, u)
        paths.append(ZigzagPath(wa, u, v, wb))
        paths.append(ZigzagPath(wa, v, u, wb))
    return paths


# Interval of cycle lengths along the outer cycle

@dataclass
class CycleInterval:
    """One witness cycle for every length in [lo, hi]"""

    lo: int
    hi: int
    cycles: Dict[int, Cycle]
    boundary_lengths: List[int] = field(default_factory=list)
    deleted: List[int] = field(default_factory=list)

    def lengths(self) -> List[int]:
        return list(range(self.lo, self.hi + 1))


def _boundary_edges(faces: Iterable[Face]) -> FrozenSet[Edge]:
    counts = Counter(edge for face in faces for edge in face.edges())
    return frozenset(edge for edge, c in counts.items() if c == 1)


def _outer_neighbours(cycle: Tuple[int, ...], v: int) -> Tuple[int, int]:
    if v not in cycle:
        raise BadAnchor(f"vertex {v} is not on the outer cycle")
    i = cycle.index(v)
    return cycle[i - 1], cycle[(i + 1) % len(cycle)]


def _check_anchors(NT: NearTriangulation, v1: int, v2: int, v3: int, v4: Optional[int]):
    outer = NT.outer_cycle()
    if v1 == v3 or set(_outer_neighbours(outer, v2)) != {v1, v3}:
        raise BadAnchor(f"{v1}{v2}, {v2}{v3} are not consecutive outer edges")
    if v4 is None:
        return
    if v4 == v1 or set(_outer_neighbours(outer, v3)) != {v2, v4}:
        raise BadAnchor(f"{v3}{v4} does not continue {v1}{v2}{v3} along the outer cycle (or v4 = v1)")
    if not any(face.vertex_set() == {v2, v3, v4} for face in NT.bounded_faces):
        raise BadAnchor(f"{v2}{v3}{v4} is not a bounded face")


def lemma2_cycles(NT: NearTriangulation, v1: int, v2: int, v3: int, v4: Optional[int] = None) -> CycleInterval:
    """
    Shrink the weak dual one face at a time, never touching v2, until only
    the faces around v2 remain. Each boundary is a cycle through v1 v2 v3 and
    consecutive boundaries differ in length by one, so every length between
    the outer cycle and the star of v2 is witnessed.
    """
    _check_anchors(NT, v1, v2, v3, v4)
    D = weak_dual(NT)
    current = set(D.vertices)
    steps = len(current) - NT.degree(v2) + 1
    required = [edge_key(v1, v2), edge_key(v2, v3)]
    if v4 is not None:
        required.append(edge_key(v3, v4))

    def boundary_of(faces: Set[int]) -> Tuple[FrozenSet[Edge], Tuple[int, ...]]:
        edges = _boundary_edges(D.faces[f] for f in faces)
        try:
            return edges, boundary_cycle(edges)
        except NotACycle as exc:
            raise ProcedureFault(f"boundary of faces {sorted(faces)} is not a cycle: {exc}") from exc

    edges, seq = boundary_of(current)
    boundaries = [seq]
    deleted = []
    for step in range(steps):
        candidate = None
        for f in sorted(current):
            face = D.faces[f]
            if v2 in face.boundary or not face.edges() & edges:
                continue
            rest = current - {f}
            if rest and nx.is_connected(D.graph.subgraph(rest)):
                candidate = f
                break
        if candidate is None:
            raise StuckDeletion(f"no removable face after {step} of {steps} deletions")
        current.discard(candidate)
        deleted.append(candidate)
        edges, seq = boundary_of(current)
        if abs(len(seq) - len(boundaries[-1])) != 1:
            raise ProcedureFault(f"boundary length jumped from {len(boundaries[-1])} to {len(seq)}")
        boundaries.append(seq)
        logger.debug("lemma2 step %d: removed face %d, boundary length %d", step + 1, candidate, len(seq))

    star = {v2} | set(NT.neighbors(v2))
    if set(boundaries[-1]) != star or len(boundaries[-1]) != len(star):
        raise ProcedureFault(f"terminal boundary {boundaries[-1]} is not the star of {v2}")

    lo = min(len(NT.outer_cycle()), NT.degree(v2) + 1)
    hi = max(len(NT.outer_cycle()), NT.degree(v2) + 1)
    witnesses: Dict[int, Cycle] = {}
    for seq in boundaries:
        cycle = Cycle.canonical(seq)
        if not cycle.contains_edges(required):
            raise ProcedureFault(f"boundary {seq} misses a prescribed edge")
        witnesses.setdefault(len(seq), cycle)
    missing = [k for k in range(lo, hi + 1) if k not in witnesses]
    if missing:
        raise ProcedureFault(f"no boundary of length {missing}")

    return CycleInterval(
        lo=lo,
        hi=hi,
        cycles={k: witnesses[k] for k in range(lo, hi + 1)},
        boundary_lengths=[len(seq) for seq in boundaries],
        deleted=deleted,
    )


# Induced dual paths

@dataclass
class DualPath:
    """Induced dual path between two faces and the cycle bounding it"""

    faces: Tuple[int, ...]
    root: int
    boundary: Cycle

    def __len__(self) -> int:
        return len(self.faces)


def _ordered_path(graph: nx.Graph, start: int) -> Tuple[int, ...]:
    order = [start]
    prev = None
    while True:
        nxt = [g for g in graph.neighbors(order[-1]) if g != prev]
        if not nxt:
            break
        prev = order[-1]
        order.append(nxt[0])
    return tuple(order)


def _removable(face: Face, edges: FrozenSet[Edge], rim: FrozenSet[int]) -> bool:
    on_rim = len(face.edges() & edges)
    return on_rim >= 2 or (on_rim == 1 and not face.vertex_set() <= rim)


def dual_induced_path(
    G: PlaneGraph, f1: Union[Face, int], f2: Union[Face, int], root: Optional[int] = None
) -> DualPath:
    """
    Re-root G at the smallest face other than f1 and f2 (or at `root`), then
    delete faces from the weak dual while some face other than f1, f2 has two
    boundary edges, or one boundary edge and a vertex off the boundary.
    """
    a, b = G.find_face(f1).id, G.find_face(f2).id
    if a == b:
        raise ValueError("dual path needs two distinct faces")
    if root is None:
        root = min(face.id for face in G.faces if face.id not in (a, b))
    elif root in (a, b):
        raise ValueError(f"root face {root} is an end of the dual path")
    NT = near_triangulation(G, root)
    D = weak_dual(NT)
    current = set(D.vertices)

    limit = len(G.faces)
    for iteration in range(limit + 1):
        edges = _boundary_edges(D.faces[f] for f in current)
        rim = frozenset(v for edge in edges for v in edge)
        pick = next(
            (f for f in sorted(current) if f not in (a, b) and _removable(D.faces[f], edges, rim)),
            None,
        )
        if pick is None:
            break
        current.discard(pick)
    else:
        raise NonTermination(f"face deletion did not settle within {limit} iterations")

    sub = D.graph.subgraph(current)
    if not is_path_graph(sub):
        raise ProcedureFault(f"remaining faces {sorted(current)} do not form a dual path")
    order = _ordered_path(sub, a)
    if order[-1] != b:
        raise ProcedureFault(f"dual path from {a} ends at {order[-1]}, not {b}")
    full = dual(G).graph.subgraph(order)
    if full.number_of_edges() != len(order) - 1:
        raise ProcedureFault(f"dual path {order} has a chord")

    edges = _boundary_edges(D.faces[f] for f in order)
    try:
        cycle = Cycle.canonical(boundary_cycle(edges))
    except NotACycle as exc:
        raise ProcedureFault(f"boundary of dual path {order} is not a cycle") from exc
    for end in (a, b):
        if len(D.faces[end].edges() & cycle.edges()) != 2:
            raise ProcedureFault(f"boundary does not carry two edges of end face {end}")

    logger.debug("dual path %s between faces %d and %d (root %d)", order, a, b, root)
    return DualPath(order, root, cycle)


# Anchored short-cycle families

@dataclass
class AnchoredBoundaries:
    """Prefix boundaries of one anchored dual path; cycles[i] has length i + 4"""

    face: int
    target: int
    path: Tuple[int, ...]
    cycles: List[Cycle]
    fixed_edges: FrozenSet[Edge]
    root: int


def dual_radius(G: PlaneGraph) -> int:
    return radius_diameter(dual(G))[0]


def _eccentric_face(D: DualGraph, face: int, radius: int) -> int:
    dist = nx.single_source_shortest_path_length(D.graph, face)
    return min(f for f, d in dist.items() if d == radius)


def anchored_boundaries(G: PlaneGraph, face: Union[Face, int], radius: Optional[int] = None) -> AnchoredBoundaries:
    """
    Walk an induced dual path from `face` to the smallest face at distance
    rad(G*) and return the boundary of each prefix. All of them meet the
    anchor face in the same two edges.
    """
    D = dual(G)
    start = G.find_face(face).id
    if radius is None:
        radius = radius_diameter(D)[0]
    target = _eccentric_face(D, start, radius)
    path = dual_induced_path(G, start, target)
    if len(path) < radius + 1:
        raise ProcedureFault(f"dual path {path.faces} is shorter than the radius {radius}")

    anchor = G.faces[start]
    cycles = []
    fixed: Optional[FrozenSet[Edge]] = None
    for i in range(1, radius + 1):
        prefix = path.faces[: i + 1]
        edges = _boundary_edges(G.faces[f] for f in prefix)
        try:
            cycle = Cycle.canonical(boundary_cycle(edges))
        except NotACycle as exc:
            raise ProcedureFault(f"prefix {prefix} has no cycle boundary") from exc
        if len(cycle) != i + 3:
            raise ProcedureFault(f"prefix {prefix} bounds a {len(cycle)}-cycle, expected {i + 3}")
        shared = anchor.edges() & cycle.edges()
        if fixed is None:
            fixed = shared
        if shared != fixed or len(shared) != 2:
            raise ProcedureFault(f"prefix {prefix} meets anchor face {start} in {sorted(shared)}")
        cycles.append(cycle)

    return AnchoredBoundaries(start, target, path.faces[: radius + 1], cycles, fixed or frozenset(), path.root)


def _anchored_task(args: Tuple[PlaneGraph, int, int]) -> AnchoredBoundaries:
    G, face, radius = args
    return anchored_boundaries(G, face, radius)


def _prefix_cycle(G: PlaneGraph, faces: Tuple[int, ...], k: int) -> Optional[Cycle]:
    try:
        cycle = Cycle.canonical(boundary_cycle(_boundary_edges(G.faces[f] for f in faces[: k - 2])))
    except NotACycle:
        return None
    return cycle if len(cycle) == k else None


def _induced_dual_paths(graph: nx.Graph, start: int, size: int) -> Iterator[Tuple[int, ...]]:
    """Every induced path of `size` faces starting at `start`, in lexicographic order"""
    stack = [(start,)]
    while stack:
        path = stack.pop()
        if len(path) == size:
            yield path
            continue
        for g in sorted(graph.neighbors(path[-1]), reverse=True):
            if g not in path and not any(graph.has_edge(g, f) for f in path[:-1]):
                stack.append(path + (g,))


def _rerooted_cycles(G: PlaneGraph, D: DualGraph, k: int) -> Iterator[Cycle]:
    """
    k-cycles from anchored dual paths beyond the default choice: every
    target face far enough away, then every root for the targets at
    distance rad(G*), then every induced dual path of k - 2 faces.
    """
    faces = sorted(D.vertices)
    radius = radius_diameter(D)[0]
    attempts = []
    for start in faces:
        dist = nx.single_source_shortest_path_length(D.graph, start)
        attempts.extend((start, t, None) for t in sorted(f for f, d in dist.items() if d >= k - 3))
    for start in faces:
        dist = nx.single_source_shortest_path_length(D.graph, start)
        for target in sorted(f for f, d in dist.items() if d == radius):
            attempts.extend((start, target, root) for root in faces if root not in (start, target))

    for start, target, root in attempts:
        try:
            path = dual_induced_path(G, start, target, root=root)
        except (ProcedureFault, NonTermination):
            continue
        if len(path) >= k - 2:
            cycle = _prefix_cycle(G, path.faces, k)
            if cycle is not None:
                yield cycle
    for start in faces:
        for path in _induced_dual_paths(D.graph, start, k - 2):
            cycle = _prefix_cycle(G, path, k)
            if cycle is not None:
                yield cycle


def _complete_family(G: PlaneGraph, k: int, family: Set[Cycle]) -> List[Cycle]:
    """
    Top up a short family, then check that it has n - 2 members and that
    every member has an empty interior or exterior.
    """
    need = G.n - 2
    if k > 3 and len(family) < need:
        logger.debug("%d-family has %d of %d cycles, trying other targets and roots", k, len(family), need)
        for cycle in _rerooted_cycles(G, dual(G), k):
            family.add(cycle)
            if len(family) >= need:
                break
    if len(family) < need:
        raise ProcedureFault(f"only {len(family)} distinct {k}-cycles from anchored dual paths, need {need}")
    for cycle in family:
        interior, exterior = cycle_sides(G, cycle)
        if interior and exterior:
            raise ProcedureFault(f"{k}-cycle {cycle.verts} has vertices on both sides")
    return sorted(family)


def theorem3_families(G: PlaneGraph, jobs: int = 1) -> Dict[int, List[Cycle]]:
    """Every k-family for 3 <= k <= rad(G*) + 3 from one pass over the faces"""
    radius = dual_radius(G)
    anchored = map_jobs(_anchored_task, [(G, face.id, radius) for face in G.faces], jobs)
    families = {3: _complete_family(G, 3, {Cycle.canonical(face.boundary) for face in G.faces})}
    for k in range(4, radius + 4):
        families[k] = _complete_family(G, k, {a.cycles[k - 4] for a in anchored})
    return families


def theorem3_family(G: PlaneGraph, k: int, jobs: int = 1) -> List[Cycle]:
    """
    Distinct k-cycles collected from the anchored boundaries of every face,
    for 3 <= k <= rad(G*) + 3. Faces themselves when k = 3.

    When the default anchored paths repeat cycles (both sides of a
    hamiltonian cycle are dual paths when k = n) other targets and roots are
    tried until the family has n - 2 members. Raises ProcedureFault if it
    never does, or if a member has vertices on both sides.
    """
    radius = dual_radius(G)
    if not 3 <= k <= radius + 3:
        raise OutOfRange(f"k = {k} outside 3..{radius + 3} (dual radius {radius})")
    if k == 3:
        return _complete_family(G, 3, {Cycle.canonical(face.boundary) for face in G.faces})
    found = map_jobs(_anchored_task, [(G, face.id, radius) for face in G.faces], jobs)
    family = _complete_family(G, k, {a.cycles[k - 4] for a in found})
    logger.info("%d distinct %d-cycles from %d anchored dual paths", len(family), k, len(G.faces))
    return family
