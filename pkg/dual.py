"""
Dual graphs
Full and weak duals with the face correspondence kept, the boundary operator
on sets of dual vertices, radius/diameter, and the weak-dual path criterion
for near triangulations.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple, Union

import networkx as nx

from census_errors import Disconnected, DisconnectedSelection, EmbeddingError, NotACycle, TooSmall
from plane_graph import Edge, Face, NearTriangulation, PlaneGraph

logger = logging.getLogger(__name__)

FULL_DUAL = "full-dual"
WEAK_DUAL = "weak-dual"


@dataclass(frozen=True)
class BoundarySubgraph:
    """Primal edges incident with exactly one selected face, and their endpoints"""

    edges: FrozenSet[Edge]
    vertices: FrozenSet[int]

    def is_cycle(self) -> bool:
        try:
            self.cycle()
        except NotACycle:
            return False
        return True

    def cycle(self) -> Tuple[int, ...]:
        """The edges as one cyclic vertex sequence; NotACycle otherwise"""
        return boundary_cycle(self.edges)


def boundary_cycle(edges: Iterable[Edge]) -> Tuple[int, ...]:
    """Assemble an edge set into a cyclic vertex sequence starting at its smallest vertex"""
    edges = list(edges)
    if len(edges) < 3:
        raise NotACycle(f"{len(edges)} edges cannot form a cycle")
    adj: Dict[int, List[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for v, nbrs in adj.items():
        if len(nbrs) != 2:
            raise NotACycle(f"vertex {v} has {len(nbrs)} boundary edges")

    start = min(adj)
    order = [start]
    prev, cur = start, min(adj[start])
    while cur != start:
        order.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(order) != len(adj):
        raise NotACycle("boundary edges form more than one cycle")
    return tuple(order)


class DualGraph:
    """Dual or weak dual of a plane graph; edges carry the shared primal edge"""

    def __init__(self, primal: PlaneGraph, kind: str, graph: nx.Graph):
        self.primal = primal
        self.kind = kind
        self.graph = graph
        self.faces: Dict[int, Face] = {f: primal.faces[f] for f in graph.nodes}

    def __repr__(self) -> str:
        return f"DualGraph({self.kind}, {self.graph.number_of_nodes()} vertices)"

    @property
    def vertices(self) -> List[int]:
        return sorted(self.graph.nodes)

    def shared_edge(self, f: int, g: int) -> Edge:
        return self.graph.edges[f, g]["primal"]

    def degree(self, f: int) -> int:
        return self.graph.degree(f)

    def boundary(self, H: Iterable[int]) -> BoundarySubgraph:
        return boundary(self, H)


def _build(primal: PlaneGraph, face_ids: Iterable[int], kind: str) -> DualGraph:
    keep = set(face_ids)
    graph = nx.Graph()
    graph.add_nodes_from(sorted(keep))
    for u, v in primal.edges():
        f, g = primal.face_of_dart(u, v).id, primal.face_of_dart(v, u).id
        if f not in keep or g not in keep:
            continue
        if f == g:
            raise EmbeddingError(f"edge {(u, v)} borders face {f} on both sides")
        if graph.has_edge(f, g):
            raise EmbeddingError(f"faces {f} and {g} share more than one edge")
        graph.add_edge(f, g, primal=(u, v))
    return DualGraph(primal, kind, graph)


def dual(G: PlaneGraph) -> DualGraph:
    """Full dual: one vertex per face, one edge per primal edge"""
    return _build(G, (face.id for face in G.faces), FULL_DUAL)


def weak_dual(G: PlaneGraph, outer: Optional[Union[Face, int, Iterable[int]]] = None) -> DualGraph:
    """Dual minus the unbounded face (NearTriangulation.outer unless given)"""
    if outer is None:
        if not isinstance(G, NearTriangulation):
            raise ValueError("a triangulation needs an explicit outer face for its weak dual")
        outer_face = G.outer
    else:
        outer_face = G.find_face(outer)
    return _build(G, (face.id for face in G.faces if face.id != outer_face.id), WEAK_DUAL)


def boundary(D: DualGraph, H: Iterable[int]) -> BoundarySubgraph:
    """∂H*: primal edges bordering exactly one face of H, isolated vertices dropped"""
    H = set(H)
    if not H:
        raise DisconnectedSelection("empty selection")
    if not H <= set(D.graph.nodes) or not nx.is_connected(D.graph.subgraph(H)):
        raise DisconnectedSelection(f"faces {sorted(H)} do not induce a connected dual subgraph")
    counts = Counter(edge for f in H for edge in D.faces[f].edges())
    edges = frozenset(edge for edge, c in counts.items() if c == 1)
    vertices = frozenset(v for edge in edges for v in edge)
    return BoundarySubgraph(edges, vertices)


def radius_diameter(H: Union[nx.Graph, DualGraph]) -> Tuple[int, int]:
    """Exact radius and diameter from BFS eccentricities"""
    graph = H.graph if isinstance(H, DualGraph) else H
    if graph.number_of_nodes() == 0 or not nx.is_connected(graph):
        raise Disconnected("radius and diameter need a connected graph")
    ecc = nx.eccentricity(graph)
    return min(ecc.values()), max(ecc.values())


class Lemma1Check(NamedTuple):
    hypothesis_holds: bool
    weak_dual_is_path: bool


def is_path_graph(graph: nx.Graph) -> bool:
    n = graph.number_of_nodes()
    if n == 0 or not nx.is_connected(graph):
        return False
    return graph.number_of_edges() == n - 1 and max(d for _, d in graph.degree) <= 2


def lemma1_check(NT: NearTriangulation) -> Lemma1Check:
    """
    hypothesis: at most two bounded faces carry two edges of ∂D*, and every
    bounded face with an edge of ∂D* has all three vertices on ∂D*.
    """
    if NT.n < 4:
        raise TooSmall(f"criterion needs at least 4 vertices, got {NT.n}")
    D = weak_dual(NT)
    rim = boundary(D, D.vertices)

    two_edge_faces = 0
    touching_ok = True
    for f in D.vertices:
        face = D.faces[f]
        on_rim = len(face.edges() & rim.edges)
        if on_rim >= 2:
            two_edge_faces += 1
        if on_rim >= 1 and not face.vertex_set() <= rim.vertices:
            touching_ok = False

    result = Lemma1Check(two_edge_faces <= 2 and touching_ok, is_path_graph(D.graph))
    logger.debug("lemma1 check on %r: %s", NT, result)
    return result
