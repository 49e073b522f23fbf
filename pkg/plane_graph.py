"""
Plane graph representation
Rotation systems, face tracing and validation of plane triangulations and
near triangulations.

Orientation convention: rot[v] lists the neighbours of v in clockwise order.
A face is traced from a dart (u, v) by stepping to (v, w), where w is the
predecessor of u in rot[v]. Every module and test uses this rule.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from census_errors import (
    EmbeddingError,
    EulerViolation,
    FaceNotFound,
    NotSimple,
    NotSymmetric,
    NotThreeConnected,
    NotTriangular,
    TooSmall,
)

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
Dart = Tuple[int, int]

# Above this order 3-connectivity is taken from the definition instead of a cut search
THREE_CONNECTIVITY_LIMIT = 200


def edge_key(u: int, v: int) -> Edge:
    """Undirected edge as a sorted pair"""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Face:
    """A face together with its facial walk"""

    id: int
    boundary: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.boundary)

    def darts(self) -> List[Dart]:
        b = self.boundary
        return [(b[i], b[(i + 1) % len(b)]) for i in range(len(b))]

    def edges(self) -> FrozenSet[Edge]:
        return frozenset(edge_key(u, v) for u, v in self.darts())

    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.boundary)


class RotationSystem:
    """Per-vertex clockwise neighbour orders of a simple graph"""

    def __init__(self, rot: Sequence[Sequence[int]]):
        self.n = len(rot)
        self.rot: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(u) for u in nbrs) for nbrs in rot)
        self._pos: List[Dict[int, int]] = []

        for v, nbrs in enumerate(self.rot):
            pos = {}
            for i, u in enumerate(nbrs):
                if u == v or not 0 <= u < self.n:
                    raise NotSimple(f"vertex {v} lists invalid neighbour {u}")
                if u in pos:
                    raise NotSimple(f"vertex {v} lists neighbour {u} twice")
                pos[u] = i
            self._pos.append(pos)

        for v in range(self.n):
            for u in self.rot[v]:
                if v not in self._pos[u]:
                    raise NotSymmetric(f"{v} lists {u} but {u} does not list {v}")

        self.m = sum(len(nbrs) for nbrs in self.rot) // 2

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RotationSystem) and self.rot == other.rot

    def __hash__(self) -> int:
        return hash(self.rot)

    def __repr__(self) -> str:
        return f"RotationSystem(n={self.n}, m={self.m})"

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.rot[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._pos[u]

    def pred(self, v: int, u: int) -> int:
        """Neighbour of v preceding u in the clockwise rotation"""
        nbrs = self.rot[v]
        return nbrs[(self._pos[v][u] - 1) % len(nbrs)]

    def succ(self, v: int, u: int) -> int:
        """Neighbour of v following u in the clockwise rotation"""
        nbrs = self.rot[v]
        return nbrs[(self._pos[v][u] + 1) % len(nbrs)]

    def darts(self) -> List[Dart]:
        return [(u, v) for u in range(self.n) for v in self.rot[u]]

    def edges(self) -> List[Edge]:
        return sorted(edge_key(u, v) for u, v in self.darts() if u < v)

    def adjacency_masks(self) -> List[int]:
        """Neighbourhoods as integer bitmasks (bit u set in masks[v] iff uv is an edge)"""
        masks = []
        for nbrs in self.rot:
            mask = 0
            for u in nbrs:
                mask |= 1 << u
            masks.append(mask)
        return masks

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def to_lists(self) -> List[List[int]]:
        return [list(nbrs) for nbrs in self.rot]

    def trace_faces(self) -> List[Face]:
        """Partition the darts into facial walks"""
        seen = set()
        faces: List[Face] = []
        for u in range(self.n):
            for v in self.rot[u]:
                if (u, v) in seen:
                    continue
                walk = []
                a, b = u, v
                while (a, b) not in seen:
                    seen.add((a, b))
                    walk.append(a)
                    a, b = b, self.pred(b, a)
                faces.append(Face(len(faces), tuple(walk)))
        return faces

    def relabel(self, perm: Sequence[int]) -> "RotationSystem":
        """Rename vertex v to perm[v]"""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of the vertex ids")
        rot: List[Tuple[int, ...]] = [()] * self.n
        for v, nbrs in enumerate(self.rot):
            rot[perm[v]] = tuple(perm[u] for u in nbrs)
        return RotationSystem(rot)

    def without_vertex(self, x: int) -> "RotationSystem":
        """Delete x; vertices above x shift down by one"""
        def shift(u: int) -> int:
            return u - 1 if u > x else u

        rot = [
            tuple(shift(u) for u in nbrs if u != x)
            for v, nbrs in enumerate(self.rot)
            if v != x
        ]
        return RotationSystem(rot)


def rotation_from_faces(faces: Iterable[Sequence[int]], n: Optional[int] = None) -> RotationSystem:
    """
    Derive the rotation system whose traced faces are the given oriented faces.
    Faces may leave one gap per vertex (the outer face of a near triangulation).
    """
    faces = [tuple(face) for face in faces]
    if n is None:
        n = 1 + max(v for face in faces for v in face)

    # face (x, v, y) means pred_v(x) = y, i.e. y is followed by x around v
    follow: List[Dict[int, int]] = [dict() for _ in range(n)]
    for face in faces:
        k = len(face)
        for i in range(k):
            x, v, y = face[i - 1], face[i], face[(i + 1) % k]
            if y in follow[v]:
                raise NotSimple(f"dart ({v}, {y}) occurs in two faces")
            follow[v][y] = x

    rot = []
    for v in range(n):
        chain = follow[v]
        if not chain:
            raise EmbeddingError(f"vertex {v} lies on no face")
        images = set(chain.values())
        starts = [y for y in chain if y not in images]
        if len(starts) > 1:
            raise EmbeddingError(f"faces around vertex {v} do not form a single fan")
        start = starts[0] if starts else min(chain)
        order = [start]
        cur = start
        while cur in chain and chain[cur] != start:
            cur = chain[cur]
            order.append(cur)
            if len(order) > len(chain) + 1:
                raise EmbeddingError(f"faces around vertex {v} do not form a single fan")
        if len(order) != len(set(chain) | images):
            raise EmbeddingError(f"faces around vertex {v} do not form a single fan")
        rot.append(tuple(order))
    return RotationSystem(rot)


def has_small_cut(graph: nx.Graph, size: int) -> bool:
    """Brute-force search for a vertex cut with at most `size` vertices"""
    if graph.number_of_nodes() <= size + 1:
        return False
    if size == 0:
        return not nx.is_connected(graph)
    if size == 1:
        return not nx.is_connected(graph) or any(True for _ in nx.articulation_points(graph))
    for v in sorted(graph):
        rest = graph.copy()
        rest.remove_node(v)
        if has_small_cut(rest, size - 1):
            return True
    return False


class PlaneGraph:
    """Rotation system together with its traced faces"""

    def __init__(self, rs: RotationSystem, faces: List[Face]):
        self.rs = rs
        self.n = rs.n
        self.m = rs.m
        self.faces = faces
        self._dart_face: Dict[Dart, int] = {}
        for face in faces:
            for dart in face.darts():
                self._dart_face[dart] = face.id
        self._graph: Optional[nx.Graph] = None

    @property
    def outer_face(self) -> Face:
        return self.faces[0]

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.rs.rot[v]

    def degree(self, v: int) -> int:
        return len(self.rs.rot[v])

    def has_edge(self, u: int, v: int) -> bool:
        return self.rs.has_edge(u, v)

    def edges(self) -> List[Edge]:
        return self.rs.edges()

    def graph(self) -> nx.Graph:
        """Underlying abstract graph (cached, do not mutate)"""
        if self._graph is None:
            self._graph = self.rs.to_networkx()
        return self._graph

    def face_of_dart(self, u: int, v: int) -> Face:
        return self.faces[self._dart_face[(u, v)]]

    def edge_faces(self, u: int, v: int) -> Tuple[Face, Face]:
        """The two faces on either side of edge uv"""
        return self.face_of_dart(u, v), self.face_of_dart(v, u)

    def face_neighbors(self, face: Face) -> List[Tuple[int, Edge]]:
        """(adjacent face id, shared edge) for each side of a face"""
        return [(self._dart_face[(b, a)], edge_key(a, b)) for a, b in face.darts()]

    def find_face(self, face: Union[Face, int, Iterable[int]]) -> Face:
        """Look a face up by Face, id, or vertex set"""
        if isinstance(face, Face):
            if 0 <= face.id < len(self.faces) and self.faces[face.id] == face:
                return face
            wanted = face.vertex_set()
        elif isinstance(face, int):
            if 0 <= face < len(self.faces):
                return self.faces[face]
            raise FaceNotFound(f"no face with id {face}")
        else:
            wanted = frozenset(face)
        for candidate in self.faces:
            if candidate.vertex_set() == wanted:
                return candidate
        raise FaceNotFound(f"no face with vertices {sorted(wanted)}")


class PlanarTriangulation(PlaneGraph):
    """Simple 3-connected plane triangulation"""

    def __init__(self, rs: RotationSystem, faces: List[Face], connectivity_check: str):
        super().__init__(rs, faces)
        # "brute-force" when the cut search ran, "assumed" above THREE_CONNECTIVITY_LIMIT
        self.connectivity_check = connectivity_check

    def __repr__(self) -> str:
        return f"PlanarTriangulation(n={self.n}, m={self.m}, faces={len(self.faces)})"

    def apex(self, u: int, v: int) -> int:
        """Third vertex of the face containing the dart u -> v"""
        face = self.face_of_dart(u, v)
        return next(w for w in face.boundary if w != u and w != v)

    def triangles(self) -> List[Tuple[int, int, int]]:
        """All 3-cycles as sorted vertex triples"""
        found = []
        for u, v in self.edges():
            common = set(self.rs.rot[u]) & set(self.rs.rot[v])
            for w in sorted(common):
                if w > v:
                    found.append((u, v, w))
        return found

    def separating_triangles(self) -> List[Tuple[int, int, int]]:
        facial = {face.vertex_set() for face in self.faces}
        return [t for t in self.triangles() if frozenset(t) not in facial]


class NearTriangulation(PlaneGraph):
    """2-connected plane graph whose bounded faces are triangles"""

    def __init__(self, rs: RotationSystem, faces: List[Face], outer: Face):
        super().__init__(rs, faces)
        self.outer = outer
        self.bounded_faces = [face for face in faces if face.id != outer.id]

    def __repr__(self) -> str:
        return f"NearTriangulation(n={self.n}, bounded={len(self.bounded_faces)}, outer={len(self.outer)})"

    @property
    def outer_face(self) -> Face:
        return self.outer

    def outer_cycle(self) -> Tuple[int, ...]:
        return self.outer.boundary


def from_rotation_system(rot: Union[RotationSystem, Sequence[Sequence[int]]]) -> PlanarTriangulation:
    """Validate a rotation system as a simple plane triangulation"""
    rs = rot if isinstance(rot, RotationSystem) else RotationSystem(rot)
    if rs.n < 4:
        raise TooSmall(f"a triangulation needs at least 4 vertices, got {rs.n}")

    faces = rs.trace_faces()
    for face in faces:
        if len(face) != 3 or len(face.vertex_set()) != 3:
            raise NotTriangular(f"face {face.id} has boundary {face.boundary}")
    if len(faces) != 2 * rs.n - 4:
        raise EulerViolation(f"{len(faces)} faces, expected {2 * rs.n - 4} for n = {rs.n}")

    if rs.n <= THREE_CONNECTIVITY_LIMIT:
        if has_small_cut(rs.to_networkx(), 2):
            raise NotThreeConnected("triangulation has a cut with at most two vertices")
        check = "brute-force"
    else:
        check = "assumed"
    logger.debug("validated triangulation n=%d m=%d (3-connectivity %s)", rs.n, rs.m, check)
    return PlanarTriangulation(rs, faces, check)


def triangulation_from_faces(faces: Iterable[Sequence[int]], n: Optional[int] = None) -> PlanarTriangulation:
    """Build and validate a triangulation from consistently oriented triangles"""
    return from_rotation_system(rotation_from_faces(faces, n))


def _validated_near_triangulation(rs: RotationSystem, faces: List[Face], outer: Face) -> NearTriangulation:
    if len(outer.vertex_set()) != len(outer):
        raise EmbeddingError(f"outer boundary {outer.boundary} is not a cycle")
    for face in faces:
        if face.id != outer.id and (len(face) != 3 or len(face.vertex_set()) != 3):
            raise NotTriangular(f"bounded face {face.id} has boundary {face.boundary}")
    if rs.n - rs.m + len(faces) != 2:
        raise EulerViolation("embedding is not planar")
    if not nx.is_biconnected(rs.to_networkx()):
        raise NotThreeConnected("near triangulation is not 2-connected")
    return NearTriangulation(rs, faces, outer)


def near_triangulation(G: PlanarTriangulation, outer: Union[Face, int, Iterable[int]]) -> NearTriangulation:
    """Re-root the embedding with `outer` as the unbounded face"""
    face = G.find_face(outer)
    return NearTriangulation(G.rs, G.faces, face)


def near_triangulation_from_rotation(
    rot: Union[RotationSystem, Sequence[Sequence[int]]],
    outer: Optional[Iterable[int]] = None,
) -> NearTriangulation:
    """Trace faces; the single non-triangular face (or `outer`) becomes unbounded"""
    rs = rot if isinstance(rot, RotationSystem) else RotationSystem(rot)
    faces = rs.trace_faces()
    if outer is not None:
        wanted = frozenset(outer)
        matches = [face for face in faces if face.vertex_set() == wanted]
        if not matches:
            raise FaceNotFound(f"no face with vertices {sorted(wanted)}")
        outer_face = matches[0]
    else:
        odd = [face for face in faces if len(face) != 3]
        if len(odd) > 1:
            raise NotTriangular(f"{len(odd)} non-triangular faces")
        outer_face = odd[0] if odd else faces[0]
    return _validated_near_triangulation(rs, faces, outer_face)


def near_triangulation_from_faces(bounded_faces: Iterable[Sequence[int]]) -> NearTriangulation:
    """Build a near triangulation from its oriented bounded triangles"""
    bounded_faces = [tuple(face) for face in bounded_faces]
    rs = rotation_from_faces(bounded_faces)
    faces = rs.trace_faces()
    used = set()
    for face in bounded_faces:
        used.update((face[i], face[(i + 1) % len(face)]) for i in range(len(face)))
    outer = [face for face in faces if not any(dart in used for dart in face.darts())]
    if len(outer) != 1:
        raise EmbeddingError(f"expected one unbounded face, found {len(outer)}")
    return _validated_near_triangulation(rs, faces, outer[0])


def relabel(G: PlanarTriangulation, perm: Sequence[int]) -> PlanarTriangulation:
    """Isomorphic copy of G with vertex v renamed perm[v]"""
    return from_rotation_system(G.rs.relabel(perm))


def delete_vertex(G: PlanarTriangulation, x: int) -> NearTriangulation:
    """
    Remove x from G. The link cycle of x becomes the outer face; vertices
    above x are renumbered down by one.
    """
    link = [u - 1 if u > x else u for u in G.neighbors(x)]
    rs = G.rs.without_vertex(x)
    return near_triangulation_from_rotation(rs, outer=link)


def is_four_connected(G: PlanarTriangulation) -> bool:
    """True iff n >= 5 and G has no separating triangle"""
    return G.n >= 5 and not G.separating_triangles()


def four_connected_by_cuts(G: PlanarTriangulation) -> bool:
    """Direct 3-cut search; agrees with is_four_connected"""
    return G.n >= 5 and not has_small_cut(G.graph(), 3)


def faces(G: PlaneGraph) -> List[Face]:
    """All faces of G, unbounded face included"""
    return list(G.faces)
