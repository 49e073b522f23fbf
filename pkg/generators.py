"""
Triangulation families
Double wheels, flipped double wheels, the G_p family, stacked triangulations,
random triangulations, and small near-triangulation fixtures.

All constructions work on lists of consistently oriented triangles and hand
them to plane_graph for rotation derivation and validation.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from census_errors import BadAssignment, ConfigError, TooSmall
from plane_graph import (
    NearTriangulation,
    PlanarTriangulation,
    near_triangulation_from_faces,
    triangulation_from_faces,
)

logger = logging.getLogger(__name__)

Triangle = Tuple[int, int, int]

K4_FACES: List[Triangle] = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]

FAMILIES = ("double_wheel", "flipped_double_wheel", "g_p", "stacked", "random")

# G_p original vertices and triangles (K4_FACES in letter form)
CORNERS = {"a": 0, "b": 1, "c": 2, "d": 3}
ORIGINAL_TRIANGLES = ("abc", "acd", "abd", "bcd")
DEFAULT_APEX_ASSIGNMENT = {"abc": "c", "acd": "c", "bcd": "c", "abd": "d"}

FLIPS_PER_VERTEX = 10


def _rotate_to(face: Sequence[int], v: int) -> Triangle:
    k = face.index(v)
    return tuple(face[k:]) + tuple(face[:k])


class FaceSoup:
    """Mutable list of oriented triangles with a dart index"""

    def __init__(self, faces: Sequence[Sequence[int]]):
        self.faces: List[Triangle] = [tuple(face) for face in faces]
        self.dart: Dict[Tuple[int, int], int] = {}
        self.adj: Dict[int, Set[int]] = {}
        for i, face in enumerate(self.faces):
            self._index(i)
            for a, b in self._darts(face):
                self.adj.setdefault(a, set()).add(b)

    @staticmethod
    def _darts(face: Triangle) -> List[Tuple[int, int]]:
        return [(face[0], face[1]), (face[1], face[2]), (face[2], face[0])]

    def _index(self, i: int):
        for dart in self._darts(self.faces[i]):
            self.dart[dart] = i

    def insert_vertex(self, i: int, x: int):
        """Stack x into face i"""
        a, b, c = self.faces[i]
        self.faces[i] = (a, b, x)
        self.faces.append((b, c, x))
        self.faces.append((c, a, x))
        for j in (i, len(self.faces) - 2, len(self.faces) - 1):
            self._index(j)
        self.adj[x] = {a, b, c}
        for w in (a, b, c):
            self.adj[w].add(x)

    def flip(self, u: int, v: int) -> bool:
        """Replace edge uv by the opposite diagonal; refuse if that edge exists"""
        i, j = self.dart[(u, v)], self.dart[(v, u)]
        a = _rotate_to(self.faces[i], u)[2]
        b = _rotate_to(self.faces[j], v)[2]
        if a == b or b in self.adj[a]:
            return False
        del self.dart[(u, v)]
        del self.dart[(v, u)]
        self.faces[i] = (a, u, b)
        self.faces[j] = (b, v, a)
        self._index(i)
        self._index(j)
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.adj[a].add(b)
        self.adj[b].add(a)
        return True


def k4() -> PlanarTriangulation:
    return triangulation_from_faces(K4_FACES)


def _double_wheel_faces(n: int) -> List[Triangle]:
    # rim 0..n-3, hubs n-2 (top) and n-1 (bottom)
    r = n - 2
    top, bottom = r, r + 1
    faces = []
    for i in range(r):
        j = (i + 1) % r
        faces.append((top, i, j))
        faces.append((bottom, j, i))
    return faces


def double_wheel(n: int) -> PlanarTriangulation:
    """Join of two nonadjacent hubs with an (n-2)-cycle"""
    if n < 5:
        raise TooSmall(f"double wheel needs n >= 5, got {n}")
    return triangulation_from_faces(_double_wheel_faces(n))


def flipped_double_wheel(n: int) -> Tuple[PlanarTriangulation, int]:
    """
    Double wheel with rim edge (0, 1) replaced by the hub-hub edge.
    Returns the triangulation and its apex, the rim vertex 1.
    """
    if n < 6:
        raise TooSmall(f"flipped double wheel needs n >= 6, got {n}")
    soup = FaceSoup(_double_wheel_faces(n))
    if not soup.flip(0, 1):
        raise TooSmall(f"rim edge of the n = {n} double wheel cannot be flipped")
    return triangulation_from_faces(soup.faces), 1


def _patch_faces(face: Triangle, apex: int, interior: Sequence[int]) -> List[Triangle]:
    """
    Faces of a flipped double wheel filling the oriented triangle `face`,
    apex identified with corner `apex`. The interior vertices form a path
    u_1..u_p, all adjacent to the two other corners s, t; u_1 is the apex's
    only interior neighbour.
    """
    q, s, t = _rotate_to(face, apex)
    u = list(interior)
    p = len(u)
    faces = [(q, s, u[0]), (t, q, u[0])]
    for i in range(p - 1):
        faces.append((s, u[i + 1], u[i]))
        faces.append((t, u[i], u[i + 1]))
    faces.append((s, t, u[p - 1]))
    return faces


@dataclass
class GpLayout:
    """Where the original vertices, apexes and patches sit in G_p"""

    p: int
    corners: Dict[str, int]
    apex: Dict[str, str]
    interior: Dict[str, Tuple[int, ...]] = field(default_factory=dict)

    def apex_vertex(self, triangle: str) -> int:
        return self.corners[self.apex[triangle]]

    def flexible_ends(self, triangle: str) -> FrozenSet[int]:
        """The two non-apex corners"""
        return frozenset(self.corners[x] for x in triangle if x != self.apex[triangle])


def _resolve_assignment(apex_assignment: Optional[Dict[str, str]]) -> Dict[str, str]:
    assignment = dict(DEFAULT_APEX_ASSIGNMENT)
    for triangle, corner in (apex_assignment or {}).items():
        key = "".join(sorted(triangle))
        if key not in ORIGINAL_TRIANGLES:
            raise BadAssignment(f"{triangle} is not an original triangle")
        if corner not in key:
            raise BadAssignment(f"corner {corner} is not on triangle {key}")
        assignment[key] = corner
    return assignment


def g_p_with_layout(p: int, apex_assignment: Optional[Dict[str, str]] = None) -> Tuple[PlanarTriangulation, GpLayout]:
    if p < 1:
        raise TooSmall(f"G_p needs p >= 1, got {p}")
    assignment = _resolve_assignment(apex_assignment)
    layout = GpLayout(p=p, corners=dict(CORNERS), apex=assignment)
    letters = {v: x for x, v in CORNERS.items()}

    faces: List[Triangle] = []
    next_id = 4
    for face in K4_FACES:
        name = "".join(sorted(letters[v] for v in face))
        interior = tuple(range(next_id, next_id + p))
        next_id += p
        layout.interior[name] = interior
        faces.extend(_patch_faces(face, CORNERS[assignment[name]], interior))

    G = triangulation_from_faces(faces)
    logger.debug("built G_%d with n=%d, apexes %s", p, G.n, assignment)
    return G, layout


def g_p(p: int, apex_assignment: Optional[Dict[str, str]] = None) -> PlanarTriangulation:
    """K4 with a flipped double wheel on p interior vertices in each face"""
    return g_p_with_layout(p, apex_assignment)[0]


def traversal_kind(layout: GpLayout, cycle: Sequence[int]) -> Dict[str, str]:
    """
    Classify how a cycle crosses each original triangle: "absent", "flexible"
    (between the two non-apex corners), "fixed" (through the apex corner) or
    "internal" (enters and leaves through the same corner).
    """
    kinds = {}
    k = len(cycle)
    for triangle, interior in layout.interior.items():
        inside = set(interior)
        positions = [i for i, v in enumerate(cycle) if v in inside]
        if not positions:
            kinds[triangle] = "absent"
            continue
        # the interior run is contiguous; its neighbours on the cycle are corners
        starts = [i for i in positions if cycle[(i - 1) % k] not in inside]
        if len(starts) != 1:
            kinds[triangle] = "internal"
            continue
        first = starts[0]
        last = first
        while cycle[(last + 1) % k] in inside:
            last = (last + 1) % k
        ends = {cycle[(first - 1) % k], cycle[(last + 1) % k]}
        if len(ends) == 1:
            kinds[triangle] = "internal"
        elif ends == set(layout.flexible_ends(triangle)):
            kinds[triangle] = "flexible"
        else:
            kinds[triangle] = "fixed"
    return kinds


def stacked(depth: int) -> PlanarTriangulation:
    """Iterated Kleetope of K4: each round stacks a vertex into every face"""
    if depth < 0:
        raise TooSmall(f"depth must be >= 0, got {depth}")
    soup = FaceSoup(K4_FACES)
    n = 4
    for _ in range(depth):
        for i in range(len(soup.faces)):
            soup.insert_vertex(i, n)
            n += 1
    return triangulation_from_faces(soup.faces)


def random_triangulation(n: int, seed: int) -> PlanarTriangulation:
    """
    Stack n - 4 vertices into uniformly chosen faces of K4, then attempt
    FLIPS_PER_VERTEX * n uniformly chosen diagonal flips, rejecting those that
    would create a parallel edge.
    """
    if n < 4:
        raise TooSmall(f"random triangulation needs n >= 4, got {n}")
    rng = random.Random(seed)
    soup = FaceSoup(K4_FACES)
    for x in range(4, n):
        soup.insert_vertex(rng.randrange(len(soup.faces)), x)

    rejected = 0
    for _ in range(FLIPS_PER_VERTEX * n):
        face = soup.faces[rng.randrange(len(soup.faces))]
        side = rng.randrange(3)
        if not soup.flip(face[side], face[(side + 1) % 3]):
            rejected += 1
    logger.debug("random triangulation n=%d seed=%d: %d flips rejected", n, seed, rejected)
    return triangulation_from_faces(soup.faces)


def fan(k: int) -> NearTriangulation:
    """k triangles sharing apex 0 along the path 1..k+1"""
    if k < 2:
        raise TooSmall(f"fan needs at least 2 triangles, got {k}")
    return near_triangulation_from_faces([(0, i, i + 1) for i in range(1, k + 1)])


def wheel_disk(k: int) -> NearTriangulation:
    """Hub 0 joined to the rim cycle 1..k, rim as outer face"""
    if k < 3:
        raise TooSmall(f"wheel needs a rim of length >= 3, got {k}")
    return near_triangulation_from_faces([(0, i, i % k + 1) for i in range(1, k + 1)])


def quadrilateral_with_chord() -> NearTriangulation:
    """4-cycle 0123 with chord 02"""
    return near_triangulation_from_faces([(0, 1, 2), (0, 2, 3)])


@dataclass(frozen=True)
class FamilySpec:
    """One generator call: family name, size parameter and seed"""

    family: str
    n: Optional[int] = None
    p: Optional[int] = None
    depth: Optional[int] = None
    seed: int = 0
    apex_assignment: Optional[Tuple[Tuple[str, str], ...]] = None

    def label(self) -> str:
        if self.family == "g_p":
            return f"g_p(p={self.p})"
        if self.family == "stacked":
            return f"stacked(depth={self.depth})"
        if self.family == "random":
            return f"random(n={self.n},seed={self.seed})"
        return f"{self.family}(n={self.n})"


def build(spec: FamilySpec) -> PlanarTriangulation:
    """Run the generator a FamilySpec names"""
    if spec.family == "double_wheel":
        return double_wheel(_need(spec.n, "n"))
    if spec.family == "flipped_double_wheel":
        return flipped_double_wheel(_need(spec.n, "n"))[0]
    if spec.family == "g_p":
        assignment = dict(spec.apex_assignment) if spec.apex_assignment else None
        return g_p(_need(spec.p, "p"), assignment)
    if spec.family == "stacked":
        return stacked(_need(spec.depth, "depth"))
    if spec.family == "random":
        return random_triangulation(_need(spec.n, "n"), spec.seed)
    raise ConfigError(f"unknown family {spec.family!r}; expected one of {', '.join(FAMILIES)}")


def _need(value: Optional[int], name: str) -> int:
    if value is None:
        raise ConfigError(f"family parameter {name} is required")
    return value
