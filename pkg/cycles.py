"""
Cycle enumeration
Exact counts of simple cycles by length, cycles through a prescribed path,
separating short cycles, circumference and hamiltonian counts.

The engine is a length-bounded backtracking search over adjacency bitmasks.
Each cycle is found from its smallest vertex (the anchor) and only in the
orientation whose second vertex is smaller than its last, so every cycle is
counted exactly once as an undirected subgraph.
"""

import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, TypeVar, Union

from census_errors import BadPath, BudgetExceeded, NotACycle
from dual import boundary_cycle
from plane_graph import Edge, PlaneGraph, edge_key

logger = logging.getLogger(__name__)

# Partial paths explored before an enumeration gives up
DEFAULT_BUDGET = 10 ** 8

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True, order=True)
class Cycle:
    """A simple cycle in canonical vertex order"""

    verts: Tuple[int, ...]

    @classmethod
    def canonical(cls, seq: Iterable[int]) -> "Cycle":
        """Rotate to the smallest vertex; of the two directions take the smaller second vertex"""
        seq = tuple(seq)
        if len(seq) < 3 or len(set(seq)) != len(seq):
            raise NotACycle(f"{seq} is not a vertex sequence of a cycle")
        i = seq.index(min(seq))
        rotated = seq[i:] + seq[:i]
        if rotated[-1] < rotated[1]:
            rotated = (rotated[0],) + tuple(reversed(rotated[1:]))
        return cls(rotated)

    def __len__(self) -> int:
        return len(self.verts)

    @property
    def length(self) -> int:
        return len(self.verts)

    def edges(self) -> FrozenSet[Edge]:
        v = self.verts
        return frozenset(edge_key(v[i], v[(i + 1) % len(v)]) for i in range(len(v)))

    def contains_edges(self, edges: Iterable[Edge]) -> bool:
        own = self.edges()
        return all(edge_key(*e) in own for e in edges)

    def is_cycle_of(self, G: PlaneGraph) -> bool:
        v = self.verts
        return all(G.has_edge(v[i], v[(i + 1) % len(v)]) for i in range(len(v)))


def cycle_from_edges(edges: Iterable[Edge]) -> Cycle:
    """The cycle formed by an edge set; NotACycle if it is anything else"""
    return Cycle.canonical(boundary_cycle(edge_key(*e) for e in edges))


@dataclass
class CycleSpectrum:
    """Number of k-cycles for each k in [min_len, max_len]"""

    n: int
    counts: Dict[int, int]
    min_len: int = 3
    max_len: int = 0
    explored: int = 0

    def __getitem__(self, k: int) -> int:
        return self.counts.get(k, 0)

    def lengths(self) -> List[int]:
        return [k for k in sorted(self.counts) if self.counts[k]]

    def longest(self) -> int:
        """Longest length with a nonzero count, 0 if none"""
        present = self.lengths()
        return present[-1] if present else 0

    def total(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> Dict[str, int]:
        return {str(k): self.counts[k] for k in sorted(self.counts)}


@dataclass(frozen=True)
class SeparatingCycleReport:
    cycle: Cycle
    interior: FrozenSet[int]
    exterior: FrozenSet[int]


@dataclass
class _AnchorResult:
    counts: List[int]
    explored: int
    cycles: List[Tuple[int, ...]] = field(default_factory=list)


class _CycleFound(Exception):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _reachable(adj: Sequence[int], start: int, pool: int) -> int:
    """Vertices of `pool` reachable from `start` through `pool`"""
    seen = adj[start] & pool
    frontier = seen
    while frontier:
        grow = 0
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            grow |= adj[low.bit_length() - 1]
        grow &= pool & ~seen
        seen |= grow
        frontier = grow
    return seen


def _peel(adj: Sequence[int], pool: int, head: int, anchor: int) -> int:
    """Drop free vertices that can never be interior to the rest of the path"""
    ends = (1 << head) | (1 << anchor)
    changed = True
    while changed:
        changed = False
        rest = pool
        while rest:
            low = rest & -rest
            rest ^= low
            if _popcount(adj[low.bit_length() - 1] & (pool | ends)) < 2:
                pool ^= low
                changed = True
    return pool


def _search_anchor(
    adj: Sequence[int],
    anchor: int,
    min_len: int,
    max_len: int,
    budget: int,
    collect: bool = False,
    first_only: bool = False,
) -> _AnchorResult:
    n = len(adj)
    result = _AnchorResult([0] * (max_len + 1), 0)
    higher = ((1 << n) - 1) & ~((1 << (anchor + 1)) - 1)
    closers = adj[anchor]
    prune = min_len > 3
    path = [anchor]

    def extend(head: int, used: int, length: int):
        result.explored += 1
        if result.explored > budget:
            raise BudgetExceeded(budget, result.explored)
        if length >= min_len and (closers >> head) & 1 and path[1] < head:
            result.counts[length] += 1
            if collect:
                result.cycles.append(tuple(path))
            if first_only:
                raise _CycleFound()
        if length >= max_len:
            return
        free = higher & ~used
        if prune:
            free = _reachable(adj, head, _peel(adj, free, head, anchor))
            if length + _popcount(free) < min_len or not free & closers:
                return
        cand = adj[head] & free
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            path.append(v)
            extend(v, used | low, length + 1)
            path.pop()

    extend(anchor, 1 << anchor, 1)
    return result


def _anchor_task(args: Tuple) -> _AnchorResult:
    return _search_anchor(*args)


def map_jobs(func: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> List[R]:
    """Apply func to items, in a process pool when jobs > 1; results keep input order"""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def _run(
    G: PlaneGraph,
    min_len: int,
    max_len: int,
    budget: int,
    jobs: int,
    collect: bool,
) -> Tuple[List[int], int, List[Tuple[int, ...]]]:
    adj = G.rs.adjacency_masks()
    anchors = range(max(G.n - 2, 0))
    if jobs > 1:
        results = map_jobs(_anchor_task, [(adj, a, min_len, max_len, budget, collect) for a in anchors], jobs)
    else:
        results = []
        spent = 0
        for a in anchors:
            results.append(_search_anchor(adj, a, min_len, max_len, budget - spent, collect))
            spent += results[-1].explored

    counts = [0] * (max_len + 1)
    explored = 0
    found: List[Tuple[int, ...]] = []
    for res in results:
        explored += res.explored
        for k, c in enumerate(res.counts):
            counts[k] += c
        found.extend(res.cycles)
    if explored > budget:
        raise BudgetExceeded(budget, explored)
    return counts, explored, found


def _clip(G: PlaneGraph, min_len: int, max_len: Optional[int]) -> Tuple[int, int]:
    hi = G.n if max_len is None else min(max_len, G.n)
    return max(min_len, 3), hi


def spectrum(
    G: PlaneGraph,
    max_len: Optional[int] = None,
    min_len: int = 3,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> CycleSpectrum:
    """Exact number of k-cycles for every min_len <= k <= max_len (default n)"""
    lo, hi = _clip(G, min_len, max_len)
    if hi < lo:
        return CycleSpectrum(G.n, {}, lo, hi, 0)
    counts, explored, _ = _run(G, lo, hi, budget, jobs, collect=False)
    logger.debug("spectrum n=%d lengths %d..%d: %d partial paths", G.n, lo, hi, explored)
    return CycleSpectrum(G.n, {k: counts[k] for k in range(lo, hi + 1)}, lo, hi, explored)


def enumerate_cycles(
    G: PlaneGraph,
    min_len: int = 3,
    max_len: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> List[Cycle]:
    """All cycles with length in [min_len, max_len], sorted by length then vertices"""
    lo, hi = _clip(G, min_len, max_len)
    if hi < lo:
        return []
    _, _, found = _run(G, lo, hi, budget, jobs, collect=True)
    return sorted((Cycle(c) for c in found), key=lambda c: (len(c), c.verts))


def has_cycle_of_length(G: PlaneGraph, k: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Existence search that stops at the first k-cycle"""
    if k < 3 or k > G.n:
        return False
    adj = G.rs.adjacency_masks()
    spent = 0
    for anchor in range(G.n - 2):
        try:
            spent += _search_anchor(adj, anchor, k, k, budget - spent, first_only=True).explored
        except _CycleFound:
            return True
    return False


def _check_path(G: PlaneGraph, path: Sequence[int]) -> List[int]:
    path = [int(v) for v in path]
    if len(path) < 2:
        raise BadPath("a path needs at least one edge")
    if len(set(path)) != len(path):
        raise BadPath(f"path {path} repeats a vertex")
    for v in path:
        if not 0 <= v < G.n:
            raise BadPath(f"vertex {v} is not in the graph")
    for u, v in zip(path, path[1:]):
        if not G.has_edge(u, v):
            raise BadPath(f"{u}{v} is not an edge")
    return path


def cycles_through(G: PlaneGraph, path: Sequence[int], k: int, budget: int = DEFAULT_BUDGET) -> List[Cycle]:
    """All k-cycles containing every edge of the simple path `path`"""
    path = _check_path(G, path)
    if k < 3 or k < len(path) or k > G.n:
        return []
    adj = G.rs.adjacency_masks()
    start = path[0]
    trail = list(path)
    found: List[Cycle] = []
    explored = 0

    def extend(head: int, used: int, length: int):
        nonlocal explored
        explored += 1
        if explored > budget:
            raise BudgetExceeded(budget, explored)
        if length == k:
            if (adj[head] >> start) & 1:
                found.append(Cycle.canonical(trail))
            return
        cand = adj[head] & ~used
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            trail.append(v)
            extend(v, used | low, length + 1)
            trail.pop()

    used = 0
    for v in path:
        used |= 1 << v
    extend(path[-1], used, len(path))
    return sorted(found)


def cycles_through_edge(G: PlaneGraph, edge: Edge, k: int, budget: int = DEFAULT_BUDGET) -> int:
    return len(cycles_through(G, edge, k, budget))


def cycle_sides(G: PlaneGraph, cycle: Union[Cycle, Sequence[int]]) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """
    (interior, exterior) vertex sets of a cycle. Faces reachable from the
    unbounded face without crossing the cycle are outside.
    """
    verts = cycle.verts if isinstance(cycle, Cycle) else tuple(cycle)
    on = set(verts)
    cut = {edge_key(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))}

    start = G.outer_face.id
    outside = {start}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for g, e in G.face_neighbors(G.faces[f]):
            if e in cut or g in outside:
                continue
            outside.add(g)
            queue.append(g)

    exterior = {v for f in outside for v in G.faces[f].boundary if v not in on}
    interior = {v for face in G.faces if face.id not in outside for v in face.boundary if v not in on}
    return frozenset(interior), frozenset(exterior)


def separating_cycles(G: PlaneGraph, length: int, budget: int = DEFAULT_BUDGET) -> List[SeparatingCycleReport]:
    """All 3- or 4-cycles with vertices on both sides"""
    if length not in (3, 4):
        raise ValueError(f"separating cycles are reported for length 3 or 4, not {length}")
    reports = []
    for cycle in enumerate_cycles(G, length, length, budget):
        interior, exterior = cycle_sides(G, cycle)
        if interior and exterior:
            reports.append(SeparatingCycleReport(cycle, interior, exterior))
    return reports


def iota(S: Sequence[Union[Cycle, SeparatingCycleReport]]) -> int:
    """Ordered pairs of members of S whose intersection is a single edge with its ends"""
    cycles = [c.cycle if isinstance(c, SeparatingCycleReport) else c for c in S]
    count = 0
    for i, a in enumerate(cycles):
        for j, b in enumerate(cycles):
            if i == j:
                continue
            if len(set(a.verts) & set(b.verts)) == 2 and len(a.edges() & b.edges()) == 1:
                count += 1
    return count


def circumference_and_hamiltonian(G: PlaneGraph, budget: int = DEFAULT_BUDGET) -> Tuple[int, int]:
    """Longest cycle length and number of hamiltonian cycles (undirected)"""
    h = spectrum(G, min_len=G.n, max_len=G.n, budget=budget)[G.n]
    if h:
        return G.n, h
    for k in range(G.n - 1, 2, -1):
        if has_cycle_of_length(G, k, budget):
            logger.debug("circumference of %r is %d", G, k)
            return k, 0
    return 0, 0


def five_cycle_flag(spec: CycleSpectrum) -> bool:
    """True when the instance has fewer than 6n five-cycles"""
    return spec[5] < 6 * spec.n
