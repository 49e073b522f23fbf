"""
Counting bases
Representation and exhaustive validation of counting bases (edge sets P,
cycle families C_P and the pairing sigma), the overlap O, the |P| / O lower
bound on distinct cycles, and the zigzag and separating-4-cycle bases.

Certificates serialize to canonical JSON so `recheck` can re-verify them
without the generator that produced them.
"""

import json
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

import networkx as nx

from census_errors import (
    AxiomViolation,
    CensusError,
    EmptyFamily,
    EmptyP,
    NotACycle,
    NotFourConnected,
    OutOfRange,
    ParseError,
    ProcedureFault,
)
from cycles import (
    DEFAULT_BUDGET,
    Cycle,
    SeparatingCycleReport,
    cycle_from_edges,
    cycle_sides,
    cycles_through,
    enumerate_cycles,
    iota,
    map_jobs,
)
from plane_graph import Edge, PlanarTriangulation, edge_key, from_rotation_system, is_four_connected
from proof_procedures import DEGREE_PROFILE, GOOD_INTERNAL_EDGE, common_neighbours, zigzag_paths

logger = logging.getLogger(__name__)

ZIGZAG_T3 = "zigzag-t3"
ZIGZAG_6I = "zigzag-6i"
SEP4 = "sep4"
BASE_KINDS = (ZIGZAG_6I, ZIGZAG_T3, SEP4)

AXIOMS = ("i", "ii", "iii", "iv")
CERTIFICATE_FORMAT = "counting-base-certificate"
CERTIFICATE_VERSION = 1

# Overlap caps the constructions promise
ZIGZAG_OVERLAP_CAP = 5

EdgeSet = Tuple[Edge, ...]


def edge_set(edges: Iterable[Edge]) -> EdgeSet:
    return tuple(sorted({edge_key(*e) for e in edges}))


@dataclass
class CountingBase:
    """
    P[i] is a sorted edge list, families[i] its cycles, sigma[i] the index
    of sigma(P[i]). labels carry the generating object (zigzag path or
    4-cycle) for reports.
    """

    name: str
    host: PlanarTriangulation
    k: Optional[int]
    P: List[EdgeSet]
    families: List[List[Cycle]]
    sigma: List[int]
    labels: List[str] = field(default_factory=list)
    extra: Dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.P)

    def union(self) -> Set[Cycle]:
        return {c for family in self.families for c in family}


@dataclass
class Certificate:
    base_id: str
    size: int
    overlap: int
    bound: Fraction
    witnessed_count: int
    axioms_ok: Dict[str, bool]
    bound_ok: bool
    k: Optional[int] = None
    overlap_cap: Optional[int] = None

    @property
    def cap_ok(self) -> bool:
        return self.overlap_cap is None or self.overlap <= self.overlap_cap

    @property
    def ok(self) -> bool:
        return all(self.axioms_ok.values()) and self.bound_ok and self.cap_ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base_id": self.base_id,
            "size": self.size,
            "overlap": self.overlap,
            "overlap_cap": self.overlap_cap,
            "cap_ok": self.cap_ok,
            "bound": f"{self.bound.numerator}/{self.bound.denominator}",
            "witnessed_count": self.witnessed_count,
            "axioms_ok": dict(self.axioms_ok),
            "bound_ok": self.bound_ok,
            "k": self.k,
        }


def swap_cycle(C: Cycle, P: EdgeSet, image: EdgeSet) -> Cycle:
    """sigma(C, P) = (E(C) - P) | sigma(P); NotACycle if that is not a cycle"""
    return cycle_from_edges((C.edges() - set(P)) | set(image))


def _members(base: CountingBase) -> Dict[Cycle, List[int]]:
    members: Dict[Cycle, List[int]] = defaultdict(list)
    for i, family in enumerate(base.families):
        for C in family:
            members[C].append(i)
    return members


def multiplicities(base: CountingBase) -> Dict[Cycle, int]:
    """m(C): how many families contain C"""
    return {C: len(idx) for C, idx in _members(base).items()}


def overlaps(base: CountingBase) -> Dict[Tuple[Cycle, int], int]:
    """o(C, P) for every P and every C in its family"""
    members = _members(base)
    sets = [frozenset(P) for P in base.P]
    result = {}
    for i, family in enumerate(base.families):
        for C in family:
            result[(C, i)] = sum(1 for j in members[C] if sets[i] & sets[j])
    return result


def _squares(base: CountingBase) -> List[Cycle]:
    squares = set()
    for i, j in enumerate(base.sigma):
        if 0 <= j < len(base.P):
            try:
                squares.add(cycle_from_edges(base.P[i] + base.P[j]))
            except NotACycle:
                continue
    return sorted(squares)


def overlap_cap(base: CountingBase) -> Optional[int]:
    """
    Largest overlap the construction allows: 5 for zigzag bases (only
    consecutive triples on a cycle share edges), iota + 1 for separating
    4-cycle bases with iota taken over the 4-cycles P | sigma(P).
    """
    if base.name in (ZIGZAG_T3, ZIGZAG_6I):
        return ZIGZAG_OVERLAP_CAP
    if base.name == SEP4:
        return iota(_squares(base)) + 1
    return None


class _Checker:
    def __init__(self, strict: bool):
        self.strict = strict
        self.ok = {axiom: True for axiom in AXIOMS}

    def fail(self, axiom: str, witness: Any):
        if self.strict:
            raise AxiomViolation(axiom, witness)
        if self.ok[axiom]:
            logger.warning("axiom (%s) fails: %s", axiom, witness)
        self.ok[axiom] = False


def validate(base: CountingBase, strict: bool = True) -> Certificate:
    """
    Check axioms (i)-(iv) exhaustively, compute the overlap O, hold it to
    the construction's cap and compare |P| / O with the number of distinct
    cycles in the families. With strict=False failures are recorded in the
    certificate instead of raised.
    """
    check = _Checker(strict)
    sets = [frozenset(P) for P in base.P]
    fam_sets = [set(family) for family in base.families]

    # (i)
    for i, family in enumerate(base.families):
        if not family:
            check.fail("i", {"P": base.P[i], "reason": "empty family"})
        for C in family:
            if not C.is_cycle_of(base.host) or not sets[i] <= C.edges():
                check.fail("i", {"P": base.P[i], "C": C.verts})

    # (ii)
    images: Dict[Tuple[Cycle, int], Optional[Cycle]] = {}
    for i, j in enumerate(base.sigma):
        if not 0 <= j < len(base.P) or base.sigma[j] != i:
            check.fail("ii", {"P": base.P[i], "reason": "sigma is not an involution"})
            continue
        if sets[i] <= sets[j]:
            check.fail("ii", {"P": base.P[i], "sigma(P)": base.P[j]})
            continue
        for C in base.families[i]:
            try:
                image = swap_cycle(C, base.P[i], base.P[j])
            except NotACycle:
                images[(C, i)] = None
                check.fail("ii", {"P": base.P[i], "C": C.verts, "reason": "sigma(C, P) is not a cycle"})
                continue
            images[(C, i)] = image
            if image not in fam_sets[j]:
                check.fail("ii", {"P": base.P[i], "C": C.verts, "sigma(C, P)": image.verts})
            elif image in fam_sets[i]:
                check.fail("ii", {"P": base.P[i], "C": C.verts, "reason": "sigma(C, P) stays in C_P"})
            else:
                try:
                    back = swap_cycle(image, base.P[j], base.P[i])
                except NotACycle:
                    back = None
                if back != C:
                    check.fail("ii", {"P": base.P[i], "C": C.verts, "reason": "sigma(., P) is not an involution"})

    # (iii) and (iv)
    members = _members(base)
    for C, idx in members.items():
        for a in idx:
            for b in idx:
                if a >= b:
                    continue
                ia, ib = images.get((C, a)), images.get((C, b))
                if ia is not None and ia == ib:
                    check.fail("iii", {"C": C.verts, "P1": base.P[a], "P2": base.P[b]})
                if not sets[a] & sets[b]:
                    if ia is not None and ia not in fam_sets[b]:
                        check.fail("iv", {"C": C.verts, "P1": base.P[a], "P2": base.P[b]})
                    if ib is not None and ib not in fam_sets[a]:
                        check.fail("iv", {"C": C.verts, "P1": base.P[b], "P2": base.P[a]})

    o = overlaps(base)
    overlap = max(o.values()) if o else 0
    witnessed = len(base.union())
    bound = Fraction(len(base.P), overlap) if overlap else Fraction(0)
    bound_ok = witnessed >= bound
    cap = overlap_cap(base)
    cert = Certificate(base.name, len(base.P), overlap, bound, witnessed, check.ok, bound_ok, base.k, cap)
    if not cert.cap_ok:
        if strict:
            raise ProcedureFault(f"overlap {overlap} exceeds the {base.name} cap {cap}")
        logger.warning("overlap %d exceeds the %s cap %d", overlap, base.name, cap)
    if strict and all(check.ok.values()) and not bound_ok:
        raise ProcedureFault(f"{witnessed} distinct cycles fall below the bound {bound}")
    logger.debug("validated %s: |P|=%d O=%d bound=%s witnessed=%d", base.name, len(base.P), overlap, bound, witnessed)
    return cert


def sub_base(base: CountingBase, keep: Iterable[int]) -> CountingBase:
    """Restrict the base to `keep` closed under sigma"""
    chosen = set(keep)
    chosen |= {base.sigma[i] for i in chosen}
    order = sorted(chosen)
    index = {old: new for new, old in enumerate(order)}
    return CountingBase(
        name=base.name,
        host=base.host,
        k=base.k,
        P=[base.P[i] for i in order],
        families=[list(base.families[i]) for i in order],
        sigma=[index[base.sigma[i]] for i in order],
        labels=[base.labels[i] for i in order] if base.labels else [],
        extra=dict(base.extra),
    )


# Zigzag bases

def zigzag_proven_range(G: PlanarTriangulation, profile: str) -> Tuple[int, int]:
    """Range of k for which the family nonemptiness is a theorem, not an observation"""
    if profile == "theorem6i":
        return 7, G.n
    return 7, math.ceil(((G.n - 3) / 2) ** math.log(2, 3)) + 3


def _through_task(args: Tuple[PlanarTriangulation, Tuple[int, ...], int, int]) -> List[Cycle]:
    G, path, k, budget = args
    return cycles_through(G, path, k, budget)


def build_zigzag_base(
    G: PlanarTriangulation,
    k: int,
    profile: str = "theorem6i",
    jobs: int = 1,
    budget: int = DEFAULT_BUDGET,
    candidates: Optional[Sequence[Cycle]] = None,
) -> CountingBase:
    """
    P: zigzag paths (good internal edge for theorem3, degree profile for
    theorem6i); C_P: every k-cycle through P; sigma swaps the internal edge.
    When all k-cycles are already known, pass them as candidates.
    """
    if profile == "theorem6i":
        paths = zigzag_paths(G, DEGREE_PROFILE)
        name = ZIGZAG_6I
    elif profile == "theorem3":
        paths = zigzag_paths(G, GOOD_INTERNAL_EDGE)
        name = ZIGZAG_T3
    else:
        raise ValueError(f"unknown zigzag profile {profile!r}")
    if not paths:
        raise EmptyP(f"{G!r} has no zigzag path for profile {profile}")
    if not 4 <= k <= G.n:
        raise OutOfRange(f"{profile} zigzag base needs 4 <= k <= n = {G.n}, got {k}")

    paths = sorted(paths)
    index = {path: i for i, path in enumerate(paths)}
    if candidates is None:
        families = map_jobs(_through_task, [(G, path.vertices(), k, budget) for path in paths], jobs)
    else:
        families = [[C for C in candidates if C.contains_edges(path.edges())] for path in paths]
    for path, family in zip(paths, families):
        if not family:
            raise EmptyFamily(path.vertices(), k)

    lo, hi = zigzag_proven_range(G, profile)
    base = CountingBase(
        name=name,
        host=G,
        k=k,
        P=[edge_set(path.edges()) for path in paths],
        families=families,
        sigma=[index[path.swapped()] for path in paths],
        labels=["-".join(map(str, path.vertices())) for path in paths],
        extra={"profile": profile, "in_proven_range": lo <= k <= hi},
    )
    logger.info("%s base for k=%d: |P|=%d", name, k, len(base))
    return base


# Separating 4-cycle bases

def sep4_min_length(n: int) -> int:
    """Smallest k covered by the separating 4-cycle construction"""
    return math.ceil(n / 2 + math.sqrt(n / 2 - 2)) + 2


def _diagonal_split(C: Cycle, P: EdgeSet, square: Tuple[int, int, int, int]) -> bool:
    """True iff C minus the two edges of P is a v1v3-path plus a v2v4-path"""
    v1, v2, v3, v4 = square
    rest = nx.Graph()
    rest.add_edges_from(C.edges() - set(P))
    ends = set()
    for comp in nx.connected_components(rest):
        sub = rest.subgraph(comp)
        ends.add(frozenset(v for v in comp if sub.degree(v) <= 1))
    return ends == {frozenset((v1, v3)), frozenset((v2, v4))}


def build_sep4_base(
    G: PlanarTriangulation,
    S: Sequence[SeparatingCycleReport],
    k: int,
    budget: int = DEFAULT_BUDGET,
    candidates: Optional[Sequence[Cycle]] = None,
) -> CountingBase:
    """
    Two P per separating 4-cycle v1v2v3v4: {v1v2, v3v4} and {v2v3, v4v1},
    each other's sigma. C_P holds the k-cycles through P whose remainder
    joins v1 to v3 and v2 to v4.
    """
    if not is_four_connected(G):
        raise NotFourConnected(f"{G!r} has a separating triangle")
    lo = sep4_min_length(G.n)
    if not lo <= k <= G.n:
        raise OutOfRange(f"separating 4-cycle base needs {lo} <= k <= {G.n}, got {k}")
    if not S:
        raise EmptyP(f"{G!r} has no separating 4-cycle")

    if candidates is None:
        candidates = enumerate_cycles(G, k, k, budget)
    P: List[EdgeSet] = []
    families: List[List[Cycle]] = []
    sigma: List[int] = []
    labels: List[str] = []
    for report in S:
        v1, v2, v3, v4 = report.cycle.verts
        pair = (edge_set([(v1, v2), (v3, v4)]), edge_set([(v2, v3), (v4, v1)]))
        base_index = len(P)
        for offset, edges in enumerate(pair):
            family = [
                C for C in candidates
                if set(edges) <= C.edges() and _diagonal_split(C, edges, (v1, v2, v3, v4))
            ]
            if not family:
                raise EmptyFamily(edges, k)
            P.append(edges)
            families.append(family)
            sigma.append(base_index + 1 - offset)
            labels.append("-".join(map(str, report.cycle.verts)))

    base = CountingBase(SEP4, G, k, P, families, sigma, labels, extra={"iota": iota(S)})
    logger.info("sep4 base for k=%d: |S|=%d, iota=%d", k, len(S), base.extra["iota"])
    return base


def common_neighbour_cycles(G: PlanarTriangulation, x: int, y: int) -> List[SeparatingCycleReport]:
    """Separating 4-cycles x a y b through common neighbours a, b of x and y"""
    shared = sorted(common_neighbours(G, x, y))
    reports = []
    for i, a in enumerate(shared):
        for b in shared[i + 1:]:
            cycle = Cycle.canonical((x, a, y, b))
            interior, exterior = cycle_sides(G, cycle)
            if interior and exterior:
                reports.append(SeparatingCycleReport(cycle, interior, exterior))
    return reports


class Sep4Distance(NamedTuple):
    j: int
    d1: int
    d2: int

    @property
    def holds(self) -> bool:
        return (self.d1 - 1) * (self.d2 - 1) <= self.j


def sep4_distance_bound(G: PlanarTriangulation, report: SeparatingCycleReport) -> Sep4Distance:
    """
    On the larger side of a separating 4-cycle v1v2v3v4 with j vertices,
    d1 = dist(v1, v3) avoiding v2, v4 and d2 = dist(v2, v4) avoiding v1, v3.
    """
    v1, v2, v3, v4 = report.cycle.verts
    side = report.exterior if len(report.exterior) >= len(report.interior) else report.interior
    closed = G.graph().subgraph(set(side) | {v1, v2, v3, v4})
    d1 = nx.shortest_path_length(closed.subgraph(set(closed) - {v2, v4}), v1, v3)
    d2 = nx.shortest_path_length(closed.subgraph(set(closed) - {v1, v3}), v2, v4)
    return Sep4Distance(len(side), d1, d2)


# Certificates

def certificate_to_json(base: CountingBase, cert: Certificate) -> str:
    """Canonical sorted-key JSON: host rotation, P, sigma, families and the certificate"""
    doc = {
        "format": CERTIFICATE_FORMAT,
        "version": CERTIFICATE_VERSION,
        "base": base.name,
        "k": base.k,
        "host": {"n": base.host.n, "rot": base.host.rs.to_lists()},
        "P": [[list(e) for e in P] for P in base.P],
        "sigma": list(base.sigma),
        "families": [[list(C.verts) for C in family] for family in base.families],
        "labels": list(base.labels),
        "certificate": cert.to_dict(),
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def certificate_from_json(text: str) -> Tuple[CountingBase, Certificate]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"certificate is not JSON: {exc.msg}", exc.pos) from exc
    if doc.get("format") != CERTIFICATE_FORMAT or doc.get("version") != CERTIFICATE_VERSION:
        raise ParseError("not a version 1 counting-base certificate")
    try:
        host = from_rotation_system(doc["host"]["rot"])
        base = CountingBase(
            name=doc["base"],
            host=host,
            k=doc["k"],
            P=[edge_set(tuple(e) for e in P) for P in doc["P"]],
            families=[[Cycle.canonical(c) for c in family] for family in doc["families"]],
            sigma=[int(j) for j in doc["sigma"]],
            labels=list(doc.get("labels", [])),
        )
        stored = doc["certificate"]
        cert = Certificate(
            base_id=stored["base_id"],
            size=stored["size"],
            overlap=stored["overlap"],
            bound=Fraction(stored["bound"]),
            witnessed_count=stored["witnessed_count"],
            axioms_ok={axiom: bool(stored["axioms_ok"][axiom]) for axiom in AXIOMS},
            bound_ok=bool(stored["bound_ok"]),
            k=stored.get("k"),
            overlap_cap=stored.get("overlap_cap"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed certificate: {exc}") from exc
    except CensusError as exc:
        raise ParseError(f"certificate host or cycles are invalid: {exc}") from exc
    return base, cert


def recheck(text: str) -> Tuple[bool, Certificate]:
    """Re-run validation on a serialized base; ok iff it passes and matches the stored numbers"""
    base, stored = certificate_from_json(text)
    fresh = validate(base, strict=False)
    same = (
        fresh.size == stored.size
        and fresh.overlap == stored.overlap
        and fresh.overlap_cap == stored.overlap_cap
        and fresh.bound == stored.bound
        and fresh.witnessed_count == stored.witnessed_count
    )
    return fresh.ok and same, fresh
