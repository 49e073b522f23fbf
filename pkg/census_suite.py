"""
Census suite runner
Loads a JSON suite configuration, generates every configured instance, runs
the enabled checks on it and writes one JSON line per instance, a CSV
summary and a metadata file. Can re-run whenever the config file changes.
"""

import csv
import hashlib
import json
import logging
import math
import os
import platform
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from watchdog.events import FileSystemEventHandler
from watchdog.observers import Observer

from census_errors import BudgetExceeded, CensusError, ConfigError, EmptyFamily, EmptyP
from counting_base import (
    SEP4,
    build_sep4_base,
    build_zigzag_base,
    sep4_distance_bound,
    sep4_min_length,
    validate,
    zigzag_proven_range,
)
from cycles import (
    DEFAULT_BUDGET,
    Cycle,
    CycleSpectrum,
    circumference_and_hamiltonian,
    cycle_sides,
    cycles_through,
    enumerate_cycles,
    five_cycle_flag,
    iota,
    separating_cycles,
    spectrum,
)
from dual import dual, lemma1_check, radius_diameter
from generators import FAMILIES, CORNERS, FamilySpec, build, g_p_with_layout, traversal_kind
from plane_graph import PlanarTriangulation, delete_vertex, edge_key, is_four_connected, near_triangulation
from proof_procedures import DEGREE_PROFILE, lemma2_cycles, theorem3_families, zigzag_paths

logger = logging.getLogger(__name__)

CONFIG_VERSION = 1

CHECKS = (
    "structure",
    "weak_pancyclic",
    "kratochvil_zeps",
    "hakimi_schmeichel",
    "six_n",
    "theorem3",
    "lemma1",
    "lemma2",
    "counting_bases",
    "theorem6i",
    "theorem6ii",
    "g_p_structure",
    "g_p_long_cycles",
    "moon_moser",
)

SIZE_KEYS = {"double_wheel": "n", "flipped_double_wheel": "n", "random": "n", "g_p": "p", "stacked": "depth"}

DEFAULT_MAX_N_FULL_SPECTRUM = 14
DEFAULT_LEMMA2_SAMPLES = 20
LEMMA1_MAX_N = 10
LEMMA2_ORACLE_MAX_N = 12
LONG_CYCLE_DEPTH = 3
LONG_CYCLE_FACTOR = 2

# Orders at which the 5-cycle maximum 2n^2 - 10n + 12 does not hold (c5 of the 7-vertex double wheel is 41)
HAKIMI_SCHMEICHEL_EXCEPTIONS = frozenset({7})

ENV_BUDGET = "CENSUS_BUDGET"
ENV_JOBS = "CENSUS_JOBS"


# Configuration

@dataclass
class SuiteConfig:
    families: List[FamilySpec]
    checks: List[str]
    budget: int = DEFAULT_BUDGET
    jobs: int = 1
    seed: int = 0
    max_n_full_spectrum: int = DEFAULT_MAX_N_FULL_SPECTRUM
    lemma2_samples: int = DEFAULT_LEMMA2_SAMPLES
    source: Optional[str] = None


def _positive_int(value: Any, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConfigError(f"{name} must be a positive integer, got {value!r}")
    return value


def _env_int(env: Mapping[str, str], name: str) -> Optional[int]:
    raw = env.get(name)
    if raw is None or raw == "":
        return None
    try:
        return _positive_int(int(raw), name)
    except ValueError:
        raise ConfigError(f"{name} must be a positive integer, got {raw!r}") from None


def _expand_family(entry: Any, default_seed: int) -> List[FamilySpec]:
    if not isinstance(entry, dict) or "family" not in entry:
        raise ConfigError(f"family entry must be an object with a 'family' key, got {entry!r}")
    name = entry["family"]
    if name not in FAMILIES:
        raise ConfigError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    key = SIZE_KEYS[name]
    sizes = entry.get(key)
    if isinstance(sizes, int):
        sizes = [sizes]
    if not isinstance(sizes, list) or not sizes or not all(isinstance(s, int) for s in sizes):
        raise ConfigError(f"family {name} needs a non-empty integer list under {key!r}")
    seeds = entry.get("seeds", [default_seed])
    if not isinstance(seeds, list) or not seeds or not all(isinstance(s, int) for s in seeds):
        raise ConfigError(f"seeds of family {name} must be a non-empty integer list")
    if name != "random":
        seeds = seeds[:1]

    assignment = entry.get("apex_assignment")
    if assignment is not None:
        if name != "g_p" or not isinstance(assignment, dict):
            raise ConfigError("apex_assignment is an object and only applies to g_p")
        assignment = tuple(sorted(assignment.items()))

    return [
        FamilySpec(family=name, seed=seed, apex_assignment=assignment, **{key: size})
        for size in sizes
        for seed in seeds
    ]


def parse_config(doc: Any, env: Optional[Mapping[str, str]] = None, source: Optional[str] = None) -> SuiteConfig:
    """Validate a config document; CENSUS_BUDGET / CENSUS_JOBS override budget and jobs"""
    env = os.environ if env is None else env
    if not isinstance(doc, dict):
        raise ConfigError("suite config must be a JSON object")
    if doc.get("version") != CONFIG_VERSION:
        raise ConfigError(f"unsupported config version {doc.get('version')!r}, expected {CONFIG_VERSION}")

    seed = doc.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ConfigError(f"seed must be an integer, got {seed!r}")
    entries = doc.get("families")
    if not isinstance(entries, list) or not entries:
        raise ConfigError("families must be a non-empty list")
    families = [spec for entry in entries for spec in _expand_family(entry, seed)]

    checks = doc.get("checks", list(CHECKS))
    if not isinstance(checks, list) or not all(isinstance(c, str) for c in checks):
        raise ConfigError("checks must be a list of names")
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ConfigError(f"unknown checks {unknown}; expected names from {', '.join(CHECKS)}")

    config = SuiteConfig(
        families=families,
        checks=list(checks),
        budget=_positive_int(doc.get("budget", DEFAULT_BUDGET), "budget"),
        jobs=_positive_int(doc.get("jobs", 1), "jobs"),
        seed=seed,
        max_n_full_spectrum=_positive_int(doc.get("max_n_full_spectrum", DEFAULT_MAX_N_FULL_SPECTRUM), "max_n_full_spectrum"),
        lemma2_samples=_positive_int(doc.get("lemma2_samples", DEFAULT_LEMMA2_SAMPLES), "lemma2_samples"),
        source=source,
    )
    budget = _env_int(env, ENV_BUDGET)
    if budget is not None:
        config.budget = budget
    jobs = _env_int(env, ENV_JOBS)
    if jobs is not None:
        config.jobs = jobs
    return config


def load_config(path: Union[str, Path], env: Optional[Mapping[str, str]] = None) -> SuiteConfig:
    try:
        with open(path, "r", encoding="utf-8") as f:
            doc = json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"config file {path} not found") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    return parse_config(doc, env, str(path))


# Reports

@dataclass
class CheckResult:
    """passed is None when the check could not run (budget or scope)"""

    name: str
    passed: Optional[bool]
    observed: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "observed": self.observed}


@dataclass
class RunReport:
    label: str
    family: str
    params: Dict[str, Any]
    seed: int
    n: int = 0
    m: int = 0
    faces: int = 0
    spectrum: Optional[Dict[str, int]] = None
    spectrum_min_len: Optional[int] = None
    budget_exceeded: bool = False
    dual_radius: Optional[int] = None
    dual_diameter: Optional[int] = None
    four_connected: Optional[bool] = None
    separating_triangles: Optional[int] = None
    separating_4cycles: Optional[int] = None
    circumference: Optional[int] = None
    hamiltonian: Optional[int] = None
    certificates: List[Dict[str, Any]] = field(default_factory=list)
    checks: List[CheckResult] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed is not False for c in self.checks)

    def failed_checks(self) -> List[str]:
        return [c.name for c in self.checks if c.passed is False]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "family": self.family,
            "params": self.params,
            "seed": self.seed,
            "n": self.n,
            "m": self.m,
            "faces": self.faces,
            "spectrum": self.spectrum,
            "spectrum_min_len": self.spectrum_min_len,
            "budget_exceeded": self.budget_exceeded,
            "dual_radius": self.dual_radius,
            "dual_diameter": self.dual_diameter,
            "four_connected": self.four_connected,
            "separating_triangles": self.separating_triangles,
            "separating_4cycles": self.separating_4cycles,
            "circumference": self.circumference,
            "hamiltonian": self.hamiltonian,
            "certificates": self.certificates,
            "checks": [c.to_dict() for c in self.checks],
            "error": self.error,
            "passed": self.passed,
        }


# Per-instance checks

class InstanceRun:
    """Runs the enabled checks on one generated triangulation"""

    def __init__(self, spec: FamilySpec, config: SuiteConfig):
        self.spec = spec
        self.config = config
        self.enabled = set(config.checks)
        params = {k: getattr(spec, k) for k in ("n", "p", "depth") if getattr(spec, k) is not None}
        if spec.apex_assignment:
            params["apex_assignment"] = dict(spec.apex_assignment)
        self.report = RunReport(spec.label(), spec.family, params, spec.seed)
        self.G: Optional[PlanarTriangulation] = None
        self.spec_counts: Optional[CycleSpectrum] = None
        self._cycles_by_length: Dict[int, List[Cycle]] = {}

    @property
    def full_spectrum(self) -> bool:
        return self.spec_counts is not None and self.spec_counts.min_len == 3

    def record(self, name: str, passed: Optional[bool], **observed: Any):
        if name in self.enabled:
            self.report.checks.append(CheckResult(name, passed, observed))

    def run(self) -> RunReport:
        try:
            self.G = build(self.spec)
        except CensusError as exc:
            self.report.error = f"{type(exc).__name__}: {exc}"
            return self.report
        G = self.G
        r = self.report
        r.n, r.m, r.faces = G.n, G.m, len(G.faces)
        r.dual_radius, r.dual_diameter = radius_diameter(dual(G))
        r.four_connected = is_four_connected(G)
        r.separating_triangles = len(G.separating_triangles())

        self.record("structure", r.faces == 2 * G.n - 4 and r.m == 3 * G.n - 6, faces=r.faces, edges=r.m)

        try:
            self._enumerate()
        except BudgetExceeded as exc:
            logger.warning("%s: %s while enumerating", r.label, exc)
            r.budget_exceeded = True
            for name in CHECKS:
                if name not in ("structure", "g_p_long_cycles"):
                    self.record(name, None, reason="cycle budget exceeded")
            return r

        steps = [
            ("spectrum", self._spectrum_checks),
            ("theorem3", self._theorem3),
            ("lemma1", self._lemma1),
            ("lemma2", self._lemma2),
            ("counting_bases", self._counting_bases),
            ("theorem6", self._theorem6),
            ("g_p_structure", self._g_p_structure),
            ("moon_moser", self._moon_moser),
        ]
        for name, step in steps:
            try:
                step()
            except BudgetExceeded as exc:
                logger.warning("%s: %s in %s", r.label, exc, name)
                r.budget_exceeded = True
                self.report.checks.append(CheckResult(name, None, {"reason": "cycle budget exceeded"}))
            except CensusError as exc:
                logger.error("%s: %s failed: %s", r.label, name, exc)
                self.report.checks.append(CheckResult(name, False, {"error": f"{type(exc).__name__}: {exc}"}))
        return r

    def cycles_of_length(self, k: int) -> List[Cycle]:
        if k not in self._cycles_by_length:
            self._cycles_by_length[k] = enumerate_cycles(self.G, k, k, self.config.budget)
        return self._cycles_by_length[k]

    def _enumerate(self):
        G, r = self.G, self.report
        full = G.n <= self.config.max_n_full_spectrum
        min_len = 3 if full else max(3, G.n - LONG_CYCLE_DEPTH)
        self.spec_counts = spectrum(G, min_len=min_len, budget=self.config.budget)
        r.spectrum = self.spec_counts.to_dict()
        r.spectrum_min_len = min_len
        r.hamiltonian = self.spec_counts[G.n]
        if full:
            r.circumference = self.spec_counts.longest()
            r.separating_4cycles = len(separating_cycles(G, 4, self.config.budget))
        else:
            r.circumference, _ = circumference_and_hamiltonian(G, self.config.budget)

    def _spectrum_checks(self):
        G, r, counts = self.G, self.report, self.spec_counts
        n = G.n
        if self.full_spectrum:
            gaps = [k for k in range(3, r.circumference + 1) if counts[k] == 0]
            self.record("weak_pancyclic", not gaps, circumference=r.circumference, missing=gaps)
            cap = 2 * n * n - 10 * n + 12
            if n < 6 or n in HAKIMI_SCHMEICHEL_EXCEPTIONS:
                self.record("hakimi_schmeichel", None, c5=counts[5], cap=cap, known_exception=n >= 6)
            else:
                self.record("hakimi_schmeichel", counts[5] <= cap, c5=counts[5], cap=cap)
            self.record("six_n", True, c5=counts[5], six_n=6 * n, below=five_cycle_flag(counts))
        else:
            for name in ("weak_pancyclic", "hakimi_schmeichel", "six_n"):
                self.record(name, None, reason="spectrum restricted to long cycles")
        if n >= 5 and r.hamiltonian:
            self.record("kratochvil_zeps", r.hamiltonian >= 4, hamiltonian=r.hamiltonian)
        else:
            self.record("kratochvil_zeps", True, hamiltonian=r.hamiltonian, vacuous=True)

    def _theorem3(self):
        if "theorem3" not in self.enabled:
            return
        G, counts = self.G, self.spec_counts
        families = theorem3_families(G)
        short = {}
        for k, family in families.items():
            bad = [c.verts for c in family if not c.is_cycle_of(G)]
            sided = [c.verts for c in family if all(cycle_sides(G, c))]
            enumerated = counts[k] if self.full_spectrum else None
            if len(family) < G.n - 2 or bad or sided or (enumerated is not None and enumerated < G.n - 2):
                short[k] = {"family": len(family), "enumerated": enumerated, "invalid": bad, "two_sided": sided}
        self.record(
            "theorem3",
            not short,
            k_max=max(families),
            sizes={str(k): len(f) for k, f in families.items()},
            failures={str(k): v for k, v in short.items()},
        )

    def _lemma1(self):
        if "lemma1" not in self.enabled:
            return
        G = self.G
        if G.n > LEMMA1_MAX_N:
            self.record("lemma1", None, reason=f"n > {LEMMA1_MAX_N}")
            return
        derived = [near_triangulation(G, face.id) for face in G.faces]
        derived += [delete_vertex(G, x) for x in range(G.n) if G.n - 1 >= 4]
        counterexamples = 0
        hypothesis = 0
        for NT in derived:
            check = lemma1_check(NT)
            hypothesis += check.hypothesis_holds
            if check.hypothesis_holds and not check.weak_dual_is_path:
                counterexamples += 1
        self.record("lemma1", counterexamples == 0, checked=len(derived), hypothesis=hypothesis, counterexamples=counterexamples)

    def _lemma2(self):
        if "lemma2" not in self.enabled:
            return
        G = self.G
        if G.n < 5 or G.n > self.config.max_n_full_spectrum:
            self.record("lemma2", None, reason="needs 5 <= n <= max_n_full_spectrum")
            return
        rng = random.Random(f"{self.spec.label()}:{self.config.seed}")
        covered = 0
        failures = []
        for _ in range(self.config.lemma2_samples):
            NT = delete_vertex(G, rng.randrange(G.n))
            outer = NT.outer_cycle()
            i = rng.randrange(len(outer))
            v1, v2, v3 = outer[i - 1], outer[i], outer[(i + 1) % len(outer)]
            v4 = outer[(i + 2) % len(outer)]
            with_v4 = v4 != v1 and any(face.vertex_set() == {v2, v3, v4} for face in NT.bounded_faces)
            try:
                interval = lemma2_cycles(NT, v1, v2, v3, v4 if with_v4 else None)
            except CensusError as exc:
                failures.append(f"{type(exc).__name__}: {exc}")
                continue
            lengths = interval.boundary_lengths
            ok = (
                all(len(c) == k and c.is_cycle_of(NT) for k, c in interval.cycles.items())
                and sorted(interval.cycles) == interval.lengths()
                and all(abs(a - b) == 1 for a, b in zip(lengths, lengths[1:]))
            )
            if ok and NT.n <= LEMMA2_ORACLE_MAX_N:
                ok = all(c in cycles_through(NT, (v1, v2, v3), k, self.config.budget) for k, c in interval.cycles.items())
            covered += ok
            if not ok:
                failures.append(f"interval {interval.lo}..{interval.hi} has a bad witness")
        self.record("lemma2", not failures, samples=self.config.lemma2_samples, covered=covered, failures=failures[:5])

    def _build_base(self, builder: Callable[[], Any]) -> Tuple[Optional[Any], Optional[str]]:
        try:
            return builder(), None
        except (EmptyP, EmptyFamily) as exc:
            return None, f"{type(exc).__name__}: {exc}"

    def _certify(self, base: Any, expected: bool) -> Dict[str, Any]:
        cert = validate(base, strict=False)
        row = cert.to_dict()
        row.update(base.extra)
        row["expected"] = expected
        row["passed"] = cert.ok
        self.report.certificates.append(row)
        return row

    def _counting_bases(self):
        if "counting_bases" not in self.enabled:
            return
        G = self.G
        if G.n > self.config.max_n_full_spectrum:
            self.record("counting_bases", None, reason="n > max_n_full_spectrum")
            return
        failures = []
        built = 0
        at_most_one_sep = len(G.separating_triangles()) <= 1
        for k in range(4, G.n + 1):
            for profile in ("theorem3", "theorem6i"):
                # Outside the proven range a zigzag family is only an observation
                lo, hi = zigzag_proven_range(G, profile)
                promised = lo <= k <= hi and (at_most_one_sep if profile == "theorem6i" else True)
                base, empty = self._build_base(
                    lambda: build_zigzag_base(G, k, profile, budget=self.config.budget, candidates=self.cycles_of_length(k))
                )
                if base is None:
                    if promised and "EmptyFamily" in empty:
                        failures.append({"k": k, "profile": profile, "error": empty})
                    continue
                built += 1
                row = self._certify(base, promised)
                if promised and not row["passed"]:
                    failures.append({"k": k, "profile": profile, "certificate": row})
        if self.report.four_connected:
            S = separating_cycles(G, 4, self.config.budget)
            for k in range(sep4_min_length(G.n), G.n + 1):
                base, empty = self._build_base(
                    lambda: build_sep4_base(G, S, k, self.config.budget, candidates=self.cycles_of_length(k))
                )
                if base is None:
                    continue
                built += 1
                row = self._certify(base, True)
                if not row["passed"]:
                    failures.append({"k": k, "profile": SEP4, "certificate": row})
        self.record("counting_bases", not failures, built=built, failures=failures[:5])

    def _theorem6(self):
        G, r, counts = self.G, self.report, self.spec_counts
        if not r.four_connected:
            self.record("theorem6i", None, reason="not 4-connected")
            self.record("theorem6ii", None, reason="not 4-connected")
            return
        if "theorem6i" in self.enabled:
            if self.full_spectrum:
                profile = len(zigzag_paths(G, DEGREE_PROFILE))
                missing = [k for k in range(3, G.n + 1) if counts[k] == 0]
                weak = [k for k in range(7, G.n + 1) if 5 * counts[k] < profile]
                self.record("theorem6i", not missing and not weak, profile_paths=profile, missing=missing, below_bound=weak)
            else:
                self.record("theorem6i", None, reason="spectrum restricted to long cycles")
        if "theorem6ii" in self.enabled:
            S = separating_cycles(G, 4, self.config.budget)
            distances = [sep4_distance_bound(G, report) for report in S]
            hst = 2 * (G.n - 2) * (G.n - 4)
            observed = {
                "separating_4cycles": len(S),
                "iota": iota(S),
                "distance_claim_failures": sum(not d.holds for d in distances),
                "hamiltonian": r.hamiltonian,
                "hst_bound": hst,
                "below_hst": r.hamiltonian < hst,
            }
            certified = [
                Fraction(row["bound"]) for row in r.certificates if row["base_id"] == SEP4 and row["k"] == G.n
            ]
            if certified:
                observed["certified_bound"] = str(max(certified))
            passed = observed["distance_claim_failures"] == 0 and all(b <= r.hamiltonian for b in certified)
            if self.spec.family == "double_wheel":
                passed = passed and r.hamiltonian == hst
            self.record("theorem6ii", passed, **observed)

    def _g_p_structure(self):
        if self.spec.family != "g_p" or "g_p_structure" not in self.enabled:
            return
        p = self.spec.p
        G, layout = g_p_with_layout(p, dict(self.spec.apex_assignment) if self.spec.apex_assignment else None)
        c = CORNERS["c"]
        forbidden = {edge_key(CORNERS[x], c) for x in "abd"}
        long_cycles = enumerate_cycles(G, 3 * p + 5, G.n, self.config.budget)
        misses_c = sum(c not in cyc.verts for cyc in long_cycles)
        uses_forbidden = sum(bool(cyc.edges() & forbidden) for cyc in long_cycles)
        too_flexible = sum(
            list(traversal_kind(layout, cyc.verts).values()).count("flexible") > 2 for cyc in long_cycles
        )
        self.record(
            "g_p_structure",
            misses_c == 0 and uses_forbidden == 0 and too_flexible == 0,
            long_cycles=len(long_cycles),
            missing_c=misses_c,
            using_ac_bc_cd=uses_forbidden,
            more_than_two_flexible=too_flexible,
        )

    def _moon_moser(self):
        if self.spec.family != "stacked" or "moon_moser" not in self.enabled:
            return
        G, circ = self.G, self.report.circumference
        cap = 9 * G.n ** math.log(2, 3)
        if self.spec.depth >= 2:
            self.record("moon_moser", circ < G.n and circ <= cap, circumference=circ, cap=round(cap, 3))
        else:
            self.record("moon_moser", circ <= cap, circumference=circ, cap=round(cap, 3))


def run_instance(task: Tuple[FamilySpec, SuiteConfig]) -> RunReport:
    spec, config = task
    started = time.time()
    report = InstanceRun(spec, config).run()
    logger.info("%s done in %.1fs: %s", report.label, time.time() - started, "pass" if report.passed else "FAIL")
    return report


def iter_reports(config: SuiteConfig) -> Iterator[RunReport]:
    """Reports in config order; instances run in a process pool when jobs > 1"""
    tasks = [(spec, config) for spec in config.families]
    if config.jobs <= 1:
        for task in tasks:
            yield run_instance(task)
        return
    with ProcessPoolExecutor(max_workers=config.jobs) as pool:
        yield from pool.map(run_instance, tasks)


# Cross-instance checks

def long_cycle_table(reports: Iterable[RunReport]) -> Dict[int, Dict[int, int]]:
    """q -> {p: number of (n - q)-cycles} over the g_p instances"""
    table: Dict[int, Dict[int, int]] = {q: {} for q in range(LONG_CYCLE_DEPTH)}
    for r in reports:
        if r.family != "g_p" or r.spectrum is None or r.spectrum_min_len > r.n - LONG_CYCLE_DEPTH + 1:
            continue
        for q in range(LONG_CYCLE_DEPTH):
            table[q][r.params["p"]] = r.spectrum.get(str(r.n - q), 0)
    return table


def g_p_long_cycle_check(reports: List[RunReport]) -> CheckResult:
    """For each q, max over p in {2, 3, 4} of the (n - q)-cycle count is at most twice the p = 2 count"""
    table = long_cycle_table(reports)
    failures = {}
    compared = 0
    for q, row in table.items():
        ps = [p for p in (2, 3, 4) if p in row]
        if 2 not in row or len(ps) < 2:
            continue
        compared += 1
        if max(row[p] for p in ps) > LONG_CYCLE_FACTOR * row[2]:
            failures[str(q)] = {str(p): c for p, c in sorted(row.items())}
    usable = compared > 0
    return CheckResult(
        "g_p_long_cycles",
        (not failures) if usable else None,
        {"table": {str(q): {str(p): c for p, c in sorted(row.items())} for q, row in table.items()}, "failures": failures},
    )


# Output

@dataclass
class SuiteResult:
    reports: List[RunReport]
    suite_checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports) and all(c.passed is not False for c in self.suite_checks)


CSV_FIELDS = [
    "label", "n", "m", "faces", "dual_radius", "dual_diameter", "four_connected",
    "separating_triangles", "separating_4cycles", "circumference", "hamiltonian",
    "c3", "c4", "c5", "budget_exceeded", "passed",
]


def _csv_row(r: RunReport) -> Dict[str, Any]:
    spec = r.spectrum or {}
    row = {name: getattr(r, name) for name in CSV_FIELDS if hasattr(r, name)}
    for k in (3, 4, 5):
        row[f"c{k}"] = spec.get(str(k), "")
    row["passed"] = r.passed
    return row


def _file_md5(path: Union[str, Path]) -> Optional[str]:
    try:
        with open(path, "rb") as f:
            return hashlib.md5(f.read()).hexdigest()
    except OSError:
        return None


def run_suite(config: SuiteConfig, output: Union[str, Path]) -> SuiteResult:
    """
    Write <output> (JSON lines, one per instance, then the suite-level
    checks), <output stem>.csv and <output>.meta.json. Only the metadata
    file carries timestamps.
    """
    output = Path(output)
    output.parent.mkdir(parents=True, exist_ok=True)
    csv_path = output.with_suffix(".csv")
    meta_path = output.with_name(output.name + ".meta.json")
    started = time.strftime("%Y-%m-%dT%H:%M:%S")
    logger.info("suite: %d instances, checks %s, jobs %d", len(config.families), ",".join(config.checks), config.jobs)

    reports: List[RunReport] = []
    with open(output, "w", encoding="utf-8") as lines, open(csv_path, "w", encoding="utf-8", newline="") as summary:
        writer = csv.DictWriter(summary, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for report in iter_reports(config):
            reports.append(report)
            lines.write(json.dumps(report.to_dict(), sort_keys=True) + "\n")
            lines.flush()
            writer.writerow(_csv_row(report))

        suite_checks = []
        if "g_p_long_cycles" in config.checks:
            suite_checks.append(g_p_long_cycle_check(reports))
        for check in suite_checks:
            lines.write(json.dumps({"suite_check": check.to_dict()}, sort_keys=True) + "\n")

    result = SuiteResult(reports, suite_checks)
    meta = {
        "started": started,
        "finished": time.strftime("%Y-%m-%dT%H:%M:%S"),
        "host": platform.node(),
        "python": platform.python_version(),
        "config": config.source,
        "config_md5": _file_md5(config.source) if config.source else None,
        "instances": len(reports),
        "budget": config.budget,
        "jobs": config.jobs,
        "passed": result.passed,
    }
    meta_path.write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return result


# Watch mode

class ConfigFileHandler(FileSystemEventHandler):
    """Calls back when the watched config file's content changes"""

    def __init__(self, path: Union[str, Path], callback: Callable[[Path], None], debounce_time: float = 1.0):
        self.path = Path(path).resolve()
        self.callback = callback
        self.debounce_time = debounce_time
        self.last_modified = 0.0
        self.last_hash = _file_md5(self.path)

    def on_modified(self, event):
        if event.is_directory or Path(event.src_path).resolve() != self.path:
            return

        # Debounce rapid file changes
        now = time.time()
        if now - self.last_modified < self.debounce_time:
            return
        self.last_modified = now

        digest = _file_md5(self.path)
        if digest is None or digest == self.last_hash:
            return
        self.last_hash = digest
        self.callback(self.path)

    on_created = on_modified


def watch(config_path: Union[str, Path], on_change: Callable[[Path], None], stop_after: Optional[float] = None):
    """Block, calling on_change whenever the config file is edited; Ctrl-C stops"""
    path = Path(config_path).resolve()
    observer = Observer()
    observer.schedule(ConfigFileHandler(path, on_change), str(path.parent), recursive=False)
    observer.start()
    logger.info("watching %s", path)
    started = time.time()
    try:
        while stop_after is None or time.time() - started < stop_after:
            time.sleep(1)
    except KeyboardInterrupt:
        pass
    finally:
        observer.stop()
        observer.join()
        logger.info("stopped watching %s", path)
