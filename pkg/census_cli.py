#!/usr/bin/env python3
"""
Triangulation census command line
Generate, validate and convert triangulations, count their cycles, run the
proof procedures, certify counting bases and drive the check suite.
"""

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from census_errors import (
    BadAnchor,
    CensusError,
    ConfigError,
    EmbeddingError,
    FaceNotFound,
    OutOfRange,
    ParseError,
    TooSmall,
)
from census_formats import FORMATS, ROT, convert, encode, load
from census_suite import load_config, run_suite, watch
from counting_base import (
    SEP4,
    ZIGZAG_6I,
    ZIGZAG_T3,
    build_sep4_base,
    build_zigzag_base,
    certificate_to_json,
    recheck,
    validate,
)
from cycles import DEFAULT_BUDGET, separating_cycles, spectrum
from dual import dual, radius_diameter
from generators import FAMILIES, FamilySpec, build
from plane_graph import (
    PlanarTriangulation,
    delete_vertex,
    four_connected_by_cuts,
    from_rotation_system,
    is_four_connected,
    near_triangulation,
)
from proof_procedures import lemma2_cycles, theorem3_family

logger = logging.getLogger("census")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Errors caused by what the user passed in rather than by a failed check
INPUT_ERRORS = (ConfigError, ParseError, EmbeddingError, FaceNotFound, TooSmall, OutOfRange, BadAnchor)

BASE_CHOICES = {"zigzag6i": ZIGZAG_6I, "zigzag-t3": ZIGZAG_T3, "sep4": SEP4}


def setup_logging(verbose: bool = False):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="[%(asctime)s] %(message)s",
        datefmt="%H:%M:%S",
    )


def load_triangulation(path: str, fmt: Optional[str] = None, index: int = 0) -> PlanarTriangulation:
    graphs = load(path, fmt)
    if not graphs:
        raise ParseError(f"{path} holds no graph")
    if not 0 <= index < len(graphs):
        raise ConfigError(f"{path} holds {len(graphs)} graphs, no index {index}")
    if len(graphs) > 1:
        logger.info("%s holds %d graphs, using #%d", path, len(graphs), index)
    return from_rotation_system(graphs[index])


def write_output(data: bytes, output: Optional[str]):
    if output:
        Path(output).write_bytes(data)
        print(f"📁 Wrote {output}")
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


# Subcommands

def cmd_gen(args) -> int:
    spec = FamilySpec(family=args.family, n=args.n, p=args.p, depth=args.depth, seed=args.seed)
    G = build(spec)
    logger.info("generated %s: n=%d, m=%d", spec.label(), G.n, G.m)
    write_output(encode([G.rs], args.format), args.output)
    return EXIT_OK


def cmd_validate(args) -> int:
    graphs = load(args.input, args.input_format)
    failures = 0
    for i, rot in enumerate(graphs):
        try:
            G = from_rotation_system(rot)
        except EmbeddingError as exc:
            print(f"❌ #{i}: {type(exc).__name__}: {exc}")
            failures += 1
            continue
        four = is_four_connected(G)
        line = f"✅ #{i}: n={G.n} m={G.m} faces={len(G.faces)} 3-connectivity={G.connectivity_check} 4-connected={four}"
        if args.cross_check and G.n <= 14 and four_connected_by_cuts(G) != four:
            print(f"⚠️ #{i}: cut search disagrees with the separating-triangle test")
            failures += 1
            continue
        print(line)
    return EXIT_FAILED if failures else EXIT_OK


def cmd_spectrum(args) -> int:
    G = load_triangulation(args.input, args.input_format, args.index)
    spec = spectrum(G, max_len=args.max_len, min_len=args.min_len, budget=args.budget, jobs=args.jobs)
    if args.output == "json":
        doc = {"n": G.n, "min_len": spec.min_len, "max_len": spec.max_len, "counts": spec.to_dict()}
        print(json.dumps(doc, sort_keys=True))
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["length", "count"])
        for k in range(spec.min_len, spec.max_len + 1):
            writer.writerow([k, spec[k]])
        sys.stdout.write(buffer.getvalue())
    logger.debug("explored %d search nodes", spec.explored)
    return EXIT_OK


def cmd_dual(args) -> int:
    G = load_triangulation(args.input, args.input_format, args.index)
    D = dual(G)
    if args.radius:
        rad, diam = radius_diameter(D)
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["rad", "diam"])
        writer.writerow([rad, diam])
        return EXIT_OK
    print(f"✅ dual: {D.graph.number_of_nodes()} vertices, {D.graph.number_of_edges()} edges")
    return EXIT_OK


def cmd_procedures(args) -> int:
    G = load_triangulation(args.input, args.input_format, args.index)
    if args.procedure == "lemma2":
        if args.delete_vertex is not None:
            NT = delete_vertex(G, args.delete_vertex)
        else:
            NT = near_triangulation(G, args.outer_face)
        if len(args.anchors) not in (3, 4):
            raise ConfigError("lemma2 needs --anchors v1 v2 v3 [v4]")
        interval = lemma2_cycles(NT, *args.anchors)
        print(f"✅ lengths {interval.lo}..{interval.hi} through {'-'.join(map(str, args.anchors))}")
        for k, cycle in sorted(interval.cycles.items()):
            print(f"  {k}: {' '.join(map(str, cycle.verts))}")
        logger.debug("boundary lengths %s, deleted faces %s", interval.boundary_lengths, interval.deleted)
        return EXIT_OK

    if args.k is None:
        raise ConfigError("t3family needs --k")
    family = theorem3_family(G, args.k, jobs=args.jobs)
    ok = len(family) >= G.n - 2
    print(f"{'✅' if ok else '❌'} {len(family)} distinct {args.k}-cycles (n - 2 = {G.n - 2})")
    for cycle in family:
        print(f"  {' '.join(map(str, cycle.verts))}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_certify(args) -> int:
    G = load_triangulation(args.input, args.input_format, args.index)
    kind = BASE_CHOICES[args.base]
    if kind == SEP4:
        base = build_sep4_base(G, separating_cycles(G, 4, args.budget), args.k, args.budget)
    else:
        profile = "theorem6i" if kind == ZIGZAG_6I else "theorem3"
        base = build_zigzag_base(G, args.k, profile, jobs=args.jobs, budget=args.budget)
    cert = validate(base, strict=False)
    failed = [axiom for axiom, ok in cert.axioms_ok.items() if not ok]
    status = "✅" if cert.ok else "❌"
    print(
        f"{status} {cert.base_id} k={cert.k}: |P|={cert.size} O={cert.overlap} "
        f"bound={cert.bound} witnessed={cert.witnessed_count}"
    )
    if failed:
        print(f"❌ axioms failed: {', '.join(failed)}")
    if not cert.cap_ok:
        print(f"❌ overlap {cert.overlap} exceeds cap {cert.overlap_cap}")
    if args.emit:
        Path(args.emit).write_text(certificate_to_json(base, cert), encoding="utf-8")
        print(f"📁 Wrote {args.emit}")
    return EXIT_OK if cert.ok else EXIT_FAILED


def cmd_recheck(args) -> int:
    text = Path(args.certificate).read_text(encoding="utf-8")
    ok, cert = recheck(text)
    status = "✅" if ok else "❌"
    print(f"{status} {cert.base_id} k={cert.k}: |P|={cert.size} O={cert.overlap} bound={cert.bound} witnessed={cert.witnessed_count}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_convert(args) -> int:
    count = convert(args.input, args.output, args.from_format, args.to_format)
    print(f"📁 Converted {count} graph(s) into {args.output}")
    return EXIT_OK


def _run_suite_once(config_path: str, output: str) -> int:
    config = load_config(config_path)
    result = run_suite(config, output)
    for report in result.reports:
        if report.error:
            print(f"❌ {report.label}: {report.error}")
        elif report.failed_checks():
            print(f"❌ {report.label}: {', '.join(report.failed_checks())}")
        elif report.budget_exceeded:
            print(f"⚠️ {report.label}: cycle budget exceeded, some checks skipped")
    for check in result.suite_checks:
        if check.passed is False:
            print(f"❌ {check.name}: {check.observed.get('failures')}")
    print(f"{'✅' if result.passed else '❌'} {len(result.reports)} instances, report in {output}")
    return EXIT_OK if result.passed else EXIT_FAILED


def cmd_suite(args) -> int:
    code = _run_suite_once(args.config, args.output)
    if not args.watch:
        return code

    def rerun(path: Path):
        print(f"📁 {path.name} changed, re-running suite")
        try:
            _run_suite_once(str(path), args.output)
        except ConfigError as exc:
            print(f"❌ {exc}")

    watch(args.config, rerun)
    return code


# Parser

def _add_input(parser: argparse.ArgumentParser):
    parser.add_argument("--input", "-i", required=True, help="rot/1 or planar_code file")
    parser.add_argument("--input-format", choices=FORMATS, help="override format detection")
    parser.add_argument("--index", type=int, default=0, help="graph to use when the file holds several")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triangulation-census",
        description="Cycle census workbench for planar triangulations",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a triangulation")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=FORMATS, default=ROT)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="check that every graph in a file is a triangulation")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--input-format", choices=FORMATS)
    p.add_argument("--cross-check", action="store_true", help="also run the brute-force 3-cut search")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("spectrum", help="count cycles of every length")
    _add_input(p)
    p.add_argument("--min-len", type=int, default=3)
    p.add_argument("--max-len", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--output", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("dual", help="dual graph summary")
    _add_input(p)
    p.add_argument("--radius", action="store_true", help="print radius and diameter")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("procedures", help="run a constructive cycle procedure")
    p.add_argument("procedure", choices=("lemma2", "t3family"))
    _add_input(p)
    p.add_argument("--anchors", type=int, nargs="+", default=[], help="v1 v2 v3 [v4] on the outer cycle")
    p.add_argument("--outer-face", type=int, default=0, help="face id that becomes the outer face")
    p.add_argument("--delete-vertex", type=int, help="use G - x with the link of x as outer face")
    p.add_argument("--k", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_procedures)

    p = sub.add_parser("certify", help="build and validate a counting base")
    _add_input(p)
    p.add_argument("--base", required=True, choices=sorted(BASE_CHOICES))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--emit", help="write the certificate JSON here")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("recheck", help="re-verify a certificate offline")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_recheck)

    p = sub.add_parser("convert", help="convert between rot and planar_code")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--from", dest="from_format", choices=FORMATS)
    p.add_argument("--to", dest="to_format", choices=FORMATS)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("suite", help="run the check suite from a JSON config")
    p.add_argument("config")
    p.add_argument("--output", "-o", default="census_report.jsonl")
    p.add_argument("--watch", action="store_true", help="re-run whenever the config changes")
    p.set_defaults(func=cmd_suite)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"❌ {type(exc).__name__}: {exc}")
        return EXIT_USAGE
    except CensusError as exc:
        print(f"❌ {type(exc).__name__}: {exc}")
        return EXIT_FAILED
    except OSError as exc:
        print(f"❌ {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
