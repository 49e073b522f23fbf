#!/usr/bin/env python3
"""
Tests for suite configuration, the per-instance check runner, report files
and the config file watcher
"""

import hashlib
import json
from types import SimpleNamespace

import pytest

from census_errors import ConfigError
from census_suite import (
    CHECKS,
    ENV_BUDGET,
    ENV_JOBS,
    ConfigFileHandler,
    InstanceRun,
    RunReport,
    g_p_long_cycle_check,
    load_config,
    long_cycle_table,
    parse_config,
    run_suite,
)
from counting_base import ZIGZAG_6I, ZIGZAG_T3
from generators import FamilySpec

SMALL_CHECKS = ["structure", "weak_pancyclic", "hakimi_schmeichel", "kratochvil_zeps", "lemma1", "theorem6ii"]


def small_doc(**overrides):
    doc = {
        "version": 1,
        "families": [{"family": "double_wheel", "n": [6, 7]}, {"family": "stacked", "depth": [0]}],
        "checks": SMALL_CHECKS,
    }
    doc.update(overrides)
    return doc


def test_parse_config_expands_families():
    config = parse_config(small_doc(), env={})
    assert [spec.label() for spec in config.families] == ["double_wheel(n=6)", "double_wheel(n=7)", "stacked(depth=0)"]
    assert config.checks == SMALL_CHECKS
    assert config.jobs == 1


def test_parse_config_defaults_to_every_check():
    doc = small_doc()
    del doc["checks"]
    assert parse_config(doc, env={}).checks == list(CHECKS)


def test_random_family_expands_seeds():
    doc = small_doc(families=[{"family": "random", "n": [8, 9], "seeds": [1, 2]}, {"family": "g_p", "p": 1, "seeds": [4, 5]}])
    labels = [spec.label() for spec in parse_config(doc, env={}).families]
    assert labels[:4] == ["random(n=8,seed=1)", "random(n=8,seed=2)", "random(n=9,seed=1)", "random(n=9,seed=2)"]
    assert labels[4:] == ["g_p(p=1)"]


@pytest.mark.parametrize(
    "overrides",
    [
        {"version": 2},
        {"families": []},
        {"families": [{"family": "icosahedron", "n": [12]}]},
        {"families": [{"family": "double_wheel"}]},
        {"families": [{"family": "double_wheel", "n": ["six"]}]},
        {"families": [{"family": "random", "n": [8], "seeds": []}]},
        {"families": [{"family": "double_wheel", "n": [6], "apex_assignment": {"abd": "a"}}]},
        {"checks": ["everything"]},
        {"budget": 0},
        {"jobs": True},
        {"seed": "zero"},
    ],
)
def test_parse_config_errors(overrides):
    with pytest.raises(ConfigError):
        parse_config(small_doc(**overrides), env={})


def test_parse_config_rejects_non_object():
    with pytest.raises(ConfigError):
        parse_config([1, 2, 3], env={})


def test_environment_overrides():
    config = parse_config(small_doc(budget=50, jobs=2), env={ENV_BUDGET: "1000", ENV_JOBS: "3"})
    assert (config.budget, config.jobs) == (1000, 3)
    config = parse_config(small_doc(budget=50), env={ENV_BUDGET: ""})
    assert config.budget == 50
    with pytest.raises(ConfigError):
        parse_config(small_doc(), env={ENV_JOBS: "many"})
    with pytest.raises(ConfigError):
        parse_config(small_doc(), env={ENV_BUDGET: "-4"})


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json", env={})
    broken = tmp_path / "broken.json"
    broken.write_text("{families: ")
    with pytest.raises(ConfigError):
        load_config(broken, env={})


def test_instance_run_octahedron():
    config = parse_config(small_doc(), env={})
    report = InstanceRun(FamilySpec("double_wheel", n=6), config).run()
    assert (report.n, report.m, report.faces) == (6, 12, 8)
    assert report.spectrum == {"3": 8, "4": 15, "5": 24, "6": 16}
    assert report.hamiltonian == 16
    assert report.circumference == 6
    assert report.separating_4cycles == 3
    assert report.four_connected
    assert [c.name for c in report.checks] == [
        "structure", "weak_pancyclic", "hakimi_schmeichel", "kratochvil_zeps", "lemma1", "theorem6ii"
    ]
    assert report.passed
    theorem6ii = report.checks[-1]
    assert theorem6ii.observed["hst_bound"] == 16
    assert theorem6ii.observed["iota"] == 0


def test_instance_run_records_build_errors():
    config = parse_config(small_doc(), env={})
    report = InstanceRun(FamilySpec("double_wheel", n=4), config).run()
    assert report.error.startswith("TooSmall")
    assert not report.passed


def test_budget_exceeded_marks_checks_unknown():
    config = parse_config(small_doc(budget=5), env={})
    report = InstanceRun(FamilySpec("double_wheel", n=7), config).run()
    assert report.budget_exceeded
    assert report.checks[0].name == "structure"
    assert all(c.passed is None for c in report.checks[1:])
    assert report.passed


def test_k4_is_vacuous_for_four_connected_checks():
    config = parse_config(small_doc(), env={})
    report = InstanceRun(FamilySpec("stacked", depth=0), config).run()
    by_name = {c.name: c for c in report.checks}
    assert by_name["theorem6ii"].passed is None
    assert by_name["kratochvil_zeps"].observed["vacuous"]


def test_hakimi_schmeichel_skips_seven_vertices():
    config = parse_config(small_doc(), env={})
    report = InstanceRun(FamilySpec("double_wheel", n=7), config).run()
    check = {c.name: c for c in report.checks}["hakimi_schmeichel"]
    assert check.passed is None
    assert check.observed["c5"] == 41
    assert check.observed["cap"] == 40
    assert check.observed["known_exception"]
    assert report.passed


def test_k4_zigzag_base_is_an_observation():
    doc = small_doc(checks=["structure", "counting_bases"])
    report = InstanceRun(FamilySpec("stacked", depth=0), parse_config(doc, env={})).run()
    check = {c.name: c for c in report.checks}["counting_bases"]
    assert check.passed
    row = next(r for r in report.certificates if r["base_id"] == ZIGZAG_T3 and r["k"] == 4)
    assert not row["expected"]
    assert not row["passed"]
    assert not row["axioms_ok"]["iii"]


def test_degree_profile_rows_below_seven():
    doc = small_doc(checks=["structure", "counting_bases"])
    report = InstanceRun(FamilySpec("double_wheel", n=6), parse_config(doc, env={})).run()
    assert {c.name: c for c in report.checks}["counting_bases"].passed
    row = next(r for r in report.certificates if r["base_id"] == ZIGZAG_6I and r["k"] == 6)
    assert row["size"] == 24
    assert not row["in_proven_range"]
    assert row["overlap"] <= row["overlap_cap"] == 5


def test_run_suite_outputs_are_deterministic(tmp_path):
    config = parse_config(small_doc(), env={})
    first = run_suite(config, tmp_path / "a" / "report.jsonl")
    second = run_suite(config, tmp_path / "b" / "report.jsonl")
    assert first.passed and second.passed
    assert (tmp_path / "a" / "report.jsonl").read_bytes() == (tmp_path / "b" / "report.jsonl").read_bytes()
    assert (tmp_path / "a" / "report.csv").read_bytes() == (tmp_path / "b" / "report.csv").read_bytes()

    lines = (tmp_path / "a" / "report.jsonl").read_text().splitlines()
    assert len(lines) == 3
    assert [json.loads(line)["label"] for line in lines] == ["double_wheel(n=6)", "double_wheel(n=7)", "stacked(depth=0)"]
    csv_lines = (tmp_path / "a" / "report.csv").read_text().splitlines()
    assert csv_lines[0].startswith("label,n,m,faces")
    assert len(csv_lines) == 4


def test_run_suite_metadata(tmp_path):
    path = tmp_path / "suite.json"
    path.write_text(json.dumps(small_doc(families=[{"family": "double_wheel", "n": [6]}])))
    config = load_config(path, env={})
    output = tmp_path / "out.jsonl"
    result = run_suite(config, output)
    meta = json.loads((tmp_path / "out.jsonl.meta.json").read_text())
    assert meta["instances"] == 1
    assert meta["passed"] == result.passed
    assert meta["config_md5"] == hashlib.md5(path.read_bytes()).hexdigest()


def test_run_suite_writes_suite_checks(tmp_path):
    doc = small_doc(families=[{"family": "double_wheel", "n": [6]}], checks=["structure", "g_p_long_cycles"])
    result = run_suite(parse_config(doc, env={}), tmp_path / "out.jsonl")
    last = json.loads((tmp_path / "out.jsonl").read_text().splitlines()[-1])
    assert last["suite_check"]["name"] == "g_p_long_cycles"
    assert last["suite_check"]["passed"] is None
    assert result.passed


def g_p_report(p, counts):
    n = 4 + 4 * p
    spectrum = {str(n - q): c for q, c in enumerate(counts)}
    return RunReport(f"g_p(p={p})", "g_p", {"p": p}, 0, n=n, spectrum=spectrum, spectrum_min_len=n - 3)


def test_long_cycle_table():
    table = long_cycle_table([g_p_report(2, [10, 20, 30]), g_p_report(3, [15, 30, 70])])
    assert table == {0: {2: 10, 3: 15}, 1: {2: 20, 3: 30}, 2: {2: 30, 3: 70}}


def test_g_p_long_cycle_check():
    check = g_p_long_cycle_check([g_p_report(2, [10, 20, 30]), g_p_report(3, [15, 30, 70])])
    assert check.passed is False
    assert list(check.observed["failures"]) == ["2"]

    check = g_p_long_cycle_check([g_p_report(2, [10, 20, 30]), g_p_report(4, [20, 40, 60])])
    assert check.passed is True

    assert g_p_long_cycle_check([g_p_report(2, [10, 20, 30])]).passed is None


def modified(path, is_directory=False):
    return SimpleNamespace(src_path=str(path), is_directory=is_directory)


def test_config_handler_fires_on_content_change(tmp_path):
    path = tmp_path / "suite.json"
    path.write_text("{}")
    calls = []
    handler = ConfigFileHandler(path, calls.append, debounce_time=0)

    handler.on_modified(modified(path))
    assert calls == []

    path.write_text('{"version": 1}')
    handler.on_modified(modified(path))
    assert calls == [path.resolve()]

    handler.on_modified(modified(path))
    assert len(calls) == 1


def test_config_handler_ignores_other_files(tmp_path):
    path = tmp_path / "suite.json"
    other = tmp_path / "notes.txt"
    path.write_text("{}")
    other.write_text("x")
    calls = []
    handler = ConfigFileHandler(path, calls.append, debounce_time=0)
    path.write_text("[]")
    handler.on_modified(modified(other))
    handler.on_modified(modified(tmp_path, is_directory=True))
    assert calls == []


def test_config_handler_debounces(tmp_path):
    path = tmp_path / "suite.json"
    path.write_text("{}")
    calls = []
    handler = ConfigFileHandler(path, calls.append, debounce_time=60)
    path.write_text("[1]")
    handler.on_modified(modified(path))
    path.write_text("[2]")
    handler.on_modified(modified(path))
    assert len(calls) == 1


if __name__ == "__main__":
    pytest.main([__file__])
