"""Suites: contents, summaries, determinism, and golden fixtures."""

import json
import os
from pathlib import Path

import pytest

from posetlab.suites import (
    DEFAULT_REPORT_SUITES,
    SUITE_NAMES,
    canonical_json,
    report_all,
    run_suite,
)

GOLDEN = Path(__file__).parent / "golden"


class TestRankSuites:
    def test_rank2_all_pass(self):
        rep = run_suite("rank2")
        assert rep.ok
        assert rep.summary["fail"] == 0
        assert rep.summary["graphs"] == 4  # 3 graphs + the census record
        checks = {r["check"] for r in rep.records}
        assert {
            "sphericity-x",
            "sphericity-cx",
            "core-retraction-x",
            "core-retraction-cx",
            "alexander-duality",
            "fiber",
            "fiber-connected",
            "subset-lattice-sphere",
            "valence-two-smoothing",
            "census-count",
        } <= checks

    def test_rank3_green_with_honest_homology_only(self):
        rep = run_suite("rank3")
        assert rep.ok
        assert rep.summary["fail"] == 0
        # wedges of circles cannot be certified beyond homology
        assert rep.summary["homology-only"] > 0
        census = [r for r in rep.records if r["check"] == "census-count"]
        assert census and census[0]["data"]["count"] == 15

    def test_forest_generators_only_on_nonseparating(self):
        rep = run_suite("rank3")
        gens = [r for r in rep.records if r["check"] == "forest-generators"]
        assert len(gens) == 8  # 15 graphs - 7 with a separating edge


class TestOtherSuites:
    def test_duality_suite(self):
        rep = run_suite("duality")
        assert rep.ok and rep.summary["checks"] == 18

    def test_fibers_suite(self):
        rep = run_suite("fibers")
        assert rep.ok and rep.summary["checks"] == 36
        assert any("forest" in a for a in rep.assumptions)

    def test_morse_suite(self):
        rep = run_suite("morse")
        assert rep.ok
        absence = [r for r in rep.records if r["check"] == "morse-absence"]
        assert len(absence) == 1
        assert absence[0]["data"]["absence_proof_complete"] is True
        certs = [r for r in rep.records if r["check"] == "morse-certificate"]
        assert len(certs) == 8  # 1 rank-2 + 7 rank-3 separating graphs

    def test_apartments_suite(self):
        rep = run_suite("apartments")
        assert rep.ok and rep.summary["checks"] == 5

    def test_unknown_suite_rejected(self):
        with pytest.raises(ValueError):
            run_suite("nope")


class TestDeterminism:
    def test_thread_count_does_not_change_bytes(self):
        a = run_suite("rank2", threads=1).to_json()
        b = run_suite("rank2", threads=2).to_json()
        assert a == b

    def test_env_variable_is_honored(self):
        old = os.environ.get("POSETLAB_THREADS")
        try:
            os.environ["POSETLAB_THREADS"] = "2"
            b = run_suite("apartments").to_json()
        finally:
            if old is None:
                os.environ.pop("POSETLAB_THREADS", None)
            else:
                os.environ["POSETLAB_THREADS"] = old
        assert b == run_suite("apartments", threads=1).to_json()

    def test_consecutive_runs_byte_identical(self):
        assert run_suite("duality").to_json() == run_suite("duality").to_json()

    def test_wall_time_excluded_from_canonical_json(self):
        rep = run_suite("apartments")
        assert rep.wall_seconds > 0
        assert "wall_seconds" not in json.loads(rep.to_json())
        assert "wall_seconds" in json.loads(rep.to_json(include_timing=True))

    def test_report_all_is_deterministic(self):
        names = ("apartments", "duality")
        obj1, ok1 = report_all(names)
        obj2, ok2 = report_all(names)
        assert ok1 and ok2
        assert canonical_json(obj1) == canonical_json(obj2)


class TestGolden:
    def test_rank2_matches_frozen_fixture(self):
        frozen = (GOLDEN / "rank2_report.json").read_text()
        assert run_suite("rank2").to_json() == frozen

    def test_apartments_matches_frozen_fixture(self):
        frozen = (GOLDEN / "apartments_report.json").read_text()
        assert run_suite("apartments").to_json() == frozen


class TestSuiteNames:
    def test_all_names_present(self):
        assert set(DEFAULT_REPORT_SUITES) <= set(SUITE_NAMES)
        assert "rank4-deep" in SUITE_NAMES
