"""Sweep harness: normalized enumeration, bound verification, reports."""

import dataclasses
import json

import pytest

from permax import (
    RangeError,
    ShapeError,
    StratumRow,
    VerifyReport,
    enumerate_normalized,
    verify_mper,
    verify_properties,
    verify_square,
    write_report,
)


def test_enumeration_counts_and_normalization():
    for n, count in ((2, 2), (3, 16), (4, 512)):
        seen = set()
        for a in enumerate_normalized(n):
            assert a.row_signs(1) == (1,) * n
            assert all(a.entry(i, 1) == 1 for i in range(1, n + 1))
            seen.add(a.words)
        assert len(seen) == count


def test_enumeration_is_deterministic():
    first = [a.words for a in enumerate_normalized(3)]
    second = [a.words for a in enumerate_normalized(3)]
    assert first == second
    with pytest.raises(ShapeError):
        next(enumerate_normalized(7))


def test_sweep_order_two_and_three():
    r2 = verify_square(2)
    assert [(s.rank, s.bound, s.observed_max, s.extremal_orbits) for s in r2.rows] == [
        (1, 2, 2, 1),
        (2, 0, 0, 1),
    ]
    assert r2.scanned == 2

    r3 = verify_square(3)
    assert [(s.rank, s.bound, s.observed_max, s.extremal_orbits) for s in r3.rows] == [
        (1, 6, 6, 1),
        (2, 2, 2, 1),
        (3, 2, 2, 1),
    ]
    assert r3.scanned == 16
    assert all(s.equality_class == "D-only" for s in r3.rows)


def test_sweep_order_four_exception():
    report = verify_square(4)
    assert report.scanned == 512
    by_rank = {s.rank: s for s in report.rows}
    assert [by_rank[r].bound for r in (1, 2, 3, 4)] == [24, 12, 8, 4]
    assert [by_rank[r].observed_max for r in (1, 2, 3, 4)] == [24, 12, 8, 8]
    assert all(by_rank[r].equality_class == "D-only" for r in (1, 2, 3))
    assert by_rank[4].equality_class == "D-plus-exception"
    assert all(by_rank[r].extremal_orbits == 1 for r in (1, 2, 3, 4))


def test_sweep_order_five():
    report = verify_square(5)
    assert report.scanned == 2 ** 16
    assert [(s.rank, s.bound, s.observed_max) for s in report.rows] == [
        (1, 120, 120),
        (2, 72, 72),
        (3, 48, 48),
        (4, 32, 32),
        (5, 24, 24),
    ]
    assert all(s.extremal_orbits == 1 for s in report.rows)
    assert all(s.equality_class == "D-only" for s in report.rows)


def test_sweep_thread_count_does_not_change_results():
    single = verify_square(4, threads=1)
    pooled = verify_square(4, threads=4)
    assert single.rows == pooled.rows
    assert single.scanned == pooled.scanned


def test_sweep_rejects_bad_arguments(monkeypatch):
    with pytest.raises(ShapeError):
        verify_square(7)
    with pytest.raises(RangeError):
        verify_square(3, threads=0)
    monkeypatch.setenv("PERMAX_THREADS", "2")
    assert verify_square(3).rows == verify_square(3, threads=1).rows


def test_mper_sweep_small_shapes():
    r = verify_mper(2, 4)
    assert len(r.rows) == 1
    row = r.rows[0]
    assert (row.bound, row.observed_max, row.extremal_orbits) == (6, 6, 1)
    assert row.equality_class == "D-only"

    two_orbits = verify_mper(3, 4)
    assert two_orbits.rows[0].bound == 8
    assert two_orbits.rows[0].extremal_orbits == 2
    assert two_orbits.rows[0].equality_class == "D-plus-exception"

    with pytest.raises(RangeError):
        verify_mper(1, 3)
    with pytest.raises(RangeError):
        verify_mper(5, 6)  # past the sweep budget


def test_property_suite_small_run():
    report = verify_properties(seed=1, samples=400)
    assert report.rows == ()
    assert report.scanned > 0
    names = {name for name, _ in report.checks}
    assert names == {
        "ryser_vs_naive",
        "order4_divisibility",
        "total_bound",
        "laplace_expansion",
        "transform_invariance",
        "rank_vector_laws",
    }
    assert all(count > 0 for _, count in report.checks)


def test_property_suite_is_seed_deterministic():
    a = verify_properties(seed=5, samples=120)
    b = verify_properties(seed=5, samples=120)
    assert a.checks == b.checks and a.scanned == b.scanned


def test_write_report_formats(tmp_path):
    report = verify_square(3)
    fixed = dataclasses.replace(report, seconds=0.0)

    jpath = tmp_path / "r.json"
    write_report(fixed, "json", jpath)
    data = json.loads(jpath.read_text())
    assert [row["rank"] for row in data] == [1, 2, 3]
    assert list(data[0]) == [
        "n",
        "rank",
        "bound",
        "observed_max",
        "extremal_orbits",
        "scanned",
        "seconds",
        "equality_class",
    ]
    assert data[0]["n"] == 3 and data[0]["scanned"] == 16

    cpath = tmp_path / "r.csv"
    write_report(fixed, "csv", cpath)
    lines = cpath.read_text().splitlines()
    assert lines[0] == "n,rank,bound,observed_max,extremal_orbits,scanned,seconds,equality_class"
    assert len(lines) == 4
    assert lines[1] == "3,1,6,6,1,16,0.0,D-only"


def test_write_report_empty_and_errors(tmp_path):
    empty = VerifyReport(n=0, rows=(), scanned=0, seconds=0.0)
    path = tmp_path / "empty.json"
    write_report(empty, "json", path)
    assert path.read_text() == "[]\n"

    with pytest.raises(ValueError):
        write_report(empty, "yaml", tmp_path / "x")
    with pytest.raises(OSError):
        write_report(empty, "json", tmp_path / "missing" / "x.json")


def test_reports_are_reproducible_modulo_timing(tmp_path):
    a = dataclasses.replace(verify_square(4, threads=1), seconds=0.0)
    b = dataclasses.replace(verify_square(4, threads=3), seconds=0.0)
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    write_report(a, "json", pa)
    write_report(b, "json", pb)
    assert pa.read_bytes() == pb.read_bytes()


def test_stratum_rows_are_plain_data():
    row = StratumRow(rank=1, bound=2, observed_max=2, extremal_orbits=1, equality_class="D-only")
    assert dataclasses.asdict(row)["bound"] == 2
