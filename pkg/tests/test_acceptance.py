"""Acceptance suite, one test per criterion.

Run on its own with ``pytest tests/test_acceptance.py -v``.  Timings are wall
clock on the test host.
"""
import time

import mpmath
import numpy as np
import pytest

from prymverify import bounds as B
from prymverify import cli
from prymverify import galrep as G
from prymverify.curves import (
    CurveCa,
    CurveXLambda,
    check_cover_identity,
    check_sixth_power_criterion,
    check_trace_additivity,
    check_zeta_consistency,
    count_X_naive,
    count_X_smooth,
)
from prymverify.ffchar import FqField, check_hasse_davenport, check_sextic_reflection, is_prime

FIELDS = [7, 13, 19, 31, 37, 43]


def run_suite(suite, **kw):
    cfg = cli.RunConfig(suite=suite, **kw)
    report, status = cli.run(cfg)
    return report, status


def failing(report):
    return [(r["id"], r["inputs"]) for r in report["rows"] if r["status"] == "fail"]


def test_jacobi_ratio_identity_exact_under_1s():
    start = time.perf_counter()
    results = [check_hasse_davenport(FqField(q)) for q in FIELDS]
    elapsed = time.perf_counter() - start
    assert all(r.details["exact"] for r in results)
    assert elapsed < 1.0, elapsed


def test_reflection_and_sixth_power_identity_all_x_under_5s():
    start = time.perf_counter()
    bad = []
    for q in FIELDS:
        F = FqField(q)
        for x in range(2, q):
            r = check_sextic_reflection(F, x)
            if not (r.details["reflection"] and r.details["sixth_power_form"]):
                bad.append((q, x))
    elapsed = time.perf_counter() - start
    assert bad == []
    assert elapsed < 5.0, elapsed


def test_trace_additivity_exhaustive_small_and_random_q1999_under_60s():
    # 2003 = 5 mod 6 carries no sextic character; 1999 is the largest prime q = 1 mod 6 below it
    for p, k in [(7, 1), (13, 1), (19, 1), (31, 1), (5, 2)]:
        F = FqField(p, k)
        assert all(check_trace_additivity(CurveXLambda(F, lam)).passed for lam in range(2, F.q))
    start = time.perf_counter()
    report, status = run_suite("traces", p="1999", lam="random", samples=100, jobs=8, seed=0)
    elapsed = time.perf_counter() - start
    rows = [r for r in report["rows"] if r["id"] == "trace_additivity"]
    assert len(rows) == 100 and status == 0, failing(report)
    assert elapsed < 60.0, elapsed


def test_fiber_sum_count_matches_naive_and_zeta_roots_on_weil_circle():
    qs = [(p, 1) for p in range(7, 102) if is_prime(p) and p % 6 == 1]
    qs += [(5, 2), (7, 2)]
    for p, k in qs:
        F = FqField(p, k)
        for lam in range(2, F.q):
            curve = CurveXLambda(F, lam)
            assert count_X_naive(curve) == count_X_smooth(curve), (F.q, lam)
    rng = np.random.default_rng(0)
    for lam in sorted(rng.choice(np.arange(2, 13), 5, replace=False)):
        r = check_zeta_consistency(13, int(lam), tol=1e-6)
        assert r.passed, r.details


def test_trace_pair_is_rational_on_ca():
    checked = 0
    for q in (7, 13, 31):
        for a in (1, 2):
            r = check_sixth_power_criterion(CurveCa(FqField(q), a))
            assert r.passed, r.details
            checked += r.details["points_checked"]
    # several (q, a) have no admissible points at all; the union must not be empty
    assert checked > 0


def test_cover_identity_on_c1():
    for q in (7, 31):
        r = check_cover_identity(FqField(q))
        assert r.passed and r.details["points_checked"] > 0


def test_periods_suite_passes_under_30s():
    start = time.perf_counter()
    report, status = run_suite("periods", samples=10)
    elapsed = time.perf_counter() - start
    assert status == 0, failing(report)
    ids = {r["id"] for r in report["rows"]}
    assert {"mu4_zero", "qm_stabilizes", "quaternion_relations", "beta_identity", "schwarz_extension"} <= ids
    assert sum(r["id"] == "qm_stabilizes" for r in report["rows"]) == 10
    xs = [float(r["inputs"]["X"]) for r in report["rows"] if r["id"] == "qm_stabilizes"]
    assert all(0 < x < 0.9 for x in xs)
    assert all(r["tolerance"] == 1e-7 for r in report["rows"] if r["id"] == "qm_stabilizes")
    assert all(r["tolerance"] == 1e-10 for r in report["rows"] if r["id"] in ("quaternion_relations", "beta_identity"))
    assert elapsed < 30.0, elapsed


def test_bounds_kappa_bost_and_logscale_roundtrip():
    with mpmath.workdps(60):
        want = 65536 * mpmath.log10(14)
        got = B.kappa_log(1, 1, 1.0)
        assert got.level == 0
        assert abs(got.value - want) / want < 1e-6
        assert abs(B.bost_lower(1) - float(-mpmath.log(2 * mpmath.pi**2) / 2)) < 1e-12
    for x in (1e-300, 0.5, 1.0, 7.25, 1e300):
        assert abs(B.LogScale.from_value(x).to_float() - x) <= 1e-12 * x
    big = B.LogScale(0, mpmath.mpf(12345.678))
    assert abs(big.promote().log10() - big.value) < 1e-12 * big.value


def test_galrep_faltings_serre_dickson_oracle_and_sl2_f5_perfect():
    report, status = run_suite("galrep", samples=100, seed=0)
    rows = report["rows"]
    fs = [r for r in rows if r["id"] == "trace_conclusion"]
    assert len(fs) == 100
    assert all(r["status"] != "fail" for r in fs)
    assert any(r["status"] == "pass" for r in fs)
    assert max(r["inputs"]["order"] for r in fs) <= 2000
    dickson = [r for r in rows if r["id"] == "dickson_classify"]
    assert len(dickson) == 20 and all(r["status"] == "pass" for r in dickson)
    assert {r["inputs"]["q"] for r in dickson} == {5, 7, 9, 25, 49}
    # every curated group is small enough for the oracle to run
    assert all(r["expected"] == r["actual"] for r in dickson)
    assert [r["status"] for r in rows if r["id"] == "sl2_f5_perfect"] == ["pass"]
    assert status == 0, failing(report)


@pytest.mark.slow
def test_serial_and_parallel_reports_identical():
    serial, _ = run_suite("all", jobs=1, seed=3)
    parallel, _ = run_suite("all", jobs=8, seed=3)
    assert serial["rows"] == parallel["rows"]
    assert serial["summary"] == parallel["summary"]
