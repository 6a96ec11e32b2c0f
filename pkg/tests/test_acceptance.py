"""End-to-end acceptance suite.

Each test covers one acceptance criterion, prints a single pass/fail line,
and enforces a wall-clock budget.  Tolerances are pinned here and must not
be loosened without revisiting the oracles they were frozen against.
"""
import time

import numpy as np

from lipderiv import (RadiusGrid, SuiteConfig, check_gamma_lipschitz,
                      check_summary_ordering, lip_norm, make_zoo, overall_ok,
                      run_suite)
from lipderiv.harness import random_map, random_space, separation_checks

SEED = 7


def _report(label, results, t0, budget):
    elapsed = time.perf_counter() - t0
    bad = [r for r in results if r.status == "fail"]
    ok = not bad and elapsed < budget
    print(f"[{'PASS' if ok else 'FAIL'}] {label}: "
          f"{len(results)} checks, {len(bad)} failed, {elapsed:.1f}s "
          f"(budget {budget:.0f}s)")
    assert not bad, bad[:3]
    assert elapsed < budget, f"{label} took {elapsed:.1f}s"


def test_exact_identities_zero_discrepancy():
    """Chain, openness surrogate, forward gamma bound and summary ordering
    hold with discrepancy exactly 0 on the zoo and 200 random spaces."""
    t0 = time.perf_counter()
    results = run_suite(SuiteConfig(seed=SEED, suite=("chain", "openness"),
                                    random_spaces=200, zoo_resolution=0.02))
    grid = RadiusGrid(0.3, 0.5, 3, 2)
    for e in make_zoo(0.02):
        g = lip_norm(e.map)
        results.append(check_gamma_lipschitz(
            e.map, g, grid, convex=e.convex,
            name=f"gamma_forward/zoo:{e.name}"))
    rng = np.random.default_rng(SEED)
    for k in range(200):
        sp = random_space(rng, int(rng.integers(4, 13)))
        f = random_map(rng, sp)
        results.append(check_gamma_lipschitz(
            f, lip_norm(f), RadiusGrid(1.5, 0.5, 3, 2),
            name=f"gamma_forward/random:{k:03d}"))
        results.append(check_summary_ordering(
            f, RadiusGrid(1.5, 0.5, 4, 2), name=f"ordering/random:{k:03d}"))
    for r in results:
        if r.status == "pass":
            assert r.discrepancy == 0.0, (r.name, r.discrepancy)
    _report("exact identities", results, t0, 30.0)


def test_bruteforce_oracle_equivalence():
    """Every scale functional agrees with definitional enumeration plus a
    dense scale sweep to 1e-9 on 200 random spaces with <= 12 points."""
    t0 = time.perf_counter()
    results = run_suite(SuiteConfig(seed=SEED, suite=("oracle_equiv",),
                                    random_spaces=200))
    for r in results:
        assert r.tolerance <= 1e-9
    _report("brute-force oracle equivalence", results, t0, 60.0)


def test_open_closed_ratio_sweeps_agree():
    """Open-ball sweep, closed-ball sweep and the ratio formula coincide
    within 1e-12 on 100 seeded spaces."""
    t0 = time.perf_counter()
    results = run_suite(SuiteConfig(seed=SEED, suite=("plus_variant",)))
    ran = [r for r in results if r.status != "skipped"]
    assert len(ran) >= 100
    for r in ran:
        assert r.tolerance <= 1e-12
    _report("open/closed/ratio sweep equality", results, t0, 30.0)


def test_linear_maps_match_operator_norm():
    """Big-derivative estimates of diag(2,1), a rotation and a shear at
    resolution 1e-2 are within 2% of the operator norm."""
    t0 = time.perf_counter()
    results = run_suite(SuiteConfig(seed=SEED, suite=("frechet",)))
    assert len(results) == 3
    for r in results:
        assert r.tolerance == 0.02
    _report("linear maps vs operator norm", results, t0, 10.0)


def test_smooth_maps_track_derivative():
    """All three pointwise estimates track |f'| within 2% + 2*resolution
    for sin and u^2 at resolution 1e-3, away from the domain boundary."""
    t0 = time.perf_counter()
    results = run_suite(SuiteConfig(seed=SEED, suite=("c1_identity",)))
    assert {r.name for r in results} == {"c1_identity/sin",
                                         "c1_identity/square"}
    _report("smooth derivative tracking", results, t0, 20.0)


def test_scale_separation_entries():
    """Frozen separation values: staircase little ~0.5 / big ~1.0 at
    resolution 2^-14; oscillator little <= 0.05 with local in [0.9, 1.05]."""
    t0 = time.perf_counter()
    results = separation_checks()
    assert {r.name for r in results} == {"separation/dyadic",
                                         "separation/oscillator"}
    _report("scale separation", results, t0, 30.0)


def test_gamma_characterization_and_measure_bound():
    """Both directions of the gamma-Lipschitz characterization on smooth,
    affine and measure-distance data, plus the interval-measure pair bound
    at 1e-12."""
    t0 = time.perf_counter()
    results = run_suite(SuiteConfig(seed=SEED,
                                    suite=("gamma_lipschitz", "bhmv")))
    both = {r.name: r for r in results}
    for name in ("gamma_lipschitz/sin", "gamma_lipschitz/affine_slope3",
                 "gamma_lipschitz/bhmv_measure"):
        assert both[name].detail == "forward+backward", name
    for name in ("bhmv/two_blocks", "bhmv/empty", "bhmv/full"):
        assert both[name].tolerance == 1e-12
    _report("gamma characterization + measure bound", results, t0, 20.0)


def test_envelope_field_identity():
    """Upper envelopes of the little/big fields match the local field at
    scale h = 0.05 on resolution-1e-3 entries."""
    t0 = time.perf_counter()
    results = run_suite(SuiteConfig(seed=SEED, suite=("envelope",)))
    names = {r.name.split("/")[1] for r in results}
    assert {"constant", "affine_slope3", "sin", "oscillator"} <= names
    _report("envelope identity", results, t0, 30.0)


def test_set_family_exhaustive():
    """Family identities and semicontinuity duality over every topology on
    grounds of size <= 4 with exhaustive 4-level fields, plus 500 seeded
    size-5 cases."""
    t0 = time.perf_counter()
    results = run_suite(SuiteConfig(seed=SEED, suite=("setclass",)))
    assert {r.name for r in results} == {"setclass/exhaustive",
                                         "setclass/random"}
    _report("set-family exhaustive", results, t0, 120.0)


def test_semicontinuity_defect_bounds():
    """usc/lsc defects of the derivative fields stay within the modulus-of-
    continuity schedule on every continuous entry with a declared modulus."""
    t0 = time.perf_counter()
    results = run_suite(SuiteConfig(seed=SEED, suite=("semicontinuity",)))
    ran = [r for r in results if r.status != "skipped"]
    assert len(ran) >= 5
    assert overall_ok(results)
    _report("semicontinuity defect bounds", results, t0, 30.0)
