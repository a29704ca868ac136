"""Acceptance suite: one test per criterion, tolerances pinned.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS line per
criterion; any failure shows up as an ordinary pytest failure.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from bergercmc.cmc_spheres import (area_sphere, fundamental_data,
                                   gauss_bonnet_integral, integrability_residual,
                                   is_embedded, planarity_report,
                                   reconstruct_meridian)
from bergercmc.isoperimetry import (clifford_vs_minimal_sphere, crossing_alpha,
                                    isoperimetric_candidate, round_cap_area_volume,
                                    sphere_profile)
from bergercmc.regions import critical_constants, stability_integrand
from bergercmc.stability import (alpha0, jacobi_potential_flat, jacobi_spectrum,
                                 koiso_integral_closed, koiso_integral_quadrature,
                                 potential_from_data, sphere_stability_boundary)
from bergercmc.tori import (classify_torus, lambda1_closed_form, torus_data,
                            torus_spectrum, torus_stability_threshold)


def ok(n, msg):
    print(f"ACCEPTANCE {n} PASS: {msg}")


def test_criterion_01_alpha0():
    t0 = time.perf_counter()
    a0 = alpha0()
    elapsed = time.perf_counter() - t0
    assert round(a0, 3) == 0.121
    s = math.sqrt(1 - a0)
    assert abs(math.atanh(s) - 3 * s / (2 - 3 * a0)) < 1e-12
    assert elapsed < 1.0
    ok(1, f"alpha0 = {a0:.6f} rounds to 0.121 in {elapsed:.3f} s")


def test_criterion_02_region_constants():
    t0 = time.perf_counter()
    tzero, a1, ah = critical_constants()
    elapsed = time.perf_counter() - t0
    assert round(a1, 3) == 0.217
    assert round(tzero, 4) == 0.1292
    assert abs(ah - 4 / 3) < 1e-10
    assert elapsed < 1.0
    ok(2, f"t0 = {tzero:.6f}, alpha1 = {a1:.6f}, hyperbolic min = 4/3, {elapsed:.3f} s")


def test_criterion_03_crossing_alpha():
    t0 = time.perf_counter()
    ca = crossing_alpha()
    elapsed = time.perf_counter() - t0
    assert round(ca, 3) == 0.166
    assert elapsed < 1.0
    ok(3, f"crossing alpha = {ca:.6f} rounds to 0.166 in {elapsed:.3f} s")


def test_criterion_04_clifford_comparison():
    a1_area = 2 * math.pi**2 / math.sqrt(3)
    a2_area = 2 * math.pi * (1 + math.atanh(math.sqrt(2) / math.sqrt(3)) / math.sqrt(6))
    at, asph, winner = clifford_vs_minimal_sphere(1 / 3)
    assert at == pytest.approx(a1_area, rel=1e-12)
    assert asph == pytest.approx(a2_area, rel=1e-12)
    assert a1_area > a2_area and winner == "Sphere"
    quadr = area_sphere(1 / 3, 0.0)
    assert abs(quadr - a2_area) <= 1e-6 * a2_area
    ok(4, f"A1 = {a1_area:.6f} > A2 = {a2_area:.6f}; quadrature agrees to 1e-6")


def test_criterion_05_universal_jacobi_form():
    t0 = time.perf_counter()
    rng = np.random.default_rng(55)
    x = rng.uniform(-8, 8, 64)
    flat = jacobi_potential_flat(x)
    samples = [(a, H) for a in (0.05, 0.3, 1.0, 2.0, 3.0) for H in (0.0, 0.7, 1.5, 2.5)]
    assert len(samples) == 20
    for a, H in samples:
        d = fundamental_data(a, H)
        assert np.max(np.abs(potential_from_data(d, x) - flat)) < 1e-12, (a, H)
        s = jacobi_spectrum(a, H, n=2500)
        assert s.index == 1 and s.nullity == 3, (a, H)
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    ok(5, f"q*conf universal at 1e-12 and index/nullity = 1/3 on 20 samples, {elapsed:.1f} s")


def test_criterion_06_koiso_closed_vs_quadrature():
    for a in np.linspace(0.05, 2.5, 20):
        for H in np.linspace(0.0, 3.0, 20):
            closed = koiso_integral_closed(a, H)
            quadr = koiso_integral_quadrature(a, H)
            assert abs(closed - quadr) <= 1e-6 * max(abs(closed), abs(quadr), 1e-12)
    a0 = alpha0()
    grid = np.linspace(0.015, a0 * 0.97, 10)
    rows = sphere_stability_boundary(grid)
    for a, Ha in rows:
        assert koiso_integral_closed(a, Ha + 1e-6) > 0
        assert koiso_integral_closed(a, Ha - 1e-6) < 0
    ok(6, "Koiso closed form = quadrature at 1e-6 on 20x20; sign flips across H(alpha)")


def test_criterion_07_torus_spectrum():
    for a in np.linspace(0.02, 3.0, 30):
        for H in np.linspace(0.0, 4.0, 30):
            lam_e = torus_spectrum(torus_data(a, H), N=10).lambda1
            lam_c = lambda1_closed_form(a, H)
            assert abs(lam_e - lam_c) <= 1e-10 * max(1.0, lam_c), (a, H)
    for a in (0.1, 0.2, 0.3, 1 / 3):
        Hs = torus_stability_threshold(a)
        lam_e = torus_spectrum(torus_data(a, Hs), N=12).lambda1
        assert abs(lam_e - lambda1_closed_form(a, Hs)) <= 1e-10 * max(1.0, lam_e)
        assert classify_torus(a, Hs).stable
        assert not classify_torus(a, Hs + 1e-9).stable
    for a in (0.4, 0.7, 1.0, 2.0):
        for H in (0.0, 0.5, 2.0, 5.0):
            assert not classify_torus(a, H).stable
    ok(7, "lambda1 enumeration = closed form at 1e-10 on 30x30 incl. branch boundary")


def test_criterion_08_integrability_suite():
    rng = np.random.default_rng(88)
    for _ in range(10):
        a = float(rng.uniform(0.08, 2.5))
        H = float(rng.uniform(0.0, 2.5))
        d = fundamental_data(a, H)
        r1 = integrability_residual(d, (-5, 5), 400)
        r2 = integrability_residual(d, (-5, 5), 800)
        for key in ("p_wbar", "A_wbar", "C_w"):
            if r1[key] > 1e-12:
                assert 3.0 < r1[key] / r2[key] < 5.0, (a, H, key)
        gb = gauss_bonnet_integral(d)
        assert abs(gb - 4 * math.pi) <= 1e-6 * 4 * math.pi, (a, H)
    ok(8, "integrability residuals O(h^2) and Gauss-Bonnet = 4 pi at 1e-6, 10 random pairs")


def test_criterion_09_reconstruction_and_embeddedness():
    for a, H in ((1.0, 0.0), (1.0, 1.0), (0.5, 1.0), (1 / 3, 0.0), (2.0, 0.7)):
        m = reconstruct_meridian(a, H, (-8, 8), 4096)
        assert m.max_metric_residual < 1e-4, (a, H)
        assert m.max_C_residual < 1e-4, (a, H)
    for H in (0.0, 1.0, 3.0):
        m = reconstruct_meridian(1.0, H, (-8, 8), 2048)
        pl = planarity_report(m.points)
        assert pl["plane_residual"] < 1e-6 and pl["circle_residual"] < 1e-6
        assert is_embedded(m).embedded is True
    # the non-embedded region sits at small alpha with moderate H > 0
    # (minimal spheres are great equators, embedded, for every alpha)
    m = reconstruct_meridian(0.02, 1.0, (-9, 9), 3000)
    r = is_embedded(m)
    assert r.embedded is False and r.crossings >= 1
    ok(9, "residuals < 1e-4 at n = 4096; round meridians planar circles at 1e-6; "
          "non-embedded sphere found at alpha = 0.02, H = 1")


def test_criterion_10_isoperimetric_oracle():
    prof1 = sphere_profile(1.0, H_max=12.0, n=200)
    for r in np.linspace(0.12, math.pi / 2, 30):
        H, A, V = round_cap_area_volume(r)
        if H > prof1.H[-1]:
            continue
        assert prof1.area_at(H) == pytest.approx(A, rel=1e-5)
        assert prof1.volume_at(H) == pytest.approx(V, rel=1e-5)
    for a in (0.4, 0.8):
        prof = sphere_profile(a, H_max=16.0, n=250)
        total = 2 * math.pi**2 * math.sqrt(a)
        for frac in np.linspace(0.025, 0.5, 20):
            rep = isoperimetric_candidate(a, frac * total, profile=prof)
            assert rep.family == "Sphere", (a, frac)
    ok(10, "alpha = 1 profile matches geodesic spheres at 1e-5; spheres win for "
           "20 volumes at alpha in {0.4, 0.8}")


def test_criterion_11_integrand_nonpositive():
    alphas = np.linspace(1 / 3, 1.0 - 1e-9, 47)
    Hs = np.linspace(0.0, 3.0, 46)
    cs = np.linspace(-1.0, 1.0, 47)
    A, Hm, C = np.meshgrid(alphas, Hs, cs, indexing="ij")
    vals = -4 * Hm**2 - 4 * A + ((A - 1) ** 2 / A) * (1 - C**2) ** 2
    assert vals.size >= 100_000
    assert float(vals.max()) <= 1e-12
    near_zero = np.argwhere(vals > -1e-9)
    assert len(near_zero) == 1
    i, j, k = near_zero[0]
    assert alphas[i] == alphas[0] and Hs[j] == 0.0 and cs[k] == 0.0
    for idx in (0, 1000, 54321, 99999):
        i, j, k = np.unravel_index(idx, vals.shape)
        direct = stability_integrand(float(alphas[i]), float(Hs[j]), float(cs[k]))
        assert vals[i, j, k] == pytest.approx(direct, abs=1e-12)
    ok(11, f"integrand <= 0 on {vals.size} grid points, unique zero at (1/3, 0, 0)")


def test_criterion_12_determinism_gate():
    env_args = [sys.executable, "-m", "bergercmc.cli"]
    proc = subprocess.run(env_args + ["selftest"], capture_output=True, text=True,
                          timeout=600)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "all invariants passed" in proc.stdout

    r1 = subprocess.run(env_args + ["constants"], capture_output=True, text=True)
    r2 = subprocess.run(env_args + ["constants"], capture_output=True, text=True)
    assert r1.stdout == r2.stdout and r1.returncode == r2.returncode == 0
    ok(12, "selftest exit 0; repeated CLI runs byte-identical")
