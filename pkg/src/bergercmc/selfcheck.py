"""Invariant suite behind the `selftest` CLI command.

Each check is a quick, deterministic assertion of one of the library's
internal consistency contracts; together they exercise every module.
"""

from __future__ import annotations

import math

import numpy as np

from . import ambient, regions, tori
from .cmc_spheres import (area_sphere, fundamental_data, gauss_bonnet_integral,
                          gauss_curvature, integrability_residual, is_embedded,
                          minimal_area_closed, planarity_report, reconstruct_meridian,
                          zchart_data)
from .isoperimetry import (clifford_vs_minimal_sphere, crossing_alpha,
                           isoperimetric_candidate, round_cap_area_volume,
                           sphere_profile)
from .stability import (alpha0, classify_sphere, jacobi_potential_flat,
                        jacobi_rayleigh_C, jacobi_spectrum, koiso_integral_closed,
                        koiso_integral_quadrature, potential_from_data)


def check_metric_symmetry():
    rng = np.random.default_rng(20240811)
    for _ in range(20):
        q = ambient.random_point(rng)
        X = ambient.random_tangent(rng, q)
        Y = ambient.random_tangent(rng, q)
        a = float(rng.uniform(0.05, 3.0))
        left = ambient.metric_eval(a, X, Y)
        right = ambient.metric_eval(a, Y, X)
        assert abs(left - right) < 1e-10, "metric symmetry"
        V = ambient.killing_field(q)
        assert abs(ambient.metric_eval(a, V, V) - a) < 1e-10, "g(V,V) = alpha"


def check_hopf_radius():
    rng = np.random.default_rng(7)
    for _ in range(20):
        q = ambient.random_point(rng)
        assert abs(np.linalg.norm(ambient.hopf_project(q)) - 0.5) < 1e-12, "Hopf radius 1/2"


def check_volume_form():
    rng = np.random.default_rng(11)
    for _ in range(10):
        q = ambient.random_point(rng).array()
        V, E1, E2 = ambient.frame_at(q)
        a = float(rng.uniform(0.1, 2.5))
        G = np.empty((3, 3))
        vecs = (V, E1, E2)
        for i in range(3):
            for j in range(3):
                G[i, j] = ambient.metric_eval_raw(a, q, vecs[i], vecs[j])
        assert abs(np.linalg.det(G) - a) < 1e-10, "det g_a = alpha in round frame"


def check_zchart_transport():
    x = np.linspace(-15.0, 15.0, 61)
    for a, H in ((0.3, 0.0), (0.5, 1.0), (2.0, 0.7), (1 / 3, 0.0)):
        d = fundamental_data(a, H)
        conf_z, A_z, p_z = zchart_data(a, H, x)
        assert np.max(np.abs(conf_z - d.conf(x))) < 1e-12, "conf transport"
        assert np.max(np.abs(A_z - d.A(x))) < 1e-12, "A transport"
        assert np.max(np.abs(p_z - d.p(x))) < 1e-12, "p transport"
        r4 = np.abs(d.A(x)) ** 2 - 0.25 * d.conf(x) * (1 - d.C(x) ** 2)
        assert np.max(np.abs(r4)) < 1e-12, "|A|^2 identity"


def check_integrability_order():
    d = fundamental_data(0.5, 1.0)
    r1 = integrability_residual(d, (-5, 5), 400)
    r2 = integrability_residual(d, (-5, 5), 800)
    assert r1["p_wbar"] < 1e-3 and r1["A_wbar"] < 1e-3 and r1["C_w"] < 1e-3
    for key in ("p_wbar", "A_wbar", "C_w"):
        assert 3.0 < r1[key] / r2[key] < 5.0, f"integrability order-2 ({key})"


def check_gauss_equation():
    for a, H, x in ((1.0, 0.0, 0.4), (1.0, 2.0, -1.1), (1 / 3, 0.0, 0.0),
                    (0.5, 1.0, 0.8), (2.5, 0.3, 1.7)):
        gauss_curvature(fundamental_data(a, H), x)  # raises on mismatch
    assert abs(gauss_curvature(fundamental_data(1 / 3, 0.0), 0.0) + 1.0) < 1e-12


def check_areas():
    assert abs(area_sphere(1.0, 0.0) - 4 * math.pi) < 1e-9
    assert abs(area_sphere(1 / 3, 0.0) - minimal_area_closed(1 / 3)) < 1e-8
    assert abs(gauss_bonnet_integral(fundamental_data(0.5, 1.0)) - 4 * math.pi) < 1e-6


def check_potential_universality():
    rng = np.random.default_rng(3)
    x = rng.uniform(-8, 8, 20)
    for a, H in ((0.1, 0.0), (1.0, 2.0), (3.0, 0.5)):
        d = fundamental_data(a, H)
        assert np.max(np.abs(potential_from_data(d, x) - jacobi_potential_flat(x))) < 1e-12


def check_koiso():
    for a in (0.1, 0.5, 0.9, 1.5, 2.5):
        for H in (0.0, 0.7, 2.0):
            closed = koiso_integral_closed(a, H)
            quadr = koiso_integral_quadrature(a, H)
            assert abs(closed - quadr) <= 1e-6 * max(abs(closed), abs(quadr)), "Koiso quadrature"
    a0 = alpha0()
    assert abs(a0 - 0.121) < 5e-4, "alpha0 printed value"
    assert abs(koiso_integral_closed(a0, 0.0)) < 1e-9, "alpha0 root property"
    assert not classify_sphere(0.05, 0.0).stable and classify_sphere(2.0, 0.0).stable


def check_spectrum():
    for a, H in ((0.3, 0.0), (2.0, 1.7), (1.0, 0.0), (0.05, 0.0)):
        s = jacobi_spectrum(a, H, n=2000)
        assert s.index == 1 and s.nullity == 3, f"index/nullity at ({a},{H})"
        assert jacobi_rayleigh_C(a, H) < 1e-6, "tanh is a Jacobi function"


def check_torus():
    td = tori.torus_data(1 / 3, 0.0)
    assert abs(td.det_metric - 1 / 12) < 1e-12
    lat, dual = tori.lattice_and_dual(td)
    assert np.max(np.abs(lat.matrix().T @ dual.matrix() - np.eye(2))) < 1e-12
    for a in (0.1, 0.25, 1 / 3, 0.5, 1.0, 2.0):
        for H in (0.0, 0.3, 1.1):
            lam_enum = tori.torus_spectrum(tori.torus_data(a, H), N=10).lambda1
            lam_cf = tori.lambda1_closed_form(a, H)
            assert abs(lam_enum - lam_cf) <= 1e-10 * max(1.0, lam_cf), "lambda1 routes"
    assert not tori.classify_torus(0.5, 0.0).stable
    assert tori.classify_torus(1 / 3, 0.0).stable
    assert abs(tori.classify_torus(1 / 3, 0.0).margin) < 1e-12


def check_regions():
    rng = np.random.default_rng(5)
    for _ in range(50):
        t = float(rng.uniform(0, 1))
        e = int(rng.choice([-1, 1]))
        P = regions.region_polynomial(t, e)
        assert abs(P(1.0) - 4.0) < 1e-12, "P_t(1) = 4"
        assert abs(P.discriminant - 32 * (t - e) ** 2 * (1 + t**2)) < 1e-10
        root = regions.alpha_root(t, e)
        assert abs(P(root)) < 1e-9, "root residual"
    t0, a1, ah = regions.critical_constants(2001)
    assert abs(t0 - 0.1292) < 5e-5 and abs(a1 - 0.217) < 5e-4 and abs(ah - 4 / 3) < 1e-12


def check_integrand_sign():
    for a in np.linspace(1 / 3, 0.999, 12):
        for H in np.linspace(0, 3, 7):
            for c in np.linspace(-1, 1, 9):
                v = regions.stability_integrand(a, H, c)
                assert v <= 1e-9, "stability integrand nonpositive"
    assert abs(regions.stability_integrand(1 / 3, 0.0, 0.0)) < 1e-12


def check_isoperimetry():
    ca = crossing_alpha()
    assert abs(ca - 0.166) < 5e-4, "crossing alpha printed value"
    at, asph, win = clifford_vs_minimal_sphere(1 / 3)
    assert win == "Sphere" and at > asph
    prof = sphere_profile(0.5, H_max=10.0, n=120)
    rep = isoperimetric_candidate(0.5, math.pi**2 * math.sqrt(0.5), profile=prof)
    assert rep.family == "Sphere", "half-volume candidate at alpha=0.5"
    H, A, V = round_cap_area_volume(1.0)
    prof1 = sphere_profile(1.0, H_max=5.0, n=120)
    assert abs(prof1.area_at(H) - A) / A < 1e-5
    assert abs(prof1.volume_at(H) - V) / V < 1e-5


def check_reconstruction():
    m = reconstruct_meridian(1.0, 0.0, (-8, 8), 2048)
    assert m.max_metric_residual < 1e-4 and m.max_C_residual < 1e-6
    pl = planarity_report(m.points)
    assert pl["plane_residual"] < 1e-6 and pl["circle_residual"] < 1e-6
    assert is_embedded(m).embedded is True


CHECKS = [
    ("metric-symmetry", check_metric_symmetry),
    ("hopf-radius", check_hopf_radius),
    ("volume-form", check_volume_form),
    ("zchart-transport", check_zchart_transport),
    ("integrability-order", check_integrability_order),
    ("gauss-equation", check_gauss_equation),
    ("areas", check_areas),
    ("potential-universality", check_potential_universality),
    ("koiso", check_koiso),
    ("jacobi-spectrum", check_spectrum),
    ("torus", check_torus),
    ("regions", check_regions),
    ("integrand-sign", check_integrand_sign),
    ("isoperimetry", check_isoperimetry),
    ("reconstruction", check_reconstruction),
]


def run(verbose: bool = True) -> list[str]:
    """Run every check; returns the names of the failures."""
    failures = []
    for name, fn in CHECKS:
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - report and keep going
            failures.append(name)
            if verbose:
                print(f"FAIL {name}: {exc}")
        else:
            if verbose:
                print(f"PASS {name}")
    return failures
