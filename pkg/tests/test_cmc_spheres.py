import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bergercmc.cmc_spheres import (ReconstructionError,
                                   area_sphere, area_sphere_closed,
                                   fundamental_data, gauss_bonnet_integral,
                                   gauss_curvature, integrability_residual,
                                   is_embedded, minimal_area_closed,
                                   planarity_report, reconstruct_meridian,
                                   zchart_data)
from scipy.integrate import quad

ALPHAS = st.floats(min_value=0.05, max_value=4.0)
HS = st.floats(min_value=0.0, max_value=3.0)


# ---------------------------------------------------------------------------
# fundamental data
# ---------------------------------------------------------------------------

def test_round_minimal_is_mercator():
    d = fundamental_data(1.0, 0.0)
    x = np.linspace(-4, 4, 41)
    assert np.max(np.abs(d.conf(x) - 1 / np.cosh(x) ** 2)) < 1e-15
    assert np.max(np.abs(d.p(x))) == 0.0  # umbilical at alpha = 1


def test_conf_at_equator_third():
    d = fundamental_data(1 / 3, 0.0)
    assert float(d.conf(0.0)) == pytest.approx(1 / 3, abs=1e-15)


def test_equator_A_norm_identity():
    for a, H in ((0.3, 0.0), (2.0, 1.5), (0.7, 0.2)):
        d = fundamental_data(a, H)
        assert abs(d.A(0.0)) ** 2 == pytest.approx(float(d.conf(0.0)) / 4, abs=1e-15)


@given(ALPHAS, HS)
def test_zchart_transport_and_A_identity(alpha, H):
    d = fundamental_data(alpha, H)
    x = np.linspace(-12, 12, 33)
    conf_z, A_z, p_z = zchart_data(alpha, H, x)
    assert np.max(np.abs(conf_z - d.conf(x))) < 1e-12
    assert np.max(np.abs(A_z - d.A(x))) < 1e-12
    assert np.max(np.abs(p_z - d.p(x))) < 1e-12
    r4 = np.abs(d.A(x)) ** 2 - d.conf(x) / 4 * (1 - d.C(x) ** 2)
    assert np.max(np.abs(r4)) < 1e-12


def test_C_is_tanh_and_conf_decays():
    d = fundamental_data(0.5, 1.0)
    x = np.linspace(-20, 20, 81)
    assert np.max(np.abs(d.C(x) - np.tanh(x))) == 0.0
    assert np.all(d.conf(x) > 0)
    assert float(d.conf(20.0)) < 1e-15 * float(d.conf(0.0))


def test_fundamental_data_rejects_bad_args():
    with pytest.raises(Exception):
        fundamental_data(-0.5, 0.0)
    with pytest.raises(ValueError):
        fundamental_data(0.5, -1.0)


# ---------------------------------------------------------------------------
# integrability conditions
# ---------------------------------------------------------------------------

def test_integrability_residuals_small():
    d = fundamental_data(0.5, 1.0)
    r = integrability_residual(d, (-5, 5), 400)
    for key in ("p_wbar", "A_wbar", "C_w", "A_norm"):
        assert r[key] < 1e-3


def test_integrability_round_minimal():
    d = fundamental_data(1.0, 0.0)
    r = integrability_residual(d, (-5, 5), 256)
    assert r["p_wbar"] < 1e-15  # p vanishes identically
    assert r["A_norm"] < 1e-15
    assert r["A_wbar"] < 1e-3 and r["C_w"] < 1e-3


def test_integrability_second_order():
    rng = np.random.default_rng(42)
    for _ in range(4):
        a = float(rng.uniform(0.1, 2.5))
        H = float(rng.uniform(0.0, 2.0))
        d = fundamental_data(a, H)
        r1 = integrability_residual(d, (-5, 5), 400)
        r2 = integrability_residual(d, (-5, 5), 800)
        for key in ("p_wbar", "A_wbar", "C_w"):
            if r1[key] > 1e-12:
                assert 3.0 < r1[key] / r2[key] < 5.0


def test_integrability_rejects_degenerate():
    d = fundamental_data(0.5, 1.0)
    with pytest.raises(ValueError):
        integrability_residual(d, (2.0, 2.0), 100)
    with pytest.raises(ValueError):
        integrability_residual(d, (-5, 5), 8)


# ---------------------------------------------------------------------------
# curvature and area
# ---------------------------------------------------------------------------

def test_gauss_curvature_round():
    d = fundamental_data(1.0, 0.0)
    for x in (-2.0, 0.0, 1.5):
        assert gauss_curvature(d, x) == pytest.approx(1.0, abs=1e-12)


def test_gauss_curvature_umbilical():
    for H in (0.5, 1.0, 2.0):
        d = fundamental_data(1.0, H)
        assert gauss_curvature(d, 0.7) == pytest.approx(1 + H**2, rel=1e-12)


def test_gauss_curvature_cross_route():
    # the operation itself raises if the two routes disagree beyond 1e-6
    for a, H, x in ((1 / 3, 0.0, 0.0), (0.5, 1.0, -1.3), (2.5, 0.4, 2.0)):
        gauss_curvature(fundamental_data(a, H), x)
    d = fundamental_data(1 / 3, 0.0)
    assert gauss_curvature(d, 0.0) == pytest.approx(-1.0, abs=1e-12)


def test_area_examples():
    assert area_sphere(1.0, 0.0) == pytest.approx(4 * math.pi, rel=1e-10)
    a2 = 2 * math.pi * (1 + math.atanh(math.sqrt(2 / 3)) / math.sqrt(6))
    assert area_sphere(1 / 3, 0.0) == pytest.approx(a2, rel=1e-10)
    assert a2 == pytest.approx(9.2233431556, abs=1e-9)


def test_area_closed_forms_match_quadrature():
    for a in (0.1, 0.5, 1.0, 1.7, 3.0):
        for H in (0.0, 0.8, 2.5):
            assert area_sphere(a, H) == pytest.approx(area_sphere_closed(a, H), rel=1e-10)
    assert minimal_area_closed(0.4) == pytest.approx(area_sphere(0.4, 0.0), rel=1e-10)


def test_area_decays_with_H():
    vals = [area_sphere(1 / 3, H) for H in (0.0, 1.0, 10.0, 100.0)]
    assert all(vals[i] > vals[i + 1] for i in range(3))
    assert vals[-1] < 0.005


def test_gauss_bonnet():
    for a, H in ((1.0, 0.0), (0.5, 1.0), (2.5, 0.3), (0.1, 0.0)):
        assert gauss_bonnet_integral(fundamental_data(a, H)) == pytest.approx(
            4 * math.pi, rel=1e-6)


def test_vertical_angle_integrates_to_zero():
    # Int C dA = 0: C conf is odd in x
    d = fundamental_data(0.4, 0.9)
    val, _ = quad(lambda x: float(d.C(x)) * float(d.conf(x)), -25, 25, limit=200)
    assert abs(2 * math.pi * val) < 1e-9


# ---------------------------------------------------------------------------
# meridian reconstruction
# ---------------------------------------------------------------------------

def test_reconstruction_residuals():
    m = reconstruct_meridian(0.5, 1.0, (-8, 8), 4096)
    assert m.max_metric_residual < 1e-4
    assert m.max_C_residual < 1e-4
    assert np.max(np.abs(np.linalg.norm(m.points, axis=1) - 1.0)) < 1e-9


def test_reconstruction_round_is_planar_circle():
    for H in (0.0, 1.0, 3.0):
        m = reconstruct_meridian(1.0, H, (-8, 8), 1024)
        pl = planarity_report(m.points)
        assert pl["plane_residual"] < 1e-6
        assert pl["circle_residual"] < 1e-6


def test_minimal_meridians_planar_every_alpha():
    # minimal spheres are great equators for every alpha
    for a in (0.2, 0.7, 2.0):
        m = reconstruct_meridian(a, 0.0, (-8, 8), 1024)
        assert planarity_report(m.points)["plane_residual"] < 1e-8


def test_pole_tails_cauchy():
    m = reconstruct_meridian(0.5, 1.0, (-12, 12), 4096)
    # the curve settles at the poles: displacement over the last unit of x
    sel = m.x > 11.0
    disp = np.linalg.norm(m.points[sel] - m.points[-1], axis=1).max()
    assert disp < 1e-4
    sel = m.x < -11.0
    disp = np.linalg.norm(m.points[sel] - m.points[0], axis=1).max()
    assert disp < 1e-4


def test_reconstruction_errors():
    with pytest.raises(ValueError):
        reconstruct_meridian(0.5, 1.0, (-8, 8), 32)
    with pytest.raises(ValueError):
        reconstruct_meridian(0.5, 1.0, (1, 8), 128)
    with pytest.raises(ReconstructionError):
        # far too coarse for the finite-difference certificate at small alpha
        reconstruct_meridian(0.01, 1.0, (-9, 9), 700)


def test_normal_is_unit_and_orthogonal():
    from bergercmc.ambient import metric_eval_raw

    m = reconstruct_meridian(0.7, 0.5, (-8, 8), 512)
    h = m.x[1] - m.x[0]
    dgam = (m.points[2:] - m.points[:-2]) / (2 * h)
    for i in range(1, len(m.x) - 1, 50):
        n = m.normals[i]
        q = m.points[i]
        assert metric_eval_raw(0.7, q, n, n) == pytest.approx(1.0, abs=1e-8)
        assert metric_eval_raw(0.7, q, n, dgam[i - 1]) == pytest.approx(0.0, abs=1e-4)


# ---------------------------------------------------------------------------
# embeddedness
# ---------------------------------------------------------------------------

def test_embedded_round_spheres():
    for H in (0.0, 1.0, 3.0):
        m = reconstruct_meridian(1.0, H, (-8, 8), 2048)
        assert is_embedded(m).embedded is True


def test_embedded_moderate_alpha():
    m = reconstruct_meridian(0.5, 0.0, (-8, 8), 2048)
    assert is_embedded(m).embedded is True


def test_minimal_sphere_small_alpha_embedded():
    # minimal spheres are great equators, hence embedded, for every alpha
    m = reconstruct_meridian(0.05, 0.0, (-8, 8), 4096)
    assert is_embedded(m).embedded is True


def test_non_embedded_small_alpha():
    m = reconstruct_meridian(0.02, 1.0, (-9, 9), 3000)
    r = is_embedded(m)
    assert r.embedded is False
    assert r.crossings >= 1


def test_non_embedded_verdict_stable_under_refinement():
    for n in (3000, 6000):
        m = reconstruct_meridian(0.01, 1.0, (-9, 9), n)
        assert is_embedded(m).embedded is False


def test_csv_roundtrip(tmp_path):
    m = reconstruct_meridian(0.5, 1.0, (-6, 6), 512)
    path = tmp_path / "meridian.csv"
    m.to_csv(path)
    data = path.read_text().splitlines()
    assert data[0] == "x,re_z,im_z,re_w,im_w,metric_residual,C_residual"
    assert len(data) == 513
    row = data[256].split(",")
    assert len(row) == 7
    assert float(row[0]) == pytest.approx(m.x[255])


def test_minimal_meridian_is_great_circle():
    # H = 0: the sphere is a great equator, so the meridian circle has unit
    # radius and passes through the origin-centered plane for every alpha
    for a in (0.2, 1.0, 2.0):
        m = reconstruct_meridian(a, 0.0, (-8, 8), 1024)
        _, _, Vt = np.linalg.svd(m.points - m.points.mean(axis=0), full_matrices=False)
        # points sit on S^3, so in-plane radius 1 about the origin pins both
        # the containing 2-plane through the origin and the unit radius
        radii = np.linalg.norm(m.points @ Vt[:2].T, axis=1)
        assert np.max(np.abs(radii - 1.0)) < 1e-8


def test_orbit_generator_eigenvalues():
    # the y-flow closes with period 2 pi: rotation speeds are (0, +-1)
    from bergercmc.cmc_spheres import fit_orbit_generator

    for a, H in ((0.3, 0.0), (1.0, 1.0), (2.0, 0.5)):
        m = reconstruct_meridian(a, H, (-8, 8), 1024)
        gen = fit_orbit_generator(m)
        kap = np.sort(np.abs(gen.kappa))
        assert kap[0] < 1e-6
        assert abs(kap[1] - 1.0) < 1e-6
