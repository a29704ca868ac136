"""The rotationally invariant CMC sphere family of the Berger spheres.

For every alpha > 0 and H >= 0 there is, up to congruence, one immersed
CMC sphere.  Its fundamental data have closed forms which we carry in the
cylinder chart w = x + iy (z = e^w on the Riemann sphere), where the
normal-vertical angle function is C(x) = tanh x and everything depends on
x only:

    den(x)  = (1 - a) + (H^2 + a) cosh^2 x
    conf(x) = (H^2 + a) cosh^2 x / den^2          (metric conf |dw|^2)
    A(x)    = -(H + i sqrt(a)) / (2 den)          (<Phi_w, xi>)
    p(x)    = (1 - a)(H + i sqrt(a)) / (2 den^2)  (Hopf-differential datum)

The module evaluates these, checks the integrability conditions and the
Gauss equation, computes areas, reconstructs the meridian curve in S^3 by
integrating the moving-frame system, and decides embeddedness through the
orbit-space projection of the meridian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, solve_ivp

from .ambient import as_alpha, frame_at, metric_eval_raw
from .geometry2d import polyline_self_intersection_report

AREA_CUTOFF = 25.0  # conf(25)/conf(0) < 1e-16: quadrature truncation
QUAD_RELTOL = 1e-8


class ReconstructionError(RuntimeError):
    """Moving-frame integration violated a profile invariant."""


class ConsistencyError(RuntimeError):
    """Two independent evaluation routes disagreed beyond tolerance."""


@dataclass(frozen=True)
class SphereFundamentalData:
    """Closed-form fundamental data of the CMC sphere S_a(H) in the w-chart."""

    alpha: float
    H: float

    def den(self, x):
        x = np.asarray(x, dtype=float)
        return (1.0 - self.alpha) + (self.H**2 + self.alpha) * np.cosh(x) ** 2

    def C(self, x):
        return np.tanh(np.asarray(x, dtype=float))

    def conf(self, x):
        x = np.asarray(x, dtype=float)
        return (self.H**2 + self.alpha) * np.cosh(x) ** 2 / self.den(x) ** 2

    def A(self, x):
        return -(self.H + 1j * math.sqrt(self.alpha)) / (2.0 * self.den(x))

    def p(self, x):
        return (1.0 - self.alpha) * (self.H + 1j * math.sqrt(self.alpha)) / (2.0 * self.den(x) ** 2)

    def sigma_norm2(self, x):
        """|sigma|^2 = 2 H^2 + 8 conf^-2 |p|^2 (conformal-chart norm)."""
        return 2.0 * self.H**2 + 8.0 * np.abs(self.p(x)) ** 2 / self.conf(x) ** 2


def fundamental_data(p, H: float) -> SphereFundamentalData:
    """Fundamental data of the CMC sphere with mean curvature H >= 0."""
    a = as_alpha(p)
    if H < 0:
        raise ValueError("mean curvature H must be nonnegative")
    return SphereFundamentalData(alpha=a, H=float(H))


def zchart_data(alpha: float, H: float, x):
    """(conf, A, p) at |z| = e^x transported from the raw z-chart formulas.

    Independent route used to validate the closed forms above:
    conf = e^{2u(z)} |z|^2,  A_w = A(z) z,  p_w = p(z) z^2.
    Overflows for |x| beyond ~80; meant for test grids.
    """
    x = np.asarray(x, dtype=float)
    r2 = np.exp(2.0 * x)  # |z|^2
    hia = H + 1j * math.sqrt(alpha)
    D = 4.0 * (1.0 - alpha) * r2 + (H**2 + alpha) * (r2 + 1.0) ** 2
    e2u = 4.0 * (r2 + 1.0) ** 2 * (H**2 + alpha) / D**2
    conf = e2u * r2
    A_w = -2.0 * hia * r2 / D  # A(z) * z with zbar z = |z|^2
    p_w = (2.0 * (1.0 - alpha) / hia) * A_w**2
    return conf, A_w, p_w


# ---------------------------------------------------------------------------
# integrability conditions
# ---------------------------------------------------------------------------

def integrability_residual(d: SphereFundamentalData, x_range=(-5.0, 5.0), n: int = 400):
    """Sup-norm finite-difference residuals of the four integrability equations.

    In the w-chart all data depend on x only, so d/dw = d/dwbar = (1/2) d/dx.
    Central differences make each residual O(h^2); the fourth equation is
    algebraic and sits at machine precision.
    """
    if n < 16:
        raise ValueError("grid size n must be at least 16")
    lo, hi = float(x_range[0]), float(x_range[1])
    if not hi > lo:
        raise ValueError("degenerate x_range")
    x = np.linspace(lo, hi, n)
    h = x[1] - x[0]
    a, H = d.alpha, d.H
    hia = H + 1j * math.sqrt(a)

    C, conf, A, p = d.C(x), d.conf(x), d.A(x), d.p(x)

    def ddx(f):
        return (f[2:] - f[:-2]) / (2.0 * h)

    mid = slice(1, -1)
    r1 = 0.5 * ddx(p) - 2.0 * (1.0 - a) * (conf * C * A)[mid]
    r2 = 0.5 * ddx(A) - 0.5 * (conf * C)[mid] * hia
    r3 = 0.5 * ddx(C) + (hia.conjugate() * A + 2.0 * p * A.conjugate() / conf)[mid]
    r4 = np.abs(A) ** 2 - 0.25 * conf * (1.0 - C**2)

    return {
        "p_wbar": float(np.max(np.abs(r1))),
        "A_wbar": float(np.max(np.abs(r2))),
        "C_w": float(np.max(np.abs(r3))),
        "A_norm": float(np.max(np.abs(r4))),
        "h": float(h),
    }


# ---------------------------------------------------------------------------
# curvature and area
# ---------------------------------------------------------------------------

def gauss_curvature(d: SphereFundamentalData, x: float, tol: float = 1e-6) -> float:
    """Gauss curvature K(x), computed two independent ways.

    (a) conformal route: K = -(1/2) conf^-1 (log conf)'', with the
        logarithmic derivative of the closed form taken exactly;
    (b) ambient route: the Gauss equation
        K = 2 H^2 - |sigma|^2 / 2 + a + 4 (1 - a) C^2.
    The two must agree to `tol` relative, else a ConsistencyError is raised.
    """
    a, H = d.alpha, d.H
    xs = float(x)
    P = H**2 + a
    den = float(d.den(xs))
    conf = float(d.conf(xs))
    c2 = math.cosh(xs) ** 2
    sech2 = 1.0 / c2
    # den''*den - den'^2 expanded symbolically; the raw difference of the two
    # ~e^{4|x|} terms cancels catastrophically for |x| over ~15
    wronsk = 2.0 * P * (P * c2 + (1.0 - a) * (2.0 * c2 - 1.0))
    k_conformal = (wronsk / den**2 - sech2) / conf

    C2 = math.tanh(xs) ** 2
    k_gauss = 2.0 * H**2 - 0.5 * float(d.sigma_norm2(xs)) + a + 4.0 * (1.0 - a) * C2

    scale = max(abs(k_conformal), abs(k_gauss), 1e-30)
    if abs(k_conformal - k_gauss) > tol * scale:
        raise ConsistencyError(
            f"Gauss curvature routes disagree at x={xs}: "
            f"conformal {k_conformal} vs Gauss equation {k_gauss}"
        )
    return k_conformal


class QuadratureError(RuntimeError):
    def __init__(self, msg, estimate):
        super().__init__(msg)
        self.estimate = estimate


def area_sphere(p, H: float) -> float:
    """Area of S_a(H): 2 pi Int conf(x) dx by adaptive quadrature."""
    d = fundamental_data(p, H)
    val, err = quad(lambda x: d.conf(x), 0.0, AREA_CUTOFF, epsabs=0.0, epsrel=1e-12, limit=200)
    area = 4.0 * math.pi * val  # conf is even
    if err * 4.0 * math.pi > QUAD_RELTOL * area:
        raise QuadratureError(f"area quadrature did not converge (err={err})", err)
    return area


def area_sphere_closed(p, H: float) -> float:
    """Closed-form area (independent route; arctanh branch for a<1, arctan for a>1)."""
    a = as_alpha(p)
    c = 1.0 + H**2
    if a < 1.0:
        k = math.sqrt((1.0 - a) / c)
        bracket = 1.0 + (H**2 + a) / (math.sqrt(c) * math.sqrt(1.0 - a)) * math.atanh(k)
    elif a > 1.0:
        k = math.sqrt((a - 1.0) / c)
        bracket = 1.0 + (H**2 + a) / (math.sqrt(c) * math.sqrt(a - 1.0)) * math.atan(k)
    else:
        bracket = 2.0
    return 2.0 * math.pi * bracket / c


def minimal_area_closed(alpha: float) -> float:
    """Area of the minimal sphere S_a(0), a < 1: 2 pi (1 + a artanh(sqrt(1-a))/sqrt(1-a))."""
    if alpha >= 1.0:
        return area_sphere_closed(alpha, 0.0)
    s = math.sqrt(1.0 - alpha)
    return 2.0 * math.pi * (1.0 + alpha * math.atanh(s) / s)


def gauss_bonnet_integral(d: SphereFundamentalData) -> float:
    """2 pi Int K conf dx; equals 4 pi for every (a, H) (sphere topology)."""
    def integrand(x):
        return gauss_curvature(d, x) * float(d.conf(x))

    val, _ = quad(integrand, -AREA_CUTOFF, AREA_CUTOFF, epsabs=1e-12, epsrel=1e-11, limit=300)
    return 2.0 * math.pi * val


# ---------------------------------------------------------------------------
# meridian reconstruction
# ---------------------------------------------------------------------------

@dataclass
class MeridianProfile:
    """Reconstructed meridian of S_a(H) with its adapted frame and residuals.

    points[i] is the curve in S^3 (4 real coordinates), normals[i] the
    g_a-unit normal.  metric_residual compares the finite-difference speed^2
    of the curve against conf(x); C_residual compares g_a(N, xi) against
    tanh x.  tangent_y[i] is d Phi / dy along the orbit direction, used for
    the orbit-generator fit.
    """

    alpha: float
    H: float
    x: np.ndarray
    points: np.ndarray
    normals: np.ndarray
    tangent_y: np.ndarray
    metric_residual: np.ndarray
    C_residual: np.ndarray

    @property
    def max_metric_residual(self) -> float:
        return float(np.nanmax(self.metric_residual))

    @property
    def max_C_residual(self) -> float:
        return float(np.max(np.abs(self.C_residual)))

    def to_csv(self, path) -> None:
        """CSV columns: x, re(z), im(z), re(w), im(w), metric_residual, C_residual."""
        with open(path, "w", newline="") as fh:
            fh.write("x,re_z,im_z,re_w,im_w,metric_residual,C_residual\n")
            for i in range(len(self.x)):
                P = [float(v) for v in self.points[i]]
                mr = float(self.metric_residual[i])
                fh.write(
                    f"{float(self.x[i])!r},{P[0]!r},{P[1]!r},{P[2]!r},{P[3]!r},"
                    f"{(mr if math.isfinite(mr) else 0.0)!r},{float(self.C_residual[i])!r}\n"
                )


def _frame_ode_rhs(alpha: float, H: float):
    """Right-hand side of the 13-dimensional moving-frame system.

    State: gamma (4), then the coefficients of e^-v Phi_x, e^-v Phi_y and N
    in the g_a-orthonormal frame (xi = V/sqrt(a), E1, E2).  The connection
    coefficients come from the Koszul formula for the left-invariant metric
    (nabla_X xi = sqrt(a) X ^ xi for horizontal X, and the xi-derivatives
    pick up the extra (a-2)/sqrt(a) rotation).
    """
    sa = math.sqrt(alpha)
    ha = H**2 + alpha
    c1 = (alpha - 2.0) / sa  # coefficient of nabla_xi E1 = c1 E2

    def rhs(x, y):
        gamma = y[0:4]
        a = y[4:7]
        b = y[7:10]
        nn = y[10:13]

        ch = math.cosh(x)
        den = (1.0 - alpha) + ha * ch * ch
        conf = ha * ch * ch / (den * den)
        ev = math.sqrt(conf)
        mu = H / (math.sqrt(ha) * ch)
        nu = -(1.0 - alpha) * sa / (den * math.sqrt(ha) * ch)

        # Omega(a): frame rotation along the curve, antisymmetric
        O01 = sa * a[2]
        O02 = -sa * a[1]
        O12 = -c1 * a[0]

        def rot(w):
            return np.array([
                O01 * w[1] + O02 * w[2],
                -O01 * w[0] + O12 * w[2],
                -O02 * w[0] - O12 * w[1],
            ])

        V, E1, E2 = frame_at(gamma)
        dgamma = ev * (a[0] * V / sa + a[1] * E1 + a[2] * E2)
        da = -ev * rot(a) + mu * nn
        db = -ev * rot(b) + nu * nn
        dn = -ev * rot(nn) - mu * a - nu * b
        return np.concatenate([dgamma, da, db, dn])

    return rhs


def reconstruct_meridian(p, H: float, x_range=(-8.0, 8.0), n: int = 1024,
                         rtol: float = 1e-10, atol: float = 1e-12,
                         residual_tol: float = 1e-3) -> MeridianProfile:
    """Integrate the moving-frame system along y = 0 and validate the result.

    Starts at the equator point x = 0 with the frame fixed by the closed
    forms (the xi-components of tangent frame and normal are determined by
    A and C; the remaining rotation is a congruence gauge) and integrates
    outward in both directions.
    """
    a = as_alpha(p)
    if n < 64:
        raise ValueError("need n >= 64 meridian samples")
    lo, hi = float(x_range[0]), float(x_range[1])
    if not (lo < 0.0 < hi):
        raise ValueError("x_range must contain the equator x = 0")

    d = fundamental_data(a, H)
    sa = math.sqrt(a)
    rho = math.sqrt(H**2 + a)

    gamma0 = np.array([1.0, 0.0, 0.0, 0.0])
    a0 = np.array([-H / rho, sa / rho, 0.0])
    b0 = np.array([sa / rho, H / rho, 0.0])
    n0 = np.array([0.0, 0.0, 1.0])
    y0 = np.concatenate([gamma0, a0, b0, n0])

    xs = np.linspace(lo, hi, n)
    rhs = _frame_ode_rhs(a, H)
    out = np.empty((n, 13))

    for sign, xcut in ((1.0, hi), (-1.0, lo)):
        sel = xs >= 0 if sign > 0 else xs <= 0
        t_eval = xs[sel] if sign > 0 else xs[sel][::-1]
        sol = solve_ivp(rhs, (0.0, xcut), y0, method="DOP853",
                        t_eval=t_eval, rtol=rtol, atol=atol)
        if not sol.success:
            raise ReconstructionError(f"ODE integration failed: {sol.message}")
        vals = sol.y.T if sign > 0 else sol.y.T[::-1]
        out[sel] = vals

    points = out[:, 0:4]
    coeff_a = out[:, 4:7]
    coeff_b = out[:, 7:10]
    coeff_n = out[:, 10:13]

    # ambient normals and orbit tangents from frame coefficients
    normals = np.empty_like(points)
    tangent_y = np.empty_like(points)
    ev = np.sqrt(d.conf(xs))
    for i in range(n):
        V, E1, E2 = frame_at(points[i])
        xi = V / sa
        normals[i] = coeff_n[i, 0] * xi + coeff_n[i, 1] * E1 + coeff_n[i, 2] * E2
        tangent_y[i] = ev[i] * (coeff_b[i, 0] * xi + coeff_b[i, 1] * E1 + coeff_b[i, 2] * E2)

    # residual 1: finite-difference speed^2 of the curve against conf
    h = xs[1] - xs[0]
    metric_residual = np.full(n, np.nan)
    dgam = (points[2:] - points[:-2]) / (2.0 * h)
    conf_mid = d.conf(xs[1:-1])
    for i in range(1, n - 1):
        speed2 = metric_eval_raw(a, points[i], dgam[i - 1], dgam[i - 1])
        metric_residual[i] = abs(speed2 - conf_mid[i - 1]) / conf_mid[i - 1]

    # residual 2: g_a(N, xi) against tanh x (n-coefficient drift)
    C_residual = coeff_n[:, 0] - np.tanh(xs)

    prof = MeridianProfile(alpha=a, H=float(H), x=xs, points=points, normals=normals,
                           tangent_y=tangent_y, metric_residual=metric_residual,
                           C_residual=C_residual)
    worst = max(prof.max_metric_residual, prof.max_C_residual)
    if worst > residual_tol:
        raise ReconstructionError(
            f"reconstruction invariants violated: metric {prof.max_metric_residual:.3e}, "
            f"C {prof.max_C_residual:.3e} (tol {residual_tol})"
        )
    return prof


def planarity_report(points: np.ndarray) -> dict:
    """How close a curve in R^4 is to a circle in an affine 2-plane.

    plane_residual is the out-of-plane deviation (3rd singular value over
    the 1st after centering); circle_residual is the relative radius error
    of a least-squares circle fitted in the plane.  Both vanish for the
    umbilical meridians.
    """
    ctr = points.mean(axis=0)
    Q = points - ctr
    U, svals, Vt = np.linalg.svd(Q, full_matrices=False)
    uv = Q @ Vt[:2].T
    # algebraic circle fit: u^2 + v^2 = 2 a u + 2 b v + c
    M = np.column_stack([2.0 * uv[:, 0], 2.0 * uv[:, 1], np.ones(len(uv))])
    rhs = (uv**2).sum(axis=1)
    (ca, cb, cc), *_ = np.linalg.lstsq(M, rhs, rcond=None)
    radius = math.sqrt(max(cc + ca**2 + cb**2, 0.0))
    dist = np.linalg.norm(uv - np.array([ca, cb]), axis=1)
    return {
        "plane_residual": float(svals[2] / svals[0]),
        "circle_residual": float(np.max(np.abs(dist - radius)) / radius),
    }


# ---------------------------------------------------------------------------
# embeddedness via the orbit-space projection
# ---------------------------------------------------------------------------

@dataclass
class OrbitGenerator:
    """u(2) generator W of the 1-parameter isometry group of the surface.

    The surface is (x, y) |-> exp(yW) gamma(x); kappa are the eigenvalues
    of W/i (real since W is skew-Hermitian).  For a sphere one of them is
    ~0 (its eigenvector gives the invariant orbit-space coordinate) and the
    other is ~+-1.
    """

    matrix: np.ndarray
    kappa: np.ndarray
    vectors: np.ndarray
    fit_residual: float


def fit_orbit_generator(m: MeridianProfile, xmax_fit: float = 6.0) -> OrbitGenerator:
    """Least-squares fit of W in u(2) to d Phi / dy = W gamma along the meridian."""
    sel = np.abs(m.x) <= min(xmax_fit, float(np.max(np.abs(m.x))))
    P = m.points[sel]
    B = m.tangent_y[sel]
    zr, zi, wr, wi = P[:, 0], P[:, 1], P[:, 2], P[:, 3]
    b1r, b1i, b2r, b2i = B[:, 0], B[:, 1], B[:, 2], B[:, 3]
    nrow = P.shape[0]
    Amat = np.zeros((4 * nrow, 4))
    rhs = np.zeros(4 * nrow)
    # unknowns: (a11, a22, cr, ci) in W = [[i a11, c], [-conj(c), i a22]]
    Amat[0::4, 0] = -zi
    Amat[0::4, 2] = wr
    Amat[0::4, 3] = -wi
    rhs[0::4] = b1r
    Amat[1::4, 0] = zr
    Amat[1::4, 2] = wi
    Amat[1::4, 3] = wr
    rhs[1::4] = b1i
    Amat[2::4, 1] = -wi
    Amat[2::4, 2] = -zr
    Amat[2::4, 3] = -zi
    rhs[2::4] = b2r
    Amat[3::4, 1] = wr
    Amat[3::4, 2] = -zi
    Amat[3::4, 3] = zr
    rhs[3::4] = b2i
    theta, *_ = np.linalg.lstsq(Amat, rhs, rcond=None)
    a11, a22, cr, ci = theta
    W = np.array([[1j * a11, cr + 1j * ci], [-(cr - 1j * ci), 1j * a22]])
    resid = float(np.linalg.norm(Amat @ theta - rhs) / max(np.linalg.norm(rhs), 1e-300))
    kappa, vecs = np.linalg.eigh(-1j * W)  # W = i * Hermitian
    return OrbitGenerator(matrix=W, kappa=kappa, vectors=vecs, fit_residual=resid)


def orbit_space_curve(m: MeridianProfile, gen: OrbitGenerator | None = None) -> np.ndarray:
    """Project the meridian to the orbit space of its isometry group.

    The invariant coordinate is the component of gamma along the eigenvector
    of W with the (near-)zero rotation speed; the meridian becomes a planar
    curve inside the closed unit disk, and the immersed sphere is embedded
    iff this curve is simple.
    """
    gen = gen or fit_orbit_generator(m)
    order = np.argsort(np.abs(gen.kappa))
    u_inv = gen.vectors[:, order[0]]
    Z = m.points[:, 0] + 1j * m.points[:, 1]
    Wc = m.points[:, 2] + 1j * m.points[:, 3]
    wprime = np.conj(u_inv[0]) * Z + np.conj(u_inv[1]) * Wc
    return np.column_stack([wprime.real, wprime.imag])


@dataclass
class EmbeddednessResult:
    embedded: bool | None  # None means undecided: refine the grid
    margin: float
    resolution: float
    crossings: int
    generator: OrbitGenerator
    notes: str = ""


def is_embedded(m: MeridianProfile, residual_tol: float = 1e-3) -> EmbeddednessResult:
    """Decide embeddedness of the CMC sphere from its meridian profile.

    The projected orbit-space curve is tested for transverse self-
    intersections with exact rational segment predicates; the margin is the
    minimum distance between parts of the curve that are far apart in arc
    length.  A margin below 10x the polyline resolution yields an undecided
    verdict.
    """
    if max(m.max_metric_residual, m.max_C_residual) > residual_tol:
        raise ReconstructionError("meridian residuals too large for an embeddedness verdict")
    gen = fit_orbit_generator(m)
    kap = np.sort(np.abs(gen.kappa))
    notes = ""
    if gen.fit_residual > 1e-6:
        notes += f"orbit-generator fit residual {gen.fit_residual:.2e}; "
    if kap[1] < 0.5 or kap[0] > 0.05 * kap[1]:
        return EmbeddednessResult(None, 0.0, 0.0, 0, gen,
                                  notes + f"degenerate orbit eigenvalues {gen.kappa}")
    curve = orbit_space_curve(m, gen)
    report = polyline_self_intersection_report(curve)
    if report.crossings > 0:
        return EmbeddednessResult(False, report.margin, report.resolution,
                                  report.crossings, gen, notes + "transverse self-intersection")
    if report.margin < 10.0 * report.resolution:
        return EmbeddednessResult(None, report.margin, report.resolution, 0, gen,
                                  notes + "margin below 10x resolution; refine grid")
    return EmbeddednessResult(True, report.margin, report.resolution, 0, gen, notes)
