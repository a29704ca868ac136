"""Area/volume profiles of the two CMC families and candidate ranking.

Tori have closed-form profiles.  For spheres the area comes from the
meridian quadrature and the enclosed volume from the first-variation
identity dA = 2H dV, integrated from the half-volume minimal sphere:
differentiating the area integrand in u = H^2 removes the H = 0
singularity of dA/(2H) entirely, since

    dV/dH = d(area)/du |_{u = H^2} = 2 pi Int cosh^2 x
            ((1-a) - (u+a) cosh^2 x) / den^3 dx.

The isoperimetric candidate at a prescribed volume is the least-area
stable member of the two families; for 1/3 <= a < 1 that settles the
isoperimetric problem, below 1/3 it is a ranking of the known candidates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from .ambient import as_alpha, total_volume
from .cmc_spheres import area_sphere, area_sphere_closed, minimal_area_closed
from .stability import classify_sphere
from .tori import classify_torus, torus_area_volume

SPHERE = "Sphere"
TORUS = "Torus"


@dataclass
class IsoperimetricProfile:
    family: str
    alpha: float
    H: np.ndarray
    area: np.ndarray
    volume: np.ndarray
    monotone: bool = True
    notes: str = ""
    _area_interp: PchipInterpolator | None = field(default=None, repr=False)
    _vol_interp: PchipInterpolator | None = field(default=None, repr=False)

    def area_at(self, H: float) -> float:
        return float(self._area_interp(H))

    def volume_at(self, H: float) -> float:
        return float(self._vol_interp(H))

    def invert_volume(self, V: float) -> list[float]:
        """All H on the grid range with volume(H) = V (several if non-monotone)."""
        out = []
        vals = self.volume - V
        for i in range(len(vals) - 1):
            if vals[i] == 0.0:
                out.append(float(self.H[i]))
            elif vals[i] * vals[i + 1] < 0.0:
                out.append(brentq(lambda h: self.volume_at(h) - V,
                                  self.H[i], self.H[i + 1], xtol=1e-12))
        if vals[-1] == 0.0:
            out.append(float(self.H[-1]))
        return out

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write("family,H,area,volume\n")
            for h, a, v in zip(self.H, self.area, self.volume):
                fh.write(f"{self.family},{float(h)!r},{float(a)!r},{float(v)!r}\n")


def _graded_grid(H_max: float, n: int) -> np.ndarray:
    s = np.linspace(0.0, 1.0, n)
    return H_max * s**2


def sphere_volume_rate(alpha: float, H: float) -> float:
    """dV/dH along the sphere family (negative where volume shrinks)."""
    u = H * H

    def integrand(x):
        c2 = math.cosh(x) ** 2
        den = (1.0 - alpha) + (u + alpha) * c2
        return c2 * ((1.0 - alpha) - (u + alpha) * c2) / den**3

    val, _ = quad(integrand, 0.0, 25.0, epsabs=1e-13, epsrel=1e-11, limit=200)
    return 4.0 * math.pi * val  # even integrand


def sphere_profile(p, H_max: float = 20.0, n: int = 400,
                   H_grid=None) -> IsoperimetricProfile:
    """Sphere-family profile on a graded H grid, volumes from the
    first-variation ODE anchored at V(0) = pi^2 sqrt(a)."""
    a = as_alpha(p)
    if H_max <= 0 or n < 50:
        raise ValueError("need H_max > 0 and n >= 50")
    if H_grid is not None:
        H = np.asarray(H_grid, dtype=float)
        if H[0] != 0.0 or np.any(np.diff(H) <= 0):
            raise ValueError("H_grid must increase from 0")
        H_max = float(H[-1])
    else:
        H = _graded_grid(H_max, n)
    area = np.array([area_sphere(a, h) for h in H])

    sol = solve_ivp(lambda h, v: [sphere_volume_rate(a, h)],
                    (0.0, H_max), [math.pi**2 * math.sqrt(a)],
                    method="DOP853", t_eval=H, rtol=1e-10, atol=1e-12)
    if not sol.success:
        raise RuntimeError(f"volume ODE failed: {sol.message}")
    vol = sol.y[0]

    rate = np.array([sphere_volume_rate(a, h) for h in H])
    monotone = bool(np.all(rate <= 1e-12))
    notes = ""
    if not monotone:
        inc = H[rate > 1e-12]
        notes = (f"volume is not monotone in H (increasing near H in "
                 f"[{inc.min():.3f}, {inc.max():.3f}]): noncongruent spheres "
                 f"enclose equal volumes")
    prof = IsoperimetricProfile(family=SPHERE, alpha=a, H=H, area=area, volume=vol,
                                monotone=monotone, notes=notes)
    prof._area_interp = PchipInterpolator(H, area)
    prof._vol_interp = PchipInterpolator(H, vol)
    return prof


def torus_area_volume_closed(alpha: float, H) -> tuple[np.ndarray, np.ndarray]:
    H = np.asarray(H, dtype=float)
    area = 2.0 * math.pi**2 * np.sqrt(alpha / (1.0 + H**2))
    vol = math.pi**2 * math.sqrt(alpha) * (1.0 - H / np.sqrt(1.0 + H**2))
    return area, vol


def torus_profile(p, H_max: float = 20.0, n: int = 400) -> IsoperimetricProfile:
    """Torus-family profile; closed forms, dA = 2H dV holds identically."""
    a = as_alpha(p)
    if H_max <= 0 or n < 50:
        raise ValueError("need H_max > 0 and n >= 50")
    H = _graded_grid(H_max, n)
    area, vol = torus_area_volume_closed(a, H)
    prof = IsoperimetricProfile(family=TORUS, alpha=a, H=H, area=area, volume=vol)
    prof._area_interp = PchipInterpolator(H, area)
    prof._vol_interp = PchipInterpolator(H, vol)
    return prof


def torus_H_at_volume(alpha: float, V: float) -> float:
    """Invert the torus volume closed form on the smaller-volume branch."""
    half = math.pi**2 * math.sqrt(alpha)
    if not 0.0 < V <= half:
        raise ValueError("torus volumes cover (0, half-total]")
    s = 1.0 - V / half
    return s / math.sqrt(1.0 - s**2)


def clifford_vs_minimal_sphere(p) -> tuple[float, float, str]:
    """Areas of the two half-volume candidates and the smaller one's family.

    The Clifford torus T_a(0) and the minimal sphere S_a(0) both bound half
    the total volume; returns (torus area, sphere area, winner).
    """
    a = as_alpha(p)
    a_torus = 2.0 * math.pi**2 * math.sqrt(a)
    a_sphere = area_sphere_closed(a, 0.0)
    return a_torus, a_sphere, (SPHERE if a_sphere <= a_torus else TORUS)


def crossing_alpha(validate: bool = True) -> float:
    """The deformation where minimal sphere and Clifford torus have equal area.

    Root of 2 pi^2 sqrt(a) = 2 pi (1 + a artanh(sqrt(1-a))/sqrt(1-a)) on
    (0, 1/3); near 0.166.  The closed form side is re-validated against the
    area quadrature at the root.
    """
    def f(a):
        return 2.0 * math.pi**2 * math.sqrt(a) - minimal_area_closed(a)

    root = brentq(f, 1e-6, 1.0 / 3.0, xtol=1e-12, rtol=8.9e-16)
    if validate:
        quadr = area_sphere(root, 0.0)
        if abs(quadr - minimal_area_closed(root)) > 1e-6 * quadr:
            raise RuntimeError("closed-form area disagrees with quadrature at the root")
    return root


@dataclass
class CandidateReport:
    family: str
    H: float
    area: float
    volume: float
    alpha: float
    complemented: bool
    candidates: list
    notes: str


def isoperimetric_candidate(p, V: float, profile: IsoperimetricProfile | None = None,
                            H_max: float = 20.0, n: int = 400) -> CandidateReport:
    """Least-area stable CMC candidate enclosing volume V.

    A surface encloses V either directly or as the boundary of the
    complementary region, so both V and total - V are inverted on each
    family (at small alpha the sphere volumes overshoot half of the total,
    which makes the two sides genuinely different).  Only stability-passing
    members compete; for a < 1/3 the ranking is reported as such (the two
    families are the known candidates, not a proven exhaustive list).
    """
    a = as_alpha(p)
    total = total_volume(a)
    if not 0.0 < V < total:
        raise ValueError(f"volume must lie in (0, {total}), got {V}")

    prof = profile if profile is not None else sphere_profile(a, H_max=H_max, n=n)
    notes = []
    if prof.notes:
        notes.append(prof.notes)

    candidates = []
    for side, vtarget in (("direct", V), ("complement", total - V)):
        for H in prof.invert_volume(vtarget):
            if side == "complement" and any(
                    c["family"] == SPHERE and abs(c["H"] - H) < 1e-11
                    for c in candidates):
                continue  # V = total/2: both sides find the same surface
            verdict = classify_sphere(a, H)
            candidates.append({"family": SPHERE, "H": H, "area": prof.area_at(H),
                               "side": side, "stable": verdict.stable,
                               "margin": verdict.margin})
    half = math.pi**2 * math.sqrt(a)
    Vh = min(V, total - V)
    if Vh <= half:
        Ht = torus_H_at_volume(a, Vh)
        verdict = classify_torus(a, Ht)
        area_t, _ = torus_area_volume(a, Ht)
        candidates.append({"family": TORUS, "H": Ht, "area": area_t,
                           "side": "direct" if V <= half else "complement",
                           "stable": verdict.stable, "margin": verdict.margin})

    stable = [c for c in candidates if c["stable"]]
    if not stable:
        raise RuntimeError(f"no stable candidate found for V={V} at alpha={a}")
    best = min(stable, key=lambda c: c["area"])

    runners = sorted((c for c in stable if c is not best), key=lambda c: c["area"])
    if runners:
        r = runners[0]
        notes.append(f"other stable candidate: {r['family']} H={r['H']:.6f} "
                     f"area={r['area']:.6f}")
    if a < 1.0 / 3.0:
        notes.append("ranking of the known CMC candidates only; the solution of the "
                     "isoperimetric problem is established for 1/3 <= alpha < 1")
    if sum(1 for c in candidates if c["family"] == SPHERE) > 1:
        notes.append("noncongruent spheres enclose this volume")

    return CandidateReport(family=best["family"], H=best["H"], area=best["area"],
                           volume=V, alpha=a, complemented=best["side"] == "complement",
                           candidates=candidates, notes="; ".join(notes))


def round_cap_area_volume(r: float) -> tuple[float, float, float]:
    """Round-sphere oracle: geodesic sphere of radius r in the unit S^3.

    Returns (H, area, volume) = (cot r, 4 pi sin^2 r, pi (2r - sin 2r)).
    """
    return (1.0 / math.tan(r), 4.0 * math.pi * math.sin(r) ** 2,
            math.pi * (2.0 * r - math.sin(2.0 * r)))
