"""The CMC Hopf tori T_a(H) = S^1(r1) x S^1(r2) and their stability.

For each H >= 0 there is one embedded CMC flat torus, with

    r1^2 = 1/2 + H / (2 sqrt(1 + H^2)),      r1^2 + r2^2 = 1.

Intrinsically it is R^2 / Lambda for an explicit lattice Lambda realizing
the induced metric; the Laplace spectrum is the set of squared norms of
the dual lattice, and the Jacobi operator is Delta + 4(H^2 + 1), so the
torus is stable iff the first nonzero eigenvalue lambda_1 is at least
4(H^2 + 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ambient import as_alpha
from .stability import LAMBDA1_GAP, StabilityVerdict


@dataclass(frozen=True)
class TorusData:
    alpha: float
    H: float
    r1: float
    r2: float
    metric: np.ndarray  # 2x2 induced metric in the (t, s) angles

    @property
    def det_metric(self) -> float:
        g = self.metric
        return float(g[0, 0] * g[1, 1] - g[0, 1] ** 2)


@dataclass(frozen=True)
class LatticeBasis:
    v1: np.ndarray
    v2: np.ndarray

    def matrix(self) -> np.ndarray:
        return np.column_stack([self.v1, self.v2])

    def gram(self) -> np.ndarray:
        B = self.matrix()
        return B.T @ B


def torus_data(p, H: float) -> TorusData:
    """Radii and induced metric of the CMC Hopf torus T_a(H)."""
    a = as_alpha(p)
    if H < 0:
        raise ValueError("mean curvature H must be nonnegative")
    r1sq = 0.5 + H / (2.0 * math.sqrt(1.0 + H**2))
    r2sq = 1.0 - r1sq
    g11 = r1sq * (1.0 - (1.0 - a) * r1sq)
    g22 = r2sq * (1.0 - (1.0 - a) * r2sq)
    g12 = -r1sq * r2sq * (1.0 - a)
    g = np.array([[g11, g12], [g12, g22]])
    return TorusData(alpha=a, H=float(H), r1=math.sqrt(r1sq), r2=math.sqrt(r2sq), metric=g)


def lattice_and_dual(t: TorusData) -> tuple[LatticeBasis, LatticeBasis]:
    """Basis (v1, v2) of the defining lattice (scaled by 2 pi) and its dual.

    The Gram matrix of (2 pi v1, 2 pi v2) is 4 pi^2 g, and <v_i, v_j*> =
    delta_ij, so the dual squared norms are the Laplace eigenvalues.
    """
    a = t.alpha
    r1, r2 = t.r1, t.r2
    x = 1.0 - (1.0 - a) * r1**2
    sx = math.sqrt(x)
    sa = math.sqrt(a)
    v1 = np.array([r1 * sx, 0.0])
    v2 = (r2 / sx) * np.array([-r1 * r2 * (1.0 - a), sa])
    v1s = (1.0 / sx) * np.array([1.0 / r1, r2 * (1.0 - a) / sa])
    v2s = np.array([0.0, sx / (r2 * sa)])
    return LatticeBasis(v1, v2), LatticeBasis(v1s, v2s)


@dataclass
class TorusSpectrum:
    """Sorted Laplace eigenvalues of the flat torus with multiplicities."""

    eigenvalues: np.ndarray
    multiplicities: np.ndarray
    lambda1: float
    cutoff: int
    shell_min: float  # smallest form value on the enumeration boundary

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write("lambda,multiplicity\n")
            for lam, m in zip(self.eigenvalues, self.multiplicities):
                fh.write(f"{float(lam)!r},{int(m)}\n")


class CutoffError(RuntimeError):
    """The enumeration box cannot certify lambda_1; enlarge N."""


def torus_spectrum(t: TorusData, N: int = 8, group_tol: float = 1e-9) -> TorusSpectrum:
    """Laplace spectrum {|m v1* + n v2*|^2} by brute-force dual enumeration.

    Certified: the minimum of the quadratic form on the continuous boundary
    of the [-N, N]^2 box bounds every lattice point outside the box, so the
    reported lambda_1 is exact once that minimum exceeds it.
    """
    if N < 3:
        raise ValueError("need enumeration cutoff N >= 3")
    _, dual = lattice_and_dual(t)
    G = dual.gram()  # |m v1* + n v2*|^2 = (m,n) G (m,n)^T
    m, n = np.meshgrid(np.arange(-N, N + 1), np.arange(-N, N + 1), indexing="ij")
    vals = (G[0, 0] * m**2 + 2.0 * G[0, 1] * m * n + G[1, 1] * n**2).ravel()
    vals.sort()

    # smallest value of the form on the boundary of the box (continuous)
    def edge_min(fixed, axis):
        # minimize Q(x, y) over y in [-N, N] with x = fixed (or swapped)
        aa = G[1, 1] if axis == 0 else G[0, 0]
        bb = G[0, 1] * fixed
        y = min(max(-bb / aa, -N), N)
        if axis == 0:
            return G[0, 0] * fixed**2 + 2 * G[0, 1] * fixed * y + G[1, 1] * y**2
        return G[0, 0] * y**2 + 2 * G[0, 1] * y * fixed + G[1, 1] * fixed**2

    shell = min(edge_min(N, 0), edge_min(-N, 0), edge_min(N, 1), edge_min(-N, 1))

    positive = vals[vals > group_tol]
    lambda1 = float(positive[0])
    if shell <= lambda1:
        raise CutoffError(
            f"boundary shell minimum {shell} does not exceed lambda_1 {lambda1}: increase N")

    uniq, counts = [], []
    for v in vals:
        if uniq and v - uniq[-1] < group_tol * max(1.0, uniq[-1]):
            counts[-1] += 1
        else:
            uniq.append(float(v))
            counts.append(1)
    return TorusSpectrum(eigenvalues=np.asarray(uniq), multiplicities=np.asarray(counts),
                         lambda1=lambda1, cutoff=N, shell_min=float(shell))


def torus_stability_threshold(alpha: float) -> float:
    """H*(a) = (1 - 3a) / (2 sqrt(a (1 - 2a))) for a <= 1/3 (else no stable H)."""
    if not 0.0 < alpha <= 1.0 / 3.0:
        raise ValueError("threshold defined for 0 < alpha <= 1/3")
    return (1.0 - 3.0 * alpha) / (2.0 * math.sqrt(alpha * (1.0 - 2.0 * alpha)))


def lambda1_closed_form(p, H: float) -> float:
    """First nonzero Laplace eigenvalue of T_a(H), two-branch closed form.

    The 4(H^2+1) branch applies for a <= 1/3 below the threshold H*(a);
    otherwise (including every a > 1/3) the dual-basis branch
    2 sqrt(H^2+1)/(H + sqrt(H^2+1)) + (1-a)/a applies.
    """
    a = as_alpha(p)
    if H < 0:
        raise ValueError("H must be nonnegative")
    if a <= 1.0 / 3.0 and H <= torus_stability_threshold(a):
        return 4.0 * (H**2 + 1.0)
    c = math.sqrt(H**2 + 1.0)
    return 2.0 * c / (H + c) + (1.0 - a) / a


def classify_torus(p, H: float) -> StabilityVerdict:
    """Jacobi operator Delta + 4(H^2+1): stable iff lambda_1 >= 4(H^2+1)."""
    a = as_alpha(p)
    lam1 = lambda1_closed_form(a, H)
    margin = lam1 - 4.0 * (H**2 + 1.0)
    return StabilityVerdict(stable=margin >= 0.0, margin=margin,
                            criterion=LAMBDA1_GAP, alpha=a, H=float(H))


def torus_area_volume(p, H: float) -> tuple[float, float]:
    """Area of T_a(H) and the volume of the smaller side it bounds.

    area = 2 pi^2 sqrt(a/(1+H^2)) (that is 4 pi^2 sqrt(det g)); the side
    {|z| >= r1} has g_a-volume sqrt(a) * 2 pi^2 (1 - r1^2) = 2 pi^2
    sqrt(a) r2^2, which is at most half of the total for H >= 0.
    """
    a = as_alpha(p)
    t = torus_data(a, H)
    area = 2.0 * math.pi**2 * math.sqrt(a / (1.0 + H**2))
    volume = 2.0 * math.pi**2 * math.sqrt(a) * t.r2**2
    return area, volume


def round_solid_torus_volume(s: float) -> float:
    """Round-metric volume of {|z|^2 >= s} in S^3: 2 pi^2 (1 - s)."""
    return 2.0 * math.pi**2 * (1.0 - s)
