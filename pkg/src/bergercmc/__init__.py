"""CMC sphere and Hopf torus stability theory of the Berger spheres.

Closed-form fundamental data and spectra, Koiso stability classification,
flat-torus lattice spectra, region constants, and isoperimetric profiles.
"""

from .ambient import (AmbientPoint, AmbientVector, BergerParam, ContractViolation,
                      hopf_project, killing_field, metric_eval, total_volume)
from .cmc_spheres import (MeridianProfile, SphereFundamentalData, area_sphere,
                          fundamental_data, gauss_curvature, integrability_residual,
                          is_embedded, reconstruct_meridian)
from .isoperimetry import (IsoperimetricProfile, clifford_vs_minimal_sphere,
                           crossing_alpha, isoperimetric_candidate, sphere_profile,
                           torus_profile)
from .regions import (F_nonnegative, alpha_root, critical_constants, poly_eval,
                      stability_integrand)
from .stability import (SpectrumResult, StabilityVerdict, alpha0, classify_sphere,
                        jacobi_potential_flat, jacobi_spectrum, koiso_integral,
                        koiso_solution, sphere_stability_boundary)
from .tori import (LatticeBasis, TorusData, classify_torus, lambda1_closed_form,
                   lattice_and_dual, torus_area_volume, torus_data, torus_spectrum)

__version__ = "0.1.0"

__all__ = [
    "AmbientPoint", "AmbientVector", "BergerParam", "ContractViolation",
    "hopf_project", "killing_field", "metric_eval", "total_volume",
    "MeridianProfile", "SphereFundamentalData", "area_sphere", "fundamental_data",
    "gauss_curvature", "integrability_residual", "is_embedded", "reconstruct_meridian",
    "IsoperimetricProfile", "clifford_vs_minimal_sphere", "crossing_alpha",
    "isoperimetric_candidate", "sphere_profile", "torus_profile",
    "F_nonnegative", "alpha_root", "critical_constants", "poly_eval",
    "stability_integrand",
    "SpectrumResult", "StabilityVerdict", "alpha0", "classify_sphere",
    "jacobi_potential_flat", "jacobi_spectrum", "koiso_integral", "koiso_solution",
    "sphere_stability_boundary",
    "LatticeBasis", "TorusData", "classify_torus", "lambda1_closed_form",
    "lattice_and_dual", "torus_area_volume", "torus_data", "torus_spectrum",
    "__version__",
]
