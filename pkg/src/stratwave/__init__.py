"""Spectral tools for Helmholtz problems in stratified half-planes and their junctions.

Submodules
----------
profile       piecewise-constant wavenumber profiles and half-plane placement
twolayer      closed forms for a single interface
ode_spectral  generalized eigenfunctions, guided modes, resonances
gft           generalized Fourier transform
halfplane     half-plane fields from trace spectra
junction      transfer kernels, analyticity curves, uniqueness probe
"""
__version__ = "0.1.0"

from .errors import (BranchCutError, ConvergenceError, InvalidDensityError,  # noqa: E402
                     InvalidProfileError, InvalidTraceError, NearPoleWarning,
                     NotApplicableError, ResonancePoleError, SpectralDomainError,
                     StratwaveError, TruncationWarning)
from .profile import (HalfPlaneGeometry, StratifiedProfile, evaluate_k_sq,  # noqa: E402
                      load_profile, make_homogeneous, make_profile, make_square_well,
                      make_two_layer, profile_from_dict)
from .twolayer import beta, psi_two_layer, rho_weight, scattering_coefficients  # noqa: E402
from .ode_spectral import (Rectangle, assemble_eigenfunction, canonical_solutions,  # noqa: E402
                           eigenfunction_family, find_guided_modes, find_resonances,
                           robin_determinant)
from .quadrature import QuadratureSpec  # noqa: E402
from .gft import (GaussianPacket, SpectralCoefficients, SpectralDensity, Transform,  # noqa: E402
                  diagonalization_check, forward, inverse, plancherel_check)
from .halfplane import (GaussianBump, HalfPlaneField, ray_l1_norm, spectral_trace,  # noqa: E402
                        synthesize_solution)
from .junction import (JunctionConfig, analyticity_curves, make_junction,  # noqa: E402
                       transfer_general, transfer_right_angle, uniqueness_probe)
