"""Spherical harmonic toolkit for the Funk-Minkowski transform, the Hilbert-type
spherical convolution, and reconstruction from their data."""

from .coeffs import ScalarCoeffs, VectorCoeffs
from .exceptions import (BandLimitError, DomainError, FileFormatError, FunkSphereError,
                         GridMismatchError, IllPosedError, InconsistentDataWarning,
                         KernelViolationError, NonTangentialError, SubspaceViolationError)
from .grid import (ScalarField, SphericalGrid, analysis, eval_point, eval_points, eval_xyz,
                   inner_product, make_grid, synthesis)
from .legendre import (assoc_legendre_normalized, legendre_poly, legendre_zero,
                       sph_harmonic)
from .oracle import (frame_at, funk_direct, funk_direct_vector, hilbert_direct,
                     hilbert_direct_vector, hilbert_extrapolated, richardson)
from .reconstruct import (FMPair, HodgePair, forward_quadrature, forward_spectral,
                          helmholtz_hodge, hodge_oracle, invert_even_rubin,
                          invert_even_spectral, reconstruct_commutator, reconstruct_full,
                          solve_surface_gradient)
from .vsh import (PureOrbitCoeffs, VectorField, cross_radial, curl_coeffs, curl_grad_coeffs,
                  div_coeffs, dot_radial, eval_vector_points, eval_vsh, from_pure_orbit,
                  grad_coeffs, to_pure_orbit, vec_funk, vec_hilbert, vector_analysis,
                  vector_synthesis)
from .zonal import (MultiplierSpec, apply_multiplier, funk_hecke_spec, funk_minkowski_spec,
                    hilbert_spec, laplace_beltrami_spec, log_kernel_spec, pseudo_inverse)

__version__ = "0.1.0"
