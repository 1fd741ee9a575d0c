"""Recovery of a function from ``F f`` and ``F grad f``, and the Helmholtz-Hodge
potentials of a tangent field written through ``F`` and ``S``.

Every composition is spectral.  Grid quadrature only enters through
:func:`forward_quadrature`, which simulates data with the direct oracles.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from ._parallel import max_workers
from .coeffs import ScalarCoeffs, VectorCoeffs
from .exceptions import (BandLimitError, InconsistentDataWarning, KernelViolationError,
                         NonTangentialError, SubspaceViolationError)
from .grid import analysis, make_grid
from .oracle import funk_direct_grid, funk_direct_vector_grid
from .vsh import (_safe_div, _sqrt_nn1, cross_radial, dot_radial, grad_coeffs,
                  vec_funk, vec_hilbert, vector_analysis)
from .zonal import (apply_multiplier, funk_minkowski_spec, hilbert_spec, kernel_mass,
                    KERNEL_TOL, laplace_beltrami_spec, log_kernel_spec, mean_term,
                    pseudo_inverse)

RESIDUAL_TOL = 1e-8
TANGENT_TOL = 1e-10


@dataclass
class FMPair:
    """Data ``g = F f`` and ``h = F grad f`` (componentwise F)."""

    g: ScalarCoeffs
    h: VectorCoeffs

    def __post_init__(self):
        if self.g.n_max != self.h.n_max:
            raise BandLimitError(f"g has band {self.g.n_max}, h has band {self.h.n_max}")

    @property
    def n_max(self) -> int:
        return self.g.n_max


@dataclass
class HodgePair:
    """Potentials with ``f = grad u + xi x grad v``; both carry zero mean."""

    u: ScalarCoeffs
    v: ScalarCoeffs


def _funk(c: ScalarCoeffs) -> ScalarCoeffs:
    return apply_multiplier(c, funk_minkowski_spec(c.n_max))


def _hilbert(c: ScalarCoeffs) -> ScalarCoeffs:
    return apply_multiplier(c, hilbert_spec(c.n_max))


def forward_spectral(f: ScalarCoeffs) -> FMPair:
    """Exact data pair of ``f`` by multiplier arithmetic."""
    return FMPair(_funk(f), vec_funk(grad_coeffs(f)))


def forward_quadrature(f: ScalarCoeffs, n_omega: int | None = None) -> FMPair:
    """Data pair of ``f`` from great-circle quadrature at the grid nodes.

    ``g`` and the Cartesian components of ``F grad f`` are computed by
    :func:`~funksphere.oracle.funk_direct` at every node and then analysed.
    """
    grid = make_grid(f.n_max)
    g = analysis(funk_direct_grid(f, grid, n_omega))
    h = vector_analysis(funk_direct_vector_grid(grad_coeffs(f), grid, n_omega))
    return FMPair(g, h)


def even_part(g: ScalarCoeffs) -> ScalarCoeffs:
    """``mean(g) - xi . S grad g``: the even part of ``f`` from ``g = F f``."""
    return mean_term(g) - dot_radial(vec_hilbert(grad_coeffs(g)))


def odd_part(h: VectorCoeffs) -> ScalarCoeffs:
    """``S(eta . h)``: the odd part of ``f`` from ``h = F grad f``."""
    return _hilbert(dot_radial(h))


def data_residuals(f: ScalarCoeffs, pair: FMPair) -> dict[str, float]:
    """L2 coefficient misfit of ``f`` against both halves of the data."""
    fit = forward_spectral(f)
    return {"g": (fit.g - pair.g).norm(), "h": (fit.h - pair.h).norm()}


def _check_consistency(f: ScalarCoeffs, pair: FMPair, tol: float) -> None:
    res = data_residuals(f, pair)
    scale = max(1.0, pair.g.norm() + pair.h.norm())
    if max(res.values()) > tol * scale:
        warnings.warn(
            f"data pair is not generated by one function: residuals g={res['g']:.3e}, "
            f"h={res['h']:.3e}", InconsistentDataWarning, stacklevel=3)


def reconstruct_full(pair: FMPair, cutoff: int | None = None,
                     tol: float = RESIDUAL_TOL) -> ScalarCoeffs:
    """Recover ``f`` from ``(F f, F grad f)``.

    Parameters
    ----------
    pair : FMPair
        The data.  Inconsistent data still produce an answer, with an
        :class:`InconsistentDataWarning` when the misfit exceeds ``tol``.
    cutoff : int, optional
        Discard degrees above ``cutoff`` before inverting (noise control).
    tol : float
        Relative residual threshold for the consistency warning.
    """
    g, h = pair.g, pair.h
    if cutoff is not None:
        g, h = g.truncate(cutoff), h.truncate(cutoff)
    f = even_part(g) + odd_part(h)
    _check_consistency(f, FMPair(g, h), tol)
    return f


def reconstruct_commutator(pair: FMPair) -> ScalarCoeffs:
    """Single-formula recovery through the commutator ``[F, grad] f = h - grad g``.

    ``f = mean(g) + S(eta . c) + xi . S c`` with ``c = h - grad g``.
    """
    c = pair.h - grad_coeffs(pair.g)
    return mean_term(pair.g) + _hilbert(dot_radial(c)) + dot_radial(vec_hilbert(c))


def reconstruct_batch(pairs: Iterable[FMPair], **kwargs) -> list[ScalarCoeffs]:
    """:func:`reconstruct_full` over independent inputs, in a thread pool."""
    pairs = list(pairs)
    with ThreadPoolExecutor(max_workers=max(1, min(max_workers(), len(pairs)))) as pool:
        return list(pool.map(lambda p: reconstruct_full(p, **kwargs), pairs))


def invert_even_spectral(g: ScalarCoeffs, kernel_tol: float = KERNEL_TOL) -> ScalarCoeffs:
    """Even ``f`` with ``F f = g``, by dividing by ``P_N(0)``."""
    return pseudo_inverse(funk_minkowski_spec(g.n_max), g, kernel_tol=kernel_tol)


def invert_even_rubin(g: ScalarCoeffs, kernel_tol: float = KERNEL_TOL,
                      quad_order: int = 24) -> ScalarCoeffs:
    """Even ``f`` with ``F f = g`` via the logarithmic kernel.

    ``f = mean(g) + Delta (ln|xi . eta| / 4pi) * g`` where ``*`` is the
    spherical convolution; the log-kernel multipliers come from quadrature.
    """
    spec = funk_minkowski_spec(g.n_max)
    mass = kernel_mass(g, spec)
    if mass > kernel_tol:
        raise KernelViolationError(f"input has odd mass {mass:.3e}")
    even, _ = g.parity_parts()
    op = laplace_beltrami_spec(g.n_max).compose(log_kernel_spec(g.n_max, quad_order))
    return mean_term(even) + apply_multiplier(even, op)


def _check_tangent(fvec: VectorCoeffs, tol: float) -> None:
    radial = fvec.c1.norm()
    if radial > tol * max(1.0, fvec.norm()):
        raise NonTangentialError(f"radial channel has mass {radial:.3e}")


def _zero_mean(c: ScalarCoeffs) -> ScalarCoeffs:
    c = c.copy()
    c.data[0] = 0.0
    return c


def helmholtz_hodge(fvec: VectorCoeffs, tol: float = TANGENT_TOL) -> HodgePair:
    """Potentials of a tangent field through ``F`` and ``S`` only.

    ``u = S(eta . F f) - F(eta . S f)`` and
    ``v = xi . S(eta x F f) - xi . F(eta x S f)``, gauge-fixed to zero mean.
    """
    _check_tangent(fvec, tol)
    Ff, Sf = vec_funk(fvec), vec_hilbert(fvec)
    u = _hilbert(dot_radial(Ff)) - _funk(dot_radial(Sf))
    v = (dot_radial(vec_hilbert(cross_radial(Ff)))
         - dot_radial(vec_funk(cross_radial(Sf))))
    return HodgePair(_zero_mean(u), _zero_mean(v))


def solve_surface_gradient(fvec: VectorCoeffs, tol: float = TANGENT_TOL) -> ScalarCoeffs:
    """Zero-mean ``u`` with ``grad u = fvec`` for a curl-free tangent field."""
    _check_tangent(fvec, tol)
    rot = fvec.c3.norm()
    if rot > tol * max(1.0, fvec.norm()):
        raise SubspaceViolationError(f"field has divergence-free mass {rot:.3e}")
    return helmholtz_hodge(fvec, tol).u


def hodge_oracle(fvec: VectorCoeffs) -> HodgePair:
    """Potentials by direct projection: ``u = c2 / sqrt(N(N+1))``, ``v = c3 / sqrt(N(N+1))``."""
    s = _sqrt_nn1(fvec.n_max)
    return HodgePair(ScalarCoeffs(_safe_div(fvec.c2.data, s)),
                     ScalarCoeffs(_safe_div(fvec.c3.data, s)))
