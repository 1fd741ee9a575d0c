"""Quadrature realizations of the Funk-Minkowski transform and of the
Hilbert-type spherical convolution.

These are deliberately simple and slow.  They evaluate the defining integrals
directly from point values of the input and serve as independent checks of
the closed-form multipliers in :mod:`funksphere.zonal` and
:mod:`funksphere.vsh`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from ._parallel import chunked_map
from .coeffs import ScalarCoeffs, VectorCoeffs
from .exceptions import DomainError
from .grid import ScalarField, SphericalGrid, eval_xyz, xyz_to_angles
from .vsh import VectorField, eval_vector_xyz

POLE_TOL = 1e-12
EPS_SCHEDULE = (0.2, 0.1, 0.05, 0.025)
# the eps-truncation error of the symmetric p.v. integral is odd in eps
RICHARDSON_POWERS = (1, 3, 5)


@dataclass(frozen=True)
class LocalFrame:
    e1: np.ndarray
    e2: np.ndarray
    xi: np.ndarray


def frame_at(theta: float, phi: float) -> LocalFrame:
    """Moving triad at ``(theta, phi)``; undefined at the poles."""
    if abs(math.sin(theta)) < POLE_TOL:
        raise DomainError("the local frame is undefined at the poles")
    st, ct, sp, cp = math.sin(theta), math.cos(theta), math.sin(phi), math.cos(phi)
    return LocalFrame(np.array([ct * cp, ct * sp, -st]), np.array([-sp, cp, 0.0]),
                      np.array([st * cp, st * sp, ct]))


def _as_directions(xi) -> tuple[np.ndarray, bool]:
    xi = np.asarray(xi, dtype=float)
    single = xi.ndim == 1
    xi = np.atleast_2d(xi)
    if xi.shape[-1] != 3:
        raise DomainError("directions must be 3-vectors")
    return xi / np.linalg.norm(xi, axis=-1, keepdims=True), single


def transverse_basis(xi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal ``(e1, e2)`` spanning ``xi^perp`` for each row of ``xi``.

    Off the poles this is the moving triad.  At a pole, where the triad is
    undefined, a fixed basis with ``e1 x e2 = xi`` is used; the great-circle
    integrals do not depend on the choice.
    """
    theta, phi = xyz_to_angles(xi)
    st, ct, sp, cp = np.sin(theta), np.cos(theta), np.sin(phi), np.cos(phi)
    e1 = np.stack([ct * cp, ct * sp, -st], axis=-1)
    e2 = np.stack([-sp, cp, np.zeros_like(sp)], axis=-1)
    pole = st < POLE_TOL
    if pole.any():
        sign = np.sign(xi[pole, 2])
        e1[pole] = [1.0, 0.0, 0.0]
        e2[pole] = np.stack([np.zeros_like(sign), sign, np.zeros_like(sign)], axis=-1)
    return e1, e2


def _circle_average(evaluate: Callable, xi: np.ndarray, n_omega: int) -> np.ndarray:
    e1, e2 = transverse_basis(xi)
    omega = 2.0 * math.pi * np.arange(n_omega) / n_omega
    pts = (e1[:, None, :] * np.cos(omega)[None, :, None]
           + e2[:, None, :] * np.sin(omega)[None, :, None])
    return np.mean(evaluate(pts), axis=1)


def _check_n_omega(n_max: int, n_omega):
    if n_omega is None:
        return 2 * n_max + 2
    if n_omega < 2 * n_max + 2:
        raise DomainError(f"n_omega must be at least {2 * n_max + 2}")
    return n_omega


def funk_direct(c: ScalarCoeffs, xi, n_omega: int | None = None):
    """Great-circle average ``(1/2pi) int f(e1 cos w + e2 sin w) dw``.

    Trapezoid rule in ``w``, spectrally exact for band-limited ``f``.  ``xi``
    may be one direction or an array of shape ``(K, 3)``.
    """
    n_omega = _check_n_omega(c.n_max, n_omega)
    dirs, single = _as_directions(xi)
    out = chunked_map(lambda d: _circle_average(lambda p: eval_xyz(c, p), d, n_omega), dirs)
    return complex(out[0]) if single else out


def funk_direct_vector(v: VectorCoeffs, xi, n_omega: int | None = None):
    """Componentwise great-circle average of a vector field (Cartesian output)."""
    n_omega = _check_n_omega(v.n_max + 1, n_omega)
    dirs, single = _as_directions(xi)
    out = chunked_map(lambda d: _circle_average(lambda p: eval_vector_xyz(v, p), d, n_omega),
                      dirs)
    return out[0] if single else out


def funk_direct_grid(c: ScalarCoeffs, grid: SphericalGrid,
                     n_omega: int | None = None) -> ScalarField:
    """:func:`funk_direct` at every node of ``grid``."""
    dirs = np.moveaxis(grid.points, 0, -1).reshape(-1, 3)
    return ScalarField(funk_direct(c, dirs, n_omega).reshape(grid.shape), grid)


def funk_direct_vector_grid(v: VectorCoeffs, grid: SphericalGrid,
                            n_omega: int | None = None) -> VectorField:
    """:func:`funk_direct_vector` at every node, projected on the local frames."""
    dirs = np.moveaxis(grid.points, 0, -1).reshape(-1, 3)
    cart = funk_direct_vector(v, dirs, n_omega).reshape(grid.shape + (3,))
    return VectorField.from_cartesian(cart, grid)


def _pv_truncated(evaluate: Callable, xi: np.ndarray, eps: float, n_t: int,
                  n_psi: int) -> np.ndarray:
    # pairs the bands t and -t: int_eps^1 (F(t) - F(-t)) / t dt with F the
    # integral over the transverse circle at height t
    e1, e2 = transverse_basis(xi)
    x, w = leggauss(n_t)
    t = 0.5 * (1.0 - eps) * x + 0.5 * (1.0 + eps)
    w = 0.5 * (1.0 - eps) * w
    psi = 2.0 * math.pi * np.arange(n_psi) / n_psi
    ring = (e1[:, None, :] * np.cos(psi)[None, :, None]
            + e2[:, None, :] * np.sin(psi)[None, :, None])            # (K, P, 3)
    r = np.sqrt(1.0 - t * t)
    plus = (t[None, :, None, None] * xi[:, None, None, :]
            + r[None, :, None, None] * ring[:, None, :, :])           # (K, T, P, 3)
    minus = plus - 2.0 * t[None, :, None, None] * xi[:, None, None, :]
    f_plus = evaluate(plus).mean(axis=2) * 2.0 * math.pi
    f_minus = evaluate(minus).mean(axis=2) * 2.0 * math.pi
    weight = (w / t).reshape((1, -1) + (1,) * (f_plus.ndim - 2))
    return np.sum(weight * (f_plus - f_minus), axis=1) / (4.0 * math.pi)


def _pv_sizes(n_max: int, n_t, n_psi):
    return (n_t or n_max + 2), (n_psi or 2 * n_max + 2)


def hilbert_direct(c: ScalarCoeffs, xi, eps: float, n_t: int | None = None,
                   n_psi: int | None = None):
    """``(1/4pi) int_{|xi.eta| > eps} f(eta) / (xi.eta) d eta`` by quadrature.

    Gauss-Legendre in ``t = xi.eta`` on ``[eps, 1]`` with the ``t`` and ``-t``
    bands paired, and the trapezoid rule around each transverse circle.  The
    result is the eps-truncated value; see :func:`hilbert_extrapolated` for the
    principal value.
    """
    if not 0.0 < eps <= 0.5:
        raise DomainError("eps must lie in (0, 0.5]")
    n_t, n_psi = _pv_sizes(c.n_max, n_t, n_psi)
    dirs, single = _as_directions(xi)
    out = chunked_map(lambda d: _pv_truncated(lambda p: eval_xyz(c, p), d, eps, n_t, n_psi),
                      dirs, chunk=8)
    return complex(out[0]) if single else out


def hilbert_direct_vector(v: VectorCoeffs, xi, eps: float, n_t: int | None = None,
                          n_psi: int | None = None):
    """Componentwise eps-truncated Hilbert-type convolution (Cartesian output)."""
    if not 0.0 < eps <= 0.5:
        raise DomainError("eps must lie in (0, 0.5]")
    n_t, n_psi = _pv_sizes(v.n_max + 1, n_t, n_psi)
    dirs, single = _as_directions(xi)
    out = chunked_map(
        lambda d: _pv_truncated(lambda p: eval_vector_xyz(v, p), d, eps, n_t, n_psi),
        dirs, chunk=8)
    return out[0] if single else out


def richardson(eps: Sequence[float], values, powers: Sequence[int] = RICHARDSON_POWERS):
    """Extrapolate ``values(eps) = L + sum_k a_k eps^p_k`` to ``eps = 0``.

    Needs ``len(powers) + 1`` samples; ``values`` may carry trailing axes.
    """
    eps = np.asarray(eps, dtype=float)
    values = np.asarray(values)
    if eps.size != len(powers) + 1:
        raise DomainError("need one more sample than correction terms")
    A = np.column_stack([np.ones_like(eps)] + [eps**p for p in powers])
    flat = values.reshape(eps.size, -1)
    sol = np.linalg.solve(A, flat)
    return sol[0].reshape(values.shape[1:]) if values.ndim > 1 else sol[0, 0]


def hilbert_extrapolated(c: ScalarCoeffs, xi, schedule: Sequence[float] = EPS_SCHEDULE):
    """Principal value from :func:`hilbert_direct` over ``schedule`` plus Richardson."""
    vals = np.array([hilbert_direct(c, xi, e) for e in schedule])
    return richardson(schedule, vals, RICHARDSON_POWERS[: len(schedule) - 1])


def hilbert_extrapolated_vector(v: VectorCoeffs, xi,
                                schedule: Sequence[float] = EPS_SCHEDULE):
    vals = np.array([hilbert_direct_vector(v, xi, e) for e in schedule])
    return richardson(schedule, vals, RICHARDSON_POWERS[: len(schedule) - 1])
