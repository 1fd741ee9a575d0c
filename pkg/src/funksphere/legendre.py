"""Legendre polynomials and fully normalized associated Legendre functions.

Everything here is evaluated by three-term recurrences. The normalization
constant of the spherical harmonics is folded into the associated Legendre
recurrence, so no factorial ratio is ever formed.

Conventions
-----------
``P^m_N(t) = (1 - t^2)^{m/2} d^m/dt^m P_N(t)`` carries no Condon-Shortley
phase.  The normalized functions returned by :func:`assoc_legendre_normalized`
and :func:`iter_normalized_columns` are ``N_{Nm} P^m_N`` with
``N_{Nm} = sqrt((2N+1)/(4 pi) (N-m)!/(N+m)!)``.  The phase ``(-1)^m`` is
applied only when forming ``Y_{Nm}``.
"""

from __future__ import annotations

import math
from typing import Iterator, NamedTuple

import numpy as np

from .exceptions import DomainError

_DOMAIN_SLACK = 1e-12


def _check_unit_interval(t):
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0 + _DOMAIN_SLACK):
        raise DomainError("argument must satisfy |t| <= 1")
    return np.clip(t, -1.0, 1.0)


def legendre_poly(N: int, t):
    """Legendre polynomial ``P_N(t)`` by the degree recurrence.

    Accepts a scalar or an array for ``t``; returns the same shape.

    >>> legendre_poly(2, 0.0)
    -0.5
    """
    if N < 0:
        raise DomainError("degree must be non-negative")
    t = _check_unit_interval(t)
    p_prev = np.ones_like(t)
    if N == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p = t.copy()
    for k in range(1, N):
        p_prev, p = p, ((2 * k + 1) * t * p - k * p_prev) / (k + 1)
    return p if p.ndim else float(p)


def legendre_zero(N: int) -> float:
    """``P_N(0)``: zero for odd ``N``, ``(-1)^j (2j-1)!!/(2j)!!`` for ``N = 2j``."""
    if N < 0:
        raise DomainError("degree must be non-negative")
    if N % 2:
        return 0.0
    value = 1.0
    for j in range(1, N // 2 + 1):
        value *= -(2 * j - 1) / (2 * j)
    return value


def legendre_zero_table(n_max: int) -> np.ndarray:
    """Array of ``P_N(0)`` for ``N = 0..n_max``."""
    out = np.zeros(n_max + 1)
    value = 1.0
    out[0] = 1.0
    for N in range(2, n_max + 1, 2):
        value *= -(N - 1) / N
        out[N] = value
    return out


def gegenbauer_three_halves_zero(N: int) -> float:
    """``C^{(3/2)}_{N-1}(0) = N P_{N-1}(0)`` for odd ``N``.

    Even ``N`` is rejected: the value would only ever multiply a channel the
    Hilbert-type convolution annihilates.
    """
    if N < 1 or N % 2 == 0:
        raise DomainError("only odd degrees N >= 1 are supported")
    return N * legendre_zero(N - 1)


def _mm_constant(m: int) -> float:
    # N_mm * (2m-1)!!, built as a running product
    a = 1.0 / (4.0 * math.pi)
    for k in range(1, m + 1):
        a *= (2 * k + 1) / (2 * k)
    return math.sqrt(a)


class LegendreColumn(NamedTuple):
    """Normalized functions of one order ``m`` for degrees ``0..n_max``.

    Rows with ``N < m`` are zero.  ``over_sine`` holds ``value / sin(theta)``
    (finite at the poles for ``m >= 1``; zero for ``m = 0`` where it is never
    needed) and ``dtheta`` the colatitude derivative.
    """

    m: int
    value: np.ndarray
    dtheta: np.ndarray
    over_sine: np.ndarray


def _column(m: int, n_max: int, t: np.ndarray, seed: np.ndarray) -> np.ndarray:
    out = np.zeros((n_max + 1,) + t.shape)
    if m > n_max:
        return out
    out[m] = seed
    if m + 1 <= n_max:
        out[m + 1] = math.sqrt(2 * m + 3) * t * seed
    for N in range(m + 2, n_max + 1):
        a = math.sqrt((4.0 * N * N - 1.0) / (N * N - m * m))
        b = math.sqrt(((N - 1.0) ** 2 - m * m) / (4.0 * (N - 1.0) ** 2 - 1.0))
        out[N] = a * (t * out[N - 1] - b * out[N - 2])
    return out


def normalized_column(m: int, n_max: int, theta, with_sine_powers=None):
    """``N_{Nm} P^m_N(cos theta)`` for ``N = 0..n_max`` (rows below ``m`` zero)."""
    theta = np.asarray(theta, dtype=float)
    t, s = np.cos(theta), np.abs(np.sin(theta))
    power = m if with_sine_powers is None else with_sine_powers
    return _column(m, n_max, t, _mm_constant(m) * s**power)


def iter_normalized_columns(n_max: int, theta, orders=None,
                            derivatives: bool = True) -> Iterator[LegendreColumn]:
    """Yield :class:`LegendreColumn` for each requested order ``m >= 0``.

    With ``derivatives=False`` only ``value`` is filled (the other two fields
    are ``None``), which is all a scalar series needs.

    The derivative uses ``dP/dtheta = (N t P_N - c_{Nm} P_{N-1}) / sin(theta)``
    evaluated on the ``over_sine`` column for ``m >= 1``, and
    ``dP^0_N/dtheta = -sqrt(N(N+1)) P^1_N`` for ``m = 0``; neither divides by
    ``sin(theta)`` explicitly, so poles are safe.
    """
    theta = np.asarray(theta, dtype=float)
    t = np.cos(theta)
    degrees = np.arange(n_max + 1, dtype=float).reshape((-1,) + (1,) * t.ndim)
    if orders is None:
        orders = range(n_max + 1)
    for m in orders:
        value = normalized_column(m, n_max, theta)
        if not derivatives:
            yield LegendreColumn(m, value, None, None)
            continue
        if m == 0:
            first = normalized_column(1, n_max, theta)
            dtheta = -np.sqrt(degrees * (degrees + 1)) * first
            over_sine = np.zeros_like(value)
        else:
            over_sine = normalized_column(m, n_max, theta, with_sine_powers=m - 1)
            dtheta = degrees * t * over_sine
            for N in range(m + 1, n_max + 1):
                c = math.sqrt((2.0 * N + 1) / (2.0 * N - 1) * (N + m) * (N - m))
                dtheta[N] -= c * over_sine[N - 1]
        yield LegendreColumn(m, value, dtheta, over_sine)


def assoc_legendre_normalized(N: int, m: int, t):
    """``N_{Nm} P^m_N(t)`` for ``0 <= m <= N`` and ``|t| <= 1``."""
    if not 0 <= m <= N:
        raise DomainError("order must satisfy 0 <= m <= N")
    t = _check_unit_interval(t)
    s = np.sqrt(np.maximum(0.0, 1.0 - t * t))
    value = _column(m, N, t, _mm_constant(m) * s**m)[N]
    return value if value.ndim else float(value)


def sph_harmonic(N: int, ell: int, theta, phi):
    """Complex spherical harmonic ``Y_{N ell}(theta, phi)`` with Condon-Shortley phase.

    Negative orders follow ``Y_{N,-m} = (-1)^m conj(Y_{N m})``.
    """
    if abs(ell) > N:
        raise DomainError("|ell| must not exceed N")
    m = abs(ell)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    pbar = normalized_column(m, N, theta)[N]
    value = (-1.0) ** m * pbar * np.exp(1j * m * phi)
    if ell < 0:
        value = (-1.0) ** m * np.conj(value)
    return value if value.ndim else complex(value)
