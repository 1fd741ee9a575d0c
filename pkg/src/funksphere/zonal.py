"""Fourier multiplier operators on the sphere.

A zonal operator acts diagonally on spherical harmonic coefficients,
``u_{N ell} -> lambda_N u_{N ell}``.  The Funk-Minkowski transform ``F`` and
the Hilbert-type convolution ``S`` are represented here by their exact
closed-form multipliers; quadrature realizations of the same operators live
in :mod:`funksphere.oracle` and are used only for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from .coeffs import ScalarCoeffs
from .exceptions import BandLimitError, DomainError, IllPosedError, KernelViolationError
from .legendre import legendre_poly, legendre_zero_table

PARITIES = ("all", "even", "odd")

KERNEL_TOL = 1e-8
MULTIPLIER_FLOOR = 1e-14


@dataclass(frozen=True, eq=False)
class MultiplierSpec:
    """Multiplier sequence ``lam[N]`` plus the parity class it acts on.

    ``parity`` is ``"even"`` or ``"odd"`` when the operator annihilates every
    degree of the other parity, ``"all"`` otherwise.
    """

    lam: np.ndarray
    parity: str = "all"

    def __post_init__(self):
        lam = np.asarray(self.lam, dtype=float)
        if self.parity not in PARITIES:
            raise DomainError(f"parity must be one of {PARITIES}")
        if not np.all(np.isfinite(lam)):
            raise DomainError("multipliers must be finite")
        if np.any(lam[~self.support()] != 0.0):
            raise DomainError("multipliers must vanish off the parity support")
        object.__setattr__(self, "lam", lam)

    @property
    def n_max(self) -> int:
        return self.lam.size - 1

    def support(self) -> np.ndarray:
        """Boolean mask of degrees the operator does not annihilate by parity."""
        N = np.arange(np.size(self.lam))
        if self.parity == "even":
            return N % 2 == 0
        if self.parity == "odd":
            return N % 2 == 1
        return np.ones(N.size, dtype=bool)

    def compose(self, other: "MultiplierSpec") -> "MultiplierSpec":
        """Multiplier of ``self o other``."""
        if other.n_max != self.n_max:
            raise BandLimitError("band limits differ")
        lam = self.lam * other.lam
        parity = self.parity if other.parity == "all" else other.parity
        if "all" not in (self.parity, other.parity) and self.parity != other.parity:
            parity = "all"  # disjoint supports, lam is identically zero
        return MultiplierSpec(lam, parity)

    def to_json_dict(self) -> dict:
        return {"parity": self.parity, "lambda": [float(x) for x in self.lam]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "MultiplierSpec":
        return cls(np.array(d["lambda"], dtype=float), d.get("parity", "all"))


def apply_multiplier(c: ScalarCoeffs, m: MultiplierSpec) -> ScalarCoeffs:
    """Return the coefficients ``lam_N u_{N ell}``."""
    if m.n_max != c.n_max:
        raise BandLimitError(f"multiplier band {m.n_max} vs coefficient band {c.n_max}")
    return ScalarCoeffs(c.data * m.lam[:, None])


def identity_spec(n_max: int) -> MultiplierSpec:
    return MultiplierSpec(np.ones(n_max + 1))


def funk_minkowski_spec(n_max: int) -> MultiplierSpec:
    """Funk-Minkowski transform: ``P_N(0)`` on even degrees, zero on odd."""
    return MultiplierSpec(legendre_zero_table(n_max), "even")


def hilbert_spec(n_max: int) -> MultiplierSpec:
    """Hilbert-type convolution: ``1 / (N P_{N-1}(0))`` on odd degrees."""
    p0 = legendre_zero_table(n_max)
    lam = np.zeros(n_max + 1)
    for N in range(1, n_max + 1, 2):
        lam[N] = 1.0 / (N * p0[N - 1])
    return MultiplierSpec(lam, "odd")


def laplace_beltrami_spec(n_max: int) -> MultiplierSpec:
    N = np.arange(n_max + 1, dtype=float)
    return MultiplierSpec(-N * (N + 1))


def _graded_nodes(order: int, levels: int) -> tuple[np.ndarray, np.ndarray]:
    # Gauss-Legendre on dyadic panels [2^-(k+1), 2^-k], k < levels, of [0, 1]
    x, w = leggauss(order)
    nodes, weights = [], []
    for k in range(levels):
        a, b = 2.0 ** -(k + 1), 2.0 ** -k
        nodes.append(0.5 * (b - a) * x + 0.5 * (b + a))
        weights.append(0.5 * (b - a) * w)
    return np.concatenate(nodes), np.concatenate(weights)


def legendre_moments(kernel: Callable, n_max: int, quad_order: int | None = None,
                     singular_at_zero: bool = False) -> np.ndarray:
    """``int_{-1}^{1} K(t) P_N(t) dt`` for ``N = 0..n_max``.

    Smooth kernels use one Gauss-Legendre rule of ``quad_order`` nodes on
    ``[-1, 1]``.  With ``singular_at_zero`` the integral is folded onto
    ``[0, 1]`` (``P_N(-t) = (-1)^N P_N(t)``) and evaluated on dyadically graded
    panels of ``quad_order`` nodes each, which resolves integrable endpoint
    singularities such as ``ln t`` to near machine precision.
    """
    order = quad_order if quad_order is not None else max(n_max + 1, 2)
    if order < n_max + 1:
        raise DomainError("quad_order must be at least n_max + 1")
    if singular_at_zero:
        t, w = _graded_nodes(order, levels=48)
        plus = np.asarray(kernel(t), dtype=float)
        minus = np.asarray(kernel(-t), dtype=float)
        if not (np.all(np.isfinite(plus)) and np.all(np.isfinite(minus))):
            raise DomainError("kernel is not finite at a quadrature node")
        out = np.empty(n_max + 1)
        for N in range(n_max + 1):
            pn = legendre_poly(N, t)
            out[N] = np.sum(w * pn * (plus + (-1) ** N * minus))
        return out
    t, w = leggauss(order)
    k = np.asarray(kernel(t), dtype=float)
    if not np.all(np.isfinite(k)):
        raise DomainError("kernel is not finite at a quadrature node")
    return np.array([np.sum(w * k * legendre_poly(N, t)) for N in range(n_max + 1)])


def funk_hecke_spec(kernel: Callable, n_max: int, quad_order: int | None = None,
                    singular_at_zero: bool = False, parity: str = "all") -> MultiplierSpec:
    """Multipliers ``2 pi int K(t) P_N(t) dt`` of the convolution ``u -> int K(xi.eta) u(eta)``."""
    lam = 2.0 * math.pi * legendre_moments(kernel, n_max, quad_order, singular_at_zero)
    if parity != "all":
        mask = np.arange(n_max + 1) % 2 == (0 if parity == "even" else 1)
        lam[~mask] = 0.0
    return MultiplierSpec(lam, parity)


def log_kernel_spec(n_max: int, quad_order: int = 24) -> MultiplierSpec:
    """Convolution with ``ln|t| / (4 pi)``; the kernel of the logarithmic Funk inversion."""
    return funk_hecke_spec(lambda t: np.log(np.abs(t)) / (4.0 * math.pi), n_max,
                           quad_order=max(quad_order, n_max + 1), singular_at_zero=True)


def kernel_mass(c: ScalarCoeffs, m: MultiplierSpec) -> float:
    """L2 mass of ``c`` on degrees the multiplier annihilates by parity."""
    off = ~m.support()
    return float(np.sqrt(np.sum(np.abs(c.data[off]) ** 2)))


def pseudo_inverse(m: MultiplierSpec, c: ScalarCoeffs, kernel_tol: float = KERNEL_TOL,
                   floor: float = MULTIPLIER_FLOOR) -> ScalarCoeffs:
    """Undo a multiplier on its parity support.

    Raises
    ------
    KernelViolationError
        If ``c`` has more than ``kernel_tol`` L2 mass on annihilated degrees.
    IllPosedError
        If a multiplier on the support is smaller than ``floor`` in magnitude.
    """
    if m.n_max != c.n_max:
        raise BandLimitError(f"multiplier band {m.n_max} vs coefficient band {c.n_max}")
    mass = kernel_mass(c, m)
    if mass > kernel_tol:
        raise KernelViolationError(f"input has mass {mass:.3e} on annihilated degrees")
    support = m.support()
    small = support & (np.abs(m.lam) < floor)
    if small.any():
        raise IllPosedError(f"multiplier vanishes at degrees {np.flatnonzero(small).tolist()}")
    inv = np.zeros_like(m.lam)
    inv[support] = 1.0 / m.lam[support]
    return ScalarCoeffs(c.data * inv[:, None])


def mean_term(c: ScalarCoeffs) -> ScalarCoeffs:
    """Coefficients of the constant ``(1/4pi) int u``, i.e. only ``u_{00}`` kept."""
    out = ScalarCoeffs.zeros(c.n_max)
    out.data[0, c.n_max] = c.data[0, c.n_max]
    return out
