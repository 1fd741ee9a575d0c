"""Gauss-Legendre grids and the scalar spherical harmonic transform.

The grid has ``n_max + 1`` Gauss-Legendre colatitudes and ``2 n_max + 2``
equispaced longitudes.  The longitude count is even so that the grid is
closed under the antipodal map ``(theta, phi) -> (pi - theta, phi + pi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial.legendre import leggauss

from .coeffs import ScalarCoeffs
from .exceptions import BandLimitError, GridMismatchError
from .legendre import iter_normalized_columns


@dataclass(frozen=True, eq=False)
class SphericalGrid:
    """Gauss-Legendre colatitude nodes times equispaced longitudes.

    Attributes
    ----------
    n_max : int
        Band limit the grid resolves exactly.
    theta : ndarray
        Colatitudes in ascending order, strictly inside ``(0, pi)``.
    weights : ndarray
        Gauss-Legendre weights on ``t = cos(theta)``; they sum to 2.
    n_phi : int
        Number of longitudes.
    """

    n_max: int
    theta: np.ndarray
    weights: np.ndarray
    n_phi: int

    @property
    def n_theta(self) -> int:
        return self.theta.size

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_theta, self.n_phi

    @property
    def phi_step(self) -> float:
        return 2.0 * math.pi / self.n_phi

    @cached_property
    def phi(self) -> np.ndarray:
        return np.arange(self.n_phi) * self.phi_step

    @cached_property
    def t(self) -> np.ndarray:
        return np.cos(self.theta)

    @cached_property
    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """``(theta, phi)`` arrays broadcast to the grid shape."""
        return np.meshgrid(self.theta, self.phi, indexing="ij")

    @cached_property
    def points(self) -> np.ndarray:
        """Unit vectors at the nodes, shape ``(3, n_theta, n_phi)``."""
        th, ph = self.mesh
        return np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])

    @cached_property
    def area_weights(self) -> np.ndarray:
        """Quadrature weights for ``d eta`` at each node; they sum to ``4 pi``."""
        return np.broadcast_to(self.weights[:, None] * self.phi_step, self.shape)

    @cached_property
    def tables(self) -> dict[str, np.ndarray]:
        """Normalized Legendre data at the nodes, arrays indexed ``[m, N, j]``.

        ``ybar`` includes the Condon-Shortley phase, so that
        ``Y_{Nm} = ybar[m, N] * exp(i m phi)`` for ``m >= 0``.
        """
        n = self.n_max
        ybar = np.zeros((n + 1, n + 1, self.n_theta))
        dybar = np.zeros_like(ybar)
        yos = np.zeros_like(ybar)
        for col in iter_normalized_columns(n, self.theta):
            phase = (-1.0) ** col.m
            ybar[col.m] = phase * col.value
            dybar[col.m] = phase * col.dtheta
            yos[col.m] = phase * col.over_sine
        return {"ybar": ybar, "dybar": dybar, "yos": yos}

    def antipodal_index(self) -> tuple[np.ndarray, np.ndarray]:
        """Index arrays mapping each node to its antipode."""
        j = np.arange(self.n_theta)[::-1]
        k = (np.arange(self.n_phi) + self.n_phi // 2) % self.n_phi
        return np.ix_(j, k)

    def to_json_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "n_theta": self.n_theta,
            "n_phi": self.n_phi,
            "theta": [float(x) for x in self.theta],
            "gl_weights": [float(x) for x in self.weights],
            "phi_step": self.phi_step,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "SphericalGrid":
        return cls(int(d["n_max"]), np.array(d["theta"], dtype=float),
                   np.array(d["gl_weights"], dtype=float), int(d["n_phi"]))


def make_grid(n_max: int) -> SphericalGrid:
    """Grid of ``(n_max + 1) x (2 n_max + 2)`` nodes, exact up to band ``n_max``."""
    if n_max < 0:
        raise BandLimitError("band limit must be non-negative")
    x, w = leggauss(n_max + 1)
    # leggauss is ascending in t; flip so colatitude ascends
    t, w = x[::-1].copy(), w[::-1].copy()
    return SphericalGrid(n_max, np.arccos(t), w, 2 * n_max + 2)


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Point values of a scalar function on a :class:`SphericalGrid`."""

    values: np.ndarray
    grid: SphericalGrid

    def __post_init__(self):
        if np.shape(self.values) != self.grid.shape:
            raise GridMismatchError(
                f"values of shape {np.shape(self.values)} on grid {self.grid.shape}")

    @classmethod
    def from_function(cls, func, grid: SphericalGrid) -> "ScalarField":
        """Sample ``func(xyz)`` where ``xyz`` has shape ``(3, n_theta, n_phi)``."""
        return cls(np.asarray(func(grid.points)), grid)

    def antipode(self) -> "ScalarField":
        """The field ``f(-xi)``."""
        return ScalarField(self.values[self.grid.antipodal_index()], self.grid)


def _fft_orders(n_max: int, n_phi: int) -> np.ndarray:
    return np.arange(-n_max, n_max + 1) % n_phi


def analysis(f: ScalarField, band: int | None = None) -> ScalarCoeffs:
    """Coefficients ``(f, Y_{N ell})`` by longitude FFT then Gauss-Legendre sum.

    Exact for fields band-limited to the grid's ``n_max``.  A smaller ``band``
    returns the leading degrees only.
    """
    grid = f.grid
    band = grid.n_max if band is None else band
    if band > grid.n_max:
        raise BandLimitError(f"grid resolves band {grid.n_max}, asked for {band}")
    # sum_k f(phi_k) exp(-i m phi_k) dphi, per colatitude row
    fm = np.fft.fft(np.asarray(f.values, dtype=complex), axis=1) * grid.phi_step
    fm = fm[:, _fft_orders(band, grid.n_phi)] * grid.weights[:, None]
    ybar = grid.tables["ybar"][: band + 1, : band + 1]
    out = ScalarCoeffs.zeros(band)
    for m in range(band + 1):
        pos = ybar[m] @ fm[:, band + m]
        out.data[:, band + m] = pos
        if m:
            out.data[:, band - m] = (-1.0) ** m * (ybar[m] @ fm[:, band - m])
    return ScalarCoeffs(out.data)


def synthesis(c: ScalarCoeffs, grid: SphericalGrid) -> ScalarField:
    """Point values ``sum u_{N ell} Y_{N ell}`` at every grid node."""
    n = c.n_max
    if n > grid.n_max:
        raise BandLimitError(f"band {n} exceeds grid capacity {grid.n_max}")
    ybar = grid.tables["ybar"]
    rows = np.zeros((grid.n_theta, grid.n_phi), dtype=complex)
    for m in range(n + 1):
        col = ybar[m, : n + 1].T
        rows[:, m] += col @ c.data[:, n + m]
        if m:
            rows[:, (-m) % grid.n_phi] += (-1.0) ** m * (col @ c.data[:, n - m])
    return ScalarField(np.fft.ifft(rows, axis=1) * grid.n_phi, grid)


def inner_product(f: ScalarField, h: ScalarField) -> complex:
    """``(f, h) = int f conj(h) d eta`` by grid quadrature."""
    if f.grid is not h.grid and f.grid.shape != h.grid.shape:
        raise GridMismatchError("fields live on different grids")
    return complex(np.sum(f.grid.area_weights * f.values * np.conj(h.values)))


def eval_points(c: ScalarCoeffs, theta, phi) -> np.ndarray:
    """Direct summation of the series at arbitrary angles (arrays broadcast).

    Orders whose coefficients all vanish are skipped, which keeps single
    harmonic evaluations cheap.
    """
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    n = c.n_max
    out = np.zeros(theta.shape, dtype=complex)
    active = [m for m in range(n + 1)
              if c.data[:, n + m].any() or c.data[:, n - m].any()]
    for col in iter_normalized_columns(n, theta, orders=active, derivatives=False):
        m = col.m
        rows = np.flatnonzero((c.data[:, n + m] != 0) | (c.data[:, n - m] != 0))
        pbar = (-1.0) ** m * col.value[rows]
        pos = np.tensordot(c.data[rows, n + m], pbar, axes=1)
        out += pos * np.exp(1j * m * phi)
        if m:
            neg = np.tensordot(c.data[rows, n - m], pbar, axes=1)
            out += (-1.0) ** m * neg * np.exp(-1j * m * phi)
    return out


def eval_point(c: ScalarCoeffs, theta: float, phi: float) -> complex:
    """Value of the series at a single point."""
    return complex(eval_points(c, theta, phi))


def xyz_to_angles(xyz) -> tuple[np.ndarray, np.ndarray]:
    """Colatitude and longitude of (not necessarily unit) vectors ``xyz[..., 3]``."""
    xyz = np.asarray(xyz, dtype=float)
    x, y, z = xyz[..., 0], xyz[..., 1], xyz[..., 2]
    theta = np.arctan2(np.hypot(x, y), z)
    phi = np.arctan2(y, x)
    return theta, phi


def eval_xyz(c: ScalarCoeffs, xyz) -> np.ndarray:
    """Series values at Cartesian points ``xyz[..., 3]``."""
    theta, phi = xyz_to_angles(xyz)
    return eval_points(c, theta, phi)
