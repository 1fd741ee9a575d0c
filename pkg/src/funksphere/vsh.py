"""Vector spherical harmonics, surface operators and vector multiplier actions.

Vector fields are stored spectrally in the normalized pure-spin basis
(:class:`~funksphere.coeffs.VectorCoeffs`).  On a grid they are stored by
their components in the local frame ``(e1, e2, xi)``, where
``e1 = d xi / d theta`` and ``e2 = (1/sin theta) d xi / d phi``.

The vector Funk-Minkowski transform and Hilbert-type convolution act on each
Cartesian component of a field; :func:`vec_funk` and :func:`vec_hilbert`
give the resulting action on pure-spin coefficients in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coeffs import ScalarCoeffs, VectorCoeffs
from .exceptions import BandLimitError, DomainError, GridMismatchError
from .grid import ScalarField, SphericalGrid, analysis, xyz_to_angles
from .legendre import iter_normalized_columns, legendre_zero_table

POLE_TOL = 1e-12


def _degrees(n_max: int) -> np.ndarray:
    return np.arange(n_max + 1, dtype=float)[:, None]


def _sqrt_nn1(n_max: int) -> np.ndarray:
    N = _degrees(n_max)
    return np.sqrt(N * (N + 1))


def _safe_div(a: np.ndarray, s: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a)
    np.divide(a, s, out=out, where=np.broadcast_to(s != 0, a.shape))
    return out


def frame_vectors(theta, phi) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Cartesian ``(e1, e2, xi)`` with the vector index last."""
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    st, ct, sp, cp = np.sin(theta), np.cos(theta), np.sin(phi), np.cos(phi)
    e1 = np.stack([ct * cp, ct * sp, -st], axis=-1)
    e2 = np.stack([-sp, cp, np.zeros_like(sp)], axis=-1)
    xi = np.stack([st * cp, st * sp, ct], axis=-1)
    return e1, e2, xi


# --------------------------------------------------------------------------
# point evaluation


def _frame_components(vc: VectorCoeffs, theta: np.ndarray, phi: np.ndarray):
    n = vc.n_max
    s = _sqrt_nn1(n)
    b2 = _safe_div(vc.c2.data, s)
    b3 = _safe_div(vc.c3.data, s)
    a1 = vc.c1.data
    v1 = np.zeros(theta.shape, dtype=complex)
    v2 = np.zeros_like(v1)
    v3 = np.zeros_like(v1)
    active = [m for m in range(n + 1)
              if any(c[:, n + m].any() or c[:, n - m].any() for c in (a1, b2, b3))]
    for col in iter_normalized_columns(n, theta, orders=active):
        m = col.m
        phase = (-1.0) ** m
        for ell in ((m, -m) if m else (0,)):
            sigma = phase if ell >= 0 else 1.0
            e = np.exp(1j * ell * phi)
            k = n + ell
            y = np.tensordot(a1[:, k], col.value, axes=1)
            d2 = np.tensordot(b2[:, k], col.dtheta, axes=1)
            d3 = np.tensordot(b3[:, k], col.dtheta, axes=1)
            o2 = np.tensordot(b2[:, k], col.over_sine, axes=1)
            o3 = np.tensordot(b3[:, k], col.over_sine, axes=1)
            v1 += sigma * e * (d2 - 1j * ell * o3)
            v2 += sigma * e * (1j * ell * o2 + d3)
            v3 += sigma * e * y
    return v1, v2, v3


def eval_vector_points(vc: VectorCoeffs, theta, phi) -> np.ndarray:
    """Cartesian values of a pure-spin series, shape ``theta.shape + (3,)``.

    Pole-safe: the ``1/sin(theta)`` factors are carried analytically.
    """
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    v1, v2, v3 = _frame_components(vc, theta, phi)
    e1, e2, xi = frame_vectors(theta, phi)
    return v1[..., None] * e1 + v2[..., None] * e2 + v3[..., None] * xi


def eval_vector_xyz(vc: VectorCoeffs, xyz) -> np.ndarray:
    theta, phi = xyz_to_angles(xyz)
    return eval_vector_points(vc, theta, phi)


def eval_vsh(kind: int, N: int, ell: int, theta: float, phi: float) -> np.ndarray:
    """Unnormalized pure-spin harmonic ``y^(kind)_{N ell}`` as a Cartesian 3-vector.

    ``y1 = xi Y``, ``y2 = grad Y`` and ``y3 = xi x grad Y``.
    """
    if kind not in (1, 2, 3):
        raise DomainError("kind must be 1, 2 or 3")
    if abs(ell) > N or N < 0 or (kind > 1 and N < 1):
        raise DomainError(f"no harmonic y{kind}_({N},{ell})")
    if abs(np.sin(theta)) < POLE_TOL:
        raise DomainError("pure-spin harmonics are evaluated off the poles")
    scale = 1.0 if kind == 1 else np.sqrt(N * (N + 1.0))
    vc = VectorCoeffs.unit(N, kind, N, ell, scale)
    return eval_vector_points(vc, np.array(theta), np.array(phi))


# --------------------------------------------------------------------------
# grid fields


@dataclass(frozen=True, eq=False)
class VectorField:
    """Vector field on a grid by local-frame components.

    ``v1``, ``v2`` multiply ``e1``, ``e2``; ``v3`` is the radial component,
    zero for tangent fields.
    """

    v1: np.ndarray
    v2: np.ndarray
    v3: np.ndarray
    grid: SphericalGrid

    def __post_init__(self):
        for v in (self.v1, self.v2, self.v3):
            if np.shape(v) != self.grid.shape:
                raise GridMismatchError("component shape does not match grid")

    @classmethod
    def tangent(cls, v1, v2, grid: SphericalGrid) -> "VectorField":
        return cls(np.asarray(v1), np.asarray(v2), np.zeros(grid.shape), grid)

    @classmethod
    def from_cartesian(cls, xyz_values, grid: SphericalGrid) -> "VectorField":
        """Project Cartesian values of shape ``(n_theta, n_phi, 3)`` on the frame."""
        th, ph = grid.mesh
        e1, e2, xi = frame_vectors(th, ph)
        vals = np.asarray(xyz_values)
        return cls(np.sum(vals * e1, -1), np.sum(vals * e2, -1), np.sum(vals * xi, -1), grid)

    def to_cartesian(self) -> np.ndarray:
        th, ph = self.grid.mesh
        e1, e2, xi = frame_vectors(th, ph)
        return self.v1[..., None] * e1 + self.v2[..., None] * e2 + self.v3[..., None] * xi

    def antipode(self) -> "VectorField":
        """Cartesian field ``v(-xi)`` expressed in the frame at ``xi``."""
        idx = self.grid.antipodal_index()
        return VectorField.from_cartesian(self.to_cartesian()[idx], self.grid)


def vector_inner_product(u: VectorField, v: VectorField) -> complex:
    """``int u . conj(v) d eta`` by grid quadrature."""
    if u.grid.shape != v.grid.shape:
        raise GridMismatchError("fields live on different grids")
    dot = u.v1 * np.conj(v.v1) + u.v2 * np.conj(v.v2) + u.v3 * np.conj(v.v3)
    return complex(np.sum(u.grid.area_weights * dot))


def vector_analysis(field: VectorField, band: int | None = None) -> VectorCoeffs:
    """Pure-spin coefficients ``(v, y1)``, ``(v, y2~)``, ``(v, y3~)`` by quadrature.

    Exact for fields whose pure-spin expansion is band-limited to the grid's
    ``n_max``.
    """
    grid = field.grid
    n = grid.n_max if band is None else band
    if n > grid.n_max:
        raise BandLimitError(f"grid resolves band {grid.n_max}, asked for {n}")
    c1 = analysis(ScalarField(field.v3, grid), n)
    w = grid.weights[:, None]
    V1 = np.fft.fft(np.asarray(field.v1, complex), axis=1) * grid.phi_step * w
    V2 = np.fft.fft(np.asarray(field.v2, complex), axis=1) * grid.phi_step * w
    tab = grid.tables
    c2 = np.zeros((n + 1, 2 * n + 1), dtype=complex)
    c3 = np.zeros_like(c2)
    for ell in range(-n, n + 1):
        m = abs(ell)
        sigma = 1.0 if ell >= 0 else (-1.0) ** m
        b = ell % grid.n_phi
        d, o = tab["dybar"][m, : n + 1], tab["yos"][m, : n + 1]
        c2[:, n + ell] = sigma * (d @ V1[:, b] - 1j * ell * (o @ V2[:, b]))
        c3[:, n + ell] = sigma * (1j * ell * (o @ V1[:, b]) + d @ V2[:, b])
    s = _sqrt_nn1(n)
    return VectorCoeffs(c1, ScalarCoeffs(_safe_div(c2, s)), ScalarCoeffs(_safe_div(c3, s)))


def vector_synthesis(vc: VectorCoeffs, grid: SphericalGrid) -> VectorField:
    """Local-frame components of a pure-spin series at every grid node."""
    n = vc.n_max
    if n > grid.n_max:
        raise BandLimitError(f"band {n} exceeds grid capacity {grid.n_max}")
    s = _sqrt_nn1(n)
    b2 = _safe_div(vc.c2.data, s)
    b3 = _safe_div(vc.c3.data, s)
    tab = grid.tables
    R1 = np.zeros(grid.shape, dtype=complex)
    R2 = np.zeros_like(R1)
    R3 = np.zeros_like(R1)
    for ell in range(-n, n + 1):
        m = abs(ell)
        sigma = 1.0 if ell >= 0 else (-1.0) ** m
        b = ell % grid.n_phi
        y = tab["ybar"][m, : n + 1].T
        d = tab["dybar"][m, : n + 1].T
        o = tab["yos"][m, : n + 1].T
        k = n + ell
        R1[:, b] += sigma * (d @ b2[:, k] - 1j * ell * (o @ b3[:, k]))
        R2[:, b] += sigma * (1j * ell * (o @ b2[:, k]) + d @ b3[:, k])
        R3[:, b] += sigma * (y @ vc.c1.data[:, k])
    scale = grid.n_phi
    return VectorField(np.fft.ifft(R1, axis=1) * scale, np.fft.ifft(R2, axis=1) * scale,
                       np.fft.ifft(R3, axis=1) * scale, grid)


# --------------------------------------------------------------------------
# surface differential operators, spectrally


def grad_coeffs(c: ScalarCoeffs) -> VectorCoeffs:
    """Surface gradient: ``grad u = sum sqrt(N(N+1)) u_{N ell} y2~``."""
    n = c.n_max
    return VectorCoeffs(ScalarCoeffs.zeros(n), ScalarCoeffs(c.data * _sqrt_nn1(n)),
                        ScalarCoeffs.zeros(n))


def curl_grad_coeffs(c: ScalarCoeffs) -> VectorCoeffs:
    """Rotated gradient ``xi x grad u`` in channel 3."""
    n = c.n_max
    return VectorCoeffs(ScalarCoeffs.zeros(n), ScalarCoeffs.zeros(n),
                        ScalarCoeffs(c.data * _sqrt_nn1(n)))


def div_coeffs(v: VectorCoeffs) -> ScalarCoeffs:
    """Surface divergence, including ``2 v^3`` from the radial part."""
    s = _sqrt_nn1(v.n_max)
    return ScalarCoeffs(2.0 * v.c1.data - s * v.c2.data)


def curl_coeffs(v: VectorCoeffs) -> ScalarCoeffs:
    """Scalar surface curl of the tangential part; the radial channel is ignored."""
    s = _sqrt_nn1(v.n_max)
    return ScalarCoeffs(-s * v.c3.data)


def laplace_beltrami_coeffs(c: ScalarCoeffs) -> ScalarCoeffs:
    return div_coeffs(grad_coeffs(c))


def dot_radial(v):
    """``xi . v``.  Coefficients in, coefficients out; grid field in, grid field out."""
    if isinstance(v, VectorField):
        return ScalarField(v.v3, v.grid)
    return v.c1.copy()


def cross_radial(v):
    """``xi x v``: kills the radial part and rotates ``y2 -> y3``, ``y3 -> -y2``."""
    if isinstance(v, VectorField):
        return VectorField(-v.v2, v.v1, np.zeros_like(v.v3), v.grid)
    return VectorCoeffs(ScalarCoeffs.zeros(v.n_max), -v.c3, v.c2.copy())


def radial_coeffs(c: ScalarCoeffs) -> VectorCoeffs:
    """The radial field ``xi u``."""
    n = c.n_max
    return VectorCoeffs(c.copy(), ScalarCoeffs.zeros(n), ScalarCoeffs.zeros(n))


# --------------------------------------------------------------------------
# pure-orbit view


@dataclass
class PureOrbitCoeffs:
    """Coefficients over unnormalized ``h^(i)``, ``h^(e)`` and ``y3``.

    ``h^(i)_N = N y1 + y2`` and ``h^(e)_N = -(N+1) y1 + y2`` for ``N >= 1``;
    ``h^(e)_00 = -y1_00`` and there is no ``h^(i)_00``.
    """

    internal: ScalarCoeffs
    external: ScalarCoeffs
    toroidal: ScalarCoeffs


def to_pure_orbit(v: VectorCoeffs) -> PureOrbitCoeffs:
    n = v.n_max
    N = _degrees(n)
    s = _sqrt_nn1(n)
    a1 = v.c1.data
    b2 = _safe_div(v.c2.data, s)
    internal = (a1 + (N + 1) * b2) / (2 * N + 1)
    external = (-a1 + N * b2) / (2 * N + 1)
    internal[0] = 0.0
    external[0] = -a1[0]
    return PureOrbitCoeffs(ScalarCoeffs(internal), ScalarCoeffs(external),
                           ScalarCoeffs(_safe_div(v.c3.data, s)))


def from_pure_orbit(p: PureOrbitCoeffs) -> VectorCoeffs:
    n = p.internal.n_max
    N = _degrees(n)
    s = _sqrt_nn1(n)
    ci, ce = p.internal.data, p.external.data
    a1 = N * ci - (N + 1) * ce
    b2 = ci + ce
    b2[0] = 0.0
    return VectorCoeffs(ScalarCoeffs(a1), ScalarCoeffs(s * b2), ScalarCoeffs(s * p.toroidal.data))


# --------------------------------------------------------------------------
# componentwise F and S in the pure-spin basis


def _closed_form_factors(n_max: int):
    N = np.arange(n_max + 1, dtype=float)
    p0 = legendre_zero_table(n_max + 1)
    return N, p0


def vec_funk(v: VectorCoeffs) -> VectorCoeffs:
    """Componentwise Funk-Minkowski transform of a vector field.

    Odd ``N``:  ``F y1 = P_{N-1}(0) y2 / (N+1)`` and
    ``F y2 = P_{N-1}(0) (N y1 + y2/(N+1))``.  Even ``N``: ``F y3 = P_N(0) y3``.
    Every other channel is annihilated.
    """
    n = v.n_max
    N, p0 = _closed_form_factors(n)
    s = np.sqrt(N * (N + 1))
    out1 = np.zeros_like(v.c1.data)
    out2 = np.zeros_like(out1)
    out3 = np.zeros_like(out1)
    for k in range(1, n + 1, 2):
        pm = p0[k - 1]
        a1 = v.c1.data[k]
        b2 = v.c2.data[k] / s[k]
        out1[k] = pm * k * b2
        out2[k] = s[k] * pm * (a1 + b2) / (k + 1)
    for k in range(2, n + 1, 2):
        out3[k] = p0[k] * v.c3.data[k]
    return VectorCoeffs(ScalarCoeffs(out1), ScalarCoeffs(out2), ScalarCoeffs(out3))


def vec_hilbert(v: VectorCoeffs) -> VectorCoeffs:
    """Componentwise Hilbert-type convolution of a vector field.

    ``S y1_00 = y1_00``.  Even ``N >= 2``: ``S y1 = -y2 / (P_N(0) N(N+1))`` and
    ``S y2 = -(y1 + y2/(N(N+1))) / P_N(0)``.  Odd ``N``:
    ``S y3 = y3 / (N P_{N-1}(0))``.  Every other channel is annihilated.
    """
    n = v.n_max
    N, p0 = _closed_form_factors(n)
    s = np.sqrt(N * (N + 1))
    out1 = np.zeros_like(v.c1.data)
    out2 = np.zeros_like(out1)
    out3 = np.zeros_like(out1)
    out1[0] = v.c1.data[0]
    for k in range(2, n + 1, 2):
        a1 = v.c1.data[k]
        b2 = v.c2.data[k] / s[k]
        out1[k] = -b2 / p0[k]
        out2[k] = -s[k] * (a1 + b2) / (p0[k] * k * (k + 1))
    for k in range(1, n + 1, 2):
        out3[k] = v.c3.data[k] / (k * p0[k - 1])
    return VectorCoeffs(ScalarCoeffs(out1), ScalarCoeffs(out2), ScalarCoeffs(out3))
