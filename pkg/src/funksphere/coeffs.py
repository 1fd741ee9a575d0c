"""Triangular coefficient tables for scalar and vector fields."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import BandLimitError, DomainError


def _valid_mask(n_max: int) -> np.ndarray:
    N = np.arange(n_max + 1)[:, None]
    ell = np.arange(-n_max, n_max + 1)[None, :]
    return np.abs(ell) <= N


class ScalarCoeffs:
    """Spherical harmonic coefficients ``u_{N ell}`` for ``0 <= N <= n_max``.

    Stored as a dense complex array of shape ``(n_max + 1, 2 n_max + 1)``;
    column ``ell + n_max`` holds order ``ell``.  Entries with ``|ell| > N`` are
    kept at zero.
    """

    __slots__ = ("data",)

    def __init__(self, data):
        data = np.array(data, dtype=complex)
        if data.ndim != 2 or data.shape[1] != 2 * data.shape[0] - 1:
            raise BandLimitError(f"bad coefficient array shape {data.shape}")
        data[~_valid_mask(data.shape[0] - 1)] = 0.0
        self.data = data

    @property
    def n_max(self) -> int:
        return self.data.shape[0] - 1

    @classmethod
    def zeros(cls, n_max: int) -> "ScalarCoeffs":
        if n_max < 0:
            raise BandLimitError("band limit must be non-negative")
        return cls(np.zeros((n_max + 1, 2 * n_max + 1), dtype=complex))

    @classmethod
    def unit(cls, n_max: int, N: int, ell: int, value: complex = 1.0) -> "ScalarCoeffs":
        """Coefficients of ``value * Y_{N ell}``."""
        out = cls.zeros(n_max)
        out[N, ell] = value
        return out

    @classmethod
    def random(cls, n_max: int, rng: np.random.Generator, real: bool = True,
               zero_mean: bool = False) -> "ScalarCoeffs":
        """Standard normal coefficients; ``real=True`` enforces real-field symmetry."""
        shape = (n_max + 1, 2 * n_max + 1)
        data = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        out = cls(data)
        if real:
            out = out.real_part()
        if zero_mean:
            out.data[0, n_max] = 0.0
        return out

    def __getitem__(self, key):
        N, ell = key
        if not 0 <= N <= self.n_max or abs(ell) > N:
            raise DomainError(f"no coefficient ({N}, {ell}) at band limit {self.n_max}")
        return self.data[N, ell + self.n_max]

    def __setitem__(self, key, value):
        N, ell = key
        if not 0 <= N <= self.n_max or abs(ell) > N:
            raise DomainError(f"no coefficient ({N}, {ell}) at band limit {self.n_max}")
        self.data[N, ell + self.n_max] = value

    def copy(self) -> "ScalarCoeffs":
        return ScalarCoeffs(self.data.copy())

    def entries(self):
        """Iterate ``(N, ell, value)`` over the triangle in degree-major order."""
        n = self.n_max
        for N in range(n + 1):
            for ell in range(-N, N + 1):
                yield N, ell, self.data[N, ell + n]

    def _check(self, other):
        if not isinstance(other, ScalarCoeffs):
            return NotImplemented
        if other.n_max != self.n_max:
            raise BandLimitError(f"band limits differ: {self.n_max} vs {other.n_max}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return ScalarCoeffs(self.data + other.data)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return ScalarCoeffs(self.data - other.data)

    def __neg__(self):
        return ScalarCoeffs(-self.data)

    def __mul__(self, scalar):
        if isinstance(scalar, ScalarCoeffs):
            return NotImplemented
        return ScalarCoeffs(self.data * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return ScalarCoeffs(self.data / scalar)

    def __repr__(self):
        return f"ScalarCoeffs(n_max={self.n_max})"

    def degree_norms(self) -> np.ndarray:
        """``sqrt(sum_ell |u_{N ell}|^2)`` for every degree."""
        return np.sqrt(np.sum(np.abs(self.data) ** 2, axis=1))

    def norm(self) -> float:
        """L2 norm of the represented field (Parseval)."""
        return float(np.sqrt(np.sum(np.abs(self.data) ** 2)))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data))) if self.data.size else 0.0

    def truncate(self, cutoff: int) -> "ScalarCoeffs":
        """Zero all degrees above ``cutoff`` (band limit unchanged)."""
        out = self.copy()
        out.data[max(cutoff + 1, 0):] = 0.0
        return out

    def resized(self, n_max: int) -> "ScalarCoeffs":
        """Copy at another band limit, padding with zeros or dropping degrees."""
        out = ScalarCoeffs.zeros(n_max)
        k = min(n_max, self.n_max)
        out.data[: k + 1, n_max - k: n_max + k + 1] = \
            self.data[: k + 1, self.n_max - k: self.n_max + k + 1]
        return out

    def conjugate_partner(self) -> "ScalarCoeffs":
        """Coefficients of the complex-conjugate field."""
        n = self.n_max
        sign = (-1.0) ** np.abs(np.arange(-n, n + 1))
        return ScalarCoeffs(np.conj(self.data[:, ::-1]) * sign[None, :])

    def real_part(self) -> "ScalarCoeffs":
        """Coefficients of the real part of the represented field."""
        return ScalarCoeffs(0.5 * (self.data + self.conjugate_partner().data))

    def is_real(self, tol: float = 1e-12) -> bool:
        """Check ``u_{N,-ell} = (-1)^ell conj(u_{N ell})``."""
        return bool(np.all(np.abs(self.data - self.conjugate_partner().data) <= tol))

    def parity_parts(self) -> tuple["ScalarCoeffs", "ScalarCoeffs"]:
        """Split into (even-degree, odd-degree) coefficient tables."""
        even, odd = self.copy(), self.copy()
        even.data[1::2] = 0.0
        odd.data[0::2] = 0.0
        return even, odd


@dataclass
class VectorCoeffs:
    """Pure-spin expansion ``c1 y1 + c2 y2~ + c3 y3~`` of a vector field.

    ``y1 = xi Y`` is radial; ``y2~ = grad Y / sqrt(N(N+1))`` and
    ``y3~ = xi x grad Y / sqrt(N(N+1))`` are the normalized tangential
    channels, which have no degree-zero member.
    """

    c1: ScalarCoeffs
    c2: ScalarCoeffs
    c3: ScalarCoeffs

    def __post_init__(self):
        if not (self.c1.n_max == self.c2.n_max == self.c3.n_max):
            raise BandLimitError("channel band limits differ")
        if self.c2.data[0].any() or self.c3.data[0].any():
            raise DomainError("tangential channels have no degree-zero entry")

    @property
    def n_max(self) -> int:
        return self.c1.n_max

    @property
    def channels(self) -> tuple[ScalarCoeffs, ScalarCoeffs, ScalarCoeffs]:
        return self.c1, self.c2, self.c3

    @classmethod
    def zeros(cls, n_max: int) -> "VectorCoeffs":
        return cls(ScalarCoeffs.zeros(n_max), ScalarCoeffs.zeros(n_max),
                   ScalarCoeffs.zeros(n_max))

    @classmethod
    def unit(cls, n_max: int, channel: int, N: int, ell: int,
             value: complex = 1.0) -> "VectorCoeffs":
        out = cls.zeros(n_max)
        out.channels[channel - 1][N, ell] = value
        return out

    @classmethod
    def random_tangent(cls, n_max: int, rng: np.random.Generator,
                       real: bool = True) -> "VectorCoeffs":
        c2 = ScalarCoeffs.random(n_max, rng, real=real, zero_mean=True)
        c3 = ScalarCoeffs.random(n_max, rng, real=real, zero_mean=True)
        return cls(ScalarCoeffs.zeros(n_max), c2, c3)

    def copy(self) -> "VectorCoeffs":
        return VectorCoeffs(self.c1.copy(), self.c2.copy(), self.c3.copy())

    def __add__(self, other):
        return VectorCoeffs(self.c1 + other.c1, self.c2 + other.c2, self.c3 + other.c3)

    def __sub__(self, other):
        return VectorCoeffs(self.c1 - other.c1, self.c2 - other.c2, self.c3 - other.c3)

    def __neg__(self):
        return VectorCoeffs(-self.c1, -self.c2, -self.c3)

    def __mul__(self, scalar):
        return VectorCoeffs(self.c1 * scalar, self.c2 * scalar, self.c3 * scalar)

    __rmul__ = __mul__

    def norm(self) -> float:
        return float(np.sqrt(sum(c.norm() ** 2 for c in self.channels)))

    def max_abs(self) -> float:
        return max(c.max_abs() for c in self.channels)

    def truncate(self, cutoff: int) -> "VectorCoeffs":
        return VectorCoeffs(*(c.truncate(cutoff) for c in self.channels))

    def entries(self):
        """Iterate ``(channel, N, ell, value)``; channels 2 and 3 start at N=1."""
        for k, c in enumerate(self.channels, start=1):
            for N, ell, value in c.entries():
                if k > 1 and N == 0:
                    continue
                yield k, N, ell, value
