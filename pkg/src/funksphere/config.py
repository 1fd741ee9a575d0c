"""Experiment configuration and phantom/noise generation for the CLI."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .coeffs import ScalarCoeffs, VectorCoeffs
from .exceptions import FileFormatError
from .grid import ScalarField, analysis, make_grid
from .io import read_json

PHANTOMS = ("random-bandlimited", "harmonic", "gaussian-bump")
FORWARD_MODES = ("spectral", "quadrature")


class ConfigError(FileFormatError):
    """Invalid configuration value."""


def _parse_phantom(spec) -> tuple:
    if isinstance(spec, str):
        parts = spec.replace(",", " ").split()
    else:
        parts = [str(p) for p in spec]
    if not parts or parts[0] not in PHANTOMS:
        raise ConfigError(f"phantom must start with one of {PHANTOMS}")
    kind, args = parts[0], parts[1:]
    try:
        if kind == "random-bandlimited":
            if args:
                raise ConfigError("random-bandlimited takes no arguments")
            return (kind,)
        if kind == "harmonic":
            N, ell = (int(a) for a in args)
            return (kind, N, ell)
        theta0, phi0, width = (float(a) for a in args)
        if width <= 0:
            raise ConfigError("bump width must be positive")
        return (kind, theta0, phi0, width)
    except ValueError:
        raise ConfigError(f"bad phantom arguments {args!r} for {kind}") from None


@dataclass
class ExperimentConfig:
    n_max: int = 12
    seed: int = 0
    phantom: tuple = ("random-bandlimited",)
    noise_sigma: float = 0.0
    forward: str = "spectral"
    output_dir: str = "out"
    cutoff: int | None = None
    extra: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.phantom = _parse_phantom(self.phantom)

    def validate(self, min_n_max: int = 1) -> "ExperimentConfig":
        if not isinstance(self.n_max, int) or self.n_max < min_n_max:
            raise ConfigError(f"n_max must be an integer >= {min_n_max}")
        if not self.noise_sigma >= 0 or not math.isfinite(self.noise_sigma):
            raise ConfigError("noise_sigma must be finite and non-negative")
        if self.forward not in FORWARD_MODES:
            raise ConfigError(f"forward must be one of {FORWARD_MODES}")
        if self.cutoff is not None and not 0 <= self.cutoff <= self.n_max:
            raise ConfigError("cutoff must lie in [0, n_max]")
        if self.phantom[0] == "harmonic":
            _, N, ell = self.phantom
            if not (0 <= N <= self.n_max and abs(ell) <= N):
                raise ConfigError(f"harmonic ({N}, {ell}) outside band {self.n_max}")
        return self

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        d = read_json(path)
        if not isinstance(d, dict):
            raise ConfigError(f"{path}: config must be a JSON object")
        return cls.from_dict(d)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        names = {f.name for f in dataclasses.fields(cls)} - {"extra"}
        known = {k: v for k, v in d.items() if k in names}
        return cls(**known, extra={k: v for k, v in d.items() if k not in names})

    def with_overrides(self, **overrides) -> "ExperimentConfig":
        """Copy with every non-``None`` override applied."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **changes)

    def to_json_dict(self) -> dict:
        return {
            "n_max": self.n_max, "seed": self.seed, "phantom": list(self.phantom),
            "noise_sigma": self.noise_sigma, "forward": self.forward,
            "output_dir": str(self.output_dir), "cutoff": self.cutoff,
        }

    @property
    def out_path(self) -> Path:
        return Path(self.output_dir)


def make_phantom(cfg: ExperimentConfig, rng: np.random.Generator) -> ScalarCoeffs:
    """Band-limited ground truth described by ``cfg.phantom``."""
    kind = cfg.phantom[0]
    n = cfg.n_max
    if kind == "random-bandlimited":
        return ScalarCoeffs.random(n, rng, real=True)
    if kind == "harmonic":
        return ScalarCoeffs.unit(n, cfg.phantom[1], cfg.phantom[2])
    _, theta0, phi0, width = cfg.phantom
    centre = np.array([math.sin(theta0) * math.cos(phi0), math.sin(theta0) * math.sin(phi0),
                       math.cos(theta0)])
    grid = make_grid(n)
    # projection of the bump onto the band is the ground truth
    bump = ScalarField.from_function(
        lambda x: np.exp(-(1.0 - np.tensordot(centre, x, axes=1)) / width**2), grid)
    return analysis(bump)


def _noise_like(c: ScalarCoeffs, sigma: float, rng, zero_mean=False) -> ScalarCoeffs:
    rms = c.norm() / math.sqrt(max(1, np.count_nonzero(c.data)))
    return ScalarCoeffs.random(c.n_max, rng, real=True, zero_mean=zero_mean) * (sigma * rms)


def add_noise(g: ScalarCoeffs, h: VectorCoeffs, sigma: float, rng):
    """Real-field Gaussian noise scaled to the rms coefficient size of each channel."""
    if sigma == 0:
        return g, h
    g = g + _noise_like(g, sigma, rng)
    h = VectorCoeffs(h.c1 + _noise_like(h.c1, sigma, rng),
                     h.c2 + _noise_like(h.c2, sigma, rng, zero_mean=True),
                     h.c3 + _noise_like(h.c3, sigma, rng, zero_mean=True))
    return g, h
