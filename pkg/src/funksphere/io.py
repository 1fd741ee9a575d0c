"""Plain-text coefficient files and JSON grid/report files.

Scalar files start with ``shcoeff v1 N_max=<n>`` followed by one
``N ell re im`` record per nonzero coefficient.  Vector files start with
``vshcoeff v1 N_max=<n>`` and hold ``channel N ell re im`` records.  Floats
are written with ``repr`` so a write/read cycle is bit-exact.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .coeffs import ScalarCoeffs, VectorCoeffs
from .exceptions import FileFormatError
from .grid import SphericalGrid

_HEADER = re.compile(r"^(shcoeff|vshcoeff) v1 N_max=(\d+)\s*$")


def _fmt(x: float) -> str:
    return repr(float(x))


def format_shcoeff(c: ScalarCoeffs) -> str:
    lines = [f"shcoeff v1 N_max={c.n_max}"]
    for N, ell, z in c.entries():
        if z != 0:
            lines.append(f"{N} {ell} {_fmt(z.real)} {_fmt(z.imag)}")
    return "\n".join(lines) + "\n"


def format_vshcoeff(v: VectorCoeffs) -> str:
    lines = [f"vshcoeff v1 N_max={v.n_max}"]
    for k, N, ell, z in v.entries():
        if z != 0:
            lines.append(f"{k} {N} {ell} {_fmt(z.real)} {_fmt(z.imag)}")
    return "\n".join(lines) + "\n"


def _parse(text: str, kind: str, source: str):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise FileFormatError(f"{source}: empty file")
    m = _HEADER.match(lines[0].strip())
    if not m or m.group(1) != kind:
        raise FileFormatError(f"{source}: expected a '{kind} v1 N_max=<n>' header")
    n_max = int(m.group(2))
    width = 4 if kind == "shcoeff" else 5
    records = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != width:
            raise FileFormatError(f"{source}:{lineno}: expected {width} fields")
        try:
            ints = [int(p) for p in parts[: width - 2]]
            re_, im_ = float(parts[-2]), float(parts[-1])
        except ValueError as exc:
            raise FileFormatError(f"{source}:{lineno}: {exc}") from None
        records.append((lineno, ints, complex(re_, im_)))
    return n_max, records


def _store(c: ScalarCoeffs, N: int, ell: int, z: complex, where: str, seen: set, key):
    if not (0 <= N <= c.n_max and abs(ell) <= N):
        raise FileFormatError(f"{where}: no coefficient ({N}, {ell}) at band {c.n_max}")
    if key in seen:
        raise FileFormatError(f"{where}: duplicate record")
    seen.add(key)
    c[N, ell] = z


def parse_shcoeff(text: str, source: str = "<string>") -> ScalarCoeffs:
    n_max, records = _parse(text, "shcoeff", source)
    c, seen = ScalarCoeffs.zeros(n_max), set()
    for lineno, (N, ell), z in records:
        _store(c, N, ell, z, f"{source}:{lineno}", seen, (N, ell))
    return c


def parse_vshcoeff(text: str, source: str = "<string>") -> VectorCoeffs:
    n_max, records = _parse(text, "vshcoeff", source)
    chans, seen = [ScalarCoeffs.zeros(n_max) for _ in range(3)], set()
    for lineno, (k, N, ell), z in records:
        where = f"{source}:{lineno}"
        if k not in (1, 2, 3):
            raise FileFormatError(f"{where}: channel must be 1, 2 or 3")
        if k > 1 and N == 0:
            raise FileFormatError(f"{where}: tangential channels start at N=1")
        _store(chans[k - 1], N, ell, z, where, seen, (k, N, ell))
    return VectorCoeffs(*chans)


def write_shcoeff(path, c: ScalarCoeffs) -> None:
    Path(path).write_text(format_shcoeff(c))


def read_shcoeff(path) -> ScalarCoeffs:
    return parse_shcoeff(Path(path).read_text(), str(path))


def write_vshcoeff(path, v: VectorCoeffs) -> None:
    Path(path).write_text(format_vshcoeff(v))


def read_vshcoeff(path) -> VectorCoeffs:
    return parse_vshcoeff(Path(path).read_text(), str(path))


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n")


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: {exc}") from None


def write_grid_json(path, grid: SphericalGrid) -> None:
    write_json(path, grid.to_json_dict())


def read_grid_json(path) -> SphericalGrid:
    d = read_json(path)
    try:
        return SphericalGrid.from_json_dict(d)
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"{path}: bad grid record ({exc})") from None
