"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict with the measured figure.  The
lines are printed as they are produced (visible with ``-s``) and repeated in
the terminal summary by ``conftest.py``.  ``python3 tests/test_acceptance.py``
runs just this module.
"""

import math
import time

import numpy as np

from funksphere.cli import main
from funksphere.coeffs import ScalarCoeffs, VectorCoeffs
from funksphere.grid import eval_xyz, make_grid, synthesis
from funksphere.legendre import legendre_zero
from funksphere.oracle import funk_direct, hilbert_extrapolated
from funksphere.reconstruct import (forward_quadrature, helmholtz_hodge, hodge_oracle,
                                    reconstruct_full)
from funksphere.vsh import vec_funk, vec_hilbert
from funksphere.zonal import funk_minkowski_spec, hilbert_spec, legendre_moments

RESULTS: list[str] = []


def _record(k: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {k} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    RESULTS.append(line)
    print(line)


def _dirs(k, rng):
    x = rng.standard_normal((k, 3))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def test_criterion_1_funk_multiplier_exactness():
    xi = _dirs(50, np.random.default_rng(101))
    t0 = time.perf_counter()
    worst = 0.0
    for N in range(0, 65, 2):
        p0 = legendre_zero(N)
        for ell in range(-N, N + 1):
            c = ScalarCoeffs.unit(N, N, ell)
            err = np.max(np.abs(funk_direct(c, xi) - p0 * eval_xyz(c, xi)))
            worst = max(worst, float(err))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 30.0
    _record(1, "funk_direct vs P_N(0) Y, even N <= 64", ok,
            f"max error {worst:.2e} (tol 1e-9), {elapsed:.1f} s (limit 30 s)")
    assert ok


def test_criterion_2_hilbert_oracle_convergence():
    xi = _dirs(20, np.random.default_rng(102))
    worst = 0.0
    for N in (1, 3, 5, 7):
        c = ScalarCoeffs.unit(N, N, 0)
        want = eval_xyz(c, xi) / (N * legendre_zero(N - 1))
        worst = max(worst, float(np.max(np.abs(hilbert_extrapolated(c, xi) - want))))
    ok = worst <= 1e-6
    _record(2, "extrapolated hilbert_direct on Y_N0, N in {1,3,5,7}", ok,
            f"max error {worst:.2e} (tol 1e-6)")
    assert ok


def test_criterion_3_reconstruction_round_trip():
    n = 16
    rng = np.random.default_rng(103)
    grid = make_grid(n)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        f = ScalarCoeffs.random(n, rng, real=True)
        est = reconstruct_full(forward_quadrature(f))
        worst = max(worst, float(np.max(np.abs(synthesis(est - f, grid).values))))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 120.0
    _record(3, "100 quadrature phantoms at N_max=16", ok,
            f"max Linf error {worst:.2e} (tol 1e-8), {elapsed:.1f} s (limit 120 s)")
    assert ok


def test_criterion_4_hodge_equivalence():
    rng = np.random.default_rng(104)
    worst = 0.0
    for _ in range(200):
        fvec = VectorCoeffs.random_tangent(16, rng, real=True)
        hp, ref = helmholtz_hodge(fvec), hodge_oracle(fvec)
        worst = max(worst, (hp.u - ref.u).max_abs(), (hp.v - ref.v).max_abs())
    ok = worst <= 1e-9
    _record(4, "helmholtz_hodge vs projection oracle, 200 fields", ok,
            f"max coefficient discrepancy {worst:.2e} (tol 1e-9)")
    assert ok


def test_criterion_5_rubin_identity():
    m = legendre_moments(lambda t: np.log(np.abs(t)), 24, quad_order=32, singular_at_zero=True)
    worst = max(abs(m[N] + 2.0 / (N * (N + 1) * legendre_zero(N))) for N in range(2, 25, 2))
    ok = worst <= 1e-8
    _record(5, "log-kernel moments, even 2 <= N <= 24", ok, f"max error {worst:.2e} (tol 1e-8)")
    assert ok


def _y(n, kind, N, ell, value=1.0):
    # unnormalized pure-spin harmonic expressed in the stored channels
    scale = 1.0 if kind == 1 else math.sqrt(N * (N + 1))
    return VectorCoeffs.unit(n, kind, N, ell, value * scale)


def _table_rows(n):
    """(input, vec_funk image, vec_hilbert image) for every pure-spin harmonic."""
    zero = VectorCoeffs.zeros(n)
    for N in range(n + 1):
        pN = legendre_zero(N)
        pNm1 = legendre_zero(N - 1) if N else 0.0
        for ell in range(-N, N + 1):
            # radial channel
            y1 = _y(n, 1, N, ell)
            if N == 0:
                yield y1, zero, y1
            elif N % 2:
                yield y1, _y(n, 2, N, ell, pNm1 / (N + 1)), zero
            else:
                yield y1, zero, _y(n, 2, N, ell, -1.0 / (pN * N * (N + 1)))
            if N == 0:
                continue
            y2 = _y(n, 2, N, ell)
            if N % 2:
                yield y2, _y(n, 1, N, ell, pNm1 * N) + _y(n, 2, N, ell, pNm1 / (N + 1)), zero
            else:
                yield y2, zero, (_y(n, 1, N, ell, -1.0 / pN)
                                 + _y(n, 2, N, ell, -1.0 / (pN * N * (N + 1))))
            y3 = _y(n, 3, N, ell)
            if N % 2:
                yield y3, zero, _y(n, 3, N, ell, 1.0 / (N * pNm1))
            else:
                yield y3, _y(n, 3, N, ell, pN), zero


def _max_diff(a: VectorCoeffs, b: VectorCoeffs) -> float:
    return max(float(np.max(np.abs(x.data - y.data))) for x, y in zip(a.channels, b.channels))


def test_criterion_6_vector_multiplier_tables():
    n = 32
    worst, rows = 0.0, 0
    for v, want_f, want_s in _table_rows(n):
        worst = max(worst, _max_diff(vec_funk(v), want_f), _max_diff(vec_hilbert(v), want_s))
        rows += 1
    ok = worst <= 1e-13
    _record(6, "vector F and S tables for N <= 32", ok,
            f"{rows} rows, max discrepancy {worst:.2e} (tol 1e-13)")
    assert ok


def test_criterion_7_selftest(tmp_path, capsys):
    rc = main(["selftest", "--n-max", "12", "-o", str(tmp_path)])
    summary = capsys.readouterr().out.strip().splitlines()[-1]
    _record(7, "selftest at N_max=12", rc == 0, f"exit {rc}; {summary}")
    assert rc == 0


def _decay(lam, degrees):
    scaled = np.abs(lam[degrees]) * np.sqrt(degrees + 1.0)
    bad = degrees[(scaled < 0.6) | (scaled > 1.3)]
    return scaled, bad


def test_criterion_8_multiplier_decay():
    n = 256
    f_scaled, f_bad = _decay(funk_minkowski_spec(n).lam, np.arange(0, n + 1, 2))
    s_scaled, s_bad = _decay(hilbert_spec(n).lam, np.arange(1, n + 1, 2))
    ok = f_bad.size == 0 and s_bad.size == 0
    _record(8, "|lambda_N| sqrt(N+1) in [0.6, 1.3] up to N=256", ok,
            f"F range [{f_scaled.min():.3f}, {f_scaled.max():.3f}] outside at {f_bad.tolist()}; "
            f"S range [{s_scaled.min():.3f}, {s_scaled.max():.3f}] outside at {s_bad.tolist()}")
    assert ok


if __name__ == "__main__":
    import pytest

    raise SystemExit(pytest.main([__file__, "-q"]))
