import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from funksphere.coeffs import ScalarCoeffs, VectorCoeffs
from funksphere.exceptions import (BandLimitError, InconsistentDataWarning, KernelViolationError,
                                   NonTangentialError, SubspaceViolationError)
from funksphere.grid import make_grid
from funksphere.reconstruct import (FMPair, data_residuals, even_part, forward_quadrature,
                                    forward_spectral, helmholtz_hodge, hodge_oracle,
                                    invert_even_rubin, invert_even_spectral, odd_part,
                                    reconstruct_batch, reconstruct_commutator, reconstruct_full,
                                    solve_surface_gradient)
from funksphere.vsh import (curl_grad_coeffs, dot_radial, grad_coeffs, vector_inner_product,
                            vector_synthesis)
from funksphere.zonal import apply_multiplier, funk_minkowski_spec


def _tangent(a: ScalarCoeffs, b: ScalarCoeffs) -> VectorCoeffs:
    return grad_coeffs(a) + curl_grad_coeffs(b)


def _zero_mean(c: ScalarCoeffs) -> ScalarCoeffs:
    c = c.copy()
    c.data[0] = 0
    return c


# -- recovery from the data pair ------------------------------------------


def test_reconstruct_constant():
    f = ScalarCoeffs.unit(4, 0, 0)
    pair = forward_spectral(f)
    assert pair.h.max_abs() == 0.0
    assert_allclose(reconstruct_full(pair).data, f.data, atol=1e-15)


def test_reconstruct_y10_from_radial_data():
    f = ScalarCoeffs.unit(3, 1, 0)
    pair = forward_spectral(f)
    assert pair.g.max_abs() == 0.0
    assert_allclose(dot_radial(pair.h).data, f.data, atol=1e-15)
    assert_allclose(reconstruct_full(pair).data, f.data, atol=1e-14)


def test_reconstruct_basis_identity():
    n = 8
    for N in range(n + 1):
        for ell in range(-N, N + 1):
            f = ScalarCoeffs.unit(n, N, ell)
            got = reconstruct_full(forward_spectral(f))
            assert np.max(np.abs(got.data - f.data)) <= 1e-12, (N, ell)


def test_reconstruct_quadrature_data():
    f = ScalarCoeffs.random(16, np.random.default_rng(0))
    got = reconstruct_full(forward_quadrature(f))
    assert np.max(np.abs(got.data - f.data)) <= 1e-8


def test_forward_quadrature_matches_spectral():
    f = ScalarCoeffs.random(10, np.random.default_rng(1))
    a, b = forward_quadrature(f), forward_spectral(f)
    assert_allclose(a.g.data, b.g.data, atol=1e-12)
    for x, y in zip(a.h.channels, b.h.channels):
        assert_allclose(x.data, y.data, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(0, 24), seed=st.integers(0, 2**31), real=st.booleans())
def test_reconstruct_round_trip(n, seed, real):
    f = ScalarCoeffs.random(n, np.random.default_rng(seed), real=real)
    got = reconstruct_full(forward_spectral(f))
    assert_allclose(got.data, f.data, atol=1e-10)


def test_even_and_odd_parts_separately():
    f = ScalarCoeffs.random(12, np.random.default_rng(2), real=False)
    even, odd = f.parity_parts()
    pair = forward_spectral(f)
    assert_allclose(even_part(pair.g).data, even.data, atol=1e-12)
    assert_allclose(odd_part(pair.h).data, odd.data, atol=1e-12)


def test_commutator_path_agrees():
    f = ScalarCoeffs.random(20, np.random.default_rng(3), real=False)
    pair = forward_spectral(f)
    assert_allclose(reconstruct_commutator(pair).data, reconstruct_full(pair).data, atol=1e-10)


def test_consistent_data_raise_no_warning():
    pair = forward_spectral(ScalarCoeffs.random(10, np.random.default_rng(4)))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        reconstruct_full(pair)


def test_gradient_data_blind_to_even_part():
    # mixing g of one function with h of another is still consistent data
    rng = np.random.default_rng(5)
    even, _ = ScalarCoeffs.random(6, rng, real=False).parity_parts()
    assert forward_spectral(even).h.max_abs() <= 1e-15


def test_inconsistent_data_warn():
    pair = forward_spectral(ScalarCoeffs.random(6, np.random.default_rng(5)))
    # a divergence-free component is never produced by F grad
    bad = FMPair(pair.g, pair.h + VectorCoeffs.unit(6, 3, 2, 0, 0.5))
    with pytest.warns(InconsistentDataWarning):
        f = reconstruct_full(bad)
    assert np.all(np.isfinite(f.data))


def test_cutoff_truncates_recovery():
    f = ScalarCoeffs.random(12, np.random.default_rng(6), real=False)
    got = reconstruct_full(forward_spectral(f), cutoff=5)
    assert_allclose(got.data, f.truncate(5).data, atol=1e-12)


def test_batch_matches_single():
    rng = np.random.default_rng(7)
    pairs = [forward_spectral(ScalarCoeffs.random(8, rng)) for _ in range(6)]
    for got, p in zip(reconstruct_batch(pairs), pairs):
        assert np.array_equal(got.data, reconstruct_full(p).data)


def test_data_residuals_of_truth():
    f = ScalarCoeffs.random(7, np.random.default_rng(8))
    res = data_residuals(f, forward_spectral(f))
    assert res["g"] <= 1e-14 and res["h"] <= 1e-14


def test_pair_band_mismatch():
    with pytest.raises(BandLimitError):
        FMPair(ScalarCoeffs.zeros(3), VectorCoeffs.zeros(4))


# -- even-part inversion ---------------------------------------------------


def test_invert_even_spectral_example():
    g = ScalarCoeffs.unit(4, 2, 0, -0.5)
    assert_allclose(invert_even_spectral(g).data, ScalarCoeffs.unit(4, 2, 0).data, atol=1e-15)


@pytest.mark.parametrize("N,ell", [(0, 0), (2, 0), (4, 2)])
def test_invert_even_rubin_examples(N, ell):
    n = 6
    f = ScalarCoeffs.unit(n, N, ell)
    g = apply_multiplier(f, funk_minkowski_spec(n))
    assert_allclose(invert_even_rubin(g).data, f.data, atol=1e-7)


def test_rubin_agrees_with_spectral():
    even, _ = ScalarCoeffs.random(16, np.random.default_rng(9), real=False).parity_parts()
    g = apply_multiplier(even, funk_minkowski_spec(16))
    assert_allclose(invert_even_rubin(g).data, invert_even_spectral(g).data, atol=1e-7)


def test_even_inversion_rejects_odd_mass():
    g = ScalarCoeffs.unit(5, 2, 0) + ScalarCoeffs.unit(5, 3, 1, 1e-3)
    with pytest.raises(KernelViolationError):
        invert_even_spectral(g)
    with pytest.raises(KernelViolationError):
        invert_even_rubin(g)


# -- Helmholtz-Hodge potentials -------------------------------------------


def test_hodge_of_gradient():
    y = ScalarCoeffs.unit(5, 2, 1)
    hp = helmholtz_hodge(grad_coeffs(y))
    assert_allclose(hp.u.data, y.data, atol=1e-13)
    assert hp.v.max_abs() <= 1e-13


def test_hodge_of_rotated_gradient():
    y = ScalarCoeffs.unit(5, 3, 2)
    hp = helmholtz_hodge(curl_grad_coeffs(y))
    assert_allclose(hp.v.data, y.data, atol=1e-13)
    assert hp.u.max_abs() <= 1e-13


def test_hodge_random_potentials():
    rng = np.random.default_rng(10)
    a, b = ScalarCoeffs.random(16, rng), ScalarCoeffs.random(16, rng)
    hp = helmholtz_hodge(_tangent(a, b))
    assert np.max(np.abs(hp.u.data - _zero_mean(a).data)) <= 1e-9
    assert np.max(np.abs(hp.v.data - _zero_mean(b).data)) <= 1e-9


def test_hodge_matches_oracle_and_gauge():
    rng = np.random.default_rng(11)
    for _ in range(10):
        fvec = VectorCoeffs.random_tangent(12, rng, real=False)
        hp, ref = helmholtz_hodge(fvec), hodge_oracle(fvec)
        assert hp.u[0, 0] == 0 and hp.v[0, 0] == 0
        assert_allclose(hp.u.data, ref.u.data, atol=1e-10)
        assert_allclose(hp.v.data, ref.v.data, atol=1e-10)


def test_hodge_parts_orthogonal_and_complete():
    rng = np.random.default_rng(12)
    n = 10
    fvec = VectorCoeffs.random_tangent(n, rng, real=False)
    hp = helmholtz_hodge(fvec)
    g = make_grid(n)
    a = vector_synthesis(grad_coeffs(hp.u), g)
    b = vector_synthesis(curl_grad_coeffs(hp.v), g)
    assert abs(vector_inner_product(a, b)) <= 1e-10
    total = grad_coeffs(hp.u) + curl_grad_coeffs(hp.v)
    for x, y in zip(total.channels, fvec.channels):
        assert_allclose(x.data, y.data, atol=1e-12)


def test_hodge_zero_field():
    hp = helmholtz_hodge(VectorCoeffs.zeros(4))
    assert hp.u.max_abs() == 0.0 and hp.v.max_abs() == 0.0


def test_hodge_rejects_radial_field():
    with pytest.raises(NonTangentialError):
        helmholtz_hodge(VectorCoeffs.unit(4, 1, 2, 0))


def test_hodge_oracle_examples():
    hp = hodge_oracle(VectorCoeffs.unit(3, 2, 2, 1))
    assert_allclose(hp.u.data, ScalarCoeffs.unit(3, 2, 1, 1 / math.sqrt(6)).data, rtol=1e-15)
    assert hp.v.max_abs() == 0.0
    hp = hodge_oracle(VectorCoeffs.unit(3, 3, 1, 0))
    assert_allclose(hp.v.data, ScalarCoeffs.unit(3, 1, 0, 1 / math.sqrt(2)).data, rtol=1e-15)
    hp = hodge_oracle(VectorCoeffs.zeros(3))
    assert hp.u.max_abs() == 0.0 and hp.v.max_abs() == 0.0


def test_solve_surface_gradient():
    a = ScalarCoeffs.random(9, np.random.default_rng(13), real=False)
    assert_allclose(solve_surface_gradient(grad_coeffs(a)).data, _zero_mean(a).data, atol=1e-12)
    with pytest.raises(SubspaceViolationError):
        solve_surface_gradient(curl_grad_coeffs(ScalarCoeffs.unit(9, 2, 0)))
