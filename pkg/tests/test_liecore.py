import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaugenet import liecore as lc

GROUPS = [2, 3]


def series_exp(X, terms=40):
    out = np.eye(len(X), dtype=complex)
    term = np.eye(len(X), dtype=complex)
    for k in range(1, terms):
        term = term @ X / k
        out = out + term
    return out


@pytest.mark.parametrize("n", GROUPS)
def test_basis_orthonormal_for_negative_killing(n):
    T = lc.algebra_basis(n)
    G = np.array([[lc.killing_inner(a, b, n) for b in T] for a in T])
    assert np.allclose(G, np.eye(lc.algebra_dim(n)), atol=1e-12)


@pytest.mark.parametrize("n", GROUPS)
def test_killing_matches_trace_formula(n, rng):
    # B(X, Y) = 2n tr(XY) on su(n); the library computes it from ad matrices
    X = lc.to_matrix(rng.standard_normal(lc.algebra_dim(n)), n)
    Y = lc.to_matrix(rng.standard_normal(lc.algebra_dim(n)), n)
    assert lc.killing_form(X, Y, n) == pytest.approx(2 * n * np.trace(X @ Y).real, abs=1e-12)


@pytest.mark.parametrize("n", GROUPS)
def test_bracket_coeffs_against_matrices(n, rng):
    x, y = rng.standard_normal((2, lc.algebra_dim(n)))
    lhs = lc.to_matrix(lc.bracket_coeffs(x, y, n), n)
    assert np.allclose(lhs, lc.bracket(lc.to_matrix(x, n), lc.to_matrix(y, n)), atol=1e-13)


@pytest.mark.parametrize("n", GROUPS)
def test_coefficient_round_trip(n, rng):
    x = rng.standard_normal(lc.algebra_dim(n))
    assert np.allclose(lc.to_coeffs(lc.to_matrix(x, n), n), x, atol=1e-14)
    z = x + 1j * rng.standard_normal(lc.algebra_dim(n))
    M = lc.to_matrix(x, n) + 1j * lc.to_matrix(z.imag, n)
    assert np.allclose(lc.to_coeffs_complex(M, n), z, atol=1e-14)


@pytest.mark.parametrize("n", GROUPS)
def test_exp_against_power_series(n, rng):
    X = lc.to_matrix(rng.standard_normal(lc.algebra_dim(n)), n)
    assert np.abs(lc.alg_exp(X) - series_exp(X)).max() < 1e-12


@pytest.mark.parametrize("n", GROUPS)
def test_log_inverts_exp_away_from_cut(n, rng):
    x = rng.standard_normal(lc.algebra_dim(n))
    x *= 1.5 / np.linalg.norm(x)
    X = lc.to_matrix(x, n)
    assert np.abs(lc.alg_log(lc.alg_exp(X)) - X).max() < 1e-12


def test_log_cut_locus():
    with pytest.raises(lc.CutLocus):
        lc.alg_log(-np.eye(2, dtype=complex))


def test_unsupported_group():
    with pytest.raises(lc.Unsupported):
        lc.algebra_basis(4)


@pytest.mark.parametrize("n", GROUPS)
def test_Ad_matrix_is_orthogonal_homomorphism(n, rng):
    g, h = lc.random_group(rng, n), lc.random_group(rng, n)
    Ag, Ah = lc.Ad_matrix(g), lc.Ad_matrix(h)
    assert np.allclose(Ag.T @ Ag, np.eye(len(Ag)), atol=1e-13)
    assert np.allclose(lc.Ad_matrix(g @ h), Ag @ Ah, atol=1e-13)
    x = rng.standard_normal(lc.algebra_dim(n))
    assert np.allclose(lc.to_matrix(Ag @ x, n), lc.Ad(g, lc.to_matrix(x, n)), atol=1e-13)


def test_Ad_matrix_exact_identity():
    assert np.array_equal(lc.Ad_matrix(np.eye(3, dtype=complex)), np.eye(8))


def _fd_dexp(phi, delta, n, h=1e-5):
    Xp = lc.alg_exp(lc.to_matrix(phi + h * delta, n))
    Xm = lc.alg_exp(lc.to_matrix(phi - h * delta, n))
    return lc.to_coeffs((Xp - Xm) / (2 * h) @ lc.alg_exp(-lc.to_matrix(phi, n)), n)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GROUPS), st.integers(0, 2**31 - 1), st.floats(0.0, 2.5))
def test_dexp_matches_finite_differences(n, seed, scale):
    r = np.random.default_rng(seed)
    phi = scale * r.standard_normal(lc.algebra_dim(n))
    delta = r.standard_normal(lc.algebra_dim(n))
    fd = _fd_dexp(phi, delta, n)
    assert np.linalg.norm(lc.dexp_right(phi, delta, n) - fd) <= 1e-6 * np.linalg.norm(fd)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GROUPS), st.integers(0, 2**31 - 1))
def test_dexp_inverse_round_trip(n, seed):
    r = np.random.default_rng(seed)
    phi = r.standard_normal(lc.algebra_dim(n))
    b = r.standard_normal((2, lc.algebra_dim(n)))
    back = lc.dexp_right(phi, lc.dexp_right_inverse(phi, b, n), n)
    assert np.allclose(back, b, atol=1e-12)


def test_dexp_small_argument_branch_is_continuous(rng):
    delta = rng.standard_normal(3)
    d = rng.standard_normal(3)
    d /= np.linalg.norm(d)
    below = lc.dexp_right(0.99e-4 * d, delta, 2)
    above = lc.dexp_right(1.01e-4 * d, delta, 2)
    assert np.abs(below - above).max() < 1e-5
    assert np.allclose(lc.dexp_right(np.zeros(3), delta, 2), delta, atol=0)


def test_dexp_commuting_direction_is_identity(rng):
    # for delta parallel to phi, f(ad_phi) delta = delta
    phi = rng.standard_normal(8)
    assert np.allclose(lc.dexp_right(phi, 0.3 * phi, 3), 0.3 * phi, atol=1e-13)


@pytest.mark.parametrize("n,count", [(2, 2), (3, 6)])
def test_root_decomposition(n, count, rng):
    dec = lc.cartan_root_decompose(n)
    assert len(dec.roots) == count
    assert dec.bracket_residual() < 1e-12
    z = rng.standard_normal(lc.algebra_dim(n)) + 1j * rng.standard_normal(lc.algebra_dim(n))
    zh, parts = dec.components(z)
    assert np.allclose(zh + sum(parts), z, atol=1e-13)
    # roots come in +/- pairs
    for a in dec.roots:
        assert np.min(np.linalg.norm(dec.roots + a, axis=1)) < 1e-9
