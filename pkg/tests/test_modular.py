import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaugenet import modular as md
from gaugenet.modular import RealSubspace, symplectic_complement


def test_real_line_in_C():
    K = RealSubspace.span(np.array([1.0 + 0j]), 1)
    ok, diag = md.is_standard(K)
    assert ok and diag["dim_K"] == 1
    assert md.subspace_distance(symplectic_complement(K), K) < 1e-14
    data = md.canonical_involution(K)
    conj = np.diag([1.0, -1.0])
    assert np.allclose(data.s, conj) and np.allclose(data.delta, np.eye(2)) and np.allclose(data.j, conj)


def test_rotated_line_is_its_own_complement():
    K = RealSubspace.span(np.array([np.exp(0.7j)]), 1)
    assert md.subspace_distance(symplectic_complement(K), K) < 1e-14


def test_non_standard_cases():
    full = RealSubspace.full(1)
    assert not md.is_standard(full)[0]
    assert not md.is_standard(RealSubspace.zero(2))[0]
    with pytest.raises(md.NotStandard):
        md.canonical_involution(full)
    assert symplectic_complement(full).dim == 0
    assert symplectic_complement(RealSubspace.zero(2)).dim == 4


def test_nontrivial_delta_two_dims():
    # delta = I exactly when Im<v, w> = 0 on K; here Im<e1, (i/2, 1)> = 1/2
    K = RealSubspace.span(np.array([[1.0, 0.5j], [0.0, 1.0]]), 2)
    data = md.canonical_involution(K)
    # from the Gram matrix G = <k_a, k_b>: Re G = diag(1, 5/4), Im G = [[0, -1/2], [1/2, 0]];
    # (Re G)^{-1/2} Im G (Re G)^{-1/2} has eigenvalues +-i/sqrt5, and each sigma = 1/sqrt5
    # gives the pair (1 - sigma)/(1 + sigma), (1 + sigma)/(1 - sigma) = (3 -+ sqrt5)/2
    r5 = np.sqrt(5.0)
    expected = [(3 - r5) / 2] * 2 + [(3 + r5) / 2] * 2
    assert np.allclose(np.linalg.eigvalsh(data.delta), expected, atol=1e-12)
    assert max(data.identities().values()) < 1e-12
    assert max(data.antilinearity().values()) < 1e-12


def test_involution_acts_as_conjugation_on_K(rng):
    K = md.random_standard(3, rng)
    data = md.canonical_involution(K)
    J = md.complex_structure(3)
    h = K.basis @ rng.standard_normal(K.dim)
    k = K.basis @ rng.standard_normal(K.dim)
    assert np.allclose(data.s @ (h + J @ k), h - J @ k)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(1, 4))
def test_complement_properties(seed, d):
    r = np.random.default_rng(seed)
    k1 = int(r.integers(1, 2 * d + 1))
    K1 = md.random_real_subspace(d, k1, r)
    K2 = K1 + md.random_real_subspace(d, int(r.integers(0, 2 * d + 1)), r)
    res = md.complement_lattice_suite(K1, K2)
    assert max(res.values()) < 1e-8
    assert symplectic_complement(K1).dim == 2 * d - K1.dim


def test_projection_conditions(rng):
    d = 4
    P = np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex)
    Va = np.vstack([rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3)), np.zeros((2, 3))])
    Vb = np.vstack([np.zeros((2, 2)), rng.standard_normal((2, 2))])
    K = RealSubspace.span(np.hstack([Va, Vb]), d)
    chk = md.projection_checks(K, P)
    assert chk["conditions_agree"] == 0 and chk["projected_complement"] < 1e-10
    generic = md.random_real_subspace(d, 3, rng)
    cond = md.projection_conditions(generic, P)
    assert min(cond.values()) > 1e-3
    assert md.projection_checks(generic, P)["conditions_agree"] == 0


def test_involution_adjoint(rng):
    assert md.involution_adjoint_residual(md.random_standard(3, rng)) < 1e-10


def test_second_quantized_involution(rng):
    K = md.random_standard(3, rng)
    h = K.complex_vectors() @ rng.standard_normal(K.dim)
    assert md.second_quantized_S_check(K, h) < 1e-10
    outside = 1j * h  # i h lies in iK, not in K
    assert md.second_quantized_S_check(K, outside) > 1e-3


def test_realify_round_trip(rng):
    h = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    assert np.allclose(md.complexify(md.realify(h)), h)
    A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    assert np.allclose(md.complex_linear_real(A) @ md.realify(h), md.realify(A @ h))
    k = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    assert md.realify(h) @ md.im_form(3) @ md.realify(k) == pytest.approx(np.vdot(k, h).imag)
