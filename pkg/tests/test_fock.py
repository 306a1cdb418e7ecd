import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaugenet import fock
from gaugenet.fock import (
    CoherentVec,
    DimensionMismatch,
    FockOverflow,
    TypeS,
    coh_inner,
    energy_rep,
    exp_inner,
    gram_rank,
    op_equal,
    types_apply,
    types_compose,
    types_inverse,
    weyl,
)
from gaugenet.lattice import GaugeJet, Region, jet_mul, random_jet


def rand_types(r, d):
    Q, R = np.linalg.qr(r.standard_normal((d, d)) + 1j * r.standard_normal((d, d)))
    A = Q * (np.diag(R) / np.abs(np.diag(R)))
    b = 0.5 * (r.standard_normal(d) + 1j * r.standard_normal(d))
    return TypeS(A, b, np.exp(1j * r.uniform(0, 2 * np.pi)))


def test_one_dimensional_pairing():
    # <Exp 1, Exp i> = exp(1 * conj(i)) = e^{-i}
    assert exp_inner(np.array([1.0]), np.array([1j])) == pytest.approx(np.exp(-1j))
    assert fock.herm(np.array([1j]), np.array([1.0])) == pytest.approx(1j)


def test_two_by_two_gram():
    b = np.array([1.0, 0.0])
    G = fock.gram_matrix([np.zeros(2), b])
    assert np.allclose(G, [[1, 1], [1, np.e]])
    assert gram_rank([np.zeros(2), b]) == 2
    assert gram_rank([b, b]) == 1


def test_gram_rank_random(rng):
    assert gram_rank(0.5 * rng.standard_normal((5, 4))) == 5


def test_vacuum_image_formula(rng):
    """U Exp 0 = c exp(-|b|^2/2) Exp(b)."""
    U = rand_types(rng, 3)
    v = types_apply(U, CoherentVec.vacuum(3))
    assert v.coeffs[0] == pytest.approx(U.c * np.exp(-0.5 * np.vdot(U.b, U.b).real))
    assert np.allclose(v.vecs[0], U.b)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(1, 5))
def test_group_law_and_unitarity(seed, d):
    r = np.random.default_rng(seed)
    U, W = rand_types(r, d), rand_types(r, d)
    x = 0.5 * (r.standard_normal((2, d)) + 1j * r.standard_normal((2, d)))
    v = CoherentVec(r.standard_normal(2) + 0j, x)
    w = CoherentVec.exp(0.3 * r.standard_normal(d))
    a = types_apply(types_compose(U, W), v)
    b = types_apply(U, types_apply(W, v))
    assert np.allclose(a.coeffs, b.coeffs, atol=1e-12) and np.allclose(a.vecs, b.vecs, atol=1e-12)
    assert abs(coh_inner(types_apply(U, v), types_apply(U, w)) - coh_inner(v, w)) < 1e-10


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_inverse_round_trip(seed):
    r = np.random.default_rng(seed)
    U = rand_types(r, 3)
    assert types_compose(U, types_inverse(U)).distance(TypeS.identity(3)) < 1e-12
    v = CoherentVec.exp(0.4 * r.standard_normal(3))
    back = types_apply(types_inverse(U), types_apply(U, v))
    assert np.allclose(back.coeffs, v.coeffs) and np.allclose(back.vecs, v.vecs)


def test_inverse_of_shift():
    b = np.array([0.3, -1.0j])
    inv = types_inverse(TypeS(np.eye(2), b))
    assert np.allclose(inv.b, -b) and inv.c == 1


def test_composition_phase_formula(rng):
    U, W = rand_types(rng, 3), rand_types(rng, 3)
    C = types_compose(U, W)
    expected = U.c * W.c * np.exp(1j * np.vdot(U.A @ W.b, U.b).imag)
    assert C.c == pytest.approx(expected)


def test_weyl_identities(rng):
    assert weyl(np.zeros(3)).distance(TypeS.identity(3)) == 0
    h = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    assert types_compose(weyl(h), weyl(-h)).distance(TypeS.identity(3)) < 1e-15
    # W(h) Exp 0 = exp(-|h|^2/4) Exp(ih/sqrt2)
    v = types_apply(weyl(h), CoherentVec.vacuum(3))
    assert v.coeffs[0] == pytest.approx(np.exp(-0.25 * np.vdot(h, h).real))


def test_weyl_sign_is_plus_under_first_slot_linearity(rng):
    assert fock.weyl_phase_sign(rng) == 1
    h = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    k = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    phase = types_compose(weyl(h), weyl(k)).c
    assert phase == pytest.approx(np.exp(0.5j * fock.herm(h, k).imag))


def test_op_equal_examples(rng):
    ident = TypeS.identity(3)
    b = np.array([1.0, 0, 0])
    grid = fock.default_grid([TypeS(np.eye(3), b)], rng)
    assert op_equal([(1.0, ident)], [(1.0, ident)], grid) == 0
    assert op_equal([(1.0, ident)], [(1.0, TypeS(np.eye(3), b))], grid) > 0.1
    with pytest.raises(ValueError):
        op_equal([(1.0, ident)], [(1.0, ident)], [])


def test_energy_rep_homomorphism_and_identity(small, rng):
    R = Region.all(small)
    assert energy_rep(GaugeJet.identity(small)).distance(TypeS.identity(small.dim_H)) == 0
    a, b = random_jet(small, R, rng), random_jet(small, R, rng)
    C = types_compose(energy_rep(a), energy_rep(b))
    assert C.distance(energy_rep(jet_mul(a, b))) < 1e-12
    assert C.c == 1.0
    assert fock.energy_phase_defect(a, b) < 1e-14


def test_overflow_and_caps():
    with pytest.raises(FockOverflow):
        CoherentVec.exp(np.full(4, 10.0))
    big = CoherentVec.exp(np.full(4, 20.0), norm_cap=np.inf)
    with pytest.raises(FockOverflow):
        coh_inner(big, big)
    with pytest.raises(DimensionMismatch):
        TypeS(np.eye(2), np.zeros(3))
    with pytest.raises(DimensionMismatch):
        types_compose(TypeS.identity(2), TypeS.identity(3))


def test_separating_probe(rng):
    ops = [rand_types(rng, 3) for _ in range(4)]
    i0, x = fock.separating_probe(ops, rng)
    images = [U.A @ x + U.b for U in ops]
    assert all(np.linalg.norm(images[i0] - y) > 1e-8 for j, y in enumerate(images) if j != i0)
    with pytest.raises(ValueError):
        fock.separating_probe([ops[0], ops[0]], rng, tries=3)
