import numpy as np
import pytest

from gaugenet import liecore as lc
from gaugenet.lattice import (
    AlgebraField,
    DegenerateSupport,
    GaugeJet,
    ManifoldMismatch,
    OneForm,
    Region,
    SampledManifold,
    bump_algebra_field,
    bump_profile,
    inner,
    jet_from_algebra_field,
    jet_inv,
    jet_mul,
    jet_power,
    random_field,
    random_jet,
    support,
)


def test_manifold_shapes(circle, torus):
    assert circle.dim_H == 96
    assert torus.fibre_shape == (64, 2, 3)
    assert np.allclose(circle.cell_volume.sum(), 2 * np.pi)
    assert np.allclose(torus.cell_volume.sum(), 4 * np.pi**2)


@pytest.mark.parametrize(
    "kwargs",
    [dict(topology="sphere"), dict(shape=(3,)), dict(shape=(4, 4)), dict(group=5), dict(metric_weight=0.0)],
)
def test_manifold_validation(kwargs):
    with pytest.raises(ValueError):
        SampledManifold(**kwargs)


def test_region_parse(circle):
    assert Region.parse(circle, "0-3").sites == {0, 1, 2, 3}
    assert Region.parse(circle, "30-1").sites == {30, 31, 0, 1}
    assert Region.parse(circle, "1, 5,7").sites == {1, 5, 7}
    assert len(Region.parse(circle, "all")) == 32
    assert len(Region.parse(circle, "none")) == 0
    O = Region.parse(circle, "0-7")
    assert (O | O.complement()).sites == Region.all(circle).sites
    assert not (O & O.complement()).sites
    assert O.is_proper and not Region.all(circle).is_proper
    with pytest.raises(ValueError):
        Region.parse(circle, "40")


def test_flat_inner_product_is_weighted(circle, rng):
    a = rng.standard_normal(circle.fibre_shape)
    b = rng.standard_normal(circle.fibre_shape)
    direct = np.sum(circle.weights[:, None, None] * a * b)
    assert inner(OneForm(circle, a), OneForm(circle, b)) == pytest.approx(direct, rel=1e-13)
    assert np.allclose(circle.from_vec(circle.to_vec(a)), a)


def test_metric_weight_scales_norm(rng):
    a = rng.standard_normal((8, 1, 3))
    M1 = SampledManifold("circle", (8,), 2, 1.0)
    M4 = SampledManifold("circle", (8,), 2, 4.0)
    assert OneForm(M4, a).norm() == pytest.approx(2 * OneForm(M1, a).norm())


def test_mismatched_manifolds(circle, torus):
    with pytest.raises(ManifoldMismatch):
        jet_mul(GaugeJet.identity(circle), GaugeJet.identity(torus))


def test_jet_group_laws(small, rng):
    R = Region.all(small)
    a, b, c = (random_jet(small, R, rng) for _ in range(3))
    assert jet_mul(jet_mul(a, b), c).distance(jet_mul(a, jet_mul(b, c))) < 1e-13
    assert jet_mul(a, jet_inv(a)).distance(GaugeJet.identity(small)) < 1e-13
    assert jet_power(a, 3).distance(a * a * a) < 1e-13
    assert jet_power(a, -2).distance(jet_inv(a) * jet_inv(a)) < 1e-13


def test_jet_derivative_matches_finite_difference(rng):
    """The b-part of an exp-jet is d(g) g^{-1} of a smooth field sampled at a site."""
    M = SampledManifold("circle", (4000,), 2)
    X = np.array([0.3, -0.5, 0.8])
    Y = np.array([-0.4, 0.2, 0.1])
    x = M.coords[:, 0]
    phi = np.sin(x)[:, None] * X + np.cos(2 * x)[:, None] * Y
    dphi = (np.cos(x)[:, None] * X - 2 * np.sin(2 * x)[:, None] * Y)[:, None, :]
    jet = jet_from_algebra_field(AlgebraField(M, phi, dphi))
    s, h = 700, x[1] - x[0]
    dg = (jet.g[s + 1] - jet.g[s - 1]) / (2 * h)
    fd = lc.to_coeffs(dg @ jet.g[s].conj().T, 2)
    assert np.allclose(jet.b[s, 0], fd, atol=1e-5)


def test_bump_profile_derivative():
    u = np.linspace(0.01, 0.95, 50)
    p, dp = bump_profile(u)
    h = 1e-6
    fd = (bump_profile(u + h)[0] - bump_profile(u - h)[0]) / (2 * h)
    assert np.allclose(dp, fd, rtol=1e-6, atol=1e-12)
    assert np.all(bump_profile(np.array([1.0, 2.0]))[0] == 0)


def test_bump_support_is_exact(circle):
    f = bump_algebra_field(circle, 1.0, 0.8, np.array([1.0, 0, 0]))
    coords = circle.displacement(np.array([1.0]))[:, 0]
    assert support(f).sites == set(np.flatnonzero(np.abs(coords) < 0.8).tolist())
    jet = jet_from_algebra_field(f)
    assert support(jet).sites == support(f).sites


def test_bump_degenerate(circle):
    with pytest.raises(DegenerateSupport):
        bump_algebra_field(circle, 0.1, 10.0, np.ones(3))
    with pytest.raises(DegenerateSupport):
        bump_algebra_field(circle, 0.1, 0.01, np.ones(3))


def test_random_field_support_and_abelian(circle, rng):
    O = Region.parse(circle, "3-9")
    f = random_field(circle, O, rng, cartan_direction=True)
    assert support(f).sites == O.sites
    assert f.is_abelian
    assert not random_field(circle, O, rng).is_abelian


def test_constant_jet(circle, rng):
    g0 = lc.random_group(rng, 2)
    O = Region.parse(circle, "0-3")
    psi = GaugeJet.constant(circle, g0, O)
    assert support(psi).sites == O.sites
    assert np.all(psi.b == 0)
