import numpy as np
import pytest

from gaugenet import energy, liecore as lc
from gaugenet.energy import V_apply, V_matrix, beta, coboundary, fixed_projection
from gaugenet.lattice import (
    GaugeJet,
    OneForm,
    Region,
    SampledManifold,
    bump_algebra_field,
    jet_from_algebra_field,
    jet_mul,
    random_field,
    random_jet,
)


def test_V_is_orthogonal_representation(small, rng):
    R = Region.all(small)
    a, b = random_jet(small, R, rng), random_jet(small, R, rng)
    Va, Vb = V_matrix(a), V_matrix(b)
    assert np.allclose(Va.T @ Va, np.eye(small.dim_H), atol=1e-13)
    assert np.allclose(V_matrix(jet_mul(a, b)), Va @ Vb, atol=1e-13)
    w = OneForm(small, rng.standard_normal(small.fibre_shape))
    assert np.allclose(V_apply(a, w).vec(), Va @ w.vec(), atol=1e-13)


def test_V_matches_exponential_series(small, rng):
    f = random_field(small, Region.all(small), rng)
    w = OneForm(small, rng.standard_normal(small.fibre_shape))
    direct = V_apply(jet_from_algebra_field(f, 0.7), w)
    series = energy.exp_series_action(f.phi, w, 0.7, 2, terms=40)
    assert np.abs(direct.comps - series.comps).max() < 1e-12


def test_coboundary_is_cocycle(small, rng):
    v = OneForm(small, rng.standard_normal(small.fibre_shape))
    R = Region.all(small)
    gamma = energy.coboundary_cocycle(v)
    assert energy.cocycle_residual(gamma, random_jet(small, R, rng), random_jet(small, R, rng)) < 1e-13


def test_cocycle_residual_detects_non_cocycle(small, rng):
    R = Region.all(small)
    twice = lambda psi: beta(psi) * 2.0 + OneForm(small, np.ones(small.fibre_shape))  # noqa: E731
    assert energy.cocycle_residual(twice, random_jet(small, R, rng), random_jet(small, R, rng)) > 0.1


def test_fixed_projection(small, rng):
    psi = random_jet(small, Region.parse(small, "0-2"), rng)
    P = fixed_projection(psi)
    assert np.allclose(P @ P, P, atol=1e-12)
    assert np.allclose(V_matrix(psi) @ P, P, atol=1e-10)
    assert round(np.trace(P)) == energy.sitewise_fixed_dimension(psi)
    # SU(2): fixed space of a generic nontrivial Ad is its 1-dim axis
    assert round(np.trace(P)) == 3 * 1 + 3 * 3


def test_ergodic_limit_identity_psi2(small, rng):
    R = Region.all(small)
    p1, p3 = random_jet(small, R, rng), random_jet(small, R, rng)
    avg, target = energy.ergodic_limit(beta, p1, GaugeJet.identity(small), p3, 10)
    assert target.norm() == 0
    assert np.allclose(avg.comps, (beta(p1) + V_apply(p1, beta(p3))).comps / 10)


def test_ergodic_abelian_limit(circle):
    H = np.array([0.0, 0.0, 1.0])
    f = bump_algebra_field(circle, 2.0, 1.0, H)
    psi = jet_from_algebra_field(f)
    ns, dist, target = energy.ergodic_sequence(beta, GaugeJet.identity(circle), psi, GaugeJet.identity(circle), [4, 8, 64])
    assert np.allclose(target.comps, f.dphi, atol=1e-13)
    assert dist.max() < 1e-13


def test_ergodic_rejects_zero(small):
    e = GaugeJet.identity(small)
    with pytest.raises(ValueError):
        energy.ergodic_limit(beta, e, e, e, 0)


def test_loglog_slope():
    ns = np.arange(8, 100)
    assert energy.loglog_slope(ns, 3.0 / ns) == pytest.approx(-1.0)


def test_coboundary_fit_recovers_coboundary(small, rng):
    v = OneForm(small, rng.standard_normal(small.fibre_shape))
    jets = [random_jet(small, Region.all(small), rng) for _ in range(4)]
    fitted, res = energy.coboundary_fit(energy.CocycleSample.from_cocycle(energy.coboundary_cocycle(v), jets))
    assert res < 1e-10
    for psi in jets:
        assert np.allclose(coboundary(fitted, psi).comps, coboundary(v, psi).comps, atol=1e-10)


def test_coboundary_fit_beta_abelian_lower_bound(circle):
    """For an abelian family e^{s phi}, the phi-direction part of beta cannot be
    fitted: the residual is exactly ||dphi|| sqrt(sum s^2)."""
    H = np.array([0.0, 0.0, 1.0])
    f = bump_algebra_field(circle, 3.0, 1.5, H)
    scales = (0.5, 1.0, 2.0)
    jets = [jet_from_algebra_field(f, s) for s in scales]
    _, res = energy.coboundary_fit(energy.CocycleSample.from_cocycle(beta, jets))
    expected = OneForm(circle, f.dphi).norm() * np.sqrt(sum(s * s for s in scales))
    assert res == pytest.approx(expected, rel=1e-10)


def test_support_violation_counter(small, rng):
    O = Region.parse(small, "1-2")
    psi = random_jet(small, O, rng)
    good = energy.CocycleSample.from_cocycle(beta, [psi])
    assert good.support_violations() == 0
    bad = energy.CocycleSample([(psi, OneForm(small, np.ones(small.fibre_shape)))])
    assert bad.support_violations() == 1


def test_coboundary_fit_requires_samples():
    with pytest.raises(ValueError):
        energy.coboundary_fit(energy.CocycleSample([]))
