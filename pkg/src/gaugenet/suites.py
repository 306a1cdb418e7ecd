"""
Verification suites. Each suite evaluates a fixed list of residual checks
for one module and returns them with thresholds; :func:`run_suite` merges
them into a :class:`SuiteReport`.

Every suite draws from its own generator seeded with ``(seed, suite index)``,
so a suite gives the same numbers alone or as part of ``all``.
"""

import json
import time
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.stats

from . import energy, fock, gauss, lattice, liecore, localnet, modular
from .config import SUITES, SuiteConfig
from .energy import beta, cocycle_residual
from .fock import CoherentVec, TypeS, coh_inner, energy_rep, types_apply, types_compose, types_inverse, weyl
from .lattice import GaugeJet, OneForm, Region, bump_algebra_field, jet_from_algebra_field, jet_mul, random_jet

RECORD_SCHEMA = "gaugenet-report"
RECORD_VERSION = 1


@dataclass(frozen=True)
class Check:
    """One residual with its threshold.

    ``relation`` is ``"<="``, ``">="`` or ``"=="``; ``criterion`` is the
    acceptance item the check belongs to (0 for supporting checks).
    """

    suite: str
    name: str
    criterion: int
    value: float
    threshold: float
    relation: str = "<="
    wall: float = 0.0

    @property
    def passed(self):
        v, t = self.value, self.threshold
        if self.relation == "<=":
            return bool(v <= t)
        if self.relation == ">=":
            return bool(v >= t)
        if self.relation == "==":
            return bool(v == t)
        raise ValueError(f"unknown relation {self.relation!r}")

    def record(self):
        return {
            "suite": self.suite,
            "check": self.name,
            "criterion": self.criterion,
            "value": self.value,
            "threshold": self.threshold,
            "relation": self.relation,
            "passed": self.passed,
        }


@dataclass
class SuiteReport:
    suite: str
    config: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    def __post_init__(self):
        self.checks = sorted(self.checks, key=lambda c: (c.suite, c.name))

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    @property
    def exit_code(self):
        return 0 if self.passed else 1

    def by_name(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def criteria(self):
        """``{criterion: all checks passed}`` over the tagged acceptance items."""
        out = {}
        for c in self.checks:
            if c.criterion:
                out[c.criterion] = out.get(c.criterion, True) and c.passed
        return dict(sorted(out.items()))


class _Recorder:
    def __init__(self, suite, cfg):
        self.suite = suite
        self.cfg = cfg
        self.checks = []
        self._last = time.perf_counter()

    def add(self, name, criterion, value, threshold, relation="<="):
        now = time.perf_counter()
        full = f"{self.suite}.{name}"
        threshold = self.cfg.tol(full, threshold)
        self.checks.append(Check(self.suite, full, criterion, float(value), float(threshold), relation, now - self._last))
        self._last = now


def _rng(cfg, suite):
    return np.random.default_rng([cfg.seed, SUITES.index(suite)])


def random_types(rng, dim, b_scale=0.8):
    A = scipy.stats.unitary_group.rvs(dim, random_state=rng)
    b = (rng.standard_normal(dim) + 1j * rng.standard_normal(dim)) * (b_scale / np.sqrt(2 * dim))
    return TypeS(A, b, np.exp(2j * np.pi * rng.random()))


def random_coherent(rng, dim, terms=2, scale=0.5):
    X = rng.standard_normal((terms, dim)) + 1j * rng.standard_normal((terms, dim))
    X *= scale / np.linalg.norm(X, axis=1, keepdims=True)
    coeffs = rng.standard_normal(terms) + 1j * rng.standard_normal(terms)
    return CoherentVec(coeffs, X)


def coherent_difference(u, v):
    """Termwise distance of two coherent vectors with matching term lists."""
    return float(max(np.abs(u.coeffs - v.coeffs).max(), np.abs(u.vecs - v.vecs).max()))


def jet_scale(M, target=2.0):
    """Per-site scale for random jets so that ||beta|| is about ``target``.

    A jet of scale ``a`` has ``||beta||^2 ~ a^2 td dim_g vol(M)``.
    """
    vol = float(M.cell_volume.sum())
    return target / np.sqrt(M.tangent_dim * M.dim_g * vol)


def default_bump(M):
    """Generic (non-abelian) two-direction bump used by the ergodic and factorization checks."""
    X = np.zeros(M.dim_g)
    Y = np.zeros(M.dim_g)
    X[0], Y[1] = 1.0, 1.0
    return bump_algebra_field(M, 2.0, 1.2, X) + bump_algebra_field(M, 2.6, 1.2, Y)


def abelian_bump(M):
    H = np.zeros(M.dim_g)
    H[liecore.cartan_indices(M.group)[0]] = 1.0
    return bump_algebra_field(M, 3.0, 1.5, H)


# ---- typeS


def suite_typeS(cfg):
    rec = _Recorder("typeS", cfg)
    rng = _rng(cfg, "typeS")
    N = cfg.manifold().dim_H
    compose, assoc, inverse, iso = 0.0, 0.0, 0.0, 0.0
    for _ in range(cfg.n_triples):
        U, W, X = (random_types(rng, N) for _ in range(3))
        v = random_coherent(rng, N)
        u = random_coherent(rng, N)
        lhs = types_apply(types_compose(U, W), v)
        rhs = types_apply(U, types_apply(W, v))
        compose = max(compose, coherent_difference(lhs, rhs))
        assoc = max(assoc, types_compose(types_compose(U, W), X).distance(types_compose(U, types_compose(W, X))))
        inverse = max(inverse, types_compose(U, types_inverse(U)).distance(TypeS.identity(N)))
        iso = max(iso, abs(coh_inner(types_apply(U, u), types_apply(U, v)) - coh_inner(u, v)))
    rec.add("compose_vs_apply", 1, compose, 1e-10)
    rec.add("associativity", 1, assoc, 1e-10)
    rec.add("inverse", 0, inverse, 1e-10)
    rec.add("isometry", 0, iso, 1e-10)

    h = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    k = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    h, k = h / np.linalg.norm(h), k / np.linalg.norm(k)
    sign = fock.weyl_phase_sign(rng)
    phase = np.exp(sign * 0.5j * fock.herm(h, k).imag)
    WW = types_compose(weyl(h), weyl(k))
    rec.add("weyl_relation", 0, WW.distance(TypeS(np.eye(N), weyl(h + k).b, phase)), 1e-10)
    vecs = [np.zeros(N)] + [0.5 * rng.standard_normal(N) for _ in range(7)]
    rec.add("gram_rank_8", 0, fock.gram_rank(vecs), 8, "==")
    return rec.checks


# ---- cocycle


def suite_cocycle(cfg):
    rec = _Recorder("cocycle", cfg)
    rng = _rng(cfg, "cocycle")
    M = cfg.manifold()
    all_M = Region.all(M)
    generated = []

    worst = 0.0
    for _ in range(cfg.n_pairs):
        p1, p2 = random_jet(M, all_M, rng), random_jet(M, all_M, rng)
        worst = max(worst, cocycle_residual(beta, p1, p2))
        generated += [p1, p2]
    others = [cfg.torus(), lattice.SampledManifold("circle", (16,), 3, cfg.metric_weight)]
    for Mo in others:
        for _ in range(max(1, cfg.n_pairs // 5)):
            Ro = Region.all(Mo)
            worst = max(worst, cocycle_residual(beta, random_jet(Mo, Ro, rng), random_jet(Mo, Ro, rng)))
    rec.add("beta_identity", 2, worst, 1e-12)
    v0 = OneForm(M, rng.standard_normal(M.fibre_shape))
    cob = energy.coboundary_cocycle(v0)
    rec.add("coboundary_identity", 0, max(cocycle_residual(cob, a, b) for a, b in list(zip(generated[0::2], generated[1::2]))[:10]), 1e-12)

    # dexp against central differences
    n, h = cfg.group, cfg.fd_step
    rel = 0.0
    for _ in range(cfg.n_dexp):
        phi = liecore.random_algebra(rng, n)
        delta = liecore.random_algebra(rng, n)
        Xp = liecore.alg_exp(liecore.to_matrix(phi + h * delta, n))
        Xm = liecore.alg_exp(liecore.to_matrix(phi - h * delta, n))
        g_inv = liecore.alg_exp(-liecore.to_matrix(phi, n))
        fd = liecore.to_coeffs((Xp - Xm) / (2 * h) @ g_inv, n)
        an = liecore.dexp_right(phi, delta, n)
        rel = max(rel, np.linalg.norm(an - fd) / np.linalg.norm(fd))
    rec.add("dexp_finite_difference", 3, rel, 1e-6)
    fa = abelian_bump(M)
    rnd_ab = lattice.random_field(M, all_M, rng, cartan_direction=True)
    ab = max(
        float(np.abs(beta(jet_from_algebra_field(f)).comps - f.dphi).max()) for f in (fa, rnd_ab)
    )
    rec.add("dexp_abelian", 3, ab, 1e-12)

    # localization
    O = Region.parse(M, cfg.region)
    mism = 0
    for _ in range(20):
        p1 = random_jet(M, all_M, rng)
        chi = random_jet(M, O.complement(), rng)
        generated += [p1, chi]
        for p2 in (jet_mul(p1, chi), jet_mul(chi, p1)):
            generated.append(p2)
            mism += not p2.equal_on(p1, O)
            mism += not np.array_equal(beta(p2).comps[list(O)], beta(p1).comps[list(O)])
    rec.add("localization_mismatches", 4, mism, 0)
    viol = energy.CocycleSample.from_cocycle(beta, generated).support_violations()
    rec.add("support_violations", 4, viol, 0)

    # ergodic averages
    fb = default_bump(M)
    psi2 = jet_from_algebra_field(fb)
    Y = np.zeros(M.dim_g)
    Y[1] = 1.0
    XY = np.zeros(M.dim_g)
    XY[:2] = 1.0
    psi1 = jet_from_algebra_field(bump_algebra_field(M, 1.0, 1.0, Y, 0.7))
    psi3 = jet_from_algebra_field(bump_algebra_field(M, 4.0, 1.0, XY, 0.7))
    ns, dist, target = energy.ergodic_sequence(beta, psi1, psi2, psi3, range(cfg.ergodic_min, cfg.ergodic_max + 1))
    rec.add("ergodic_slope_deviation", 4, abs(energy.loglog_slope(ns, dist) + 1.0), 0.15)
    psi3b = jet_from_algebra_field(bump_algebra_field(M, 5.0, 0.9, Y - XY, 0.5))
    gap = (beta(psi3) - beta(psi3b)).norm()
    indep = 0.0
    for n_ in (cfg.ergodic_min, cfg.ergodic_max):
        a, t = energy.ergodic_limit(beta, psi1, psi2, psi3, n_)
        b_, tb = energy.ergodic_limit(beta, psi1, psi2, psi3b, n_)
        # n (avg - avg') = V(psi1) V(psi2)^n (beta(psi3) - beta(psi3')) has norm gap exactly
        indep = max(indep, abs(n_ * (a - b_).norm() - gap), (t - tb).norm())
    rec.add("ergodic_psi3_independence", 4, indep, 1e-10)
    e_phi = jet_from_algebra_field(fa)
    worst, power, k = 0.0, GaugeJet.identity(M), 0
    for n_ in (1, 2, 4, 8, 16, 64, 256):
        while k < n_:
            power = jet_mul(e_phi, power)
            k += 1
        worst = max(worst, float(np.abs(beta(power).comps / n_ - fa.dphi).max()))
        worst = max(worst, float(np.abs(beta(jet_from_algebra_field(fa, n_)).comps / n_ - fa.dphi).max()))
    rec.add("abelian_average", 4, worst, 1e-12)

    jets = [random_jet(M, all_M, rng) for _ in range(6)]
    _, res_cob = energy.coboundary_fit(energy.CocycleSample.from_cocycle(cob, jets))
    rec.add("coboundary_fit_true", 4, res_cob, 1e-8)
    fam = [jet_from_algebra_field(fa, s) for s in (0.5, 1.0, 2.0)] + [psi2]
    _, res_beta = energy.coboundary_fit(energy.CocycleSample.from_cocycle(beta, fam))
    dphi_norm = lattice.OneForm(M, fa.dphi).norm()
    rec.add("coboundary_fit_beta_ratio", 4, res_beta / dphi_norm, 0.5, ">=")
    return rec.checks


# ---- energy


def suite_energy(cfg):
    rec = _Recorder("energy", cfg)
    rng = _rng(cfg, "energy")
    M = cfg.manifold()
    all_M = Region.all(M)
    hom, ph = 0.0, 0.0
    for _ in range(cfg.n_pairs):
        a = jet_scale(M)
        p1, p2 = random_jet(M, all_M, rng, a), random_jet(M, all_M, rng, a)
        comp = types_compose(energy_rep(p1), energy_rep(p2))
        hom = max(hom, comp.distance(energy_rep(jet_mul(p1, p2))))
        ph = max(ph, fock.energy_phase_defect(p1, p2), abs(comp.c - 1.0))
    rec.add("homomorphism", 5, hom, 1e-10)
    rec.add("unit_phase", 5, ph, 1e-14)

    shift = 0.0
    for _ in range(5):
        psi = random_jet(M, all_M, rng, jet_scale(M))
        v = OneForm(M, jet_scale(M, 1.0) * rng.standard_normal(M.fibre_shape))
        b1 = beta(psi)
        b2 = b1 + energy.coboundary(v, psi)
        V = energy.V_matrix(psi)
        S_ = TypeS(np.eye(M.dim_H), -v.vec(), 1.0)
        lhs = types_compose(S_, TypeS(V, b1.vec(), 1.0))
        rhs = types_compose(TypeS(V, b2.vec(), 1.0), S_)
        grid = fock.default_grid([lhs, rhs], rng)
        shift = max(shift, fock.op_equal([(1.0, lhs)], [(1.0, rhs)], grid))
    rec.add("shift_intertwiner", 5, shift, 1e-10)

    psi = random_jet(M, all_M, rng, jet_scale(M))
    U = energy_rep(psi)
    out = types_apply(U, CoherentVec.vacuum(M.dim_H))
    bt = beta(psi).vec()
    vac = max(abs(out.coeffs[0] - np.exp(-0.5 * bt @ bt)), float(np.abs(out.vecs[0] - bt).max()))
    rec.add("vacuum_image", 0, vac, 1e-12)
    return rec.checks


# ---- gaussian


def suite_gaussian(cfg):
    rec = _Recorder("gaussian", cfg)
    rng = _rng(cfg, "gaussian")
    M = cfg.manifold()
    N = M.dim_H
    space = gauss.GaussianSpace.standard(N)
    fam = [0.4 * (rng.standard_normal(N) + 1j * rng.standard_normal(N)) / np.sqrt(N) for _ in range(4)]
    fam += [0.6 * rng.standard_normal(N) / np.sqrt(N) for _ in range(4)]
    pair = max(abs(gauss.theta_pairing(space, x, y) - fock.exp_inner(y, x)) for x in fam for y in fam)
    rec.add("pairing_closed_form", 6, pair, 1e-10)

    coh = [CoherentVec.exp(x) for x in fam]
    inter = 0.0
    for _ in range(3):
        psi = random_jet(M, Region.all(M), rng, jet_scale(M, 1.0))
        U = energy_rep(psi)
        lhs = [gauss.theta(space, types_apply(U, v)) for v in coh]
        rhs = [gauss.transformed_apply(psi, gauss.theta(space, v)) for v in coh]
        for i in range(len(coh)):
            for j in range(len(coh)):
                inter = max(inter, abs(gauss.theta_inner(lhs[i], lhs[j]) - gauss.theta_inner(rhs[i], rhs[j])))
                inter = max(inter, abs(gauss.theta_inner(lhs[i], gauss.theta(space, coh[j])) - gauss.theta_inner(rhs[i], gauss.theta(space, coh[j]))))
    rec.add("intertwining", 6, inter, 1e-10)

    # Monte Carlo sanity layer on a small space
    Ms = cfg.small()
    d = Ms.dim_H
    small = gauss.GaussianSpace.standard(d)
    Qr = rng.standard_normal((4, 4))
    skewed = gauss.GaussianSpace(Qr @ Qr.T / 4 + 0.5 * np.eye(4))
    worst_sigma = 0.0

    def score(est, se, exact):
        dd = est - exact
        parts = [abs(dd.real) / max(se.real, 1e-300)]
        if se.imag > 0:
            parts.append(abs(dd.imag) / se.imag)
        return max(parts)

    for sp, F in ((small, rng.standard_normal(d) / np.sqrt(d)), (skewed, rng.standard_normal(4) * 0.7)):
        est, se = gauss.mc_characteristic(sp, F, rng, cfg.mc_samples)
        worst_sigma = max(worst_sigma, score(est, se, gauss.characteristic(sp, F)))
    xr, yr = 0.5 * rng.standard_normal(d) / np.sqrt(d) * 2, 0.5 * rng.standard_normal(d) / np.sqrt(d) * 2
    xc = 0.3 * (rng.standard_normal(d) + 1j * rng.standard_normal(d)) / np.sqrt(d) * 2
    yc = 0.3 * (rng.standard_normal(d) + 1j * rng.standard_normal(d)) / np.sqrt(d) * 2
    for x, y in ((xr, yr), (xc, yc)):
        est, se = gauss.mc_theta_pairing(small, x, y, rng, cfg.mc_samples)
        worst_sigma = max(worst_sigma, score(est, se, gauss.theta_pairing(small, x, y)))
    # transformed functional against a plain one
    psi = random_jet(Ms, Region.all(Ms), rng, jet_scale(Ms, 1.0))
    Phi = gauss.transformed_apply(psi, gauss.theta(small, CoherentVec.exp(xc)))
    Psi = gauss.theta(small, CoherentVec.exp(yc))
    chi = small.sample(rng, cfg.mc_samples)
    est, se = gauss.mc_mean(np.conj(Phi(chi)) * Psi(chi))
    worst_sigma = max(worst_sigma, score(est, se, gauss.theta_inner(Phi, Psi)))
    rec.add("monte_carlo_sigmas", 6, worst_sigma, 4.0)
    return rec.checks


# ---- localnet


def _region_unitary(rng, mask):
    """Random unitary acting on the coordinates in ``mask`` and as I elsewhere."""
    A = np.eye(len(mask), dtype=complex)
    idx = np.flatnonzero(mask)
    A[np.ix_(idx, idx)] = scipy.stats.unitary_group.rvs(len(idx), random_state=rng)
    return A


def commutant_element(M, O, rng):
    """A type (S) operator of A(O'): identity on H(O), support of b off O."""
    mask = M.site_mask(O.sites)
    A = _region_unitary(rng, ~mask)
    b = (rng.standard_normal(M.dim_H) + 1j * rng.standard_normal(M.dim_H)) * (~mask) * 0.5 / np.sqrt(M.dim_H)
    return TypeS(A, b, np.exp(1j * rng.random()))


def plant_violation(U, M, O, kind, size, rng):
    """Perturb ``U`` by ``size`` so that one constraint fails.

    ``kind="A"`` rotates inside H(O), ``"b"`` adds a component of b on O and
    ``"mix"`` couples H(O) with H(O').
    """
    mask = M.site_mask(O.sites)
    N = M.dim_H
    if kind == "b":
        w = (rng.standard_normal(N) + 1j * rng.standard_normal(N)) * mask
        return TypeS(U.A, U.b + size * w / np.linalg.norm(w), U.c)
    E = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    if kind == "A":
        E = E * np.outer(mask, mask)
    elif kind == "mix":
        E = E * np.outer(mask, ~mask)
    else:
        raise ValueError(f"unknown plant {kind!r}")
    K = E - E.conj().T
    K /= np.linalg.norm(K, 2)
    return TypeS(U.A @ scipy.linalg.expm(size * K), U.b, U.c)


PLANT_SLOTS = {"A": ("fixes_H_O", "spade"), "b": ("supp_b",), "mix": ("invariance",)}


def suite_localnet(cfg):
    rec = _Recorder("localnet", cfg)
    rng = _rng(cfg, "localnet")
    M = cfg.manifold()
    all_M = Region.all(M)
    O = Region.parse(M, cfg.region)
    Oc = O.complement()

    loc = 0.0
    for _ in range(10):
        loc = max(loc, localnet.locality_check(random_jet(M, O, rng), random_jet(M, Oc, rng)))
    rec.add("disjoint_commutator", 7, loc, 1e-12)
    rec.add("overlap_witness", 0, localnet.locality_check(random_jet(M, O, rng), random_jet(M, O, rng)), 1e-4, ">=")
    conj = 0.0
    for _ in range(20):
        psi = random_jet(M, all_M, rng, jet_scale(M))
        U = random_types(rng, M.dim_H)
        W, _ = localnet.conjugate_types(psi, U)
        conj = max(conj, W.distance(localnet.conjugate_by_composition(psi, U)))
    rec.add("conjugation_two_path", 7, conj, 1e-10)
    _, th = localnet.conjugate_types(GaugeJet.identity(M), random_types(rng, M.dim_H))
    rec.add("theta_at_identity", 7, abs(th), 0.0, "==")

    gens = localnet.LocalGeneratorSet.random(O, cfg.n_generators, rng, cfg.epsilon)
    rec.add("generators_in_N0", 0, sum(not f for f in gens.in_N0), 0)
    tests = [lattice.random_field(M, O, rng) for _ in range(4)]
    base = commutant_element(M, O, rng)
    U = base if cfg.plant == "none" else plant_violation(base, M, O, cfg.plant, cfg.plant_size, rng)
    report = localnet.commutant_constraints(O, U, gens, tests)
    for slot, value in report.as_dict().items():
        rec.add(f"commutant.{slot}", 8, value, 1e-10)
    for kind, slots in PLANT_SLOTS.items():
        planted = plant_violation(base, M, O, kind, cfg.plant_size, rng)
        rep = localnet.commutant_constraints(O, planted, gens, tests)
        for slot in slots:
            rec.add(f"planted_{kind}.{slot}", 8, getattr(rep, slot), 1e-6, ">=")
    dec = liecore.cartan_root_decompose(M.group)
    cartan_tests = [lattice.random_field(M, O, rng, cartan_direction=True) for _ in range(3)]
    rec.add("root_constraint", 0, localnet.root_constraint_check(O, U.b, dec, cartan_tests), 1e-10)

    rank_gap, diamond = 0, 0.0
    for k in range(1, cfg.totality_max + 1):
        Ok = Region(M, frozenset(range(k)))
        dim = k * M.tangent_dim * M.dim_g
        for mode in ("beta", "v_dphi"):
            r, dl, dia = localnet.totality_rank(Ok, mode, 2 * dim, int(rng.integers(2**31)))
            rank_gap = max(rank_gap, abs(dl - r))
            diamond = max(diamond, dia)
    rec.add("totality_rank_gap", 9, rank_gap, 0)
    rec.add("diamond_identity", 9, diamond, 1e-12)

    psi = jet_from_algebra_field(default_bump(M))
    factors = localnet.near_identity_factorization(psi, cfg.factor_m, cfg.epsilon)
    rec.add("factorization_reconstruction", 10, lattice.jet_product(factors).distance(psi), 1e-10)
    rec.add("factor_size", 10, max(f.epsilon_size() for f in factors), cfg.epsilon)

    w = np.zeros(M.fibre_shape)
    outside = sorted(Oc.sites)
    w[outside[len(outside) // 2], 0, 0] = 1.0
    w[outside[-1], 0, 1] = 0.5
    omega = OneForm(M, w)
    omega = omega * (1.0 / omega.norm())
    few = localnet.LocalGeneratorSet.random(O, 6, rng, cfg.epsilon).jets
    measured, floor = localnet.vacuum_cyclicity_gap(O, few, omega, cfg.max_orbit)
    rec.add("vacuum_gap_margin", 11, measured - (np.e - 1.0), -1e-8, ">=")
    rec.add("vacuum_floor_rederived", 11, abs(floor - (np.e - 1.0)), 1e-12)

    v = random_coherent(rng, M.dim_H)
    u = random_coherent(rng, M.dim_H)
    split = abs(localnet.factor_inner(localnet.tensor_factorize(u, O), localnet.tensor_factorize(v, O)) - coh_inner(u, v))
    rec.add("tensor_factorization", 0, split, 1e-12)
    return rec.checks


# ---- modular


def suite_modular(cfg):
    rec = _Recorder("modular", cfg)
    rng = _rng(cfg, "modular")
    Ms = cfg.small()
    d = Ms.dim_H
    half = Region(Ms, frozenset(range(Ms.n_sites // 2)))
    P = localnet.subspace_projector(half).astype(complex)
    Pmask = Ms.site_mask(half.sites)

    items, proj = 0.0, 0.0
    for _ in range(cfg.modular_pairs):
        k1 = int(rng.integers(1, 2 * d - 1))
        K1 = modular.random_real_subspace(d, k1, rng)
        K2 = K1 + modular.random_real_subspace(d, int(rng.integers(1, 2 * d - k1 + 1)), rng)
        items = max(items, max(modular.complement_lattice_suite(K1, K2).values()))
        # one subspace split along P, one generic
        a = int(rng.integers(1, 2 * Pmask.sum()))
        c = int(rng.integers(1, 2 * (~Pmask).sum()))
        Va = (rng.standard_normal((d, a)) + 1j * rng.standard_normal((d, a))) * Pmask[:, None]
        Vc = (rng.standard_normal((d, c)) + 1j * rng.standard_normal((d, c))) * (~Pmask)[:, None]
        Ks = modular.RealSubspace.span(np.hstack([Va, Vc]), d)
        chk = modular.projection_checks(Ks, P)
        proj = max(proj, chk["conditions_agree"], chk.get("projected_complement", np.inf))
        proj = max(proj, modular.projection_checks(K1, P)["conditions_agree"])
    rec.add("complement_lattice", 12, items, 1e-8)
    rec.add("projection_items", 12, proj, 1e-8)

    ident, adj, sq = 0.0, 0.0, 0.0
    for _ in range(cfg.modular_pairs):
        K = modular.random_standard(cfg.modular_dim, rng)
        data = modular.canonical_involution(K)
        ident = max(ident, max(data.identities().values()))
        adj = max(adj, modular.involution_adjoint_residual(K), max(data.antilinearity().values()))
        h = K.complex_vectors() @ rng.standard_normal(K.dim)
        sq = max(sq, modular.second_quantized_S_check(K, h / np.linalg.norm(h), rng=rng))
    rec.add("modular_identities", 12, ident, 1e-10)
    rec.add("complement_involution", 0, adj, 1e-10)
    rec.add("second_quantized_S", 12, sq, 1e-10)

    standard = 0
    for mask in range(1, 2**Ms.n_sites - 1):
        O = Region(Ms, frozenset(i for i in range(Ms.n_sites) if mask >> i & 1))
        for real in (False, True):
            K = modular.RealSubspace.span(localnet.gauge_subspace_basis(O, real), d)
            standard += modular.is_standard(K)[0]
    rec.add("contrast_standard_count", 12, standard, 0)
    full = modular.RealSubspace.span(localnet.gauge_subspace_basis(Region.all(Ms), True), d)
    rec.add("contrast_full_real_standard", 0, int(modular.is_standard(full)[0]), 1, "==")
    return rec.checks


SUITE_FUNCS = {
    "typeS": suite_typeS,
    "cocycle": suite_cocycle,
    "energy": suite_energy,
    "gaussian": suite_gaussian,
    "localnet": suite_localnet,
    "modular": suite_modular,
}


def run_suite(name, config=None):
    """Run one named suite, or ``"all"``, and collect a :class:`SuiteReport`."""
    config = SuiteConfig() if config is None else config
    if name == "all":
        names = list(SUITES)
    elif name in SUITE_FUNCS:
        names = [name]
    else:
        raise ValueError(f"unknown suite {name!r}")
    checks, errors = [], []
    for n in names:
        try:
            checks.extend(SUITE_FUNCS[n](config))
        except (ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
            # an aborted suite is a failed check, not a crash of the run
            checks.append(Check(n, f"{n}.error", 0, float("inf"), 0.0))
            errors.append(f"{n}: {type(exc).__name__}: {exc}")
    return SuiteReport(name, config.as_dict(), checks, errors)


# ---- serialization


def _fmt(x):
    return repr(float(x))


def emit_report(report, format="records"):
    """Serialize a report.

    ``records`` is one JSON object per line: a header with the schema,
    suite, configuration and counts, then one object per check with keys
    ``suite, check, criterion, value, threshold, relation, passed``. Wall
    times are left out so the output is byte-stable. ``table`` is a fixed
    width text table that also shows wall time.
    """
    if format == "records":
        head = {
            "schema": RECORD_SCHEMA,
            "version": RECORD_VERSION,
            "suite": report.suite,
            "config": report.config,
            "n_checks": len(report.checks),
            "n_failed": len(report.failures),
            "errors": report.errors,
        }
        lines = [json.dumps(head, sort_keys=True)]
        lines += [json.dumps(c.record(), sort_keys=True) for c in report.checks]
        return "\n".join(lines) + "\n"
    if format == "table":
        status = "PASS" if report.passed else "FAIL"
        lines = [
            f"# suite={report.suite} seed={report.config.get('seed')} checks={len(report.checks)} failed={len(report.failures)} {status}",
            f"{'check':44s} {'crit':>4s} {'value':>24s} {'rel':>3s} {'threshold':>24s} {'status':>6s} {'wall_s':>8s}",
        ]
        lines += [f"# error {e}" for e in report.errors]
        for c in report.checks:
            lines.append(
                f"{c.name:44s} {c.criterion:4d} {_fmt(c.value):>24s} {c.relation:>3s} {_fmt(c.threshold):>24s} "
                f"{'PASS' if c.passed else 'FAIL':>6s} {c.wall:8.3f}"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {format!r}")


def parse_records(text):
    """Inverse of ``emit_report(..., "records")`` (wall times come back as 0)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty record stream")
    head = json.loads(lines[0])
    if head.get("schema") != RECORD_SCHEMA:
        raise ValueError("not a gaugenet report")
    checks = []
    for ln in lines[1:]:
        r = json.loads(ln)
        checks.append(Check(r["suite"], r["check"], r["criterion"], r["value"], r["threshold"], r["relation"]))
    return SuiteReport(head["suite"], head["config"], checks, head.get("errors", []))


def parse_table_values(text):
    """``{check: value}`` read back from a table, for cross-format comparison."""
    out = {}
    for ln in text.splitlines()[2:]:
        if ln.startswith("#"):
            continue
        parts = ln.split()
        if len(parts) >= 7:
            out[parts[0]] = float(parts[2])
    return out
