"""
Local structure of the net O -> M(O) generated by the energy representation.

Covers locality, conjugation of type (S) operators by U(psi), the commutant
constraints for operators commuting with local generators, totality of
local cocycle values, near-identity factorization of jets, the tensor
factorization over a region and its complement, and the failure of vacuum
cyclicity for proper regions.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import liecore
from .energy import V_apply, V_matrix, beta
from .fock import (
    CoherentVec,
    TypeS,
    _gram,
    energy_rep,
    herm,
    types_apply,
    types_compose,
    types_inverse,
    types_product,
)
from .lattice import (
    AlgebraField,
    GaugeJet,
    OneForm,
    Region,
    jet_from_algebra_field,
    jet_mul,
    jet_product,
    random_field,
    support,
)

DEFAULT_EPSILON = 0.2


class EpsilonNotReached(ValueError):
    pass


def subspace_projector(region):
    """Orthogonal projector onto H(O), diagonal in the flat site blocks."""
    mask = region.manifold.site_mask(region.sites)
    return np.diag(mask.astype(float))


def locality_check(psi1, psi2):
    """Distance between ``U(psi1)U(psi2)`` and ``U(psi2)U(psi1)`` as triples."""
    U1, U2 = energy_rep(psi1), energy_rep(psi2)
    return types_compose(U1, U2).distance(types_compose(U2, U1))


def _wrap(theta):
    return float((theta + np.pi) % (2 * np.pi) - np.pi)


def conjugate_types(psi, U):
    """``U(psi) U U(psi)^{-1}`` from the closed-form conjugation formulas.

    Returns ``(TypeS(A_psi, b_psi, c e^{i theta}), theta)`` with
    ``A_psi = V A V^{-1}``, ``b_psi = beta + V b - A_psi beta`` and
    ``theta = Im(<beta, V b> - <beta + V b, A_psi beta>)``.
    """
    V = V_matrix(psi)
    Vinv = V.T
    bt = beta(psi).vec()
    A_psi = V @ U.A @ Vinv
    Vb = V @ U.b
    b_psi = bt + Vb - A_psi @ bt
    theta = (herm(bt, Vb) - herm(bt + Vb, A_psi @ bt)).imag
    return TypeS(A_psi, b_psi, U.c * np.exp(1j * theta)), float(theta)


def conjugate_by_composition(psi, U):
    Up = energy_rep(psi)
    return types_compose(Up, types_compose(U, types_inverse(Up)))


@dataclass
class LocalGeneratorSet:
    region: Region
    jets: list
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        for psi in self.jets:
            if not support(psi).sites <= self.region.sites:
                raise ValueError("generator not supported in the region")

    @property
    def in_N0(self):
        return [psi.epsilon_size() <= self.epsilon for psi in self.jets]

    @classmethod
    def random(cls, region, count, rng, epsilon=DEFAULT_EPSILON):
        """Random jets supported in ``region`` and scaled into ``N_0(epsilon)``."""
        jets = []
        for _ in range(count):
            f = random_field(region.manifold, region, rng)
            s = 1.0
            psi = jet_from_algebra_field(f, s)
            while psi.epsilon_size() > 0.9 * epsilon:
                s *= 0.5
                psi = jet_from_algebra_field(f, s)
            jets.append(psi)
        return cls(region, jets, epsilon)


@dataclass
class CommutantReport:
    """Residuals for membership of a type (S) operator in A(O').

    ``conjugation``: max over generators of the change under conjugation.
    ``fixes_H_O``: ``||(A - I) P_O||``. ``spade``: max over test fields of
    ``||(A - I) dphi - [phi, b]||``. ``supp_b``: ``||P_O b||``.
    ``invariance``: ``||P_O A P_O'||``. ``phase``: max ``|theta|``.
    """

    conjugation: float = 0.0
    fixes_H_O: float = 0.0
    spade: float = 0.0
    supp_b: float = 0.0
    invariance: float = 0.0
    phase: float = 0.0
    n_generators: int = 0
    n_test_fields: int = 0

    SLOTS = ("conjugation", "fixes_H_O", "spade", "supp_b", "invariance", "phase")

    def as_dict(self):
        return {k: getattr(self, k) for k in self.SLOTS}

    def max(self):
        return max(self.as_dict().values())


def bracket_field(phi_field, vec):
    """Sitewise ``[phi(x), w(x)]`` for a flat (possibly complex) vector ``w``."""
    M = phi_field.manifold
    w = np.asarray(vec).reshape(M.fibre_shape)
    ad = liecore.ad_matrix(phi_field.phi, M.group)
    return np.einsum("sab,smb->sma", ad, w).reshape(-1)


def commutant_constraints(region, U, gens, test_fields):
    """Evaluate every slot of :class:`CommutantReport` for ``U``.

    ``region`` is O, the support of the generators; an operator of A(O')
    gives zero in every slot.
    """
    P = subspace_projector(region)
    Pc = np.eye(len(P)) - P
    eye = np.eye(U.dim)
    rep = CommutantReport(n_generators=len(gens.jets), n_test_fields=len(test_fields))
    for psi in gens.jets:
        W, theta = conjugate_types(psi, U)
        rep.conjugation = max(rep.conjugation, W.distance(U))
        rep.phase = max(rep.phase, abs(_wrap(theta)))
    rep.fixes_H_O = float(np.linalg.norm((U.A - eye) @ P, 2))
    rep.supp_b = float(np.linalg.norm(P @ U.b))
    rep.invariance = float(np.linalg.norm(P @ U.A @ Pc, 2))
    for f in test_fields:
        lhs = (U.A - eye) @ f.d().vec()
        rhs = bracket_field(f, U.b)
        rep.spade = max(rep.spade, float(np.linalg.norm(lhs - rhs)))
    return rep


def root_constraint_check(region, b, decomposition, test_fields):
    """max over roots and Cartan-valued test fields of ``||alpha(phi) b^alpha||`` on O.

    ``b`` is a flat vector of H; each covector component at each site is
    split into root-space parts with ``decomposition``.
    """
    M = region.manifold
    comps = np.asarray(b).reshape(M.fibre_shape)
    sites = sorted(region.sites)
    worst = 0.0
    for f in test_fields:
        for k in range(len(decomposition.roots)):
            total = 0.0
            for s in sites:
                a = decomposition.alpha(k, f.phi[s])
                for mu in range(M.tangent_dim):
                    _, parts = decomposition.components(comps[s, mu])
                    total += abs(a) ** 2 * np.linalg.norm(parts[k]) ** 2
            worst = max(worst, float(np.sqrt(total)))
    return worst


def _normalized_rank(samples, tol=1e-8):
    if not samples:
        return 0
    X = np.array(samples).T
    norms = np.linalg.norm(X, axis=0)
    X = X[:, norms > 0] / norms[norms > 0]
    if X.size == 0:
        return 0
    sv = np.linalg.svd(X, compute_uv=False)
    return int(np.sum(sv > tol))


def diamond_residual(psi, phi_field):
    """``V(psi) dphi - (beta(psi e^phi) - beta(psi))`` in max norm."""
    lhs = V_apply(psi, phi_field.d())
    rhs = beta(jet_mul(psi, jet_from_algebra_field(phi_field))) - beta(psi)
    return float(np.abs(lhs.comps - rhs.comps).max())


def totality_rank(region, mode, count, seed):
    """Rank of sampled local cocycle values against ``dim H(O)``.

    ``mode="beta"`` samples ``beta(psi)``; ``mode="v_dphi"`` samples
    ``V(psi) dphi`` with abelian-valued ``phi``. In both modes the identity
    ``V(psi) dphi = beta(psi e^phi) - beta(psi)`` is checked on every pair.

    Returns
    -------
    rank, dim_H_O, diamond : int, int, float
    """
    if mode not in ("beta", "v_dphi"):
        raise ValueError(f"unknown mode {mode!r}")
    M = region.manifold
    dim_local = len(region) * M.tangent_dim * M.dim_g
    if count < 2 * dim_local:
        raise ValueError("count must be at least twice dim H(O)")
    if not region.sites:
        return 0, 0, 0.0
    rng = np.random.default_rng(seed)
    samples = []
    diamond = 0.0
    for _ in range(count):
        psi = jet_from_algebra_field(random_field(M, region, rng))
        phi = random_field(M, region, rng, cartan_direction=True)
        diamond = max(diamond, diamond_residual(psi, phi))
        if mode == "beta":
            samples.append(beta(psi).vec())
        else:
            samples.append(V_apply(psi, phi.d()).vec())
    return _normalized_rank(samples), dim_local, diamond


def near_identity_factorization(psi, m, epsilon=DEFAULT_EPSILON):
    """Split ``psi`` into ``m`` equal factors ``exp(log(psi)/m)``.

    The logarithm is taken sitewise; its differential is recovered from the
    jet through the inverse of ``dexp_right``, and each factor is rebuilt as
    the jet of ``exp(L/m)``, so the factors multiply back to ``psi``.

    Raises
    ------
    CutLocus
        If a site value has no principal logarithm.
    EpsilonNotReached
        If a factor lies outside ``N_0(epsilon)``.
    """
    M = psi.manifold
    n = M.group
    L = np.zeros((M.n_sites, M.dim_g))
    trivial = np.all(psi.g == np.eye(n), axis=(1, 2))
    for s in np.flatnonzero(~trivial):
        L[s] = liecore.to_coeffs(liecore.alg_log(psi.g[s]), n)
    dL = psi.b.copy()
    live = ~trivial
    if np.any(live):
        dL[live] = liecore.dexp_right_inverse(L[live], psi.b[live], n)
    factor = jet_from_algebra_field(AlgebraField(M, L / m, dL / m))
    size = factor.epsilon_size()
    if size > epsilon:
        raise EpsilonNotReached(f"factor size {size:.3g} exceeds epsilon={epsilon} at m={m}")
    return [factor] * m


@dataclass(frozen=True, eq=False)
class TensorCoherent:
    """Coherent data on Gamma(H(O)) (x) Gamma(H(O')): terms
    ``lam_i Exp(l_i) (x) Exp(r_i)``."""

    coeffs: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def apply_left(self, U):
        """Act with ``U (x) I`` where ``U`` is a type (S) operator on H(O)."""
        v = types_apply(U, CoherentVec(self.coeffs, self.left, np.inf))
        return TensorCoherent(v.coeffs, v.vecs, self.right)


def tensor_factorize(v, region):
    mask = region.manifold.site_mask(region.sites)
    return TensorCoherent(v.coeffs, v.vecs[:, mask], v.vecs[:, ~mask])


def factor_inner(a, b):
    """Pairing as a product of the two factor pairings, term by term."""
    G = _gram(a.left, b.left) * _gram(a.right, b.right)
    return complex(a.coeffs @ G @ b.coeffs.conj())


def restrict_types(U, region):
    """Restriction of ``U`` to H(O); requires ``U`` to leave the split invariant."""
    mask = region.manifold.site_mask(region.sites)
    return TypeS(U.A[np.ix_(mask, mask)], U.b[mask], U.c)


def orbit_vectors(gens, dim, max_vectors=64):
    """Vacuum orbit: Omega, then U-words of growing length applied to Omega.

    Returns a list of ``(coeff, vector)`` with ``U_w Omega = coeff Exp(vector)``.
    """
    ops = [energy_rep(psi) for psi in gens]
    out = [(1.0 + 0j, np.zeros(dim, dtype=complex))]
    frontier = [TypeS.identity(dim)]
    while frontier and len(out) < max_vectors:
        nxt = []
        for W in frontier:
            for U in ops:
                if len(out) >= max_vectors:
                    break
                Wn = types_compose(U, W)
                nxt.append(Wn)
                coeff = Wn.c * np.exp(-0.5 * herm(Wn.b, Wn.b).real)
                out.append((coeff, Wn.b.copy()))
        frontier = nxt
    return out


def projected_distance_sq(target, family, rcond=1e-13):
    """Squared distance of ``Exp(target)`` from ``span{c_k Exp(y_k)}``."""
    coeffs = np.array([c for c, _ in family])
    Y = np.array([y for _, y in family])
    G = _gram(Y, Y) * np.outer(coeffs, coeffs.conj())
    g = _gram(Y, target[None, :])[:, 0] * coeffs
    w, U = np.linalg.eigh(G)
    keep = w > rcond * w.max()
    proj = U[:, keep].conj().T @ g
    captured = float(np.sum(np.abs(proj) ** 2 / w[keep]))
    return float(np.exp(herm(target, target).real)) - captured


def vacuum_cyclicity_gap(region, gens, omega_out, max_vectors=64):
    """Distance^2 of ``Exp(omega')`` from the local vacuum orbit, and its floor.

    ``omega'`` must be a nonzero form supported in the complement of O. The
    orbit lives in Gamma(H(O)) (x) Omega, whose projection of
    ``Exp(omega') = Omega (x) Exp(omega')`` is Omega, so the distance is at
    least ``exp(||omega'||^2) - 1``.
    """
    vec = omega_out.vec()
    if not np.any(vec != 0):
        raise ValueError("omega' must be nonzero")
    if not support(omega_out).sites <= region.complement().sites:
        raise ValueError("omega' must be supported outside O")
    for psi in gens:
        if not support(psi).sites <= region.sites:
            raise ValueError("generator not supported in O")
    family = orbit_vectors(gens, len(vec), max_vectors)
    measured = projected_distance_sq(vec.astype(complex), family)
    floor = float(np.expm1(omega_out.norm() ** 2))
    return measured, floor


def vacuum_kernel_dimension(gens, tol=1e-10):
    """``(k, rank, k - rank)`` for the map ``sum lam_i U(psi_i) -> sum lam_i U(psi_i) Omega``."""
    if not gens:
        return 0, 0, 0
    dim = gens[0].manifold.dim_H
    vecs, coeffs = [], []
    for psi in gens:
        U = energy_rep(psi)
        coeffs.append(np.exp(-0.5 * herm(U.b, U.b).real))
        vecs.append(U.b)
    Y = np.array(vecs)
    G = _gram(Y, Y) * np.outer(coeffs, coeffs)
    ev = np.linalg.eigvalsh(G)
    rank = int(np.sum(ev > tol * ev.max()))
    return len(gens), rank, len(gens) - rank


def gauge_subspace_basis(region, real=False):
    """Basis of H(O) (complex) or its real part H_0(O), as complex columns."""
    M = region.manifold
    idx = np.flatnonzero(M.site_mask(region.sites))
    E = np.eye(M.dim_H, dtype=complex)[:, idx]
    if real:
        return E
    return np.hstack([E, 1j * E])
