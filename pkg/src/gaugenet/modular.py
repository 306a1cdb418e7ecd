"""
Real subspaces of a complex space C^d, symplectic complements and the
modular data of standard subspaces.

Complex vectors are identified with real vectors ``(Re h, Im h)`` in R^{2d}.
Multiplication by ``i`` is the matrix ``J``; real-linear and antilinear maps
are plain 2d x 2d real matrices, antilinear meaning ``J s = -s J``.
``Re<h, k>`` is the dot product, and ``Im<h, k> = r(h) . J r(k)``.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .fock import CoherentVec, coh_inner, types_apply, weyl

RANK_TOL = 1e-8


class NotStandard(ValueError):
    pass


def realify(h):
    h = np.asarray(h, dtype=complex)
    return np.concatenate([h.real, h.imag], axis=0)


def complexify(r):
    r = np.asarray(r, dtype=float)
    d = r.shape[0] // 2
    return r[:d] + 1j * r[d:]


def complex_structure(d):
    Z = np.zeros((d, d))
    I = np.eye(d)
    return np.block([[Z, -I], [I, Z]])


def im_form(d):
    """Matrix ``S`` with ``Im<h, k> = r(h)^T S r(k)``."""
    return complex_structure(d)


def complex_linear_real(A):
    """Real 2d x 2d matrix of a complex-linear operator on C^d."""
    A = np.asarray(A, dtype=complex)
    return np.block([[A.real, -A.imag], [A.imag, A.real]])


def _orth(M, tol=RANK_TOL):
    if M.size == 0 or M.shape[1] == 0:
        return np.zeros((M.shape[0], 0))
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    return U[:, s > tol * max(1.0, s.max(initial=0.0))]


@dataclass(frozen=True, eq=False)
class RealSubspace:
    """Real span of complex vectors in C^d, kept as a real orthonormal basis."""

    basis: np.ndarray
    d: int

    @classmethod
    def span(cls, vectors, d=None):
        """Real span of the columns (complex vectors) of ``vectors``."""
        V = np.asarray(vectors, dtype=complex)
        if V.ndim == 1:
            V = V[:, None]
        d = V.shape[0] if d is None else d
        R = realify(V) if V.size else np.zeros((2 * d, 0))
        return cls(_orth(R), d)

    @classmethod
    def from_real(cls, R, d):
        return cls(_orth(np.asarray(R, dtype=float).reshape(2 * d, -1)), d)

    @classmethod
    def zero(cls, d):
        return cls(np.zeros((2 * d, 0)), d)

    @classmethod
    def full(cls, d):
        return cls(np.eye(2 * d), d)

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def projector(self):
        return self.basis @ self.basis.T

    def complex_vectors(self):
        return complexify(self.basis)

    def times_i(self):
        return RealSubspace(complex_structure(self.d) @ self.basis, self.d)

    def map(self, R):
        """Image under a real-linear map given as a 2d x 2d matrix."""
        return RealSubspace(_orth(R @ self.basis), self.d)

    def __add__(self, other):
        return RealSubspace(_orth(np.hstack([self.basis, other.basis])), self.d)

    def __and__(self, other):
        return intersection(self, other)

    def contains(self, other):
        """Residual ``||(I - P_self) basis_other||``; zero when other <= self."""
        if other.dim == 0:
            return 0.0
        return float(np.linalg.norm(other.basis - self.projector @ other.basis, 2))


def intersection(K1, K2, tol=RANK_TOL):
    d = K1.d
    I = np.eye(2 * d)
    stacked = np.vstack([I - K1.projector, I - K2.projector])
    N = scipy.linalg.null_space(stacked, rcond=tol)
    return RealSubspace(_orth(N), d)


def subspace_distance(K1, K2):
    """Symmetric projection-difference norm; zero iff the subspaces agree."""
    return float(np.linalg.norm(K1.projector - K2.projector, 2))


def symplectic_complement(K, tol=RANK_TOL):
    """``{h : Im<h, k> = 0 for all k in K}`` by solving the real-linear system."""
    d = K.d
    if K.dim == 0:
        return RealSubspace.full(d)
    rows = (im_form(d) @ K.basis).T
    N = scipy.linalg.null_space(rows, rcond=tol)
    return RealSubspace(_orth(N), d)


def complex_orthogonal_complement(K, tol=RANK_TOL):
    """``{h : <h, k> = 0 for all k in K}`` (both real and imaginary parts)."""
    d = K.d
    if K.dim == 0:
        return RealSubspace.full(d)
    rows = np.vstack([K.basis.T, (im_form(d) @ K.basis).T])
    N = scipy.linalg.null_space(rows, rcond=tol)
    return RealSubspace(_orth(N), d)


def is_standard(K, tol=RANK_TOL):
    """Whether ``K + iK`` is everything and ``K cap iK = 0``.

    Returns ``(flag, diagnostics)`` with the real ranks involved.
    """
    iK = K.times_i()
    total = (K + iK).dim
    meet = intersection(K, iK, tol).dim
    diag = {"dim_K": K.dim, "dim_K_plus_iK": total, "dim_K_meet_iK": meet, "real_dim_H": 2 * K.d}
    return (total == 2 * K.d and meet == 0), diag


@dataclass(frozen=True, eq=False)
class ModularData:
    """Canonical involution ``s`` and its polar factors ``s = j delta^{1/2}``."""

    K: RealSubspace
    s: np.ndarray
    j: np.ndarray
    delta: np.ndarray
    delta_half: np.ndarray
    delta_half_inv: np.ndarray

    def identities(self):
        """Residuals of ``j^2 = I``, ``j delta^{1/2} = delta^{-1/2} j`` and ``j(K) = K'``."""
        I = np.eye(len(self.j))
        r1 = float(np.abs(self.j @ self.j - I).max())
        r2 = float(np.abs(self.j @ self.delta_half - self.delta_half_inv @ self.j).max())
        r3 = subspace_distance(self.K.map(self.j), symplectic_complement(self.K))
        return {"j_squared": r1, "j_delta": r2, "jK_is_Kprime": r3}

    def antilinearity(self):
        """Residuals of ``J s = -s J`` and ``J j = -j J``; ``delta`` commutes with J."""
        J = complex_structure(self.K.d)
        return {
            "s": float(np.abs(J @ self.s + self.s @ J).max()),
            "j": float(np.abs(J @ self.j + self.j @ J).max()),
            "delta": float(np.abs(J @ self.delta - self.delta @ J).max()),
        }


def _involution_matrix(K):
    J = complex_structure(K.d)
    B = K.basis
    basis = np.hstack([B, J @ B])
    image = np.hstack([B, -(J @ B)])
    return image @ np.linalg.inv(basis)


def canonical_involution(K):
    """``s: h + ik -> h - ik`` and its polar decomposition.

    Raises
    ------
    NotStandard
    """
    ok, _ = is_standard(K)
    if not ok:
        raise NotStandard("subspace is not standard")
    s = _involution_matrix(K)
    # adjoint of a real-linear map for Re<.,.> is the transpose, so
    # delta = s^T s; the polar factors come from one SVD s = U S V^T, which
    # keeps j orthogonal to rounding even when delta is badly conditioned
    U, S, Vt = np.linalg.svd(s)
    j = U @ Vt
    half = Vt.T @ np.diag(S) @ Vt
    half_inv = Vt.T @ np.diag(1.0 / S) @ Vt
    delta = Vt.T @ np.diag(S * S) @ Vt
    return ModularData(K, s, j, delta, half, half_inv)


def involution_adjoint_residual(K):
    """``K'`` is standard and its involution equals ``s^T``."""
    Kp = symplectic_complement(K)
    ok, _ = is_standard(Kp)
    if not ok:
        return np.inf
    return float(np.abs(_involution_matrix(Kp) - _involution_matrix(K).T).max())


def complement_lattice_suite(K1, K2, P=None):
    """Residuals of the lattice properties of symplectic complements.

    ``K1 <= K2`` is assumed for the antitonicity entry. If a complex
    orthogonal projection ``P`` (d x d) is given and commutes with ``K1``,
    the projection identities are checked too.
    """
    d = K1.d
    c1, c2 = symplectic_complement(K1), symplectic_complement(K2)
    out = {}
    # (1) the complement is annihilated by the imaginary form
    S = im_form(d)
    out["complement_is_real_subspace"] = float(np.abs(c1.basis.T @ S @ K1.basis).max(initial=0.0))
    # (2) antitone
    out["antitone"] = c1.contains(c2)
    # (3) double complement
    out["double_complement"] = subspace_distance(symplectic_complement(c1), K1)
    # (4) (K + iK)' = K' cap iK' = orthogonal complement
    lhs = symplectic_complement(K1 + K1.times_i())
    mid = intersection(c1, c1.times_i())
    rhs = complex_orthogonal_complement(K1)
    out["complexified_complement"] = max(subspace_distance(lhs, mid), subspace_distance(mid, rhs))
    # (5) complement of the whole space
    out["dense_complement"] = float(symplectic_complement(RealSubspace.full(d)).dim)
    if P is not None:
        out.update(projection_checks(K1, P))
    return out


def projection_conditions(K, P):
    """The four invariance conditions, each as a containment residual."""
    Pr = complex_linear_real(P)
    Qr = np.eye(2 * K.d) - Pr
    Kp = symplectic_complement(K)
    return {
        "PK<=K": K.contains(K.map(Pr)),
        "(1-P)K<=K": K.contains(K.map(Qr)),
        "PK'<=K'": Kp.contains(Kp.map(Pr)),
        "(1-P)K'<=K'": Kp.contains(Kp.map(Qr)),
    }


def projection_checks(K, P, tol=RANK_TOL):
    """Equivalence of the conditions and ``P(K') = (PK)' cap PH``."""
    cond = projection_conditions(K, P)
    flags = [v <= tol for v in cond.values()]
    out = {"conditions_agree": 0.0 if len(set(flags)) == 1 else 1.0}
    if all(flags):
        Pr = complex_linear_real(P)
        PH = RealSubspace.from_real(Pr, K.d)
        lhs = symplectic_complement(K).map(Pr)
        rhs = intersection(symplectic_complement(K.map(Pr)), PH)
        out["projected_complement"] = subspace_distance(lhs, rhs)
    return out


def second_quantized_S_check(K, h, probes=8, rng=None):
    """Compare ``Gamma(s) W(h) Omega`` with ``W(h)* Omega = W(-h) Omega``.

    ``Gamma(s)`` acts antilinearly on coherent vectors,
    ``lam Exp(xi) -> conj(lam) Exp(s xi)``. Returns the norm of the
    largest pairing of the difference with probe exponential vectors
    (the vacuum, both exponents involved, and ``probes`` random ones).
    """
    data = canonical_involution(K)
    h = np.asarray(h, dtype=complex)
    d = K.d
    vac = CoherentVec.vacuum(d)
    left = types_apply(weyl(h), vac)
    new_vecs = np.array([complexify(data.s @ realify(x)) for x in left.vecs])
    gamma_s = CoherentVec(left.coeffs.conj(), new_vecs)
    right = types_apply(weyl(-h), vac)
    diff = gamma_s - right
    rng = np.random.default_rng(0) if rng is None else rng
    points = [np.zeros(d), gamma_s.vecs[0], right.vecs[0]]
    points += [0.5 * (rng.standard_normal(d) + 1j * rng.standard_normal(d)) for _ in range(probes)]
    return max(abs(coh_inner(CoherentVec.exp(p), diff)) for p in points)


def random_standard(d, rng):
    """Real span of ``T e_k`` for a random invertible complex ``T``; generic
    standard subspace with nontrivial modular operator."""
    T = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return RealSubspace.span(T, d)


def random_real_subspace(d, k, rng):
    return RealSubspace.from_real(rng.standard_normal((2 * d, k)), d)
