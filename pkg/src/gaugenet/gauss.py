"""
Gaussian-measure realization of the Fock space over a finite real space E.

The measure is ``N(0, Q)`` on E' = R^d, so ``E[exp(i chi.F)] = exp(-Q(F,F)/2)``.
The unitary ``theta`` sends ``Exp x`` to the functional
``exp(Q(x, x)/2 + i chi.x)``; for complex ``x`` the quadratic term is the
bilinear extension ``x^T Q x``, which reduces to ``||x||^2`` on real vectors
and is what keeps ``theta`` isometric on all of the complexification.
"""

from dataclasses import dataclass

import numpy as np

from .energy import V_matrix, beta
from .fock import EXP_LIMIT, NORM_CAP, CoherentVec, FockOverflow


@dataclass(frozen=True, eq=False)
class GaussianSpace:
    Q: np.ndarray

    def __post_init__(self):
        Q = np.atleast_2d(np.asarray(self.Q, dtype=float))
        if Q.shape[0] != Q.shape[1] or not np.allclose(Q, Q.T, atol=1e-12):
            raise ValueError("Q must be a symmetric matrix")
        if np.linalg.eigvalsh(Q).min() <= 1e-10:
            raise ValueError("Q must be positive definite")
        object.__setattr__(self, "Q", Q)

    @classmethod
    def standard(cls, d):
        return cls(np.eye(d))

    @property
    def dim(self):
        return self.Q.shape[0]

    def inner(self, x, y):
        """Sesquilinear ``Q(x, conj y)``, linear in ``x``."""
        return complex(np.asarray(x) @ self.Q @ np.asarray(y).conj())

    def bilinear(self, x, y):
        return complex(np.asarray(x) @ self.Q @ np.asarray(y))

    def sample(self, rng, count):
        L = np.linalg.cholesky(self.Q)
        return rng.standard_normal((count, self.dim)) @ L.T


def characteristic(space, F):
    """Closed form ``exp(-Q(F, F)/2)`` of the Fourier transform of the measure."""
    F = np.asarray(F, dtype=float)
    return float(np.exp(-0.5 * F @ space.Q @ F))


def gaussian_fourier(space, z):
    """``E[exp(i chi.z)]`` for complex ``z``; entire continuation of the above."""
    z = np.asarray(z, dtype=complex)
    return complex(np.exp(-0.5 * (z @ space.Q @ z)))


def mc_mean(samples_values):
    """Mean and standard error of a sample of complex values (per part)."""
    v = np.asarray(samples_values)
    n = len(v)
    mean = v.mean()
    se = complex(v.real.std(ddof=1) / np.sqrt(n), v.imag.std(ddof=1) / np.sqrt(n))
    return complex(mean), se


def mc_characteristic(space, F, rng, count=100_000):
    chi = space.sample(rng, count)
    return mc_mean(np.exp(1j * chi @ np.asarray(F, dtype=float)))


def within_sigma(estimate, stderr, exact, k=4.0):
    """Real and imaginary parts each within ``k`` standard errors."""
    d = estimate - exact
    ok_re = abs(d.real) <= k * max(stderr.real, 1e-300)
    ok_im = abs(d.imag) <= k * max(stderr.imag, 1e-300) if stderr.imag > 0 else abs(d.imag) <= 1e-12
    return bool(ok_re and ok_im)


@dataclass(frozen=True, eq=False)
class ThetaFunctional:
    """``Phi(chi) = sum_i lam_i exp(Q(x_i, x_i)/2 + i chi.x_i)``."""

    space: GaussianSpace
    coeffs: np.ndarray
    vecs: np.ndarray
    norm_cap: float = NORM_CAP

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        vecs = np.asarray(self.vecs, dtype=complex)
        if vecs.ndim == 1:
            vecs = vecs[None, :]
        if len(vecs) and np.linalg.norm(vecs, axis=1).max() > self.norm_cap:
            raise FockOverflow("functional vector exceeds norm cap")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "vecs", vecs)

    def __call__(self, chi):
        """Evaluate at points ``chi`` of shape (k, d)."""
        chi = np.atleast_2d(chi)
        quad = 0.5 * np.einsum("id,de,ie->i", self.vecs, self.space.Q, self.vecs)
        return np.exp(quad[None, :] + 1j * chi @ self.vecs.T) @ self.coeffs


def theta(space, v):
    """Image of a coherent vector; same coefficient/vector list."""
    return ThetaFunctional(space, v.coeffs, v.vecs, v.norm_cap)


def theta_pairing(space, x, y):
    """``E[conj(theta Exp x) theta Exp y]`` by the Gaussian integral.

    Combines the two quadratic prefactors with the Fourier transform at
    ``y - conj(x)``; equals ``<Exp y, Exp x>`` when theta is isometric.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    xc = x.conj()
    z = y - xc
    # prefactors times E[exp(i chi.z)] = exp(-z^T Q z / 2), kept in log form
    expo = 0.5 * space.bilinear(xc, xc) + 0.5 * space.bilinear(y, y) - 0.5 * space.bilinear(z, z)
    if expo.real > EXP_LIMIT:
        raise FockOverflow("pairing exponent overflows")
    return complex(np.exp(expo))


def theta_inner(Phi, Psi):
    """``E[conj(Phi) Psi]`` in closed form, term by term."""
    total = 0j
    for a, x in zip(Phi.coeffs, Phi.vecs):
        for b, y in zip(Psi.coeffs, Psi.vecs):
            total += np.conj(a) * b * theta_pairing(Phi.space, x, y)
    return complex(total)


def mc_theta_pairing(space, x, y, rng, count=100_000):
    chi = space.sample(rng, count)
    fx = ThetaFunctional(space, [1.0], x)(chi)
    fy = ThetaFunctional(space, [1.0], y)(chi)
    return mc_mean(np.conj(fx) * fy)


def transform_terms(V, b, Phi):
    """``[U Phi](chi) = exp(i chi.b) Phi(V^T chi)`` for Q-orthogonal real V.

    Each term ``exp(Q(x,x)/2 + i chi.x)`` becomes
    ``exp(Q(x,x)/2 + i chi.(Vx + b))``; the coefficient absorbs the change of
    the quadratic prefactor.
    """
    Q = Phi.space.Q
    new = Phi.vecs @ V.T + np.asarray(b)[None, :]
    old_q = 0.5 * np.einsum("id,de,ie->i", Phi.vecs, Q, Phi.vecs)
    new_q = 0.5 * np.einsum("id,de,ie->i", new, Q, new)
    coeffs = Phi.coeffs * np.exp(old_q - new_q)
    return ThetaFunctional(Phi.space, coeffs, new, Phi.norm_cap)


def transformed_apply(psi, Phi):
    """Gauge transformation acting on the measure side."""
    return transform_terms(V_matrix(psi), beta(psi).vec().real, Phi)
