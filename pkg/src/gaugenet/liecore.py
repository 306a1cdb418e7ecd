"""
Numerics for the compact groups SU(2), SU(3) and their Lie algebras.

Algebra elements are carried two ways: as anti-Hermitian traceless matrices,
and as real coefficient vectors in a basis that is orthonormal for the
inner product ``-B(X, Y) = -Tr(ad X ad Y)``. Every other module in the
package works with the coefficient vectors.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg


class CutLocus(ValueError):
    """Raised when the principal logarithm is not defined."""


class Unsupported(ValueError):
    """Raised for groups other than SU(2) and SU(3)."""


SUPPORTED = (2, 3)


def _check_n(n):
    if n not in SUPPORTED:
        raise Unsupported(f"only su(2) and su(3) are supported, got n={n}")


@lru_cache(maxsize=None)
def _gell_mann(n):
    """Generalized Gell-Mann matrices, normalized to tr(l_a l_b) = 2 delta_ab."""
    mats = []
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = m[k, j] = 1.0
            mats.append(m)
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = -1j
            m[k, j] = 1j
            mats.append(m)
    for l in range(1, n):
        m = np.zeros((n, n), dtype=complex)
        m[np.arange(l), np.arange(l)] = 1.0
        m[l, l] = -l
        m *= np.sqrt(2.0 / (l * (l + 1)))
        mats.append(m)
    return np.array(mats)


@lru_cache(maxsize=None)
def _basis(n):
    # -B(X, Y) = -2n tr(XY) on su(n), so T_a = i l_a / (2 sqrt(n)) is orthonormal.
    basis = 1j * _gell_mann(n) / (2.0 * np.sqrt(n))
    basis.setflags(write=False)
    return basis


def algebra_basis(n):
    """Return the orthonormal basis of su(n) as an array of shape (dim, n, n)."""
    _check_n(n)
    return _basis(n)


def algebra_dim(n):
    _check_n(n)
    return n * n - 1


def cartan_indices(n):
    """Indices of the diagonal basis elements (a Cartan subalgebra)."""
    _check_n(n)
    dim = n * n - 1
    return list(range(dim - (n - 1), dim))


def to_matrix(coeffs, n):
    """Coefficient vector(s) of shape (..., dim) to matrices (..., n, n).

    Complex coefficients give elements of the complexified algebra.
    """
    return np.tensordot(np.asarray(coeffs), _basis(n), axes=([-1], [0]))


def to_coeffs(X, n):
    """Matrices (..., n, n) to coefficient vectors (..., dim).

    Uses Frobenius orthogonality of the basis; for an element of su(n) the
    result is real and the imaginary part is dropped.
    """
    basis = _basis(n)
    X = np.asarray(X)
    # tr(T_a^dagger X) / tr(T_a^dagger T_a); the denominator is 1/(2n).
    c = np.einsum("aij,...ij->...a", basis.conj(), X) * (2.0 * n)
    return c.real


def to_coeffs_complex(X, n):
    """Like :func:`to_coeffs` but keeps the complex part (complexified algebra)."""
    basis = _basis(n)
    return np.einsum("aij,...ij->...a", basis.conj(), np.asarray(X)) * (2.0 * n)


def bracket(X, Y):
    return X @ Y - Y @ X


@lru_cache(maxsize=None)
def structure_constants(n):
    """f[a, b, c] with [T_a, T_b] = sum_c f[a, b, c] T_c."""
    basis = _basis(n)
    comm = np.einsum("aij,bjk->abik", basis, basis) - np.einsum("bij,ajk->abik", basis, basis)
    f = to_coeffs(comm, n)
    f.setflags(write=False)
    return f


def ad_matrix(x, n):
    """Matrix of ad_X on coefficient space, for X with coefficients ``x``.

    Accepts a batch ``(..., dim)`` and returns ``(..., dim, dim)``.
    ``(ad_X)[c, b]`` is the ``c``-coefficient of ``[X, T_b]``.
    """
    f = structure_constants(n)
    return np.einsum("...a,abc->...cb", np.asarray(x), f)


def bracket_coeffs(x, y, n):
    """Bracket of elements given by (possibly complex, batched) coefficients."""
    f = structure_constants(n)
    return np.einsum("...a,...b,abc->...c", np.asarray(x), np.asarray(y), f)


def killing_form(X, Y, n):
    """B(X, Y) = Tr(ad X ad Y) computed from explicit ad matrices."""
    adx = ad_matrix(to_coeffs(X, n), n)
    ady = ad_matrix(to_coeffs(Y, n), n)
    return float(np.trace(adx @ ady))


def killing_inner(X, Y, n):
    """The positive-definite inner product -B(X, Y) on su(n)."""
    return -killing_form(X, Y, n)


def alg_exp(X):
    """Matrix exponential of an algebra element (or a batch of them)."""
    X = np.asarray(X)
    if X.ndim == 2:
        return scipy.linalg.expm(X)
    out = np.empty_like(X, dtype=complex)
    for idx in np.ndindex(X.shape[:-2]):
        out[idx] = scipy.linalg.expm(X[idx])
    return out


def alg_log(g, cut_margin=1e-6):
    """Principal logarithm of a special unitary matrix.

    Raises
    ------
    CutLocus
        If an eigenvalue argument lies within ``cut_margin`` of +-pi.
    """
    g = np.asarray(g)
    n = g.shape[-1]
    T, Z = scipy.linalg.schur(g, output="complex")
    eig = np.diag(T)
    theta = np.angle(eig)
    if np.any(np.pi - np.abs(theta) < cut_margin):
        raise CutLocus("eigenvalue argument too close to pi")
    X = Z @ np.diag(1j * theta) @ Z.conj().T
    X = 0.5 * (X - X.conj().T)
    return X - np.trace(X) / n * np.eye(n)


def Ad(g, X):
    """Adjoint action g X g^{-1}."""
    g = np.asarray(g)
    return g @ X @ np.swapaxes(g.conj(), -1, -2)


def Ad_matrix(g):
    """Matrix of Ad_g on coefficient space; batched over leading axes.

    The result is real orthogonal. Exact identity matrices map to the exact
    identity so that sites where a gauge transformation is trivial stay
    bit-for-bit untouched.
    """
    g = np.asarray(g)
    n = g.shape[-1]
    basis = _basis(n)
    rotated = np.einsum("...ij,bjk,...lk->...bil", g, basis, g.conj())
    M = np.swapaxes(to_coeffs(rotated, n), -1, -2)
    trivial = np.all(g == np.eye(n), axis=(-1, -2))
    if np.any(trivial):
        M[trivial] = np.eye(n * n - 1)
    return M


def _dexp_fn(z):
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) < 1e-4
    zs = z[small]
    out[small] = 1 + zs / 2 + zs**2 / 6 + zs**3 / 24
    zl = z[~small]
    out[~small] = np.expm1(zl) / zl
    return out


def _dexp_inv_fn(z):
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) < 1e-4
    zs = z[small]
    out[small] = 1 - zs / 2 + zs**2 / 12
    zl = z[~small]
    out[~small] = zl / np.expm1(zl)
    return out


def _ad_spectral(phi, n, fn):
    """fn(ad_phi) for a batch of coefficient vectors, via eigh of i ad_phi."""
    ad = ad_matrix(phi, n)
    # ad_phi is real antisymmetric, so i ad_phi is Hermitian.
    mu, U = np.linalg.eigh(1j * ad)
    vals = fn(-1j * mu)
    return np.einsum("...ij,...j,...kj->...ik", U, vals, U.conj())


def dexp_right(phi, delta, n):
    """Right-trivialized derivative of the exponential map.

    Returns ``(d/dt exp(phi + t delta)|_{t=0}) exp(-phi)`` as coefficients,
    i.e. ``f(ad_phi) delta`` with ``f(z) = (e^z - 1)/z``.

    Parameters
    ----------
    phi : array_like, shape (..., dim)
        Base point coefficients.
    delta : array_like, shape (..., dim) or (..., k, dim)
        Direction(s). Extra axis ``k`` (covector components) is broadcast.
    n : int
        Group selector.
    """
    phi = np.asarray(phi, dtype=float)
    delta = np.asarray(delta, dtype=float)
    F = _ad_spectral(phi, n, _dexp_fn).real
    if delta.ndim == phi.ndim:
        return np.einsum("...ij,...j->...i", F, delta)
    return np.einsum("...ij,...kj->...ki", F, delta)


def dexp_right_inverse(phi, b, n):
    """Inverse of :func:`dexp_right` in the direction argument."""
    phi = np.asarray(phi, dtype=float)
    b = np.asarray(b, dtype=float)
    F = _ad_spectral(phi, n, _dexp_inv_fn).real
    if b.ndim == phi.ndim:
        return np.einsum("...ij,...j->...i", F, b)
    return np.einsum("...ij,...kj->...ki", F, b)


def random_algebra(rng, n, scale=1.0, size=None):
    """Random coefficient vector(s) with standard normal entries times ``scale``."""
    shape = (algebra_dim(n),) if size is None else tuple(np.atleast_1d(size)) + (algebra_dim(n),)
    return scale * rng.standard_normal(shape)


def random_group(rng, n, scale=1.0):
    return alg_exp(to_matrix(random_algebra(rng, n, scale), n))


@dataclass(frozen=True)
class RootDecomposition:
    """Cartan subalgebra and root spaces of su(n)_C.

    ``cartan`` holds real coefficient vectors spanning the Cartan subalgebra.
    ``roots[k]`` is the real functional alpha evaluated on the Cartan basis,
    so ``alpha(h) = roots[k] @ (coordinates of h in cartan)``.
    ``root_vectors[k]`` is a unit complex coefficient vector spanning the
    (one-dimensional) root space, with ``[h, e] = i alpha(h) e``.
    """

    n: int
    cartan: np.ndarray
    roots: np.ndarray
    root_vectors: np.ndarray

    def alpha(self, k, h):
        """Value of root ``k`` on the algebra element with coefficients ``h``."""
        return self.roots[k] @ (self.cartan @ np.asarray(h))

    def components(self, z):
        """Split complex coefficients ``z`` into Cartan part and root parts.

        Returns ``(z_h, [z_alpha ...])`` where every piece is a complex
        coefficient vector and the pieces sum to ``z``.
        """
        z = np.asarray(z, dtype=complex)
        z_h = self.cartan.T @ (self.cartan @ z)
        parts = [e * np.vdot(e, z) for e in self.root_vectors]
        return z_h, parts

    def bracket_residual(self):
        """max |[h, e_alpha] - i alpha(h) e_alpha| over Cartan basis and roots."""
        worst = 0.0
        for j, h in enumerate(self.cartan):
            for k, e in enumerate(self.root_vectors):
                lhs = bracket_coeffs(h, e, self.n)
                rhs = 1j * self.roots[k][j] * e
                worst = max(worst, float(np.abs(lhs - rhs).max()))
        return worst


def cartan_root_decompose(n):
    """Root space decomposition of su(n)_C relative to the diagonal Cartan."""
    _check_n(n)
    dim = algebra_dim(n)
    cartan = np.eye(dim)[cartan_indices(n)]
    ads = [ad_matrix(h, n) for h in cartan]
    # A generic Cartan element separates all root spaces.
    weights = np.linspace(1.0, 0.37, len(ads)) + np.arange(len(ads)) * np.pi / 7
    generic = sum(w * a for w, a in zip(weights, ads))
    mu, U = np.linalg.eigh(1j * generic)
    roots, vecs = [], []
    for j in range(dim):
        if abs(mu[j]) < 1e-9:
            continue
        e = U[:, j]
        # ad_h e = i alpha(h) e; read alpha off each Cartan basis element.
        alpha = np.array([np.vdot(e, a @ e) / 1j for a in ads]).real
        roots.append(alpha)
        vecs.append(e / np.linalg.norm(e))
    return RootDecomposition(n, cartan, np.array(roots), np.array(vecs))
