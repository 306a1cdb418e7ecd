"""
Exact Fock-space calculus on the span of exponential vectors.

Every vector is a finite combination ``sum_i lam_i Exp(x_i)`` and every
operator is of type (S), ``U(A, b, c) Exp x = c exp(-|b|^2/2 - <Ax, b>)
Exp(Ax + b)``. Inner products are linear in the first argument:
``<x, y> = sum_k x_k conj(y_k)`` and ``<Exp x, Exp y> = exp(<x, y>)``.

With this convention the composition phase is ``exp(i Im<b, A b'>)`` and the
Weyl operators ``W(h) = U(I, ih/sqrt2, 1)`` satisfy
``W(h) W(k) = exp(+i/2 Im<h, k>) W(h + k)``; see :func:`weyl_phase_sign`.
"""

from dataclasses import dataclass

import numpy as np

from .energy import V_matrix, beta

NORM_CAP = 6.0
EXP_LIMIT = 700.0


class FockOverflow(ArithmeticError):
    """Exponent too large for double precision, or a norm cap exceeded."""


class DimensionMismatch(ValueError):
    pass


def herm(x, y):
    """``<x, y>``, linear in ``x``."""
    return complex(np.vdot(y, x))


def exp_inner(x, y):
    z = herm(np.asarray(x), np.asarray(y))
    if z.real > EXP_LIMIT:
        raise FockOverflow(f"Re<x, y> = {z.real:.1f} overflows")
    return complex(np.exp(z))


def _gram(X, Y):
    """Matrix ``exp(<x_i, y_j>)`` for row stacks X, Y."""
    Z = X @ Y.conj().T
    if Z.size and Z.real.max() > EXP_LIMIT:
        raise FockOverflow("Gram exponent overflows")
    return np.exp(Z)


@dataclass(frozen=True, eq=False)
class CoherentVec:
    """Finite combination of exponential vectors.

    ``coeffs`` has shape (m,) and ``vecs`` shape (m, N).
    """

    coeffs: np.ndarray
    vecs: np.ndarray
    norm_cap: float = NORM_CAP

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        vecs = np.asarray(self.vecs, dtype=complex)
        if vecs.ndim == 1:
            vecs = vecs[None, :]
        if len(coeffs) != len(vecs):
            raise ValueError("coefficient count does not match vector count")
        if len(vecs) and np.linalg.norm(vecs, axis=1).max() > self.norm_cap:
            raise FockOverflow(f"exponential vector norm exceeds cap {self.norm_cap}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "vecs", vecs)

    @classmethod
    def exp(cls, x, coeff=1.0, norm_cap=NORM_CAP):
        return cls(np.array([coeff]), np.asarray(x)[None, :], norm_cap)

    @classmethod
    def vacuum(cls, dim):
        return cls.exp(np.zeros(dim))

    @property
    def dim(self):
        return self.vecs.shape[1]

    def __add__(self, other):
        return CoherentVec(
            np.concatenate([self.coeffs, other.coeffs]),
            np.vstack([self.vecs, other.vecs]),
            max(self.norm_cap, other.norm_cap),
        )

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, scalar):
        return CoherentVec(scalar * self.coeffs, self.vecs, self.norm_cap)

    __rmul__ = __mul__

    def norm(self):
        return float(np.sqrt(max(coh_inner(self, self).real, 0.0)))


def coh_inner(u, v):
    """``<u, v>`` on the coherent span, linear in ``u``."""
    G = _gram(u.vecs, v.vecs)
    return complex(u.coeffs @ G @ v.coeffs.conj())


def gram_matrix(vectors):
    X = np.asarray(vectors, dtype=complex)
    return _gram(X, X)


def gram_rank(vectors, tol=1e-10):
    """Numerical rank of the Gram matrix of ``{Exp(x_i)}``.

    The Gram matrix is first scaled to unit diagonal (the Gram matrix of the
    normalized vectors ``Exp(x_i)/||Exp(x_i)||``, same rank), then eigenvalues
    above ``tol`` times the largest one count.
    """
    X = np.asarray(vectors, dtype=complex)
    if len(X) == 0:
        return 0
    G = gram_matrix(X)
    scale = 1.0 / np.sqrt(G.diagonal().real)
    ev = np.linalg.eigvalsh(G * np.outer(scale, scale))
    return int(np.sum(ev > tol * ev.max()))


@dataclass(frozen=True, eq=False)
class TypeS:
    """Operator ``U(A, b, c)`` of type (S)."""

    A: np.ndarray
    b: np.ndarray
    c: complex = 1.0

    def __post_init__(self):
        A = np.asarray(self.A)
        b = np.asarray(self.b, dtype=complex)
        if A.shape != (len(b), len(b)):
            raise DimensionMismatch("A and b dimensions differ")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", complex(self.c))

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim), np.zeros(dim), 1.0)

    @property
    def dim(self):
        return len(self.b)

    def __matmul__(self, other):
        return types_compose(self, other)

    def __call__(self, v):
        return types_apply(self, v)

    def unitarity_defect(self):
        return float(max(np.abs(self.A.conj().T @ self.A - np.eye(self.dim)).max(), abs(abs(self.c) - 1.0)))

    def distance(self, other):
        """Max-norm distance in (A, b, c)."""
        return float(max(np.abs(self.A - other.A).max(), np.abs(self.b - other.b).max(), abs(self.c - other.c)))


def types_apply(U, v):
    """Termwise closed-form action of ``U`` on a coherent vector."""
    Ax = v.vecs @ U.A.T
    expo = -0.5 * herm(U.b, U.b).real - Ax @ U.b.conj()
    if expo.size and expo.real.max() > EXP_LIMIT:
        raise FockOverflow("coefficient exponent overflows")
    coeffs = v.coeffs * U.c * np.exp(expo)
    return CoherentVec(coeffs, Ax + U.b[None, :], v.norm_cap)


def types_compose(U, W):
    """``U W`` as a type (S) triple, phase ``exp(i Im<b, A b'>)`` included."""
    if U.dim != W.dim:
        raise DimensionMismatch("operators act on different spaces")
    Ab = U.A @ W.b
    phase = np.exp(1j * herm(U.b, Ab).imag)
    return TypeS(U.A @ W.A, U.b + Ab, U.c * W.c * phase)


def types_inverse(U):
    Ainv = U.A.conj().T
    return TypeS(Ainv, -(Ainv @ U.b), np.conj(U.c))


def types_product(ops, dim=None):
    ops = list(ops)
    if not ops:
        return TypeS.identity(dim)
    out = ops[0]
    for op in ops[1:]:
        out = types_compose(out, op)
    return out


def energy_rep(psi):
    """``U(psi) = U(V(psi), beta(psi), 1)`` on the flat coordinates of H."""
    return TypeS(V_matrix(psi), beta(psi).vec(), 1.0)


def energy_phase_defect(psi1, psi2):
    """``|Im<V(psi1) beta(psi2), beta(psi1)>|``; zero for real data."""
    Vb = V_matrix(psi1) @ beta(psi2).vec()
    return abs(herm(Vb, beta(psi1).vec()).imag)


def weyl(h):
    """Weyl operator ``W(h) = U(I, i h / sqrt 2, 1)``."""
    h = np.asarray(h, dtype=complex)
    return TypeS(np.eye(len(h)), 1j * h / np.sqrt(2.0), 1.0)


def weyl_phase_sign(rng=None, dim=3):
    """Sign ``s`` with ``W(h)W(k) = exp(s i/2 Im<h,k>) W(h+k)``, read off the
    composition law on a random pair (+1 under the convention used here)."""
    rng = np.random.default_rng(0) if rng is None else rng
    h = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    k = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    prod = types_compose(weyl(h), weyl(k))
    phase = np.angle(prod.c / weyl(h + k).c)
    half = 0.5 * herm(h, k).imag
    return 1 if abs(phase - half) < abs(phase + half) else -1


def matrix_element(U, u, v):
    """``<Exp u, U Exp v>`` in closed form."""
    Av = U.A @ v
    expo = -0.5 * herm(U.b, U.b).real - herm(Av, U.b) + herm(u, Av + U.b)
    if expo.real > EXP_LIMIT:
        raise FockOverflow("matrix element overflows")
    return complex(U.c * np.exp(expo))


def default_grid(operators, rng, count=16, scale=0.5):
    """Seeded random pairs plus ``(0,0), (0,b), (b,0)`` for each operand b."""
    dim = operators[0].dim
    zero = np.zeros(dim, dtype=complex)
    grid = [(zero, zero)]
    for U in operators:
        if np.any(U.b != 0):
            grid += [(zero, U.b), (U.b, zero)]
    for _ in range(count):
        u = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        grid.append((scale * u / np.linalg.norm(u), scale * v / np.linalg.norm(v)))
    return grid


def op_equal(L, R, grid):
    """max over the grid of ``|<Exp u, (L - R) Exp v>|``.

    ``L`` and ``R`` are lists of ``(coeff, TypeS)`` representing linear
    combinations of type (S) operators.
    """
    if not grid:
        raise ValueError("grid is empty")
    worst = 0.0
    for u, v in grid:
        lhs = sum(a * matrix_element(U, u, v) for a, U in L)
        rhs = sum(a * matrix_element(U, u, v) for a, U in R)
        worst = max(worst, abs(lhs - rhs))
    return float(worst)


def separating_probe(ops, rng, tries=100):
    """Find ``(i0, x)`` with ``A_i0 x + b_i0`` different from every other
    ``A_j x + b_j`` (pairwise distinct operators assumed)."""
    dim = ops[0].dim
    for _ in range(tries):
        x = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        images = np.array([U.A @ x + U.b for U in ops])
        for i in range(len(ops)):
            d = np.linalg.norm(images - images[i], axis=1)
            d[i] = np.inf
            if d.min() > 1e-8:
                return i, x
    raise ValueError("operators do not look pairwise distinct")
