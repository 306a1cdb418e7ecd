"""
The representation V(psi) = Ad_psi on 1-forms and its 1-cocycles.

A *cocycle evaluator* is any callable ``gamma(jet) -> OneForm``. The
Maurer-Cartan cocycle :func:`beta` and coboundaries built with
:func:`coboundary_cocycle` are the two kinds used here.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg

from . import liecore
from .lattice import GaugeJet, OneForm, jet_mul, jet_power

KERNEL_TOL = 1e-8


def V_apply(psi, omega):
    """Sitewise adjoint action on every covector component."""
    psi.manifold.check_same(omega.manifold)
    Ad = psi.ad_matrices()
    return OneForm(omega.manifold, np.einsum("sab,smb->sma", Ad, omega.comps))


def V_matrix(psi):
    """V(psi) as a dense real orthogonal matrix on the flat H coordinates.

    Sitewise rescaling commutes with the fibre action, so the matrix is
    block diagonal with one ``Ad`` block per site and tangent direction.
    """
    M = psi.manifold
    Ad = psi.ad_matrices()
    td = M.tangent_dim
    return scipy.linalg.block_diag(*[Ad[s] for s in range(M.n_sites) for _ in range(td)])


def beta(psi):
    """Maurer-Cartan cocycle: the logarithmic-derivative part of the jet."""
    return OneForm(psi.manifold, psi.b.copy())


def coboundary(v, psi):
    """``V(psi) v - v``."""
    return V_apply(psi, v) - v


def coboundary_cocycle(v) -> Callable[[GaugeJet], OneForm]:
    def gamma(psi):
        return coboundary(v, psi)

    return gamma


def cocycle_residual(gamma, psi1, psi2):
    """Norm of gamma(psi1 psi2) - gamma(psi1) - V(psi1) gamma(psi2)."""
    lhs = gamma(jet_mul(psi1, psi2))
    rhs = gamma(psi1) + V_apply(psi1, gamma(psi2))
    return float(np.abs(lhs.comps - rhs.comps).max())


def fixed_projection(psi, tol=KERNEL_TOL):
    """Orthogonal projector onto ``{w : V(psi) w = w}`` in flat coordinates.

    Computed site by site from the null space of ``Ad(g_x) - I``; singular
    values below ``tol`` count as zero.
    """
    M = psi.manifold
    Ad = psi.ad_matrices()
    blocks = []
    eye = np.eye(M.dim_g)
    for s in range(M.n_sites):
        K = scipy.linalg.null_space(Ad[s] - eye, rcond=tol / max(1.0, np.linalg.norm(Ad[s] - eye, 2)))
        P = K @ K.T
        blocks.extend([P] * M.tangent_dim)
    return scipy.linalg.block_diag(*blocks)


def apply_projection(P, omega):
    return OneForm.from_vec(omega.manifold, P @ omega.vec())


def ergodic_limit(gamma, psi1, psi2, psi3, n):
    """Return ``((1/n) gamma(psi1 psi2^n psi3), V(psi1) P gamma(psi2))``.

    ``P`` is the projection onto the fixed space of ``V(psi2)``. The first
    component is computed from the explicit jet product.
    """
    if n < 1:
        raise ValueError("n must be positive")
    prod = jet_mul(psi1, jet_mul(jet_power(psi2, n), psi3))
    avg = gamma(prod) * (1.0 / n)
    return avg, ergodic_target(gamma, psi1, psi2)


def ergodic_target(gamma, psi1, psi2):
    P = fixed_projection(psi2)
    return V_apply(psi1, apply_projection(P, gamma(psi2)))


def ergodic_sequence(gamma, psi1, psi2, psi3, ns):
    """Distances ``||(1/n) gamma(psi1 psi2^n psi3) - limit||`` for increasing ``ns``.

    Powers are accumulated incrementally, so a long contiguous range costs one
    jet product per step.
    """
    ns = sorted(int(k) for k in ns)
    target = ergodic_target(gamma, psi1, psi2)
    out = []
    power = psi3
    k = 0
    for n in ns:
        while k < n:
            power = jet_mul(psi2, power)
            k += 1
        avg = gamma(jet_mul(psi1, power)) * (1.0 / n)
        out.append((avg - target).norm())
    return np.array(ns), np.array(out), target


def loglog_slope(ns, values):
    """Least-squares slope of log(values) against log(ns)."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


@dataclass
class CocycleSample:
    """Pairs ``(psi, gamma(psi))`` of gauge jets and cocycle values."""

    pairs: list

    @classmethod
    def from_cocycle(cls, gamma, jets):
        return cls([(psi, gamma(psi)) for psi in jets])

    def support_violations(self):
        """Number of pairs with ``supp gamma(psi)`` not inside ``supp psi``."""
        from .lattice import support

        return sum(not (support(w).sites <= support(psi).sites) for psi, w in self.pairs)


def coboundary_fit(samples):
    """Best coboundary approximation of sampled cocycle values.

    Minimizes ``sum_i ||gamma(psi_i) - (V(psi_i) - I) v||^2`` over real ``v``
    by an SVD-based least-squares solve (minimum-norm if rank deficient).

    Returns
    -------
    v : OneForm
    residual : float
        Square root of the minimal sum.
    """
    pairs = samples.pairs
    if not pairs:
        raise ValueError("need at least one sample")
    M = pairs[0][0].manifold
    N = M.dim_H
    eye = np.eye(N)
    rows = np.vstack([V_matrix(psi) - eye for psi, _ in pairs])
    rhs = np.concatenate([w.vec().real for _, w in pairs])
    v, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    residual = float(np.linalg.norm(rows @ v - rhs))
    return OneForm.from_vec(M, v), residual


def sitewise_fixed_dimension(psi, tol=KERNEL_TOL):
    """Dimension of the fixed space counted from eigenvalue-1 multiplicities."""
    Ad = psi.ad_matrices()
    count = 0
    for A in Ad:
        ev = np.linalg.eigvals(A)
        count += int(np.sum(np.abs(ev - 1.0) < tol))
    return count * psi.manifold.tangent_dim


def exp_series_action(phi_coeffs, omega, s, n, terms=30):
    """``sum_k s^k/k! ad_phi^k omega`` sitewise; reference for V(e^{s phi})."""
    ad = liecore.ad_matrix(phi_coeffs, n)
    out = omega.comps.copy()
    term = omega.comps.copy()
    for k in range(1, terms):
        term = np.einsum("sab,smb->sma", ad, term) * (s / k)
        out = out + term
    return OneForm(omega.manifold, out)
