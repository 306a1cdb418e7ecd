"""
Sampled manifolds, regions, g-valued 1-forms and gauge jets.

A gauge transformation is stored as a *jet*: at every site the group value
``g`` together with its right logarithmic derivative ``b = dg g^{-1}`` (one
algebra coefficient vector per tangent direction). Multiplying jets with
``(g1 g2, b1 + Ad(g1) b2)`` makes the Maurer-Cartan cocycle identity hold by
construction instead of up to a discretization error.

Vectors of the one-particle space H are flattened one-forms of shape
``(sites, tangent_dim, dim_g)``, multiplied sitewise by the square root of
the cell weight so that the standard inner product of C^N is the weighted
one. All of :mod:`gaugenet.fock` works on these flat vectors.
"""

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import liecore


class ManifoldMismatch(ValueError):
    pass


class DegenerateSupport(ValueError):
    pass


@dataclass(frozen=True)
class SampledManifold:
    """A uniformly sampled circle or flat 2-torus carrying su(n)-valued fields.

    Parameters
    ----------
    topology : {"circle", "torus"}
    shape : tuple of int
        ``(s,)`` for a circle, ``(s1, s2)`` for a torus. Total sites >= 4.
    group : int
        2 for SU(2), 3 for SU(3).
    metric_weight : float
        Extra positive factor multiplying the fibre inner product. The
        Killing normalization is kept as is when this is 1.
    """

    topology: str = "circle"
    shape: tuple = (32,)
    group: int = 2
    metric_weight: float = 1.0

    def __post_init__(self):
        shape = tuple(int(s) for s in np.atleast_1d(self.shape))
        object.__setattr__(self, "shape", shape)
        if self.topology == "circle":
            if len(shape) != 1:
                raise ValueError("circle takes a single site count")
        elif self.topology == "torus":
            if len(shape) != 2:
                raise ValueError("torus takes two site counts")
        else:
            raise ValueError(f"unknown topology {self.topology!r}")
        if int(np.prod(shape)) < 4:
            raise ValueError("need at least 4 sites")
        if self.metric_weight <= 0:
            raise ValueError("metric_weight must be positive")
        liecore.algebra_dim(self.group)

    @property
    def n_sites(self):
        return int(np.prod(self.shape))

    @property
    def tangent_dim(self):
        return len(self.shape)

    @property
    def dim_g(self):
        return liecore.algebra_dim(self.group)

    @property
    def dim_H(self):
        return self.n_sites * self.tangent_dim * self.dim_g

    @property
    def fibre_shape(self):
        return (self.n_sites, self.tangent_dim, self.dim_g)

    @property
    def coords(self):
        axes = [2 * np.pi * np.arange(s) / s for s in self.shape]
        grid = np.meshgrid(*axes, indexing="ij")
        return np.stack([a.ravel() for a in grid], axis=-1)

    @property
    def cell_volume(self):
        vol = np.prod([2 * np.pi / s for s in self.shape])
        return np.full(self.n_sites, vol)

    @property
    def weights(self):
        return self.cell_volume * self.metric_weight

    def displacement(self, center):
        """Periodic displacement of every site from ``center``, shape (S, td)."""
        d = self.coords - np.asarray(center, dtype=float).reshape(1, -1)
        return (d + np.pi) % (2 * np.pi) - np.pi

    # flat Hilbert-space layout

    def to_vec(self, comps):
        comps = np.asarray(comps)
        w = np.sqrt(self.weights)[:, None, None]
        return (comps * w).reshape(-1)

    def from_vec(self, vec):
        w = np.sqrt(self.weights)[:, None, None]
        return np.asarray(vec).reshape(self.fibre_shape) / w

    def site_slice(self, site):
        block = self.tangent_dim * self.dim_g
        return slice(site * block, (site + 1) * block)

    def site_mask(self, sites):
        """Boolean mask over flat H indices selecting the given sites."""
        mask = np.zeros(self.n_sites, dtype=bool)
        mask[list(sites)] = True
        return np.repeat(mask, self.tangent_dim * self.dim_g)

    def check_same(self, other):
        if self != other:
            raise ManifoldMismatch("objects live on different manifolds")


@dataclass(frozen=True)
class Region:
    manifold: SampledManifold
    sites: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        sites = frozenset(int(s) for s in self.sites)
        if sites and (min(sites) < 0 or max(sites) >= self.manifold.n_sites):
            raise ValueError("site index out of range")
        object.__setattr__(self, "sites", sites)

    @classmethod
    def all(cls, manifold):
        return cls(manifold, frozenset(range(manifold.n_sites)))

    @classmethod
    def parse(cls, manifold, text):
        """Parse a region descriptor.

        Accepted forms: ``"all"``, ``""``/``"none"``, comma separated site
        indices and inclusive ranges ``"a-b"``. A range with ``a > b`` wraps
        around the last site, e.g. ``"30-1"`` on a 32-site circle.
        """
        text = text.strip().lower()
        if text == "all":
            return cls.all(manifold)
        if text in ("", "none", "empty"):
            return cls(manifold)
        S = manifold.n_sites
        sites = set()
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                a, b = (int(p) for p in part.split("-", 1))
                if a <= b:
                    sites.update(range(a, b + 1))
                else:
                    sites.update(range(a, S))
                    sites.update(range(0, b + 1))
            else:
                sites.add(int(part))
        return cls(manifold, frozenset(sites))

    def complement(self):
        return Region(self.manifold, frozenset(range(self.manifold.n_sites)) - self.sites)

    def __or__(self, other):
        self.manifold.check_same(other.manifold)
        return Region(self.manifold, self.sites | other.sites)

    def __and__(self, other):
        self.manifold.check_same(other.manifold)
        return Region(self.manifold, self.sites & other.sites)

    def __le__(self, other):
        return self.sites <= other.sites

    def __len__(self):
        return len(self.sites)

    def __iter__(self):
        return iter(sorted(self.sites))

    @property
    def is_proper(self):
        return 0 < len(self.sites) < self.manifold.n_sites


@dataclass(frozen=True, eq=False)
class OneForm:
    """An su(n)-valued 1-form: ``comps[site, mu, a]`` (real or complex)."""

    manifold: SampledManifold
    comps: np.ndarray

    def __post_init__(self):
        comps = np.asarray(self.comps)
        if comps.shape != self.manifold.fibre_shape:
            raise ValueError(f"expected shape {self.manifold.fibre_shape}, got {comps.shape}")
        object.__setattr__(self, "comps", comps)

    @classmethod
    def zeros(cls, manifold):
        return cls(manifold, np.zeros(manifold.fibre_shape))

    @classmethod
    def from_vec(cls, manifold, vec):
        return cls(manifold, manifold.from_vec(vec))

    def vec(self):
        return self.manifold.to_vec(self.comps)

    def __add__(self, other):
        self.manifold.check_same(other.manifold)
        return OneForm(self.manifold, self.comps + other.comps)

    def __sub__(self, other):
        self.manifold.check_same(other.manifold)
        return OneForm(self.manifold, self.comps - other.comps)

    def __neg__(self):
        return OneForm(self.manifold, -self.comps)

    def __mul__(self, scalar):
        return OneForm(self.manifold, scalar * self.comps)

    __rmul__ = __mul__

    def restrict(self, region):
        out = np.zeros_like(self.comps)
        idx = list(region.sites)
        out[idx] = self.comps[idx]
        return OneForm(self.manifold, out)

    def norm(self):
        return float(np.sqrt(inner(self, self).real))

    @property
    def is_real(self):
        return not np.iscomplexobj(self.comps) or np.abs(self.comps.imag).max(initial=0) <= 1e-12


def inner(w1, w2):
    """Weighted inner product of 1-forms, linear in the first argument."""
    w1.manifold.check_same(w2.manifold)
    return complex(np.vdot(w2.vec(), w1.vec()))


@dataclass(frozen=True, eq=False)
class AlgebraField:
    """A g-valued function with its differential, ``phi[site, a]`` and
    ``dphi[site, mu, a]``. Both are stored, so the differential is exact."""

    manifold: SampledManifold
    phi: np.ndarray
    dphi: np.ndarray

    def __post_init__(self):
        M = self.manifold
        phi = np.asarray(self.phi, dtype=float)
        dphi = np.asarray(self.dphi, dtype=float)
        if phi.shape != (M.n_sites, M.dim_g) or dphi.shape != M.fibre_shape:
            raise ValueError("field arrays do not match the manifold")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "dphi", dphi)

    @classmethod
    def zeros(cls, manifold):
        return cls(manifold, np.zeros((manifold.n_sites, manifold.dim_g)), np.zeros(manifold.fibre_shape))

    def __add__(self, other):
        self.manifold.check_same(other.manifold)
        return AlgebraField(self.manifold, self.phi + other.phi, self.dphi + other.dphi)

    def __mul__(self, s):
        return AlgebraField(self.manifold, s * self.phi, s * self.dphi)

    __rmul__ = __mul__

    def d(self):
        """The differential as a :class:`OneForm`."""
        return OneForm(self.manifold, self.dphi)

    @property
    def is_abelian(self):
        """True when all values and derivatives commute pairwise (one common direction)."""
        data = np.concatenate([self.phi, self.dphi.reshape(-1, self.manifold.dim_g)])
        data = data[np.any(data != 0, axis=1)]
        if len(data) == 0:
            return True
        return np.linalg.matrix_rank(data, tol=1e-12) <= 1


@dataclass(frozen=True, eq=False)
class GaugeJet:
    """Gauge transformation with its exact logarithmic derivative.

    ``g[site]`` is an SU(n) matrix and ``b[site, mu]`` the coefficient vector
    of ``(d_mu g) g^{-1}``.
    """

    manifold: SampledManifold
    g: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        M = self.manifold
        g = np.asarray(self.g, dtype=complex)
        b = np.asarray(self.b, dtype=float)
        if g.shape != (M.n_sites, M.group, M.group) or b.shape != M.fibre_shape:
            raise ValueError("jet arrays do not match the manifold")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "b", b)

    @classmethod
    def identity(cls, manifold):
        g = np.broadcast_to(np.eye(manifold.group, dtype=complex), (manifold.n_sites, manifold.group, manifold.group))
        return cls(manifold, g.copy(), np.zeros(manifold.fibre_shape))

    @classmethod
    def constant(cls, manifold, g0, region=None):
        """Locally constant jet: ``g0`` on ``region`` (default all sites), b = 0."""
        jet = cls.identity(manifold)
        sites = list(range(manifold.n_sites)) if region is None else list(region.sites)
        g = jet.g.copy()
        g[sites] = g0
        return cls(manifold, g, jet.b)

    def __mul__(self, other):
        return jet_mul(self, other)

    def inverse(self):
        return jet_inv(self)

    def __pow__(self, k):
        return jet_power(self, k)

    def ad_matrices(self):
        """Sitewise Ad matrices, shape (S, dim_g, dim_g)."""
        return liecore.Ad_matrix(self.g)

    def epsilon_size(self):
        """max over sites of ||g - I||_2 + |b|; the N_0 neighbourhood metric."""
        eye = np.eye(self.manifold.group)
        gdist = np.linalg.norm(self.g - eye, ord=2, axis=(1, 2))
        bnorm = np.linalg.norm(self.b.reshape(self.manifold.n_sites, -1), axis=1)
        return float((gdist + bnorm).max())

    def distance(self, other):
        """Max-norm distance between two jets (group values and derivatives)."""
        self.manifold.check_same(other.manifold)
        return float(max(np.abs(self.g - other.g).max(), np.abs(self.b - other.b).max()))

    def equal_on(self, other, region):
        idx = list(region.sites)
        return bool(np.array_equal(self.g[idx], other.g[idx]) and np.array_equal(self.b[idx], other.b[idx]))


def jet_mul(psi1, psi2):
    """Pointwise product of jets; b-part follows the cocycle rule."""
    psi1.manifold.check_same(psi2.manifold)
    g = psi1.g @ psi2.g
    Ad1 = psi1.ad_matrices()
    b = psi1.b + np.einsum("sab,smb->sma", Ad1, psi2.b)
    return GaugeJet(psi1.manifold, g, b)


def jet_inv(psi):
    ginv = np.swapaxes(psi.g.conj(), -1, -2)
    Ad_inv = liecore.Ad_matrix(ginv)
    b = -np.einsum("sab,smb->sma", Ad_inv, psi.b)
    return GaugeJet(psi.manifold, ginv, b)


def jet_power(psi, k):
    """``psi**k`` for integer k >= 0 by repeated multiplication from the left."""
    if k < 0:
        return jet_power(jet_inv(psi), -k)
    out = GaugeJet.identity(psi.manifold)
    for _ in range(k):
        out = jet_mul(psi, out)
    return out


def jet_product(jets: Iterable[GaugeJet], manifold=None):
    """Ordered product ``jets[0] * jets[1] * ...``."""
    jets = list(jets)
    if not jets:
        return GaugeJet.identity(manifold)
    out = jets[0]
    for j in jets[1:]:
        out = jet_mul(out, j)
    return out


def jet_from_algebra_field(field, s=1.0):
    """Jet of ``x -> exp(s phi(x))``.

    The derivative part is ``dexp_right(s phi, s dphi)``; on sites where
    ``phi`` vanishes exactly the group value is the exact identity and the
    derivative is ``s dphi`` exactly.
    """
    M = field.manifold
    n = M.group
    sphi = s * field.phi
    sdphi = s * field.dphi
    g = np.broadcast_to(np.eye(n, dtype=complex), (M.n_sites, n, n)).copy()
    b = sdphi.copy()
    live = np.any(sphi != 0, axis=1)
    if np.any(live):
        g[live] = liecore.alg_exp(liecore.to_matrix(sphi[live], n))
        b[live] = liecore.dexp_right(sphi[live], sdphi[live], n)
    return GaugeJet(M, g, b)


def bump_profile(u):
    """C-infinity bump ``exp(-1/(1-u))`` for ``u < 1``, zero otherwise, with its
    derivative in ``u``."""
    u = np.asarray(u, dtype=float)
    inside = u < 1
    p = np.zeros_like(u)
    dp = np.zeros_like(u)
    t = 1.0 / (1.0 - u[inside])
    p[inside] = np.exp(-t)
    dp[inside] = -p[inside] * t * t
    return p, dp


def bump_algebra_field(manifold, center, radius, direction, amplitude=1.0):
    """Bump ``phi(x) = amplitude * exp(-1/(1 - r^2/R^2)) * direction``.

    ``r`` is the periodic distance from ``center``. The differential is the
    analytic derivative sampled at the sites, so ``phi`` and ``dphi`` vanish
    exactly outside the radius.

    Raises
    ------
    DegenerateSupport
        If the ball contains every site or no site.
    """
    direction = np.asarray(direction, dtype=float)
    d = manifold.displacement(np.broadcast_to(np.asarray(center, dtype=float), (manifold.tangent_dim,)))
    u = (d**2).sum(axis=1) / radius**2
    inside = u < 1
    if inside.all():
        raise DegenerateSupport("bump radius covers every site")
    if not inside.any():
        raise DegenerateSupport("bump radius contains no site")
    p, dp = bump_profile(u)
    # d/dx_mu p(r^2/R^2) = p'(u) * 2 d_mu / R^2
    grad = dp[:, None] * 2.0 * d / radius**2
    phi = amplitude * p[:, None] * direction[None, :]
    dphi = amplitude * grad[:, :, None] * direction[None, None, :]
    return AlgebraField(manifold, phi, dphi)


def random_field(manifold, region, rng, scale=1.0, cartan_direction=False):
    """Random jet-model field supported exactly on ``region``.

    Values and derivatives are independent Gaussians at every site of the
    region. With ``cartan_direction=True`` everything points along one random
    direction, so the field is abelian-valued.
    """
    M = manifold
    sites = list(region.sites)
    phi = np.zeros((M.n_sites, M.dim_g))
    dphi = np.zeros(M.fibre_shape)
    if cartan_direction:
        H = rng.standard_normal(M.dim_g)
        H /= np.linalg.norm(H)
        phi[sites] = scale * rng.standard_normal((len(sites), 1)) * H
        dphi[sites] = scale * rng.standard_normal((len(sites), M.tangent_dim, 1)) * H
    else:
        phi[sites] = scale * rng.standard_normal((len(sites), M.dim_g))
        dphi[sites] = scale * rng.standard_normal((len(sites), M.tangent_dim, M.dim_g))
    return AlgebraField(M, phi, dphi)


def random_jet(manifold, region, rng, scale=1.0):
    return jet_from_algebra_field(random_field(manifold, region, rng, scale))


def support(x):
    """Exact site set where a jet is not (I, 0), or a form/field is nonzero."""
    if isinstance(x, GaugeJet):
        eye = np.eye(x.manifold.group)
        nontriv = np.any(x.g != eye, axis=(1, 2)) | np.any(x.b != 0, axis=(1, 2))
    elif isinstance(x, OneForm):
        nontriv = np.any(x.comps != 0, axis=(1, 2))
    elif isinstance(x, AlgebraField):
        nontriv = np.any(x.phi != 0, axis=1) | np.any(x.dphi != 0, axis=(1, 2))
    else:
        raise TypeError(f"no support for {type(x).__name__}")
    return Region(x.manifold, frozenset(np.flatnonzero(nontriv).tolist()))
