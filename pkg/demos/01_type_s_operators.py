"""
Operators of type (S) on exponential vectors: composition, the Weyl
relation and linear independence of exponential vectors.
"""

import numpy as np

from gaugenet.fock import CoherentVec, TypeS, coh_inner, gram_rank, herm, types_apply, types_compose, weyl, weyl_phase_sign

rng = np.random.default_rng(0)
d = 4


def random_unitary(d):
    Q, R = np.linalg.qr(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    return Q * (np.diag(R) / abs(np.diag(R)))


U = TypeS(random_unitary(d), 0.4 * rng.standard_normal(d) + 0.2j, np.exp(0.3j))
W = TypeS(random_unitary(d), 0.3j * rng.standard_normal(d), 1.0)

# a vector is a finite list of coefficients and exponents
v = CoherentVec([1.0, -0.5j], 0.3 * rng.standard_normal((2, d)))

UW = types_compose(U, W)
a = types_apply(UW, v)
b = types_apply(U, types_apply(W, v))
print("compose then apply vs apply twice:", np.abs(a.coeffs - b.coeffs).max(), np.abs(a.vecs - b.vecs).max())
print("composed phase c =", UW.c)

# unitarity on the coherent span
w = CoherentVec.exp(0.2 * rng.standard_normal(d))
print("<Uv, Uw> - <v, w> =", abs(coh_inner(types_apply(U, v), types_apply(U, w)) - coh_inner(v, w)))

# Weyl operators W(h) = U(I, ih/sqrt2, 1); the sign of the phase is read off the composition law
h = rng.standard_normal(d) + 1j * rng.standard_normal(d)
k = rng.standard_normal(d) + 1j * rng.standard_normal(d)
s = weyl_phase_sign()
lhs = types_compose(weyl(h), weyl(k))
print(f"Weyl sign: {s:+d};  phase error:", abs(lhs.c - np.exp(s * 0.5j * herm(h, k).imag)))

# exponential vectors of distinct points are independent; duplicates collapse the rank
pts = 0.5 * rng.standard_normal((6, d))
print("Gram rank of 6 distinct points:", gram_rank(pts))
print("7 vectors, one duplicated:", gram_rank(np.vstack([pts, pts[:1]])))
