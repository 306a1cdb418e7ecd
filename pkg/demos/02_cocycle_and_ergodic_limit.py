"""
The Maurer-Cartan cocycle on a sampled circle: exact cocycle identity in
the jet model, the abelian reduction, non-triviality by least squares, and
the ergodic averages (1/n) beta(psi1 psi2^n psi3).

Pass a file name to write the convergence sequence as CSV.
"""

import csv
import sys

import numpy as np

from gaugenet import energy
from gaugenet.energy import beta
from gaugenet.lattice import GaugeJet, OneForm, Region, SampledManifold, bump_algebra_field, jet_from_algebra_field, random_jet

rng = np.random.default_rng(1)
M = SampledManifold("circle", (32,), 2)
everywhere = Region.all(M)

p1, p2 = random_jet(M, everywhere, rng), random_jet(M, everywhere, rng)
print("cocycle identity residual:", energy.cocycle_residual(beta, p1, p2))

# along one direction the cocycle is just d phi
H = np.array([0.0, 0.0, 1.0])
f = bump_algebra_field(M, 3.0, 1.5, H)
print("abelian beta(e^phi) - dphi:", np.abs(beta(jet_from_algebra_field(f)).comps - f.dphi).max())

# beta is not a coboundary: the best fit leaves a residual of about ||dphi||
fam = [jet_from_algebra_field(f, s) for s in (0.5, 1.0, 2.0)]
_, res = energy.coboundary_fit(energy.CocycleSample.from_cocycle(beta, fam))
print(f"coboundary fit residual {res:.4f} vs ||dphi|| = {OneForm(M, f.dphi).norm():.4f}")

# ergodic averages for a non-abelian psi2
X, Y = np.eye(3)[0], np.eye(3)[1]
psi2 = jet_from_algebra_field(bump_algebra_field(M, 2.0, 1.2, X) + bump_algebra_field(M, 2.6, 1.2, Y))
psi1 = jet_from_algebra_field(bump_algebra_field(M, 1.0, 1.0, Y, 0.7))
psi3 = jet_from_algebra_field(bump_algebra_field(M, 4.0, 1.0, X + Y, 0.7))
ns, dist, target = energy.ergodic_sequence(beta, psi1, psi2, psi3, range(8, 513))
print(f"limit norm {target.norm():.4f}; log-log slope {energy.loglog_slope(ns, dist):.3f}")
for n in (8, 64, 512):
    print(f"  n = {n:4d}   distance {dist[n - 8]:.3e}")

if len(sys.argv) > 1:
    with open(sys.argv[1], "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["n", "distance"])
        out.writerows(zip(ns.tolist(), dist.tolist()))
    print("wrote", sys.argv[1])

# the identity gives a zero limit
_, t0 = energy.ergodic_limit(beta, psi1, GaugeJet.identity(M), psi3, 10)
print("limit for psi2 = 1:", t0.norm())
