"""
Local structure of the net: totality of local cocycle values,
factorization of a jet into near-identity pieces, and why the vacuum is
not cyclic for a proper region.
"""

import numpy as np

from gaugenet import liecore
from gaugenet.lattice import GaugeJet, OneForm, Region, SampledManifold, bump_algebra_field, jet_from_algebra_field, jet_product
from gaugenet.localnet import (
    LocalGeneratorSet,
    near_identity_factorization,
    totality_rank,
    vacuum_cyclicity_gap,
    vacuum_kernel_dimension,
)

rng = np.random.default_rng(4)
M = SampledManifold("circle", (32,), 2)

for k in (1, 4, 8):
    O = Region(M, frozenset(range(k)))
    for mode in ("beta", "v_dphi"):
        rank, dim, dia = totality_rank(O, mode, 6 * k, seed=k)
        print(f"{k} sites, {mode:6s}: rank {rank} of {dim}   diamond {dia:.1e}")

X, Y = np.eye(3)[0], np.eye(3)[1]
psi = jet_from_algebra_field(bump_algebra_field(M, 2.0, 1.2, X) + bump_algebra_field(M, 2.6, 1.2, Y))
print("bump size:", round(psi.epsilon_size(), 3))
factors = near_identity_factorization(psi, 32, epsilon=0.2)
print("32 factors, each of size", round(factors[0].epsilon_size(), 4), " reconstruction", jet_product(factors).distance(psi))

# Exp(omega') with omega' outside O keeps distance^2 >= e - 1 from the local orbit of Omega
O = Region.parse(M, "0-7")
w = np.zeros(M.fibre_shape)
w[20, 0, 1] = 1.0
om = OneForm(M, w)
om = om * (1 / om.norm())
for count in (1, 4, 8):
    gens = LocalGeneratorSet.random(O, count, rng).jets
    measured, floor = vacuum_cyclicity_gap(O, gens, om, max_vectors=64)
    print(f"{count} generators: distance^2 {measured:.12f}  floor {floor:.12f}")

# a locally constant jet has beta = 0, so U(psi) Omega = Omega while U(psi) != 1
const = GaugeJet.constant(M, liecore.random_group(rng, 2), O)
print("(operators, rank on Omega, kernel):", vacuum_kernel_dimension([GaugeJet.identity(M), const]))
