"""
The energy representation U(psi) = U(V(psi), beta(psi), 1) and its
Gaussian-measure picture.
"""

import numpy as np

from gaugenet import gauss
from gaugenet.energy import V_matrix, beta, coboundary
from gaugenet.fock import CoherentVec, TypeS, default_grid, energy_rep, exp_inner, op_equal, types_apply, types_compose
from gaugenet.lattice import OneForm, Region, SampledManifold, jet_mul, random_jet

rng = np.random.default_rng(2)
M = SampledManifold("circle", (8,), 2)
R = Region.all(M)
a, b = random_jet(M, R, rng, 0.5), random_jet(M, R, rng, 0.5)

C = types_compose(energy_rep(a), energy_rep(b))
print("U(a)U(b) vs U(ab):", C.distance(energy_rep(jet_mul(a, b))), " phase:", C.c)

# a shift by v intertwines beta with the cohomologous beta + dv
v = OneForm(M, 0.2 * rng.standard_normal(M.fibre_shape))
shift = TypeS(np.eye(M.dim_H), -v.vec())
V = V_matrix(a)
lhs = types_compose(shift, TypeS(V, beta(a).vec()))
rhs = types_compose(TypeS(V, (beta(a) + coboundary(v, a)).vec()), shift)
print("shift intertwiner:", op_equal([(1, lhs)], [(1, rhs)], default_grid([lhs, rhs], rng)))

# measure side: E = H_0 with the flat inner product
space = gauss.GaussianSpace.standard(M.dim_H)
x = 0.1 * (rng.standard_normal(M.dim_H) + 1j * rng.standard_normal(M.dim_H))
y = 0.1 * rng.standard_normal(M.dim_H)
print("theta pairing vs <Exp y, Exp x>:", abs(gauss.theta_pairing(space, x, y) - exp_inner(y, x)))

est, se = gauss.mc_theta_pairing(space, x, y, rng, 100_000)
exact = gauss.theta_pairing(space, x, y)
print(f"Monte Carlo {est:.4f} +- {se.real:.4f}  (closed form {exact:.4f})")

# theta intertwines U(psi) with the transformed action on functionals
Phi = gauss.theta(space, CoherentVec.exp(x))
left = gauss.theta(space, types_apply(energy_rep(a), CoherentVec.exp(x)))
right = gauss.transformed_apply(a, Phi)
probe = gauss.theta(space, CoherentVec.exp(y))
print("intertwining via pairings:", abs(gauss.theta_inner(left, probe) - gauss.theta_inner(right, probe)))
