"""
Type (S) operators commuting with the local gauge operators of a region O.

An operator acting trivially on H(O), mapping H(O') into itself and with
b supported off O passes every constraint; each planted perturbation
shows up in its own slot.
"""

import numpy as np

from gaugenet import liecore
from gaugenet.lattice import Region, SampledManifold, random_field
from gaugenet.localnet import LocalGeneratorSet, commutant_constraints, root_constraint_check
from gaugenet.suites import commutant_element, plant_violation

rng = np.random.default_rng(3)
M = SampledManifold("circle", (32,), 2)
O = Region.parse(M, "0-7")

gens = LocalGeneratorSet.random(O, 8, rng, epsilon=0.2)
print("generators inside N_0:", all(gens.in_N0), " sizes:", [round(p.epsilon_size(), 3) for p in gens.jets[:4]])
tests = [random_field(M, O, rng) for _ in range(4)]

U = commutant_element(M, O, rng)
rep = commutant_constraints(O, U, gens, tests)
print("clean element:", {k: f"{v:.1e}" for k, v in rep.as_dict().items()})

for kind in ("A", "b", "mix"):
    bad = plant_violation(U, M, O, kind, 1e-3, rng)
    r = commutant_constraints(O, bad, gens, tests)
    print(f"plant {kind:3s}:", {k: f"{v:.1e}" for k, v in r.as_dict().items()})

# the root-space form of the bracket constraint
dec = liecore.cartan_root_decompose(2)
cartan_tests = [random_field(M, O, rng, cartan_direction=True) for _ in range(3)]
print("root constraint on clean b:", root_constraint_check(O, U.b, dec, cartan_tests))
