"""
Standard subspaces in finite dimension: symplectic complements, the
canonical involution s = j delta^{1/2}, and why the real subspaces coming
from a proper region are not standard.
"""

import numpy as np

from gaugenet import modular
from gaugenet.lattice import Region, SampledManifold
from gaugenet.localnet import gauge_subspace_basis

rng = np.random.default_rng(5)

K = modular.random_standard(4, rng)
data = modular.canonical_involution(K)
print("standard:", modular.is_standard(K))
print("identities:", {k: f"{v:.1e}" for k, v in data.identities().items()})
print("spectrum of delta:", np.round(np.linalg.eigvalsh(data.delta), 4))
print("K' involution is s^T:", modular.involution_adjoint_residual(K))

K1 = modular.random_real_subspace(4, 3, rng)
K2 = K1 + modular.random_real_subspace(4, 2, rng)
print("complement lattice:", {k: f"{v:.1e}" for k, v in modular.complement_lattice_suite(K1, K2).items()})

h = K.complex_vectors() @ rng.standard_normal(K.dim)
print("second-quantized involution on W(h) Omega:", modular.second_quantized_S_check(K, h))

# subspaces attached to regions of a small lattice
Ms = SampledManifold("circle", (4,), 2)
for text in ("0", "0-1", "0-2", "all"):
    O = Region.parse(Ms, text)
    for real in (False, True):
        S = modular.RealSubspace.span(gauge_subspace_basis(O, real), Ms.dim_H)
        ok, diag = modular.is_standard(S)
        print(f"O = {text:4s} {'H_0(O)' if real else 'H(O)  '} standard={ok}  {diag}")
