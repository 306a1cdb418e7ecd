"""
Numerical toolkit for the energy representation of a lattice gauge group on
a bosonic Fock space, its local net and the modular theory of its standard
subspaces.

Modules
-------
liecore   su(2)/su(3) algebra, exp/log/Ad, dexp and root decomposition
lattice   sampled manifolds, regions, one-forms and gauge jets
energy    the adjoint representation V and its 1-cocycles
fock      exponential vectors and operators of type (S)
gauss     Gaussian-measure realization of the Fock space
localnet  locality, commutant constraints, totality, vacuum cyclicity
modular   standard subspaces, symplectic complements, modular data
suites    verification suites and report serialization (see ``cli``)
"""

from .config import ConfigError, SuiteConfig
from .suites import SuiteReport, emit_report, run_suite

__all__ = ["ConfigError", "SuiteConfig", "SuiteReport", "emit_report", "run_suite"]
__version__ = "0.1.0"
