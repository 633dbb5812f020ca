"""Exact finite-dimensional verification of non-abelian warped convolutions.

The package builds su(m) generator bases, hermitian coupling matrices and
their eigen-decompositions, exact spectral-sum warped convolutions and
Rieffel products, deformed quantum-mechanical gauge fields on periodic
grids, deformed fields on a truncated bosonic Fock space, and the
rapidity-quadrature wedge-locality criterion.  A config-driven harness
(`nawarp.harness`) runs every check and emits machine-readable reports.
"""

from nawarp.sun_algebra import LieBasis, StructureConstants, build_su_basis, structure_constants
from nawarp.coupling import (
    CouplingSpec,
    CouplingEigen,
    SpectrumClass,
    build_Ytau,
    eigendecompose,
    classify_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "LieBasis",
    "StructureConstants",
    "build_su_basis",
    "structure_constants",
    "CouplingSpec",
    "CouplingEigen",
    "SpectrumClass",
    "build_Ytau",
    "eigendecompose",
    "classify_spectrum",
]
