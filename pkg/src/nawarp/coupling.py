"""Hermitian coupling matrices Y^a t_a and their eigen-decompositions.

The coupling matrix contracts a vector- or matrix-valued coefficient Y
with the su(m) generators.  Its eigen-data (eigenvalues, diagonalizer W,
projectors B_r) reduces every non-abelian deformation downstream to a sum
of abelian ones, so the decomposition invariants are checked hard here.
"""

import enum
from dataclasses import dataclass

import numpy as np

ZERO_EIGENVALUE_TOL = 1e-10
CLUSTER_TOL = 1e-9
HERMITICITY_TOL = 1e-10


class InadmissibleCouplingError(ValueError):
    """Raised for non-hermitian matrix-valued Y or zero eigenvalues."""


class SpectrumClass(enum.Enum):
    STRICTLY_POSITIVE = "StrictlyPositive"
    MIXED = "Mixed"
    STRICTLY_NEGATIVE = "StrictlyNegative"


@dataclass(frozen=True)
class CouplingSpec:
    """Coefficient data for the coupling matrix.

    kind "vector": Y is a real vector of length m^2 - 1.
    kind "matrix": Y is a list of m^2 - 1 complex m x m matrices; the
    contraction sum(Y_a @ t_a) must come out hermitian.
    """

    kind: str
    Y: object

    @staticmethod
    def vector(values):
        return CouplingSpec(kind="vector", Y=np.asarray(values, dtype=float))

    @staticmethod
    def matrix(mats):
        return CouplingSpec(
            kind="matrix", Y=tuple(np.asarray(mm, dtype=complex) for mm in mats)
        )


@dataclass(frozen=True)
class CouplingEigen:
    """Eigen-data of the coupling matrix.

    lambdas are sorted descending.  projectors[r] is the spectral projector
    W B_r W^-1 in the original basis; units[r] is the diagonal-unit block
    B_r (per eigenvalue cluster, so the decomposition stays exact under
    degeneracy).
    """

    lambdas: np.ndarray
    W: np.ndarray
    units: tuple
    projectors: tuple

    @property
    def m(self):
        return self.W.shape[0]

    def reconstruct(self):
        return sum(l * p for l, p in zip(self.lambdas, self.projectors))


def build_Ytau(spec, basis):
    """Contract the coupling coefficients with the generator basis.

    Raises InadmissibleCouplingError for a non-hermitian matrix-valued
    contraction or for any eigenvalue of modulus below 1e-10 (this
    includes Y = 0).
    """
    gens = basis.generators
    if spec.kind == "vector":
        y = np.asarray(spec.Y, dtype=float)
        if y.shape != (basis.dim,):
            raise ValueError(
                f"vector Y must have length {basis.dim}, got {y.shape}"
            )
        ytau = sum(float(c) * g for c, g in zip(y, gens))
    elif spec.kind == "matrix":
        if len(spec.Y) != basis.dim:
            raise ValueError(
                f"matrix Y must supply {basis.dim} matrices, got {len(spec.Y)}"
            )
        ytau = sum(np.asarray(ym, dtype=complex) @ g for ym, g in zip(spec.Y, gens))
    else:
        raise ValueError(f"unknown coupling kind {spec.kind!r}")

    ytau = np.asarray(ytau, dtype=complex)
    if np.max(np.abs(ytau - ytau.conj().T)) > HERMITICITY_TOL:
        raise InadmissibleCouplingError("inadmissible matrix-valued Y")
    eigvals = np.linalg.eigvalsh(ytau)
    if np.min(np.abs(eigvals)) < ZERO_EIGENVALUE_TOL:
        raise InadmissibleCouplingError("zero eigenvalue forbidden")
    return ytau


def eigendecompose(ytau):
    """Diagonalize a hermitian coupling matrix into (lambdas, W, B_r).

    Eigenvalues are sorted descending and clustered at tolerance 1e-9;
    projectors are built per cluster so B_r B_l = delta_rl B_l holds
    exactly even for degenerate spectra.  Eigenvector phases are fixed by
    making the first nonzero component real positive, for reproducible
    reports.
    """
    ytau = np.asarray(ytau, dtype=complex)
    if np.max(np.abs(ytau - ytau.conj().T)) > HERMITICITY_TOL:
        raise ValueError("eigendecompose expects a hermitian matrix")
    vals, vecs = np.linalg.eigh(ytau)
    order = np.argsort(-vals)
    vals = vals[order]
    vecs = vecs[:, order]
    for k in range(vecs.shape[1]):
        col = vecs[:, k]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size:
            phase = col[nz[0]] / abs(col[nz[0]])
            vecs[:, k] = col / phase
    m = ytau.shape[0]

    clusters = []
    start = 0
    for k in range(1, m + 1):
        if k == m or abs(vals[k] - vals[start]) > CLUSTER_TOL:
            clusters.append(list(range(start, k)))
            start = k

    units = []
    lambdas = []
    for idx in clusters:
        b = np.zeros((m, m), dtype=complex)
        for k in idx:
            b[k, k] = 1.0
        units.append(b)
        lambdas.append(float(np.mean(vals[idx])))
    projectors = tuple(vecs @ b @ vecs.conj().T for b in units)
    return CouplingEigen(
        lambdas=np.asarray(lambdas),
        W=vecs,
        units=tuple(units),
        projectors=projectors,
    )


def classify_spectrum(eigen):
    """Sign classification of the eigenvalues, feeding the wedge verdict."""
    if np.all(eigen.lambdas > 0):
        return SpectrumClass.STRICTLY_POSITIVE
    if np.all(eigen.lambdas < 0):
        return SpectrumClass.STRICTLY_NEGATIVE
    return SpectrumClass.MIXED


def projector_algebra_residual(eigen):
    """Residual of B_r B_l = delta_rl B_l and sum_r B_r = identity."""
    worst = 0.0
    units = eigen.units
    m = eigen.m
    for r, br in enumerate(units):
        for l, bl in enumerate(units):
            target = bl if r == l else np.zeros_like(bl)
            worst = max(worst, np.max(np.abs(br @ bl - target)))
    worst = max(worst, np.max(np.abs(sum(units) - np.eye(m))))
    worst = max(
        worst,
        np.max(np.abs(sum(eigen.projectors) - np.eye(m))),
    )
    return worst


def reconstruction_residual(eigen, ytau):
    """Residual of W (sum_r lambda_r B_r) W^-1 against the input matrix."""
    return np.max(np.abs(eigen.reconstruct() - ytau))
