"""su(m) generator bases and structure constants.

Generators are the halved generalized Gell-Mann matrices: hermitian,
traceless, and trace-orthogonal with trace(t_a t_b) = delta_ab / 2.  The
normalization is recorded on the basis object because eigenvalues of any
coupling matrix built downstream scale with it.
"""

from dataclasses import dataclass
from itertools import permutations

import numpy as np

ZERO_TOL = 1e-12


class DegenerateBasisError(ValueError):
    """Raised when the trace metric of a generator set is singular."""


@dataclass(frozen=True)
class LieBasis:
    """Ordered hermitian traceless generators of su(m).

    `normalization` is the common value of trace(t_a t_b) on the diagonal.
    """

    m: int
    generators: tuple
    normalization: float

    @property
    def dim(self):
        return self.m * self.m - 1


@dataclass(frozen=True)
class StructureConstants:
    """Real totally antisymmetric coefficients f with [t_a, t_b] = i f_abc t_c."""

    f: np.ndarray


def _gellmann_symmetric(j, k, m):
    g = np.zeros((m, m), dtype=complex)
    g[j, k] = 1.0
    g[k, j] = 1.0
    return g


def _gellmann_antisymmetric(j, k, m):
    g = np.zeros((m, m), dtype=complex)
    g[j, k] = -1.0j
    g[k, j] = 1.0j
    return g


def _gellmann_diagonal(l, m):
    d = np.zeros(m, dtype=complex)
    d[: l + 1] = 1.0
    d[l + 1] = -(l + 1)
    return np.diag(d) * np.sqrt(2.0 / ((l + 1) * (l + 2)))


def build_su_basis(m):
    """Return the halved generalized Gell-Mann basis of su(m).

    For m=2 these are the Pauli halves, for m=3 the halved Gell-Mann
    matrices.  Ordering: for each column k, the symmetric then the
    antisymmetric off-diagonal generators with row j < k, the diagonal
    generator of rank k last.  This reproduces the conventional Gell-Mann
    ordering (1..8) at m=3.
    """
    if m < 2:
        raise ValueError("no su(m) generators exist for m < 2")
    mats = []
    for k in range(1, m):
        for j in range(k):
            mats.append(_gellmann_symmetric(j, k, m))
            mats.append(_gellmann_antisymmetric(j, k, m))
        mats.append(_gellmann_diagonal(k - 1, m))
    generators = tuple(0.5 * g for g in mats)
    return LieBasis(m=m, generators=generators, normalization=0.5)


def structure_constants(basis):
    """Extract f_abc by trace pairing against the commutators.

    With trace(t_a t_b) = n * delta_ab, the commutation relation gives
    f_abc = -i * trace([t_a, t_b] t_c) / n.  Values below 1e-12 are
    thresholded to zero.
    """
    gens = basis.generators
    dim = basis.dim
    metric = np.array(
        [[np.trace(a @ b) for b in gens] for a in gens], dtype=complex
    )
    if abs(np.linalg.det(metric)) < ZERO_TOL:
        raise DegenerateBasisError("degenerate basis")
    f = np.zeros((dim, dim, dim))
    for a in range(dim):
        for b in range(a + 1, dim):
            comm = gens[a] @ gens[b] - gens[b] @ gens[a]
            for c in range(dim):
                val = -1.0j * np.trace(comm @ gens[c]) / basis.normalization
                if abs(val.imag) > 1e-9:
                    raise DegenerateBasisError("non-real structure constant")
                x = val.real
                if abs(x) < ZERO_TOL:
                    x = 0.0
                f[a, b, c] = x
                f[b, a, c] = -x
    return StructureConstants(f=f)


def reconstruction_residual(basis, sc):
    """Max entrywise norm of [t_a, t_b] - i f_abc t_c over all pairs."""
    gens = basis.generators
    dim = basis.dim
    worst = 0.0
    for a in range(dim):
        for b in range(dim):
            comm = gens[a] @ gens[b] - gens[b] @ gens[a]
            rebuilt = sum(1.0j * sc.f[a, b, c] * gens[c] for c in range(dim))
            worst = max(worst, np.max(np.abs(comm - rebuilt)))
    return worst


def jacobi_residual(basis):
    """Max entrywise norm of the cyclic double-commutator sum."""
    gens = basis.generators
    dim = basis.dim
    worst = 0.0

    def comm(x, y):
        return x @ y - y @ x

    for a in range(dim):
        for b in range(dim):
            for c in range(dim):
                s = (
                    comm(gens[a], comm(gens[b], gens[c]))
                    + comm(gens[b], comm(gens[c], gens[a]))
                    + comm(gens[c], comm(gens[a], gens[b]))
                )
                worst = max(worst, np.max(np.abs(s)))
    return worst


def total_antisymmetry_residual(sc):
    """Max deviation of f under signed index permutations."""
    f = sc.f
    worst = 0.0
    for perm in permutations(range(3)):
        sign = _perm_sign(perm)
        worst = max(worst, np.max(np.abs(np.transpose(f, perm) - sign * f)))
    return worst


def _perm_sign(perm):
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def exponential_unitarity_residual(basis, t_values=(0.3, 1.0, -2.1)):
    """Residual of unitarity and unit determinant of exp(i t t_a)."""
    from scipy.linalg import expm

    worst = 0.0
    eye = np.eye(basis.m)
    for g in basis.generators:
        for t in t_values:
            u = expm(1.0j * t * g)
            worst = max(worst, np.max(np.abs(u @ u.conj().T - eye)))
            worst = max(worst, abs(np.linalg.det(u) - 1.0))
    return worst


def validate_basis(basis):
    """Residuals of the hermiticity / tracelessness / orthonormality invariants."""
    gens = basis.generators
    herm = max(np.max(np.abs(g - g.conj().T)) for g in gens)
    trace = max(abs(np.trace(g)) for g in gens)
    ortho = 0.0
    for a, ga in enumerate(gens):
        for b, gb in enumerate(gens):
            target = basis.normalization if a == b else 0.0
            ortho = max(ortho, abs(np.trace(ga @ gb) - target))
    return {"hermiticity": herm, "trace": trace, "orthonormality": ortho}
