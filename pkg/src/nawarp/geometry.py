"""Bilinear-form bookkeeping shared by the deformation modules.

Deformation matrices are stored with both indices contravariant, so skew
symmetry is plain matrix antisymmetry in every signature.  The metric
enters only when the matrix is applied to a vector or two vectors are
paired: Euclidean for spatial quantum-mechanics deformations, Minkowski
(signature +,-,...,-) for field-theory ones.
"""

import numpy as np

EUCLIDEAN = "euclidean"
MINKOWSKI = "minkowski"

SKEW_TOL = 1e-12


def metric_matrix(metric, d):
    if metric == EUCLIDEAN:
        return np.eye(d)
    if metric == MINKOWSKI:
        g = -np.eye(d)
        g[0, 0] = 1.0
        return g
    raise ValueError(f"unknown metric {metric!r}")


def pairing(a, b, metric):
    """Scalar product a.b in the given signature."""
    a = np.asarray(a, dtype=float)
    g = metric_matrix(metric, a.shape[-1])
    return a @ g @ np.asarray(b)


def theta_apply(theta, x, metric):
    """Contract the deformation matrix with a vector: (Theta x)^mu."""
    theta = np.asarray(theta, dtype=float)
    g = metric_matrix(metric, theta.shape[0])
    return theta @ g @ np.asarray(x, dtype=float)


def skew_residual(theta):
    theta = np.asarray(theta, dtype=float)
    return float(np.max(np.abs(theta + theta.T)))


def check_skew(theta):
    if skew_residual(theta) > SKEW_TOL:
        raise ValueError("deformation matrix is not skew-symmetric")
