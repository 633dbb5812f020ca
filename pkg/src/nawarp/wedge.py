"""Wedge covariance and the rapidity-quadrature locality criterion.

Deformation matrices admissible for the wedge construction, the covariance
map under Lorentz transformations, mass-shell transforms of wedge-supported
bump functions, and the commutator kernel whose vanishing decides wedge
locality.  The kernel criterion runs in d=2 where the mass shell is the
rapidity line; d=4 is supported for the structural checks only.

Index convention: deformation matrices are stored with both indices
contravariant (plain antisymmetric arrays).  The admissible form with
parameter lam is stored as [[0, lam], [-lam, 0]]; applying the metric to
the second index reproduces the symmetric-looking displayed form.  The
stored form is exactly invariant under wedge-preserving boosts.
"""

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from nawarp.geometry import MINKOWSKI, metric_matrix, pairing, theta_apply

LORENTZ_TOL = 1e-10
TAIL_TOL = 1e-8
LOCAL_TOL = 1e-6
NONLOCAL_TOL = 1e-3

DEFAULT_WINDOW = 8.0
DEFAULT_GRID = 2000
DEFAULT_QUAD_ORDER = 2048


@dataclass(frozen=True)
class AdmissibleTheta:
    """Admissible deformation matrix in d = 2 or d = 4.

    d=2: one parameter lam >= 0.  d=4: lam >= 0 plus a free real eta on
    the spatial 2-3 block.
    """

    d: int
    lam: float
    eta: float = 0.0

    def __post_init__(self):
        if self.d not in (2, 4):
            raise ValueError("admissible matrices are defined for d in {2, 4}")
        if self.lam < 0:
            raise ValueError("lam must be nonnegative")

    def matrix(self):
        th = np.zeros((self.d, self.d))
        th[0, 1] = self.lam
        th[1, 0] = -self.lam
        if self.d == 4:
            th[2, 3] = -self.eta
            th[3, 2] = self.eta
        return th

    def display(self):
        """The matrix with the second index lowered by the metric."""
        return self.matrix() @ metric_matrix(MINKOWSKI, self.d)


def is_admissible(theta):
    """Structural test against the admissible form with lam >= 0."""
    theta = np.asarray(theta, dtype=float)
    d = theta.shape[0]
    if theta.shape != (d, d) or d not in (2, 4):
        return False
    lam = theta[0, 1]
    if lam < 0:
        return False
    eta = theta[3, 2] if d == 4 else 0.0
    model = AdmissibleTheta(d=d, lam=lam, eta=eta).matrix()
    return bool(np.max(np.abs(theta - model)) < 1e-12)


def gamma_map(lam_matrix, theta):
    """Covariance action on the deformation matrix: +/- Lambda Theta Lambda^T.

    The sign is positive for orthochronous Lorentz matrices and negative
    for time-reversing ones.  Non-Lorentz input is rejected.
    """
    lam_matrix = np.asarray(lam_matrix, dtype=float)
    theta = np.asarray(theta, dtype=float)
    d = theta.shape[0]
    g = metric_matrix(MINKOWSKI, d)
    if np.max(np.abs(lam_matrix.T @ g @ lam_matrix - g)) > LORENTZ_TOL:
        raise ValueError("input matrix is not a Lorentz transformation")
    sign = 1.0 if lam_matrix[0, 0] > 0 else -1.0
    return sign * lam_matrix @ theta @ lam_matrix.T


def boost_matrix(beta):
    """d=2 boost of rapidity beta (preserves the right wedge)."""
    return np.array(
        [[math.cosh(beta), math.sinh(beta)], [math.sinh(beta), math.cosh(beta)]]
    )


def reflection_matrix(d=2):
    """Full space-time reflection (time-reversing)."""
    return -np.eye(d)


def rapidity_momentum(theta_r, mass):
    """On-shell d=2 momentum p = m (cosh, sinh) at (possibly complex) rapidity."""
    theta_r = np.asarray(theta_r)
    return mass * np.stack([np.cosh(theta_r), np.sinh(theta_r)], axis=-1)


def _bump_1d(u):
    """Smooth compactly supported bump on (-1, 1), peak value 1 at 0."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - ui * ui))
    return out


@dataclass(frozen=True)
class WedgeTestFunction:
    """Product bump f(x) = b((x0-c0)/s) b((x1-c1)/s) supported in a wedge.

    side is "W1" (right wedge x1 > |x0|) or "-W1"; the support box
    c +/- s must sit strictly inside the declared wedge.
    """

    center: np.ndarray
    scale: float
    side: str

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float)
        object.__setattr__(self, "center", c)
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.side == "W1":
            ok = c[1] - self.scale > abs(c[0]) + self.scale
        elif self.side == "-W1":
            ok = -c[1] - self.scale > abs(c[0]) + self.scale
        else:
            raise ValueError(f"unknown wedge side {self.side!r}")
        if not ok:
            raise ValueError("support box leaves the declared wedge")

    def value(self, x):
        u = (np.asarray(x, dtype=float) - self.center) / self.scale
        return _bump_1d(u[..., 0]) * _bump_1d(u[..., 1])


@lru_cache(maxsize=8)
def _bump_rule(order):
    # node generation is cubic in the order, so the rule is cached
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, _bump_1d(nodes) * weights


def _bump_transform_1d(freqs, order):
    """integral of b(u) e^{i k u} over (-1, 1) for an array of complex k."""
    nodes, vals = _bump_rule(order)
    return np.exp(1j * np.multiply.outer(np.asarray(freqs), nodes)) @ vals


def mass_shell_transform(f, momenta, sign, order=DEFAULT_QUAD_ORDER):
    """f^{+/-} at the given on-shell momenta by separable quadrature.

    sign +1 gives f^+ (kernel e^{+i p.x}), -1 gives f^-; the Minkowski
    product p.x = p0 x0 - p1 x1 is used throughout.  momenta may be
    complex (for analytic-continuation checks).
    """
    momenta = np.atleast_2d(np.asarray(momenta))
    s = f.scale
    phase = np.exp(1j * sign * (momenta[:, 0] * f.center[0] - momenta[:, 1] * f.center[1]))
    b0 = _bump_transform_1d(sign * s * momenta[:, 0], order)
    b1 = _bump_transform_1d(-sign * s * momenta[:, 1], order)
    return s * s * phase * b0 * b1


def transform_pair(f, rapidities, mass, order=DEFAULT_QUAD_ORDER):
    """(f^+, f^-) arrays over a rapidity grid."""
    p = rapidity_momentum(rapidities, mass)
    return (
        mass_shell_transform(f, p, +1, order),
        mass_shell_transform(f, p, -1, order),
    )


def quadrature_convergence(f, rapidities, mass, order=DEFAULT_QUAD_ORDER):
    """Max change of the transforms when the quadrature order doubles."""
    fp1, fm1 = transform_pair(f, rapidities, mass, order)
    fp2, fm2 = transform_pair(f, rapidities, mass, 2 * order)
    return float(max(np.max(np.abs(fp1 - fp2)), np.max(np.abs(fm1 - fm2))))


def continuation_check(f, rapidities, mass, order=DEFAULT_QUAD_ORDER):
    """Residual of f^-(theta + i pi) = f^+(theta), both by quadrature."""
    rapidities = np.asarray(rapidities, dtype=float)
    p_shift = rapidity_momentum(rapidities + 1j * math.pi, mass)
    lhs = mass_shell_transform(f, p_shift, -1, order)
    rhs = mass_shell_transform(f, rapidity_momentum(rapidities, mass), +1, order)
    return float(np.max(np.abs(lhs - rhs)))


def _rapidity_grid(window, npts):
    grid = np.linspace(-window, window, npts)
    return grid, grid[1] - grid[0]


def forward_cone_samples(t_values=(0.5, 1.0, 2.0), chi_values=(0.0, 0.5, -0.5, 1.0, -1.0)):
    """Sample points of the closed forward cone on boost rays, plus the tip."""
    samples = [np.zeros(2)]
    for t in t_values:
        for chi in chi_values:
            samples.append(t * np.array([math.cosh(chi), math.sinh(chi)]))
    return samples


@dataclass(frozen=True)
class KernelResult:
    z: np.ndarray
    values: np.ndarray
    tail_ratio: float


def commutator_kernel(
    f,
    g,
    theta,
    eigen,
    z,
    mass,
    window=DEFAULT_WINDOW,
    npts=DEFAULT_GRID,
    order=DEFAULT_QUAD_ORDER,
):
    """Per-eigenvalue commutator kernel K_r(z) by rapidity quadrature.

    K_r(z) = integral over theta of
        f^-(theta) g^+(theta) e^{+i lam_r p(theta).(Theta z)}
      - g^-(theta) f^+(theta) e^{-i lam_r p(theta).(Theta z)}.
    The tail ratio reports the edge magnitude of the integrand envelope
    relative to its peak; above 1e-8 the window should be widened.
    """
    grid, dth = _rapidity_grid(window, npts)
    fp, fm = transform_pair(f, grid, mass, order)
    gp, gm = transform_pair(g, grid, mass, order)
    p = rapidity_momentum(grid, mass)
    return _kernel_from_transforms(fp, fm, gp, gm, p, dth, theta, eigen, z)


def _kernel_from_transforms(fp, fm, gp, gm, p, dth, theta, eigen, z):
    expo = pairing(p, theta_apply(theta, np.asarray(z, dtype=float), MINKOWSKI), MINKOWSKI)

    envelope = np.abs(fm * gp) + np.abs(gm * fp)
    peak = float(np.max(envelope))
    tail = float(max(envelope[0], envelope[-1]))
    tail_ratio = tail / peak if peak > 0 else 0.0

    values = np.empty(len(eigen.lambdas), dtype=complex)
    for r, lam in enumerate(eigen.lambdas):
        integrand = fm * gp * np.exp(1j * lam * expo) - gm * fp * np.exp(-1j * lam * expo)
        values[r] = np.trapezoid(integrand, dx=dth)
    return KernelResult(z=np.asarray(z, dtype=float), values=values, tail_ratio=tail_ratio)


def kernel_scan(
    f,
    g,
    theta,
    eigen,
    z_samples,
    mass,
    window=DEFAULT_WINDOW,
    npts=DEFAULT_GRID,
    order=DEFAULT_QUAD_ORDER,
):
    """Kernels at many z with the mass-shell transforms computed once."""
    grid, dth = _rapidity_grid(window, npts)
    fp, fm = transform_pair(f, grid, mass, order)
    gp, gm = transform_pair(g, grid, mass, order)
    p = rapidity_momentum(grid, mass)
    return [
        _kernel_from_transforms(fp, fm, gp, gm, p, dth, theta, eigen, z)
        for z in z_samples
    ]


@dataclass(frozen=True)
class LocalityVerdict:
    verdict: str
    spectrum_class: str
    max_kernel: float
    worst_tail: float
    scan: list = field(repr=False)


def wedge_locality_verdict(eigen, theta, f, g, mass, z_samples=None, **kw):
    """Locality verdict from spectrum sign and measured kernel.

    Local iff the kernel stays below 1e-6 on all forward-cone samples and
    the spectrum is strictly positive; NotLocal iff the kernel exceeds
    1e-3 somewhere; otherwise Inconclusive with the evidence attached.
    """
    from nawarp.coupling import classify_spectrum

    if z_samples is None:
        z_samples = forward_cone_samples()
    scan = kernel_scan(f, g, theta, eigen, z_samples, mass, **kw)
    max_kernel = float(max(np.max(np.abs(res.values)) for res in scan))
    worst_tail = float(max(res.tail_ratio for res in scan))
    spec_class = classify_spectrum(eigen).value
    if max_kernel < LOCAL_TOL and spec_class == "StrictlyPositive":
        verdict = "Local"
    elif max_kernel > NONLOCAL_TOL:
        verdict = "NotLocal"
    else:
        verdict = "Inconclusive"
    return LocalityVerdict(
        verdict=verdict,
        spectrum_class=spec_class,
        max_kernel=max_kernel,
        worst_tail=worst_tail,
        scan=scan,
    )


def covariance_transform_residual(
    f, beta, mass, window=DEFAULT_WINDOW, npts=DEFAULT_GRID, order=DEFAULT_QUAD_ORDER
):
    """Residual of the boosted transforms against the rapidity shift.

    The transform of f composed with the inverse boost, evaluated at
    rapidity theta, must equal the original transform at theta - beta.
    Together with the exact boost invariance of the admissible matrix this
    is wedge covariance at the kernel level.
    """
    grid, _ = _rapidity_grid(window - abs(beta), npts)
    lam_matrix = boost_matrix(beta)
    g = metric_matrix(MINKOWSKI, 2)
    p = rapidity_momentum(grid, mass)
    # transform of f o Lambda^-1 at p is the transform of f at the
    # contragredient momentum g Lambda^T g p, a rapidity shift by -beta
    q = p @ (g @ lam_matrix @ g)
    worst = 0.0
    for sign in (+1, -1):
        boosted = mass_shell_transform(f, q, sign, order)
        shifted = mass_shell_transform(f, rapidity_momentum(grid - beta, mass), sign, order)
        worst = max(worst, float(np.max(np.abs(boosted - shifted))))
    return worst


def covariance_kernel_check(
    f,
    g,
    beta,
    theta,
    eigen,
    mass,
    z_samples=None,
    window=DEFAULT_WINDOW,
    npts=DEFAULT_GRID,
    order=DEFAULT_QUAD_ORDER,
):
    """Kernel-level wedge covariance under a boost of rapidity beta.

    The kernel of the boosted configuration (both test functions composed
    with the inverse boost, deformation matrix mapped through gamma, z
    boosted forward) must reproduce the original kernel.  Returns the max
    absolute difference over the z samples and eigenvalue branches.
    """
    if z_samples is None:
        z_samples = forward_cone_samples()
    lam_matrix = boost_matrix(beta)
    eta = metric_matrix(MINKOWSKI, 2)
    grid, dth = _rapidity_grid(window, npts)
    p = rapidity_momentum(grid, mass)
    q = p @ (eta @ lam_matrix @ eta)

    fp, fm = transform_pair(f, grid, mass, order)
    gp, gm = transform_pair(g, grid, mass, order)
    fpb = mass_shell_transform(f, q, +1, order)
    fmb = mass_shell_transform(f, q, -1, order)
    gpb = mass_shell_transform(g, q, +1, order)
    gmb = mass_shell_transform(g, q, -1, order)
    theta_b = gamma_map(lam_matrix, theta)

    worst = 0.0
    for z in z_samples:
        orig = _kernel_from_transforms(fp, fm, gp, gm, p, dth, theta, eigen, z)
        boosted = _kernel_from_transforms(
            fpb, fmb, gpb, gmb, p, dth, theta_b, eigen, lam_matrix @ np.asarray(z)
        )
        worst = max(worst, float(np.max(np.abs(orig.values - boosted.values))))
    return worst


def export_kernel_csv(path, scan):
    """Write a kernel scan as CSV with header z0,z1,r,re,im."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["z0", "z1", "r", "re", "im"])
        for res in scan:
            for r, val in enumerate(res.values):
                writer.writerow(
                    [
                        f"{res.z[0]:.12g}",
                        f"{res.z[1]:.12g}",
                        r,
                        f"{val.real:.12e}",
                        f"{val.imag:.12e}",
                    ]
                )
