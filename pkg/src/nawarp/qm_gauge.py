"""Deformed quantum mechanics on a periodic grid.

Position operators are diagonal on an N^n periodic grid, momenta are
spectral derivatives through the FFT, and all deformed operators act
matrix-free on wavefunction arrays of shape (N, ..., N, m).  The deformed
momentum is built twice, as a non-abelian gauge coupling in closed form
and as a spectral warp of the plain momentum, and the two paths are
compared on smooth test vectors.  The same machinery gives the deformed
Hamiltonian, the field-strength commutator, and the coordinate operators
of the non-abelian Moyal-Weyl plane.

Sign conventions are fixed once: P_i = i d/dx_i, so [X_i, P_k] = -i
delta_ik and the coordinate commutator below comes out -2i Theta^{ij}
tensor the coupling matrix.
"""

from dataclasses import dataclass

import numpy as np

from nawarp.geometry import check_skew

CHUNK = 128


@dataclass(frozen=True)
class GridRep:
    """Periodic position/momentum grid in n dimensions.

    x holds the per-axis grid values, k the spectral wave numbers, so the
    full grids are outer products.  States are arrays with one axis per
    dimension plus a trailing internal axis when a coupling is present.
    """

    n: int
    N: int
    L: float

    @property
    def x(self):
        return -self.L + 2.0 * self.L * np.arange(self.N) / self.N

    @property
    def k(self):
        return 2.0 * np.pi * np.fft.fftfreq(self.N, d=2.0 * self.L / self.N)

    def position_grids(self):
        """n arrays of shape (N, .., N) with the coordinate values."""
        axes = [self.x] * self.n
        return np.meshgrid(*axes, indexing="ij")

    def momentum_grids(self):
        axes = [self.k] * self.n
        return np.meshgrid(*axes, indexing="ij")

    def gaussian(self, width, center=None, momentum=None):
        """Normalized Gaussian test vector, optionally displaced in phase space."""
        grids = self.position_grids()
        center = np.zeros(self.n) if center is None else np.asarray(center)
        momentum = np.zeros(self.n) if momentum is None else np.asarray(momentum)
        r2 = sum((g - c) ** 2 for g, c in zip(grids, center))
        phase = sum(p * g for p, g in zip(momentum, grids))
        psi = np.exp(-r2 / (2.0 * width**2) + 1j * phase)
        return psi / np.linalg.norm(psi)


def _spatial_axes(grid, psi):
    return tuple(range(grid.n)) if psi.ndim > grid.n else tuple(range(grid.n))


def apply_x(grid, i, psi):
    """Multiply by the i-th coordinate (diagonal in position space)."""
    shape = [1] * psi.ndim
    shape[i] = grid.N
    return psi * grid.x.reshape(shape)


def apply_p(grid, i, psi):
    """Spectral momentum P_i = i d/dx_i."""
    axes = tuple(range(grid.n))
    shape = [1] * psi.ndim
    shape[i] = grid.N
    ft = np.fft.fftn(psi, axes=axes)
    return np.fft.ifftn(-grid.k.reshape(shape) * ft, axes=axes)


def ccr_residual(grid, psi):
    """Max over index pairs of ||([X_i, P_k] + i delta_ik) psi||."""
    worst = 0.0
    for i in range(grid.n):
        for k in range(grid.n):
            comm = apply_x(grid, i, apply_p(grid, k, psi)) - apply_p(
                grid, k, apply_x(grid, i, psi)
            )
            target = -1j * psi if i == k else 0.0
            worst = max(worst, float(np.linalg.norm(comm - target)))
    return worst


@dataclass(frozen=True)
class SmoothVectorField:
    """Closed-form vector field Z with its analytic Jacobian.

    value maps a tuple of coordinate grids to a list of n component
    arrays; jacobian maps the same grids to an n x n nested list of
    arrays with entry [i][k] = dZ^k / dx_i.
    """

    n: int
    value: object
    jacobian: object

    @staticmethod
    def identity(n):
        return SmoothVectorField(
            n=n,
            value=lambda grids: [np.array(g, copy=True) for g in grids],
            jacobian=lambda grids: [
                [np.ones_like(grids[0]) if i == k else np.zeros_like(grids[0]) for k in range(n)]
                for i in range(n)
            ],
        )

    @staticmethod
    def quadratic(n, a=0.1):
        """z_k = x_k + a x_k^2, a mildly nonlinear diagonal field."""
        return SmoothVectorField(
            n=n,
            value=lambda grids: [g + a * g * g for g in grids],
            jacobian=lambda grids: [
                [
                    1.0 + 2.0 * a * grids[i] if i == k else np.zeros_like(grids[0])
                    for k in range(n)
                ]
                for i in range(n)
            ],
        )


def jacobian_fd_residual(field, points, h=1e-6):
    """Relative error of the analytic Jacobian against central differences."""
    worst = 0.0
    for x in points:
        x = np.asarray(x, dtype=float)
        grids = [np.array(c) for c in x]
        jac = field.jacobian(grids)
        for i in range(field.n):
            xp = x.copy()
            xm = x.copy()
            xp[i] += h
            xm[i] -= h
            vp = field.value([np.array(c) for c in xp])
            vm = field.value([np.array(c) for c in xm])
            for k in range(field.n):
                fd = (float(vp[k]) - float(vm[k])) / (2.0 * h)
                ana = float(jac[i][k])
                scale = max(1.0, abs(ana))
                worst = max(worst, abs(fd - ana) / scale)
    return worst


def gauge_field(grid, theta, field):
    """Position-diagonal gauge fields G_i = (Theta Z)_k dZ^k/dx_i.

    Returned as n real arrays over the grid; the full operator tensors
    each with the coupling matrix.
    """
    check_skew(theta)
    grids = grid.position_grids()
    z = field.value(grids)
    jac = field.jacobian(grids)
    tz = [sum(theta[a, b] * z[b] for b in range(grid.n)) for a in range(grid.n)]
    return [
        sum(tz[k] * jac[i][k] for k in range(grid.n))
        for i in range(grid.n)
    ]


def apply_coupling(ytau, psi):
    """Contract the internal axis with the coupling matrix."""
    return np.einsum("ab,...b->...a", ytau, psi)


def deformed_momentum_closed(grid, theta, field, ytau):
    """Closed-form deformed momenta as functions psi -> P^def_i psi."""
    gfields = gauge_field(grid, theta, field)

    def make(i):
        def apply(psi):
            return apply_p(grid, i, psi) + gfields[i][..., None] * apply_coupling(ytau, psi)

        return apply

    return [make(i) for i in range(grid.n)]


def _warp_position_diagonal(grid, theta, field, eigen, base_apply, psi, chunk=CHUNK):
    """Spectral warp of a base operator, generators Z(X) x coupling.

    Evaluates, at every grid point x_j, the conjugation of the base
    operator by the unitary with phase lambda_r (Theta Z(x_j)).Z(x),
    applied to psi, reading off the value at x_j.  Chunked over grid
    points to keep memory flat.
    """
    n, N = grid.n, grid.N
    m = eigen.m
    grids = grid.position_grids()
    z = field.value(grids)
    zflat = np.stack([c.reshape(-1) for c in z], axis=1)
    npts = zflat.shape[0]
    theta_z = zflat @ theta.T

    w = eigen.W
    psi_eig = np.einsum("ab,...b->...a", w.conj().T, psi)
    # per-column eigenvalues in the order of W's columns
    lambdas_per_col = np.zeros(m)
    for lam, unit in zip(eigen.lambdas, eigen.units):
        lambdas_per_col += lam * np.real(np.diag(unit))

    out = np.empty_like(psi_eig)
    flat_out = out.reshape(npts, m)
    for start in range(0, npts, chunk):
        stop = min(start + chunk, npts)
        # phases: (chunk, npts) = (Theta z_j) . z(x)
        phase = theta_z[start:stop] @ zflat.T
        for col in range(m):
            lam = lambdas_per_col[col]
            if lam == 0.0:
                conj = base_apply(psi_eig[..., col])
                flat_out[start:stop, col] = conj.reshape(-1)[start:stop]
                continue
            mod = np.exp(-1j * lam * phase).reshape((stop - start,) + (N,) * n)
            batch = mod * psi_eig[..., col]
            acted = base_apply(batch, batch_axes=1)
            acted *= np.conj(mod)
            flat_acted = acted.reshape(stop - start, npts)
            flat_out[start:stop, col] = flat_acted[np.arange(stop - start), np.arange(start, stop)]
    return np.einsum("ab,...b->...a", w, out)


def _batched_apply_p(grid, i):
    def apply(psi, batch_axes=0):
        axes = tuple(range(batch_axes, batch_axes + grid.n))
        shape = [1] * psi.ndim
        shape[batch_axes + i] = grid.N
        ft = np.fft.fftn(psi, axes=axes)
        return np.fft.ifftn(-grid.k.reshape(shape) * ft, axes=axes)

    return apply


def _batched_apply_p2(grid):
    """Sum of squared momenta (the free Hamiltonian)."""

    def apply(psi, batch_axes=0):
        axes = tuple(range(batch_axes, batch_axes + grid.n))
        ft = np.fft.fftn(psi, axes=axes)
        k2 = np.zeros((grid.N,) * grid.n)
        for i in range(grid.n):
            shape = [1] * grid.n
            shape[i] = grid.N
            k2 = k2 + grid.k.reshape(shape) ** 2
        return np.fft.ifftn(k2.reshape((1,) * batch_axes + k2.shape) * ft, axes=axes)

    return apply


def deformed_momentum_spectral(grid, theta, field, eigen, psi, i, chunk=CHUNK):
    """Spectral-warp path for P^def_i applied to one state."""
    return _warp_position_diagonal(
        grid, theta, field, eigen, _batched_apply_p(grid, i), psi, chunk
    )


def momentum_path_residual(grid, theta, field, eigen, ytau, psi, chunk=CHUNK):
    """Relative disagreement of the two deformed-momentum constructions."""
    closed = deformed_momentum_closed(grid, theta, field, ytau)
    worst = 0.0
    for i in range(grid.n):
        a = closed[i](psi)
        b = deformed_momentum_spectral(grid, theta, field, eigen, psi, i, chunk)
        worst = max(worst, float(np.linalg.norm(a - b) / np.linalg.norm(a)))
    return worst


def hamiltonian_uniqueness_residual(grid, theta, field, eigen, ytau, psi, chunk=CHUNK):
    """Relative difference of the two deformed-Hamiltonian constructions.

    H0 warps the free Hamiltonian as a whole; H1 squares the deformed
    momenta.  Also returns the norm of the quadratic gauge-field term,
    which must be nonzero for a nonzero deformation.
    """
    h0 = _warp_position_diagonal(
        grid, theta, field, eigen, _batched_apply_p2(grid), psi, chunk
    )
    closed = deformed_momentum_closed(grid, theta, field, ytau)
    h1 = sum(closed[i](closed[i](psi)) for i in range(grid.n))
    rel = float(np.linalg.norm(h0 - h1) / np.linalg.norm(psi))

    gfields = gauge_field(grid, theta, field)
    quad = sum(g * g for g in gfields)[..., None] * apply_coupling(
        ytau, apply_coupling(ytau, psi)
    )
    return rel, float(np.linalg.norm(quad))


def field_strength_residual(grid, theta, field, ytau, psi):
    """Relative error of [P^def_1, P^def_2] against the analytic curl.

    The curl term needs only the Jacobian: the quadratic gauge-field
    contribution cancels exactly because the fields are diagonal.
    """
    closed = deformed_momentum_closed(grid, theta, field, ytau)
    comm = closed[0](closed[1](psi)) - closed[1](closed[0](psi))

    grids = grid.position_grids()
    z = field.value(grids)
    jac = field.jacobian(grids)
    tdz = lambda i, a: sum(theta[a, b] * jac[i][b] for b in range(grid.n))
    curl = sum(tdz(0, k) * jac[1][k] - tdz(1, k) * jac[0][k] for k in range(grid.n))
    rhs = 1j * curl[..., None] * apply_coupling(ytau, psi)
    scale = max(float(np.linalg.norm(comm)), 1e-30)
    return float(np.linalg.norm(comm - rhs) / scale)


def gauge_commutator_norm(grid, theta, field):
    """Norm of the commutator of the gauge fields (zero: diagonal matrices)."""
    gfields = gauge_field(grid, theta, field)
    return float(np.max(np.abs(gfields[0] * gfields[1] - gfields[1] * gfields[0])))


def moyal_coordinate_closed(grid, theta, ytau, i, psi):
    """Closed-form deformed coordinate X^def_i = X_i - (Theta P)_i x Ytau."""
    tp = sum(theta[i, b] * apply_p(grid, b, psi) for b in range(grid.n))
    return apply_x(grid, i, psi) - apply_coupling(ytau, tp)


def moyal_coordinate_spectral(grid, theta, eigen, i, psi, chunk=CHUNK):
    """Spectral warp of X_i with generators P x coupling (momentum-diagonal).

    Works on the momentum-space transform, where the generators are
    diagonal and X_i acts through a double FFT.
    """
    n, N = grid.n, grid.N
    m = eigen.m
    axes = tuple(range(n))
    phi = np.fft.fftn(psi, axes=axes)

    kg = grid.momentum_grids()
    kflat = np.stack([c.reshape(-1) for c in kg], axis=1)
    npts = kflat.shape[0]
    theta_k = kflat @ theta.T

    lambdas_per_col = np.zeros(m)
    for lam, unit in zip(eigen.lambdas, eigen.units):
        lambdas_per_col += lam * np.real(np.diag(unit))
    w = eigen.W
    phi_eig = np.einsum("ab,...b->...a", w.conj().T, phi)

    out = np.empty_like(phi_eig)
    flat_out = out.reshape(npts, m)
    xvals = grid.position_grids()[i]
    for start in range(0, npts, chunk):
        stop = min(start + chunk, npts)
        phase = theta_k[start:stop] @ kflat.T
        for col in range(m):
            lam = lambdas_per_col[col]
            mod = np.exp(-1j * lam * phase).reshape((stop - start,) + (N,) * n)
            batch = mod * phi_eig[..., col]
            # X_i in the momentum representation: inverse FFT, multiply, FFT
            pos = np.fft.ifftn(batch, axes=tuple(range(1, n + 1)))
            pos *= xvals
            acted = np.fft.fftn(pos, axes=tuple(range(1, n + 1)))
            acted *= np.conj(mod)
            flat_acted = acted.reshape(stop - start, npts)
            flat_out[start:stop, col] = flat_acted[np.arange(stop - start), np.arange(start, stop)]
    out = np.einsum("ab,...b->...a", w, out)
    return np.fft.ifftn(out, axes=axes)


def moyal_path_residual(grid, theta, eigen, ytau, psi, chunk=CHUNK):
    """Relative disagreement of the two deformed-coordinate constructions."""
    worst = 0.0
    for i in range(grid.n):
        a = moyal_coordinate_closed(grid, theta, ytau, i, psi)
        b = moyal_coordinate_spectral(grid, theta, eigen, i, psi, chunk)
        worst = max(worst, float(np.linalg.norm(a - b) / np.linalg.norm(a)))
    return worst


def moyal_commutator_residual(grid, theta, ytau, psi):
    """Relative error of [X^def_1, X^def_2] psi against -2i Theta^{12} Ytau psi."""
    xc = lambda i, v: moyal_coordinate_closed(grid, theta, ytau, i, v)
    comm = xc(0, xc(1, psi)) - xc(1, xc(0, psi))
    rhs = -2j * theta[0, 1] * apply_coupling(ytau, psi)
    scale = max(float(np.linalg.norm(rhs)), 1e-30)
    return float(np.linalg.norm(comm - rhs) / scale)


def moyal_centrality_residual(grid, theta, ytau, psi):
    """Residual of the deformed coordinates commuting with Theta x Ytau."""
    worst = 0.0
    for i in range(grid.n):
        a = moyal_coordinate_closed(grid, theta, ytau, i, apply_coupling(ytau, psi))
        b = apply_coupling(ytau, moyal_coordinate_closed(grid, theta, ytau, i, psi))
        worst = max(worst, float(np.linalg.norm(a - b) / np.linalg.norm(psi)))
    return worst


def weyl_operator(grid, theta, eigen, p, psi):
    """e^{i p.X^def} psi through the commuting-factor decomposition.

    The deformed exponential splits exactly into the plain position phase
    times a momentum-diagonal coupling phase, because p.(Theta p) = 0.
    """
    axes = tuple(range(grid.n))
    grids = grid.position_grids()
    kg = grid.momentum_grids()
    tp = [sum(theta[a, b] * kg[b] for b in range(grid.n)) for a in range(grid.n)]
    expo = sum(pc * t for pc, t in zip(p, tp))

    phi = np.fft.fftn(psi, axes=axes)
    phi_eig = np.einsum("ab,...b->...a", eigen.W.conj().T, phi)
    lambdas_per_col = np.zeros(eigen.m)
    for lam, unit in zip(eigen.lambdas, eigen.units):
        lambdas_per_col += lam * np.real(np.diag(unit))
    # P acts as -k on FFT mode k, so the (Theta P) phase flips sign
    for col in range(eigen.m):
        phi_eig[..., col] *= np.exp(1j * lambdas_per_col[col] * expo)
    phi = np.einsum("ab,...b->...a", eigen.W, phi_eig)
    out = np.fft.ifftn(phi, axes=axes)

    pos_phase = np.exp(1j * sum(pc * g for pc, g in zip(p, grids)))
    return pos_phase[..., None] * out


def weyl_twist_residual(grid, theta, eigen, p, q, psi):
    """Residual of W(p) W(q) = central-phase x W(p+q) on one state."""
    lhs = weyl_operator(grid, theta, eigen, p, weyl_operator(grid, theta, eigen, q, psi))
    base = weyl_operator(grid, theta, eigen, np.asarray(p) + np.asarray(q), psi)
    ptq = float(np.asarray(p) @ theta @ np.asarray(q))
    central = sum(
        np.exp(1j * lam * ptq) * proj for lam, proj in zip(eigen.lambdas, eigen.projectors)
    )
    rhs = np.einsum("ab,...b->...a", central, base)
    return float(np.linalg.norm(lhs - rhs) / np.linalg.norm(psi))


def selfadjointness_residual(grid, theta, ytau, states):
    """Max inner-product asymmetry of the deformed coordinates and momenta."""
    worst = 0.0
    pairs = [(s1, s2) for s1 in states for s2 in states]
    for i in range(grid.n):
        for u, v in pairs:
            xu = moyal_coordinate_closed(grid, theta, ytau, i, u)
            xv = moyal_coordinate_closed(grid, theta, ytau, i, v)
            worst = max(worst, abs(np.vdot(u, xv) - np.vdot(xu, v)))
    return float(worst)
