import numpy as np
import pytest
from scipy.linalg import expm

from nawarp import coupling as cp
from nawarp import sun_algebra as sa
from nawarp import warped_core as wc
from nawarp.wedge import AdmissibleTheta


def _context(rng, n=5, lam=0.7, y=(0.0, 0.0, 1.0)):
    q, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    gens = []
    for _ in range(2):
        g = q @ np.diag(np.round(rng.normal(size=n), 1)) @ q.conj().T
        gens.append((g + g.conj().T) / 2)
    spectrum = wc.joint_spectrum(gens)
    basis = sa.build_su_basis(2)
    eigen = cp.eigendecompose(cp.build_Ytau(cp.CouplingSpec.vector(list(y)), basis))
    theta = AdmissibleTheta(d=2, lam=lam).matrix()
    ctx = wc.DeformationContext(theta=theta, spectrum=spectrum, coupling=eigen)
    return ctx, gens


def _rand(rng, n=5):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def test_joint_spectrum_diagonalizes():
    rng = np.random.default_rng(0)
    ctx, gens = _context(rng)
    assert wc.spectrum_residuals(ctx.spectrum, gens) < 1e-11


def test_noncommuting_generators_rejected():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(4, 4))
    b = rng.normal(size=(4, 4))
    a, b = a + a.T, b + b.T
    with pytest.raises(wc.NonCommutingGeneratorsError):
        wc.joint_spectrum([a, b])


def test_left_right_spectral_sums_agree():
    rng = np.random.default_rng(2)
    for _ in range(20):
        ctx, _ = _context(rng)
        a = _rand(rng)
        left = wc.warp_abelian(ctx, a, 1.0, "left")
        right = wc.warp_abelian(ctx, a, 1.0, "right")
        assert np.max(np.abs(left - right)) < 1e-11


def test_zero_theta_is_identity_map():
    rng = np.random.default_rng(3)
    ctx, _ = _context(rng, lam=0.0)
    a = _rand(rng)
    assert np.max(np.abs(wc.warp_abelian(ctx, a) - a)) < 1e-12


def test_eigen_decomposition_matches_direct_sum():
    rng = np.random.default_rng(4)
    for _ in range(20):
        ctx, _ = _context(rng, y=tuple(rng.normal(size=3)))
        a = _rand(rng)
        w1 = wc.warp_nonabelian(ctx, a)
        w2 = wc.warp_nonabelian_direct(ctx, a)
        assert np.max(np.abs(w1 - w2)) < 1e-11


def test_unitary_against_expm():
    rng = np.random.default_rng(5)
    for _ in range(10):
        ctx, gens = _context(rng)
        p = rng.normal(size=2)
        ytau = ctx.coupling.reconstruct()
        oracle = expm(1j * np.kron(p[0] * gens[0] + p[1] * gens[1], ytau))
        assert np.max(np.abs(wc.unitary_U_tau(ctx, p) - oracle)) < 1e-11


def test_deformed_product_identity():
    rng = np.random.default_rng(6)
    for _ in range(20):
        ctx, _ = _context(rng)
        a, f = _rand(rng), _rand(rng)
        lhs = wc.warp_abelian(ctx, a) @ wc.warp_abelian(ctx, f)
        rhs = wc.warp_abelian(ctx, wc.rieffel_product(ctx, a, f))
        assert np.max(np.abs(lhs - rhs)) < 1e-11


def test_deformed_product_nonabelian_identity():
    rng = np.random.default_rng(7)
    for _ in range(10):
        ctx, _ = _context(rng, y=tuple(rng.normal(size=3)))
        a, f = _rand(rng), _rand(rng)
        lhs = wc.warp_nonabelian(ctx, a) @ wc.warp_nonabelian(ctx, f)
        rhs = sum(
            np.kron(
                wc.warp_abelian(
                    ctx, wc.rieffel_product(ctx, a, f, theta_scale=lam), theta_scale=lam
                ),
                proj,
            )
            for lam, proj in zip(ctx.coupling.lambdas, ctx.coupling.projectors)
        )
        assert np.max(np.abs(lhs - rhs)) < 1e-11


def test_hermiticity_preserved():
    rng = np.random.default_rng(8)
    for _ in range(10):
        ctx, _ = _context(rng)
        a = _rand(rng)
        assert wc.check_symmetry(ctx, a + a.conj().T) < 1e-11


def test_commutation_transfer():
    rng = np.random.default_rng(9)
    ctx, _ = _context(rng)
    n = ctx.spectrum.n
    basis = ctx.spectrum.basis
    a = basis @ np.diag(rng.normal(size=n) + 1j * rng.normal(size=n)) @ basis.conj().T
    f = basis @ np.diag(rng.normal(size=n) + 1j * rng.normal(size=n)) @ basis.conj().T
    report = wc.check_commutation_transfer(ctx, a, f)
    assert report.asserted
    assert report.hypothesis_residual < 1e-11
    assert report.commutator_residual < 1e-11


def test_commutation_transfer_skips_generic_pair():
    rng = np.random.default_rng(10)
    ctx, _ = _context(rng)
    report = wc.check_commutation_transfer(ctx, _rand(rng), _rand(rng))
    assert not report.asserted


def test_strong_limit_converges():
    rng = np.random.default_rng(11)
    ctx, _ = _context(rng, n=4)
    a = _rand(rng, n=4)
    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    psi /= np.linalg.norm(psi)
    report = wc.strong_limit_quadrature(ctx, a, psi, [0.2, 0.1, 0.05])
    assert report.monotone
    assert report.distances[-1] < report.distances[0]


def test_cutoff_functions_agree():
    rng = np.random.default_rng(12)
    ctx, _ = _context(rng, n=4)
    a = _rand(rng, n=4)
    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    psi /= np.linalg.norm(psi)
    gauss = wc.strong_limit_state(ctx, a, psi, 0.05, "gaussian")
    hann = wc.strong_limit_state(ctx, a, psi, 0.05, "hann")
    exact = wc.warp_nonabelian_direct(ctx, a) @ psi
    assert np.linalg.norm(gauss - hann) / np.linalg.norm(exact) < 2e-2
