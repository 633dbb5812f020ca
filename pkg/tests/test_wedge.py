import numpy as np
import pytest

from nawarp import coupling as cp
from nawarp import sun_algebra as sa
from nawarp import wedge as wg

# reduced quadrature and grid sizes keep the unit tests quick; the full
# resolution run lives in the acceptance suite
ORDER = 1024
NPTS = 600
WINDOW = 8.0

F = wg.WedgeTestFunction(center=np.array([0.0, 0.65]), scale=0.3, side="W1")
G = wg.WedgeTestFunction(center=np.array([0.0, -0.65]), scale=0.3, side="-W1")
THETA = wg.AdmissibleTheta(d=2, lam=0.4).matrix()


def _eigen(y):
    basis = sa.build_su_basis(2)
    return cp.eigendecompose(cp.build_Ytau(cp.CouplingSpec.vector(y), basis))


def _eigen_positive():
    basis = sa.build_su_basis(2)
    spec = cp.CouplingSpec.matrix(
        [np.eye(2) * 0.25, np.zeros((2, 2)), np.diag([1.0, -1.0])]
    )
    return cp.eigendecompose(cp.build_Ytau(spec, basis))


def test_admissible_form():
    assert wg.is_admissible(THETA)
    assert wg.is_admissible(wg.AdmissibleTheta(d=4, lam=0.3, eta=-0.2).matrix())
    assert not wg.is_admissible(-THETA)
    bad = np.zeros((4, 4))
    bad[0, 2], bad[2, 0] = 1.0, -1.0
    assert not wg.is_admissible(bad)


def test_negative_lam_rejected():
    with pytest.raises(ValueError):
        wg.AdmissibleTheta(d=2, lam=-0.1)


def test_gamma_map_boost_invariance():
    for beta in (0.3, -1.1):
        moved = wg.gamma_map(wg.boost_matrix(beta), THETA)
        assert np.max(np.abs(moved - THETA)) < 1e-12


def test_gamma_map_reflection_flips_sign():
    moved = wg.gamma_map(wg.reflection_matrix(2), THETA)
    assert np.max(np.abs(moved + THETA)) < 1e-12


def test_gamma_map_rejects_non_lorentz():
    with pytest.raises(ValueError):
        wg.gamma_map(np.diag([2.0, 1.0]), THETA)


def test_support_outside_wedge_rejected():
    with pytest.raises(ValueError):
        wg.WedgeTestFunction(center=np.array([0.0, 0.3]), scale=0.3, side="W1")
    with pytest.raises(ValueError):
        wg.WedgeTestFunction(center=np.array([0.0, 0.65]), scale=0.3, side="-W1")


def test_quadrature_self_convergence():
    grid = np.linspace(-WINDOW, WINDOW, 30)
    assert wg.quadrature_convergence(F, grid, 1.0, ORDER) < 1e-9
    assert wg.quadrature_convergence(G, grid, 1.0, ORDER) < 1e-9


def test_analytic_continuation():
    grid = np.linspace(-3.0, 3.0, 15)
    assert wg.continuation_check(F, grid, 1.0, ORDER) < 1e-9
    assert wg.continuation_check(G, grid, 1.0, ORDER) < 1e-9


def test_transform_covariance_under_boost():
    res = wg.covariance_transform_residual(F, 0.3, 1.0, WINDOW, NPTS, ORDER)
    assert res < 1e-8


def test_kernel_covariance_under_boost():
    eigen = _eigen([0.6, -0.4, 1.4])
    res = wg.covariance_kernel_check(
        F, G, 0.3, THETA, eigen, 1.0, window=WINDOW, npts=NPTS, order=ORDER
    )
    assert res < 1e-8


def test_positive_spectrum_is_local():
    verdict = wg.wedge_locality_verdict(
        _eigen_positive(), THETA, F, G, 1.0, window=WINDOW, npts=NPTS, order=ORDER
    )
    assert verdict.spectrum_class == "StrictlyPositive"
    assert verdict.verdict == "Local"
    assert verdict.max_kernel < wg.LOCAL_TOL
    assert verdict.worst_tail < wg.TAIL_TOL


def test_mixed_spectrum_is_not_local():
    verdict = wg.wedge_locality_verdict(
        _eigen([0.6, -0.4, 1.4]), THETA, F, G, 1.0,
        window=WINDOW, npts=NPTS, order=ORDER,
    )
    assert verdict.spectrum_class == "Mixed"
    assert verdict.verdict == "NotLocal"
    assert verdict.max_kernel > wg.NONLOCAL_TOL


def test_kernel_csv_round_trip(tmp_path):
    eigen = _eigen([0.6, -0.4, 1.4])
    scan = wg.kernel_scan(
        F, G, THETA, eigen, [np.array([1.0, 0.5])], 1.0,
        window=WINDOW, npts=NPTS, order=ORDER,
    )
    path = tmp_path / "kernel.csv"
    wg.export_kernel_csv(path, scan)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "z0,z1,r,re,im"
    assert len(lines) == 1 + len(eigen.lambdas)
    z0, z1, r, re, im = lines[1].split(",")
    assert float(z0) == 1.0 and float(z1) == 0.5 and int(r) == 0
    assert abs(complex(float(re), float(im)) - scan[0].values[0]) < 1e-15
