import numpy as np
import pytest

from nawarp import coupling as cp
from nawarp import qm_gauge as qm
from nawarp import sun_algebra as sa
from nawarp.exprs import vector_field_from_exprs
from nawarp.wedge import AdmissibleTheta

# N = 32 keeps the unit tests fast; the finer-grid regime is exercised in
# the acceptance suite.
N_FAST = 32


def _setup(lam=0.5, field=None, N=N_FAST):
    grid = qm.GridRep(n=2, N=N, L=10.0)
    basis = sa.build_su_basis(2)
    ytau = cp.build_Ytau(cp.CouplingSpec.vector([0.0, 0.0, 1.0]), basis)
    eigen = cp.eigendecompose(ytau)
    theta = AdmissibleTheta(d=2, lam=lam).matrix()
    if field is None:
        field = qm.SmoothVectorField.identity(2)
    psi = grid.gaussian(1.0)[..., None] * np.array([0.6, 0.8], dtype=complex)
    return grid, theta, field, ytau, eigen, psi


def test_ccr_on_gaussian():
    grid, *_ = _setup(N=64)
    assert qm.ccr_residual(grid, grid.gaussian(1.0)) < 1e-8


def test_momentum_is_derivative():
    grid, *_ = _setup(N=64)
    x = grid.position_grids()[0]
    psi = np.exp(-0.5 * (x**2 + grid.position_grids()[1] ** 2))
    expected = 1j * (-x) * psi
    assert np.max(np.abs(qm.apply_p(grid, 0, psi) - expected)) < 1e-8


def test_jacobian_against_finite_differences():
    rng = np.random.default_rng(0)
    field = qm.SmoothVectorField.quadratic(2, a=0.1)
    pts = [rng.uniform(-2.0, 2.0, size=2) for _ in range(8)]
    assert qm.jacobian_fd_residual(field, pts) < 1e-6


def test_momentum_paths_agree_identity_field():
    grid, theta, field, ytau, eigen, psi = _setup()
    assert qm.momentum_path_residual(grid, theta, field, eigen, ytau, psi) < 1e-3


def test_momentum_paths_agree_quadratic_field():
    field = qm.SmoothVectorField.quadratic(2, a=0.1)
    grid, theta, _, ytau, eigen, psi = _setup(lam=0.1, field=field)
    assert qm.momentum_path_residual(grid, theta, field, eigen, ytau, psi) < 1e-3


def test_refinement_improves_paths():
    grid32, theta, field, ytau, eigen, psi32 = _setup(N=32)
    grid64, _, _, _, _, psi64 = _setup(N=64)
    r32 = qm.momentum_path_residual(grid32, theta, field, eigen, ytau, psi32)
    r64 = qm.momentum_path_residual(grid64, theta, field, eigen, ytau, psi64)
    assert r64 <= r32


def test_hamiltonian_built_from_deformed_momenta():
    grid, theta, field, ytau, eigen, psi = _setup()
    rel, quad_norm = qm.hamiltonian_uniqueness_residual(
        grid, theta, field, eigen, ytau, psi
    )
    assert rel < 1e-3
    assert quad_norm > 0.0


def test_field_strength_matches_curl():
    field = qm.SmoothVectorField.quadratic(2, a=0.1)
    grid, theta, _, ytau, eigen, psi = _setup(lam=0.1, field=field)
    assert qm.gauge_commutator_norm(grid, theta, field) == 0.0
    assert qm.field_strength_residual(grid, theta, field, ytau, psi) < 1e-3


def test_moyal_paths_and_commutator():
    grid, theta, _, ytau, eigen, psi = _setup(lam=0.7)
    assert qm.moyal_path_residual(grid, theta, eigen, ytau, psi) < 1e-3
    assert qm.moyal_commutator_residual(grid, theta, ytau, psi) < 1e-3
    assert qm.moyal_centrality_residual(grid, theta, ytau, psi) < 1e-12


def test_weyl_group_law():
    rng = np.random.default_rng(1)
    grid, theta, _, _, eigen, psi = _setup(lam=0.7, N=64)
    for _ in range(3):
        p = rng.uniform(-1.0, 1.0, size=2)
        q = rng.uniform(-1.0, 1.0, size=2)
        assert qm.weyl_twist_residual(grid, theta, eigen, p, q, psi) < 1e-10


def test_selfadjointness_on_smooth_states():
    grid, theta, _, ytau, eigen, psi = _setup(lam=0.7)
    other = grid.gaussian(1.3, center=[0.5, -0.3])[..., None] * np.array(
        [1.0, 1.0j]
    ) / np.sqrt(2)
    assert qm.selfadjointness_residual(grid, theta, ytau, [psi, other]) < 1e-10


def test_expression_field_matches_builtin():
    rng = np.random.default_rng(2)
    built = vector_field_from_exprs(
        ["x1 + 0.1*x1^2", "x2 + 0.1*x2^2"],
        [["1 + 0.2*x1", "0"], ["0", "1 + 0.2*x2"]],
    )
    native = qm.SmoothVectorField.quadratic(2, a=0.1)
    for _ in range(5):
        grids = [np.array(c) for c in rng.uniform(-2.0, 2.0, size=2)]
        vb, vn = built.value(grids), native.value(grids)
        jb, jn = built.jacobian(grids), native.jacobian(grids)
        assert max(abs(float(a) - float(b)) for a, b in zip(vb, vn)) < 1e-12
        for i in range(2):
            for k in range(2):
                assert abs(float(jb[i][k]) - float(jn[i][k])) < 1e-12
