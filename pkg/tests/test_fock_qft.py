import numpy as np
import pytest

from nawarp import coupling as cp
from nawarp import fock_qft as fq
from nawarp import sun_algebra as sa
from nawarp.wedge import AdmissibleTheta


@pytest.fixture(scope="module")
def setup():
    modes = fq.ModeSet(mass=1.0, momenta=np.array([[-1.5], [-0.5], [0.5], [1.5]]))
    basis = fq.build_fock_basis(modes, ncut=3)
    su2 = sa.build_su_basis(2)
    ytau = cp.build_Ytau(cp.CouplingSpec.vector([0.3, -0.2, 0.7]), su2)
    eigen = cp.eigendecompose(ytau)
    theta = AdmissibleTheta(d=2, lam=0.4).matrix()
    return basis, theta, eigen


def _smearing(rng, K):
    return fq.SmearingFunction(
        fplus=rng.normal(size=K) + 1j * rng.normal(size=K),
        fminus=rng.normal(size=K) + 1j * rng.normal(size=K),
    )


def test_basis_dimension(setup):
    basis, _, _ = setup
    # 4 modes with at most 3 total quanta
    assert len(basis.occupations) == 35


def test_ladder_ccr(setup):
    basis, _, _ = setup
    ops = fq.ladder_operators(basis)
    num = fq.number_operator(basis)
    # [a_i, a*_i] = 1 on states strictly below the cutoff
    below = np.array([sum(occ) < 3 for occ in basis.occupations])
    for a, adag in ops:
        comm = a @ adag - adag @ a
        assert np.max(np.abs((comm - np.eye(len(below)))[:, below])) < 1e-12
    total = sum(adag @ a for a, adag in ops)
    assert np.max(np.abs(total - num)) < 1e-12


def test_deformed_creator_is_adjoint(setup):
    basis, theta, eigen = setup
    for i in range(basis.modes.K):
        ann = fq.deform_ladder(basis, theta, eigen, "annihilate", i)
        cre = fq.deform_ladder(basis, theta, eigen, "create", i)
        assert np.max(np.abs(ann.conj().T - cre)) < 1e-12


def test_ladder_norms_preserved(setup):
    basis, theta, eigen = setup
    for i in range(basis.modes.K):
        assert fq.ladder_norm_residual(basis, theta, eigen, i) < 1e-12


def test_vacuum_invariance(setup):
    basis, theta, eigen = setup
    rng = np.random.default_rng(0)
    y = [rng.normal(size=2) for _ in range(3)]
    assert fq.vacuum_invariance_residual(basis, theta, eigen, y) < 1e-12
    assert (
        fq.vacuum_field_residual(basis, theta, eigen, _smearing(rng, basis.modes.K))
        < 1e-12
    )


def test_field_hermiticity(setup):
    basis, theta, eigen = setup
    rng = np.random.default_rng(1)
    for _ in range(5):
        f = _smearing(rng, basis.modes.K)
        assert fq.hermiticity_check(basis, theta, eigen, f) < 1e-11


def test_real_smearing_gives_selfadjoint_field(setup):
    basis, theta, eigen = setup
    rng = np.random.default_rng(2)
    coeff = rng.normal(size=basis.modes.K) + 1j * rng.normal(size=basis.modes.K)
    f = fq.SmearingFunction.from_real(coeff)
    phi = fq.deformed_field(basis, theta, eigen, f)
    assert np.max(np.abs(phi - phi.conj().T)) < 1e-11


def test_norm_bounds(setup):
    basis, theta, eigen = setup
    rng = np.random.default_rng(3)
    f = _smearing(rng, basis.modes.K)
    assert fq.field_norm_bound(basis, theta, eigen, f) >= 0.0
    assert fq.power_bound(basis, theta, eigen, f) >= 0.0


def test_twisted_symmetrization(setup):
    basis, theta, eigen = setup
    rng = np.random.default_rng(4)
    K = basis.modes.K
    for k in (2, 3):
        fs = [_smearing(rng, K) for _ in range(k)]
        assert fq.twisted_symmetrization_residual(basis, theta, eigen, fs) < 1e-10


def test_exchange_and_linearity(setup):
    basis, theta, eigen = setup
    rng = np.random.default_rng(5)
    K = basis.modes.K
    f1, f2 = _smearing(rng, K), _smearing(rng, K)
    assert fq.exchange_consistency_residual(basis, theta, eigen, f1, f2) < 1e-10
    assert fq.linearity_residual(basis, theta, eigen, f1, f2) < 1e-12


def test_undeformed_limit_is_plain_field(setup):
    basis, _, eigen = setup
    rng = np.random.default_rng(6)
    f = _smearing(rng, basis.modes.K)
    theta0 = np.zeros((2, 2))
    phi = fq.deformed_field(basis, theta0, eigen, f)
    m = eigen.m
    plain = sum(
        np.kron(f.fminus[i] * a + f.fplus[i] * adag, np.eye(m))
        for i, (a, adag) in enumerate(fq.ladder_operators(basis))
    )
    assert np.max(np.abs(phi - plain)) < 1e-12
