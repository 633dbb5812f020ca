"""Check registry: every verification the harness can run.

Each check is a pure function of a scenario config and a seeded random
generator, returning a measured residual.  The registry carries the
default tolerance, the anchor string printed by `explain`, and a one-line
rationale for the tolerance choice.
"""

import numpy as np

from nawarp import coupling as cp
from nawarp import exprs
from nawarp import fock_qft as fq
from nawarp import qm_gauge as qm
from nawarp import sun_algebra as sa
from nawarp import warped_core as wc
from nawarp import wedge as wg


class CheckDef:
    def __init__(self, check_id, module, anchor, tolerance, rationale, func):
        self.check_id = check_id
        self.module = module
        self.anchor = anchor
        self.tolerance = tolerance
        self.rationale = rationale
        self.func = func


REGISTRY = {}


def _register(check_id, module, anchor, tolerance, rationale):
    def deco(func):
        REGISTRY[check_id] = CheckDef(check_id, module, anchor, tolerance, rationale, func)
        return func

    return deco


def checks_for(module):
    selected = [
        d for d in REGISTRY.values() if module == "all" or d.module == module
    ]
    return sorted(selected, key=lambda d: d.check_id)


# ---------------------------------------------------------------- shared


def _coupling_spec(sc):
    kind = sc.coupling["kind"]
    if kind == "vector":
        return cp.CouplingSpec.vector(sc.coupling["Y"])
    if kind == "matrix":
        return cp.CouplingSpec.matrix([np.asarray(mm, dtype=complex) for mm in sc.coupling["Y"]])
    raise ValueError(f"unknown coupling kind {kind!r}")


def _eigen(sc):
    basis = sa.build_su_basis(sc.m)
    ytau = cp.build_Ytau(_coupling_spec(sc), basis)
    return basis, ytau, cp.eigendecompose(ytau)


def _theta2(sc):
    if "matrix" in sc.theta:
        return np.asarray(sc.theta["matrix"], dtype=float)
    return wg.AdmissibleTheta(d=2, lam=float(sc.theta.get("lam", 0.4))).matrix()


def _vector_field(sc):
    return exprs.vector_field_from_exprs(sc.z["value"], sc.z["jacobian"])


def _random_context(sc, rng, scale=1.0):
    """One randomized commuting-generator deformation context."""
    n = sc.dim
    q, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    d1 = np.round(rng.normal(size=n), 1)
    d2 = np.round(rng.normal(size=n), 1)
    g1 = q @ np.diag(d1) @ q.conj().T
    g2 = q @ np.diag(d2) @ q.conj().T
    g1 = (g1 + g1.conj().T) / 2
    g2 = (g2 + g2.conj().T) / 2
    spectrum = wc.joint_spectrum([g1, g2])
    _, _, eigen = _eigen(sc)
    theta = scale * _theta2(sc)
    return wc.DeformationContext(theta=theta, spectrum=spectrum, coupling=eigen), (g1, g2)


def _random_matrix(sc, rng):
    n = sc.dim
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


# ---------------------------------------------------------------- algebra


@_register(
    "lie.reconstruction",
    "algebra",
    "Section 2",
    1e-12,
    "commutators rebuilt from structure constants; exact arithmetic up to rounding",
)
def _lie_reconstruction(sc, rng):
    basis = sa.build_su_basis(sc.m)
    return sa.reconstruction_residual(basis, sa.structure_constants(basis))


@_register(
    "lie.jacobi",
    "algebra",
    "Section 2",
    1e-12,
    "cyclic double commutators of exact generator matrices",
)
def _lie_jacobi(sc, rng):
    return sa.jacobi_residual(sa.build_su_basis(sc.m))


@_register(
    "lie.antisymmetry",
    "algebra",
    "Section 2",
    1e-12,
    "signed permutations of the structure tensor",
)
def _lie_antisymmetry(sc, rng):
    return sa.total_antisymmetry_residual(
        sa.structure_constants(sa.build_su_basis(sc.m))
    )


@_register(
    "lie.basis-invariants",
    "algebra",
    "Section 2",
    1e-12,
    "hermiticity, tracelessness, trace orthonormality of the generator basis",
)
def _lie_basis(sc, rng):
    return max(sa.validate_basis(sa.build_su_basis(sc.m)).values())


@_register(
    "lie.exponential-unitarity",
    "algebra",
    "Section 2",
    1e-12,
    "matrix exponentials of the generators must be special unitary",
)
def _lie_unitarity(sc, rng):
    return sa.exponential_unitarity_residual(sa.build_su_basis(sc.m))


# ---------------------------------------------------------------- coupling


@_register(
    "coupling.projector-algebra",
    "coupling",
    "Lemma 3.4",
    1e-12,
    "orthogonality and completeness of the eigen-projectors",
)
def _coupling_projectors(sc, rng):
    _, _, eigen = _eigen(sc)
    return cp.projector_algebra_residual(eigen)


@_register(
    "coupling.reconstruction",
    "coupling",
    "Lemma 3.4",
    1e-12,
    "eigen-decomposition must rebuild the coupling matrix",
)
def _coupling_reconstruction(sc, rng):
    _, ytau, eigen = _eigen(sc)
    return cp.reconstruction_residual(eigen, ytau)


@_register(
    "coupling.zero-rejection",
    "coupling",
    "Lemma 3.4",
    0.0,
    "zero eigenvalues are structurally forbidden; the constructor must raise",
)
def _coupling_zero(sc, rng):
    basis = sa.build_su_basis(sc.m)
    try:
        cp.build_Ytau(cp.CouplingSpec.vector([0.0] * basis.dim), basis)
    except cp.InadmissibleCouplingError:
        return 0.0
    return float("inf")


@_register(
    "coupling.eigenvalue-formula",
    "coupling",
    "Prop 5.12",
    1e-12,
    "closed-form eigenvalues of the two-parameter matrix family, 50 random draws",
)
def _coupling_formula(sc, rng):
    basis = sa.build_su_basis(2)
    worst = 0.0
    for _ in range(50):
        y1, y2, y3 = rng.normal(size=3)
        spec = cp.CouplingSpec.matrix(
            [np.eye(2) * y1, np.eye(2) * y2, np.diag([y3, -y3])]
        )
        try:
            ytau = cp.build_Ytau(spec, basis)
        except cp.InadmissibleCouplingError:
            continue
        eigen = cp.eigendecompose(ytau)
        # generators are normalized to trace 1/2, hence the rescale by 2
        scale = 2.0 * basis.normalization
        root = np.sqrt(y1 * y1 + y2 * y2)
        expected = np.sort(np.array([y3 + root, y3 - root]) * scale / 2.0)[::-1]
        got = np.sort(eigen.lambdas)[::-1]
        if len(got) == 1:
            got = np.array([got[0], got[0]])
        worst = max(worst, float(np.max(np.abs(got - expected))))
    return worst


# ---------------------------------------------------------------- core


def _core_loop(sc, rng, body):
    worst = 0.0
    for _ in range(sc.instances):
        ctx, _ = _random_context(sc, rng)
        a = _random_matrix(sc, rng)
        worst = max(worst, body(ctx, a, rng))
    return worst


@_register(
    "core.left-right",
    "core",
    "Def 3.1",
    1e-11,
    "left and right spectral sums of the warped operator agree exactly",
)
def _core_left_right(sc, rng):
    def body(ctx, a, rng):
        left = wc.warp_abelian(ctx, a, 1.0, "left")
        right = wc.warp_abelian(ctx, a, 1.0, "right")
        return float(np.max(np.abs(left - right)))

    return _core_loop(sc, rng, body)


@_register(
    "core.decomposition",
    "core",
    "Lemma 3.4",
    1e-11,
    "eigenvalue decomposition against the direct non-abelian spectral sum",
)
def _core_decomposition(sc, rng):
    def body(ctx, a, rng):
        w1 = wc.warp_nonabelian(ctx, a)
        w2 = wc.warp_nonabelian_direct(ctx, a)
        return float(np.max(np.abs(w1 - w2)))

    return _core_loop(sc, rng, body)


@_register(
    "core.rieffel",
    "core",
    "Lemma 3.7",
    1e-11,
    "product of warped operators equals the warp of the deformed product",
)
def _core_rieffel(sc, rng):
    def body(ctx, a, rng):
        f = _random_matrix(sc, rng)
        prod = wc.rieffel_product(ctx, a, f)
        lhs = wc.warp_abelian(ctx, a) @ wc.warp_abelian(ctx, f)
        rhs = wc.warp_abelian(ctx, prod)
        return float(np.max(np.abs(lhs - rhs)))

    return _core_loop(sc, rng, body)


@_register(
    "core.rieffel-nonabelian",
    "core",
    "Lemma 3.7",
    1e-11,
    "non-abelian product identity through the eigenvalue decomposition",
)
def _core_rieffel_na(sc, rng):
    def body(ctx, a, rng):
        f = _random_matrix(sc, rng)
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
        return float(np.max(np.abs(lhs - rhs)))

    return _core_loop(sc, rng, body)


@_register(
    "core.symmetry",
    "core",
    "Lemma 3.9",
    1e-11,
    "warping preserves hermiticity of the input operator",
)
def _core_symmetry(sc, rng):
    def body(ctx, a, rng):
        herm = a + a.conj().T
        return float(wc.check_symmetry(ctx, herm))

    return _core_loop(sc, rng, body)


@_register(
    "core.unitary-oracle",
    "core",
    "Lemma 3.4",
    1e-11,
    "spectral-sum unitary against an independent matrix exponential",
)
def _core_unitary(sc, rng):
    from scipy.linalg import expm

    worst = 0.0
    for _ in range(min(sc.instances, 20)):
        ctx, (g1, g2) = _random_context(sc, rng)
        _, ytau, _ = _eigen(sc)
        p = rng.normal(size=2)
        direct = wc.unitary_U_tau(ctx, p)
        oracle = expm(1j * np.kron(p[0] * g1 + p[1] * g2, ytau))
        worst = max(worst, float(np.max(np.abs(direct - oracle))))
    return worst


@_register(
    "core.commutation-transfer",
    "core",
    "Lemma 3.8",
    1e-11,
    "spectrum-pair commutation hypothesis transfers to the warped operators",
)
def _core_transfer(sc, rng):
    worst = 0.0
    for _ in range(min(sc.instances, 10)):
        ctx, _ = _random_context(sc, rng)
        basis = ctx.spectrum.basis
        # operators diagonal in the joint eigenbasis satisfy the hypothesis
        a = basis @ np.diag(rng.normal(size=sc.dim) + 1j * rng.normal(size=sc.dim)) @ basis.conj().T
        f = basis @ np.diag(rng.normal(size=sc.dim) + 1j * rng.normal(size=sc.dim)) @ basis.conj().T
        report = wc.check_commutation_transfer(ctx, a, f)
        if not report.asserted:
            return float("inf")
        worst = max(worst, report.commutator_residual)
    return worst


@_register(
    "core.strong-limit",
    "core",
    "Def 3.1",
    1e-3,
    "oscillatory integral converges monotonically to the spectral sum",
)
def _core_strong_limit(sc, rng):
    ctx, _ = _random_context(sc, rng)
    a = _random_matrix(sc, rng)
    n = a.shape[0] * ctx.coupling.m
    psi = rng.normal(size=n) + 1j * rng.normal(size=n)
    psi /= np.linalg.norm(psi)
    report = wc.strong_limit_quadrature(ctx, a, psi, list(sc.epsilons))
    if not report.monotone:
        return float("inf")
    return float(report.final_distance)


@_register(
    "core.strong-limit-cutoffs",
    "core",
    "Def 3.1",
    2e-3,
    "two distinct cutoff functions agree at the smallest epsilon",
)
def _core_strong_cutoffs(sc, rng):
    ctx, _ = _random_context(sc, rng)
    a = _random_matrix(sc, rng)
    n = a.shape[0] * ctx.coupling.m
    psi = rng.normal(size=n) + 1j * rng.normal(size=n)
    psi /= np.linalg.norm(psi)
    eps = min(sc.epsilons)
    gauss = wc.strong_limit_state(ctx, a, psi, eps, "gaussian")
    hann = wc.strong_limit_state(ctx, a, psi, eps, "hann")
    exact = wc.warp_nonabelian_direct(ctx, a) @ psi
    return float(np.linalg.norm(gauss - hann) / np.linalg.norm(exact))


# ---------------------------------------------------------------- qm


def _qm_setup(sc):
    grid = qm.GridRep(n=int(sc.grid["n"]), N=int(sc.grid["N"]), L=float(sc.grid["L"]))
    _, ytau, eigen = _eigen(sc)
    theta = _theta2(sc)
    field = _vector_field(sc)
    psi = grid.gaussian(float(sc.grid["width"]))[..., None] * _internal_vector(eigen.m)
    return grid, theta, field, ytau, eigen, psi


def _internal_vector(m):
    v = np.arange(1, m + 1, dtype=complex)
    return v / np.linalg.norm(v)


@_register(
    "qm.ccr",
    "qm",
    "Section 4",
    1e-8,
    "grid commutation relations on Gaussian vectors; budget for aliasing",
)
def _qm_ccr(sc, rng):
    grid, _, _, _, _, _ = _qm_setup(sc)
    return qm.ccr_residual(grid, grid.gaussian(float(sc.grid["width"])))


@_register(
    "qm.jacobian",
    "qm",
    "Prop 4.1",
    1e-6,
    "analytic Jacobian against central finite differences",
)
def _qm_jacobian(sc, rng):
    field = _vector_field(sc)
    pts = [rng.uniform(-2.0, 2.0, size=field.n) for _ in range(8)]
    return qm.jacobian_fd_residual(field, pts)


@_register(
    "qm.momentum-paths",
    "qm",
    "Prop 4.1",
    1e-5,
    "closed-form gauge coupling against the spectral warp of the momentum",
)
def _qm_momentum(sc, rng):
    grid, theta, field, ytau, eigen, psi = _qm_setup(sc)
    return qm.momentum_path_residual(grid, theta, field, eigen, ytau, psi)


@_register(
    "qm.momentum-refinement",
    "qm",
    "Prop 4.1",
    0.0,
    "doubling the grid must not worsen the path disagreement",
)
def _qm_refinement(sc, rng):
    grid, theta, field, ytau, eigen, _ = _qm_setup(sc)
    coarse = qm.GridRep(n=grid.n, N=int(sc.grid["refine_from"]), L=grid.L)
    width = float(sc.grid["width"])
    psi_c = coarse.gaussian(width)[..., None] * _internal_vector(eigen.m)
    psi_f = grid.gaussian(width)[..., None] * _internal_vector(eigen.m)
    r_coarse = qm.momentum_path_residual(coarse, theta, field, eigen, ytau, psi_c)
    r_fine = qm.momentum_path_residual(grid, theta, field, eigen, ytau, psi_f)
    return max(0.0, r_fine - r_coarse)


@_register(
    "qm.hamiltonian",
    "qm",
    "Prop 4.2",
    1e-5,
    "warped free Hamiltonian against the square of deformed momenta",
)
def _qm_hamiltonian(sc, rng):
    grid, theta, field, ytau, eigen, psi = _qm_setup(sc)
    rel, quad_norm = qm.hamiltonian_uniqueness_residual(grid, theta, field, eigen, ytau, psi)
    lam = float(sc.theta.get("lam", 0.4)) if "matrix" not in sc.theta else 1.0
    if lam != 0.0 and quad_norm <= 0.0:
        return float("inf")
    return rel


@_register(
    "qm.field-strength",
    "qm",
    "Lemma 4.3",
    1e-5,
    "momentum commutator against the analytic curl; quadratic term exactly zero",
)
def _qm_field_strength(sc, rng):
    grid, theta, field, ytau, eigen, psi = _qm_setup(sc)
    if qm.gauge_commutator_norm(grid, theta, field) != 0.0:
        return float("inf")
    return qm.field_strength_residual(grid, theta, field, ytau, psi)


# ---------------------------------------------------------------- moyal


@_register(
    "moyal.paths",
    "moyal",
    "Prop 4.4",
    1e-5,
    "closed-form deformed coordinates against the spectral warp",
)
def _moyal_paths(sc, rng):
    grid, theta, _, ytau, eigen, psi = _qm_setup(sc)
    return qm.moyal_path_residual(grid, theta, eigen, ytau, psi)


@_register(
    "moyal.commutator",
    "moyal",
    "Prop 4.4",
    1e-5,
    "coordinate commutator against the constant deformation matrix",
)
def _moyal_commutator(sc, rng):
    grid, theta, _, ytau, eigen, psi = _qm_setup(sc)
    return qm.moyal_commutator_residual(grid, theta, ytau, psi)


@_register(
    "moyal.centrality",
    "moyal",
    "Lemma 5.1",
    1e-12,
    "the commutator value is central; exact cancellation expected",
)
def _moyal_centrality(sc, rng):
    grid, theta, _, ytau, eigen, psi = _qm_setup(sc)
    return qm.moyal_centrality_residual(grid, theta, ytau, psi)


@_register(
    "moyal.weyl-twist",
    "moyal",
    "Prop 4.4",
    1e-5,
    "group law of the deformed exponentials up to the central phase",
)
def _moyal_weyl(sc, rng):
    grid, theta, _, ytau, eigen, psi = _qm_setup(sc)
    p = rng.uniform(-1.0, 1.0, size=2)
    q = rng.uniform(-1.0, 1.0, size=2)
    return qm.weyl_twist_residual(grid, theta, eigen, p, q, psi)


@_register(
    "moyal.selfadjoint",
    "moyal",
    "Lemma 4.5",
    1e-10,
    "inner-product symmetry of the deformed coordinates on smooth states",
)
def _moyal_selfadjoint(sc, rng):
    grid, theta, _, ytau, eigen, psi = _qm_setup(sc)
    width = float(sc.grid["width"])
    other = grid.gaussian(width * 1.3, center=[0.5, -0.3])[..., None] * _internal_vector(
        eigen.m
    )
    return qm.selfadjointness_residual(grid, theta, ytau, [psi, other])


# ---------------------------------------------------------------- fock


def _fock_setup(sc):
    modes = fq.ModeSet(
        mass=float(sc.fock["mass"]),
        momenta=np.asarray(sc.fock["momenta"], dtype=float).reshape(-1, 1),
    )
    basis = fq.build_fock_basis(modes, int(sc.fock["ncut"]))
    _, ytau, eigen = _eigen(sc)
    theta = _theta2(sc)
    return basis, theta, eigen


def _random_smearing(rng, K):
    return fq.SmearingFunction(
        fplus=rng.normal(size=K) + 1j * rng.normal(size=K),
        fminus=rng.normal(size=K) + 1j * rng.normal(size=K),
    )


@_register(
    "fock.ladder-adjoint",
    "fock",
    "Lemma 5.3",
    1e-12,
    "deformed creator equals the adjoint of the deformed annihilator",
)
def _fock_adjoint(sc, rng):
    basis, theta, eigen = _fock_setup(sc)
    worst = 0.0
    for i in range(basis.modes.K):
        ann = fq.deform_ladder(basis, theta, eigen, "annihilate", i)
        cre = fq.deform_ladder(basis, theta, eigen, "create", i)
        worst = max(worst, float(np.max(np.abs(ann.conj().T - cre))))
    return worst


@_register(
    "fock.ladder-norm",
    "fock",
    "Lemma 5.3",
    1e-12,
    "deformation is unitary, so ladder norms are preserved state-wise",
)
def _fock_norm(sc, rng):
    basis, theta, eigen = _fock_setup(sc)
    return max(
        fq.ladder_norm_residual(basis, theta, eigen, i) for i in range(basis.modes.K)
    )


@_register(
    "fock.vacuum",
    "fock",
    "Prop 5.6",
    1e-12,
    "translation unitaries and the deformed field fix the vacuum sector",
)
def _fock_vacuum(sc, rng):
    basis, theta, eigen = _fock_setup(sc)
    y = [rng.normal(size=2) for _ in range(3)]
    r1 = fq.vacuum_invariance_residual(basis, theta, eigen, y)
    r2 = fq.vacuum_field_residual(basis, theta, eigen, _random_smearing(rng, basis.modes.K))
    return max(r1, r2)


@_register(
    "fock.hermiticity",
    "fock",
    "Prop 5.6",
    1e-11,
    "field adjoint equals the field of the conjugated smearing",
)
def _fock_hermiticity(sc, rng):
    basis, theta, eigen = _fock_setup(sc)
    return fq.hermiticity_check(basis, theta, eigen, _random_smearing(rng, basis.modes.K))


@_register(
    "fock.norm-bound",
    "fock",
    "Lemma 5.3",
    1e-12,
    "free-field norm bound on every basis vector below the cutoff",
)
def _fock_norm_bound(sc, rng):
    basis, theta, eigen = _fock_setup(sc)
    margin = fq.field_norm_bound(basis, theta, eigen, _random_smearing(rng, basis.modes.K))
    return max(0.0, -margin)


@_register(
    "fock.power-bound",
    "fock",
    "Prop 5.6",
    1e-12,
    "field-power norm bound up to the third power",
)
def _fock_power(sc, rng):
    basis, theta, eigen = _fock_setup(sc)
    margin = fq.power_bound(basis, theta, eigen, _random_smearing(rng, basis.modes.K))
    return max(0.0, -margin)


@_register(
    "fock.twist-k2",
    "fock",
    "Prop 5.6",
    1e-10,
    "two-particle twisted symmetrization, both sides built independently",
)
def _fock_twist2(sc, rng):
    basis, theta, eigen = _fock_setup(sc)
    K = basis.modes.K
    fs = [_random_smearing(rng, K) for _ in range(2)]
    return fq.twisted_symmetrization_residual(basis, theta, eigen, fs)


@_register(
    "fock.twist-k3",
    "fock",
    "Prop 5.6",
    1e-10,
    "three-particle twisted symmetrization",
)
def _fock_twist3(sc, rng):
    basis, theta, eigen = _fock_setup(sc)
    K = basis.modes.K
    fs = [_random_smearing(rng, K) for _ in range(3)]
    return fq.twisted_symmetrization_residual(basis, theta, eigen, fs)


@_register(
    "fock.exchange",
    "fock",
    "Prop 5.6",
    1e-10,
    "swapping the pair changes the vector only by the twist",
)
def _fock_exchange(sc, rng):
    basis, theta, eigen = _fock_setup(sc)
    K = basis.modes.K
    return fq.exchange_consistency_residual(
        basis, theta, eigen, _random_smearing(rng, K), _random_smearing(rng, K)
    )


@_register(
    "fock.linearity",
    "fock",
    "Prop 5.6",
    1e-12,
    "complex linearity of the smearing map on the finite coefficient space",
)
def _fock_linearity(sc, rng):
    basis, theta, eigen = _fock_setup(sc)
    K = basis.modes.K
    return fq.linearity_residual(
        basis, theta, eigen, _random_smearing(rng, K), _random_smearing(rng, K)
    )


# ---------------------------------------------------------------- wedge


def _wedge_setup(sc):
    w = sc.wedge
    f = wg.WedgeTestFunction(
        center=np.asarray(w["f"]["center"], dtype=float),
        scale=float(w["f"]["scale"]),
        side="W1",
    )
    g = wg.WedgeTestFunction(
        center=np.asarray(w["g"]["center"], dtype=float),
        scale=float(w["g"]["scale"]),
        side="-W1",
    )
    kw = {
        "window": float(w["window"]),
        "npts": int(w["points"]),
        "order": int(w["quad_order"]),
    }
    return f, g, float(w["mass"]), kw


@_register(
    "wedge.admissible",
    "wedge",
    "Def 5.9",
    1e-12,
    "structural match of the deformation matrix to the admissible form",
)
def _wedge_admissible(sc, rng):
    theta = _theta2(sc)
    ok = wg.is_admissible(theta)
    ok = ok and not wg.is_admissible(-theta if theta[0, 1] > 0 else theta + 1.0)
    bad = np.zeros((4, 4))
    bad[0, 2], bad[2, 0] = 1.0, -1.0
    ok = ok and not wg.is_admissible(bad)
    return 0.0 if ok else 1.0


@_register(
    "wedge.gamma",
    "wedge",
    "Def 5.8",
    1e-12,
    "covariance map: boost invariance and reflection sign flip",
)
def _wedge_gamma(sc, rng):
    theta = _theta2(sc)
    boost = wg.boost_matrix(0.7)
    r1 = float(np.max(np.abs(wg.gamma_map(boost, theta) - theta)))
    r2 = float(np.max(np.abs(wg.gamma_map(wg.reflection_matrix(2), theta) + theta)))
    return max(r1, r2)


@_register(
    "wedge.quadrature",
    "wedge",
    "Section 5.2",
    1e-9,
    "self-convergence of the transforms under doubled quadrature order",
)
def _wedge_quadrature(sc, rng):
    f, g, mass, kw = _wedge_setup(sc)
    grid = np.linspace(-kw["window"], kw["window"], 50)
    return max(
        wg.quadrature_convergence(f, grid, mass, kw["order"]),
        wg.quadrature_convergence(g, grid, mass, kw["order"]),
    )


@_register(
    "wedge.continuation",
    "wedge",
    "Eq ac1",
    1e-9,
    "analytic continuation by i pi maps the two transforms onto each other",
)
def _wedge_continuation(sc, rng):
    f, g, mass, kw = _wedge_setup(sc)
    grid = np.linspace(-3.0, 3.0, 25)
    return max(
        wg.continuation_check(f, grid, mass, kw["order"]),
        wg.continuation_check(g, grid, mass, kw["order"]),
    )


@_register(
    "wedge.transform-covariance",
    "wedge",
    "Prop 5.11",
    1e-8,
    "boosted transforms equal the rapidity-shifted originals",
)
def _wedge_transform_cov(sc, rng):
    f, g, mass, kw = _wedge_setup(sc)
    beta = float(sc.wedge["beta"])
    return max(
        wg.covariance_transform_residual(f, beta, mass, kw["window"], kw["npts"], kw["order"]),
        wg.covariance_transform_residual(g, beta, mass, kw["window"], kw["npts"], kw["order"]),
    )


@_register(
    "wedge.kernel-covariance",
    "wedge",
    "Prop 5.11",
    1e-8,
    "full kernel of the boosted configuration reproduces the original",
)
def _wedge_kernel_cov(sc, rng):
    f, g, mass, kw = _wedge_setup(sc)
    _, _, eigen = _eigen(sc)
    theta = _theta2(sc)
    beta = float(sc.wedge["beta"])
    return wg.covariance_kernel_check(
        f, g, beta, theta, eigen, mass,
        window=kw["window"], npts=kw["npts"], order=kw["order"],
    )


@_register(
    "wedge.verdict",
    "wedge",
    "Prop 5.12",
    0.0,
    "locality verdict must agree with the eigenvalue-sign classification",
)
def _wedge_verdict(sc, rng):
    f, g, mass, kw = _wedge_setup(sc)
    _, _, eigen = _eigen(sc)
    theta = _theta2(sc)
    verdict = wg.wedge_locality_verdict(eigen, theta, f, g, mass, **kw)
    expected = {
        "StrictlyPositive": ("Local",),
        "Mixed": ("NotLocal",),
        "StrictlyNegative": ("Local", "NotLocal"),
    }[verdict.spectrum_class]
    _wedge_verdict.scans[sc.name] = verdict.scan
    if verdict.worst_tail > wg.TAIL_TOL:
        return float("inf")
    if verdict.verdict in expected:
        return 0.0
    return float("inf")


_wedge_verdict.scans = {}
