import numpy as np
import pytest

from cqms import compress, corep, groups, hopf, lipnorm, mkdist
from cqms.errors import DegenerateKernelError
from cqms.sampling import basis_vector_state, random_matrix_state, random_state

import oracles


def test_identical_states_give_zero(z8_setup):
    g, _, _, lip = z8_setup
    rng = np.random.default_rng(0)
    mu = random_state(g, rng)
    assert mkdist.mk_distance(g, lip, mu, mu) == pytest.approx(0.0, abs=1e-9)


def test_point_masses_recover_metric(f_z4):
    lip = lipnorm.lip_from_metric(f_z4)
    d01 = mkdist.mk_distance(f_z4, lip, basis_vector_state(f_z4, 0), basis_vector_state(f_z4, 1))
    assert d01 == pytest.approx(np.pi / 2, abs=1e-9)


def test_transport_to_a_point(z8_setup):
    g, _, _, lip = z8_setup
    rng = np.random.default_rng(1)
    delta0 = basis_vector_state(g, 0)
    for _ in range(5):
        mu = random_state(g, rng)
        value = mkdist.mk_distance(g, lip, mu, delta0)
        expected = float(np.dot(mu.coeffs.real, g.metric[:, 0]))
        assert value == pytest.approx(expected, abs=1e-8)


def test_agreement_with_transport_oracle(z8_setup, f_s3):
    rng = np.random.default_rng(2)
    for g, lip in ((z8_setup[0], z8_setup[3]), (f_s3, lipnorm.lip_from_metric(f_s3))):
        for _ in range(10):
            mu = random_state(g, rng)
            nu = random_state(g, rng)
            lp_val = mkdist.mk_distance(g, lip, mu, nu)
            oracle = oracles.transport_distance(mu.coeffs.real, nu.coeffs.real, g.metric)
            assert lp_val == pytest.approx(oracle, abs=1e-8)


def test_symmetry_and_triangle(z8_setup):
    g, _, _, lip = z8_setup
    rng = np.random.default_rng(3)
    states = [random_state(g, rng) for _ in range(4)]
    dist = {}
    for i in range(4):
        for j in range(4):
            if i != j:
                dist[i, j] = mkdist.mk_distance(g, lip, states[i], states[j])
    for i in range(4):
        for j in range(4):
            if i != j:
                assert dist[i, j] == pytest.approx(dist[j, i], abs=1e-8)
                for k in range(4):
                    if k not in (i, j):
                        assert dist[i, j] <= dist[i, k] + dist[k, j] + 1e-8


def test_degenerate_kernel_raises(f_z4):
    funcs = np.zeros((1, 4), dtype=complex)
    funcs[0, 0], funcs[0, 1] = 1.0, -1.0
    thin = lipnorm.PolyhedralSeminorm(functionals=funcs, weights=np.array([1.0]))
    mu = basis_vector_state(f_z4, 0)
    nu = basis_vector_state(f_z4, 2)
    with pytest.raises(DegenerateKernelError):
        mkdist.mk_distance(f_z4, thin, mu, nu)


def test_complex_disc_constraints_match_closed_form(s3c_setup):
    g, _, _, lip = s3c_setup
    eps = hopf.counit_state(g)
    _, inverse = groups.validate_cayley(g.group_table)
    rng = np.random.default_rng(4)
    for _ in range(6):
        mu = random_state(g, rng)
        lp_val = mkdist.mk_distance(g, lip, mu, eps)
        closed = oracles.fourier_coefficient_distance(mu.coeffs - eps.coeffs,
                                                      np.asarray(g.length), inverse)
        assert closed - 1e-10 <= lp_val <= closed + 1e-8


# -- truncation bound ---------------------------------------------------------

def test_truncation_bound_zero_at_full(z8_setup):
    g, irreps, dec, lip = z8_setup
    ts = compress.truncate(g, irreps, range(8), dec=dec)
    density = compress.canonical_symbol_state(g, ts)
    bound = mkdist.truncation_bound(g, ts, lip, density, check_invariant=False)
    assert bound == pytest.approx(0.0, abs=1e-9)


def test_truncation_bound_matches_fejer_form(z8_setup):
    g, irreps, dec, lip = z8_setup
    for window in [(0,), (0, 1, 7), (0, 1, 2, 6, 7)]:
        ts = compress.truncate(g, irreps, window, dec=dec)
        density = compress.canonical_symbol_state(g, ts)
        bound = mkdist.truncation_bound(g, ts, lip, density, check_invariant=False)
        expected = oracles.fejer_truncation_bound(8, window)
        assert bound == pytest.approx(expected, abs=1e-8)


def test_trivial_truncation_bound_is_haar_distance(z8_setup):
    g, irreps, dec, lip = z8_setup
    ts = compress.truncate(g, irreps, (0,), dec=dec)
    density = compress.canonical_symbol_state(g, ts)
    bound = mkdist.truncation_bound(g, ts, lip, density, check_invariant=False)
    h = hopf.haar_state(g)
    eps = hopf.counit_state(g)
    assert bound == pytest.approx(2 * mkdist.mk_distance(g, lip, h, eps), abs=1e-9)


def test_truncation_bound_rejects_non_invariant(f_z4):
    irreps = corep.default_irreps(f_z4)
    ts = compress.truncate(f_z4, irreps, (0, 1))
    funcs = np.zeros((3, 4), dtype=complex)
    funcs[0, 0], funcs[0, 1] = 1.0, -1.0
    funcs[1, 1], funcs[1, 2] = 1.0, -1.0
    funcs[2, 2], funcs[2, 3] = 1.0, -1.0
    lopsided = lipnorm.PolyhedralSeminorm(functionals=funcs,
                                          weights=np.array([1.0, 10.0, 1.0]))
    density = compress.canonical_symbol_state(f_z4, ts)
    from cqms.errors import CertificationError
    with pytest.raises((CertificationError, DegenerateKernelError)):
        mkdist.truncation_bound(f_z4, ts, lopsided, density)


# -- criterion ----------------------------------------------------------------

def test_criterion_contractive_case():
    c = mkdist.CriterionInputs(diam_x=5.0, diam_y=7.0, c_phi=1.0, c_psi=1.0,
                               eps_x=0.25, eps_y=0.125)
    assert mkdist.criterion_bound(c) == pytest.approx(0.25)


def test_criterion_formula():
    c = mkdist.CriterionInputs(diam_x=2.0, diam_y=2.0, c_phi=2.0, c_psi=2.0,
                               eps_x=0.1, eps_y=0.1)
    assert mkdist.criterion_bound(c) == pytest.approx(2.0 * 0.5 + 0.05)


def test_criterion_symmetry_and_domain():
    a = mkdist.CriterionInputs(diam_x=1.0, diam_y=2.0, c_phi=1.5, c_psi=3.0,
                               eps_x=0.2, eps_y=0.4)
    b = mkdist.CriterionInputs(diam_x=2.0, diam_y=1.0, c_phi=3.0, c_psi=1.5,
                               eps_x=0.4, eps_y=0.2)
    assert mkdist.criterion_bound(a) == pytest.approx(mkdist.criterion_bound(b))
    with pytest.raises(ValueError):
        mkdist.criterion_bound(mkdist.CriterionInputs(
            diam_x=1.0, diam_y=1.0, c_phi=0.0, c_psi=1.0, eps_x=0.0, eps_y=0.0))


def test_admissible_sum_lipnorm(z8_mid):
    g, lip, ts, alpha, beta = z8_mid
    density = compress.canonical_symbol_state(g, ts)
    sym = compress.symbol_map(ts, alpha, density)
    bound = mkdist.truncation_bound(g, ts, lip, density, check_invariant=False)
    r = max(bound, 1e-6)

    def lip_x(a):
        return lip.value(a)

    def lip_y(x):
        return lipnorm.induced_lip_bi(lip, alpha, beta, x, tol=1e-7)

    evaluator = mkdist.admissible_sum_lipnorm(
        lip_x, lip_y, phi_map=lambda a: ts.tau(a), psi_map=lambda x: sym(ts.expand(x)),
        r=r, norm_x=lambda a: g.opnorm(a), norm_y=lambda x: float(np.linalg.norm(x, 2)))

    assert evaluator(g.unit, np.eye(ts.rank)) == pytest.approx(0.0, abs=1e-8)
    rng = np.random.default_rng(5)
    from cqms.sampling import random_element
    for _ in range(8):
        a = random_element(g, rng)
        val = evaluator(a, ts.tau(a))
        # bridge terms collapse on the graph of tau up to the criterion slack
        cap = max(lip_x(a), lip_y(ts.tau(a)), bound * lip_x(a) / r)
        assert val <= cap + 1e-7
        assert val >= lip_x(a) - 1e-9
    with pytest.raises(ValueError):
        mkdist.admissible_sum_lipnorm(lip_x, lip_y, lambda a: a, lambda x: x, 0.0,
                                      lambda a: 0.0, lambda x: 0.0)


# -- hausdorff and diameter ---------------------------------------------------

def test_hausdorff_basic_cases():
    dist = lambda a, b: abs(a - b)
    est = mkdist.hausdorff_estimate([0.0, 1.0], [0.0, 1.0], dist)
    assert est.exact == 0.0
    est2 = mkdist.hausdorff_estimate([0.0], [3.0], dist)
    assert est2.exact == 3.0
    with pytest.raises(ValueError):
        mkdist.hausdorff_estimate([], [1.0], dist)


def test_hausdorff_map_bound_dominates(z8_setup):
    g, irreps, dec, lip = z8_setup
    ts = compress.truncate(g, irreps, (0, 1, 7), dec=dec)
    rng = np.random.default_rng(6)
    sampled = [random_state(g, rng) for _ in range(6)]
    lift_states, lift_densities = compress.liftable_states(ts, samples=6, seed=7,
                                                           return_densities=True)
    cache = {}

    def dist(a, b):
        key = (id(a), id(b))
        if key not in cache:
            cache[key] = mkdist.mk_distance(g, lip, a, b)
        return cache[key]

    by_id = {id(s): k for k, s in enumerate(sampled)}

    def to_liftable(state):
        vals = [mkdist.mk_distance(g, lip, state, t) for t in lift_states]
        return lift_states[int(np.argmin(vals))]

    def to_sampled(state):
        vals = [mkdist.mk_distance(g, lip, state, t) for t in sampled]
        return sampled[int(np.argmin(vals))]

    est = mkdist.hausdorff_estimate(sampled, lift_states, dist, f=to_liftable, g=to_sampled)
    assert est.map_bound is not None
    assert est.map_bound >= est.exact - 1e-12


def test_diameter_bracket_z2():
    g = hopf.function_algebra(groups.cyclic_table(2), metric=1.0 * (1 - np.eye(2)))
    lip = lipnorm.lip_from_metric(g)
    bracket = mkdist.diameter_bracket(g, lip, samples=4, seed=8)
    assert bracket.lower == pytest.approx(1.0, abs=1e-9)
    assert bracket.upper == pytest.approx(1.0, abs=1e-9)


def test_diameter_bracket_point_masses_realize(f_z4):
    lip = lipnorm.lip_from_metric(f_z4)
    bracket = mkdist.diameter_bracket(f_z4, lip, samples=8, seed=9)
    assert bracket.lower == pytest.approx(np.pi, abs=1e-8)
    assert bracket.upper >= bracket.lower - 1e-12


def test_diameter_bracket_box_fallback(z8_setup):
    g, _, _, lip = z8_setup
    bracket = mkdist.diameter_bracket(g, lip, samples=10, seed=10)
    assert bracket.lower <= bracket.upper
    assert bracket.lower == pytest.approx(np.pi, abs=1e-8)
    assert "box" in bracket.method or "vertex" in bracket.method


# -- matrix states ------------------------------------------------------------

def test_matrix_lower_bound_zero_for_equal(z8_setup):
    g, _, _, lip = z8_setup
    rng = np.random.default_rng(11)
    blocks = random_matrix_state(g, 2, rng)
    assert mkdist.matrix_mk_lower_bound(g, lip, 2, blocks, blocks, samples=20, seed=12) == 0.0


def test_matrix_lower_bound_order_one_below_lp(z8_setup):
    g, _, _, lip = z8_setup
    rng = np.random.default_rng(13)
    for _ in range(5):
        mu = random_state(g, rng)
        nu = random_state(g, rng)
        lower = mkdist.matrix_mk_lower_bound(g, lip, 1, mu.coeffs.reshape(-1, 1, 1),
                                             nu.coeffs.reshape(-1, 1, 1),
                                             samples=60, seed=14)
        lp_val = mkdist.mk_distance(g, lip, mu, nu)
        assert lower <= lp_val + 1e-8


def test_pulled_back_matrix_states_obey_criterion(z8_setup):
    g, irreps, dec, lip = z8_setup
    ts = compress.truncate(g, irreps, (0, 1, 2, 6, 7), dec=dec)
    alpha = compress.induced_coaction(g, ts, "right")
    density = compress.canonical_symbol_state(g, ts)
    sym = compress.symbol_map(ts, alpha, density)
    bound = mkdist.truncation_bound(g, ts, lip, density, check_invariant=False)
    rng = np.random.default_rng(15)
    basis = np.eye(g.dim, dtype=complex)
    for order in (1, 2):
        for _ in range(3):
            blocks = random_matrix_state(g, order, rng)
            composed = np.stack([
                np.einsum("i,iab->ab", sym(ts.expand(ts.tau(basis[i]))), blocks)
                for i in range(g.dim)])
            lower = mkdist.matrix_mk_lower_bound(g, lip, order, blocks, composed,
                                                 samples=50, seed=16)
            assert lower <= bound + 1e-8
