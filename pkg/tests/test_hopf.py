import numpy as np
import pytest

from cqms import groups, hopf
from cqms.errors import (
    NotAQuantumGroupError,
    StateCertificationError,
    StructureError,
)


def test_z2_comultiplication_of_delta0():
    g = hopf.function_algebra(groups.cyclic_table(2))
    delta = g.coproduct(np.array([1.0, 0.0]))
    expected = np.zeros((2, 2))
    expected[0, 0] = expected[1, 1] = 1.0       # delta_0 o mult = d0 x d0 + d1 x d1
    assert np.allclose(delta, expected)


def test_group_algebra_z2_comultiplication():
    g = hopf.group_algebra(groups.cyclic_table(2))
    delta = g.coproduct(np.array([0.0, 1.0]))
    expected = np.zeros((2, 2))
    expected[1, 1] = 1.0
    assert np.allclose(delta, expected)


def test_axioms_all_builtins():
    cases = [
        hopf.function_algebra(groups.s3_table()),
        hopf.group_algebra(groups.s3_table()),
        hopf.function_algebra(groups.cyclic_table(4)),
        hopf.group_algebra(groups.cyclic_table(4)),
        hopf.function_algebra(groups.d4_table()),
        hopf.function_algebra(groups.q8_table()),
        hopf.group_algebra(groups.q8_table()),
    ]
    for g in cases:
        report = hopf.check_axioms(g)
        assert report.passed, str(report)
        assert report.max_residual < 1e-12


def test_injected_defect_is_detected(f_z4):
    mult = np.array(f_z4.mult)
    mult[1, 1, 2] += 1e-3
    broken = hopf.FiniteQuantumGroup(
        dim=4, mult=mult, unit=f_z4.unit, star=f_z4.star, comult=f_z4.comult,
        counit=f_z4.counit, antipode=f_z4.antipode, rep=f_z4.rep, haar=f_z4.haar)
    report = hopf.check_axioms(broken)
    assert report.residuals["associativity"] >= 1e-3
    assert not report.passed


def test_shape_error_names_tensor(f_z4):
    with pytest.raises(StructureError, match="antipode"):
        hopf.FiniteQuantumGroup(
            dim=4, mult=f_z4.mult, unit=f_z4.unit, star=f_z4.star, comult=f_z4.comult,
            counit=f_z4.counit, antipode=np.eye(3), rep=f_z4.rep, haar=f_z4.haar)


def test_haar_uniform_on_functions(f_s3):
    state = hopf.haar_state(f_s3)
    assert np.allclose(state.coeffs, np.full(6, 1 / 6))


def test_haar_trace_on_group_algebra(c_s3):
    state = hopf.haar_state(c_s3)
    expected = np.zeros(6)
    expected[0] = 1.0
    assert np.allclose(state.coeffs, expected)


def test_haar_positive_definite(f_s3):
    rng = np.random.default_rng(11)
    for _ in range(20):
        f = rng.normal(size=6) + 1j * rng.normal(size=6)
        val = np.dot(f_s3.haar, f_s3.product(f, f_s3.star_of(f))).real
        assert val > 0


def test_haar_uniqueness_failure():
    # direct sum of two copies of F(Z_2): coassociative but no Podles density
    comult = np.zeros((4, 4, 4))
    for base in (0, 2):
        for i in range(2):
            for j in range(2):
                comult[base + (i + j) % 2, base + i, base + j] = 1.0
    unit = np.ones(4)
    with pytest.raises(NotAQuantumGroupError):
        hopf._solve_haar(comult.astype(complex), unit.astype(complex), 4)


def test_convolution_unit_and_translation(f_z4):
    rng = np.random.default_rng(3)
    eps = hopf.Functional(f_z4.counit)
    mu = hopf.Functional(rng.normal(size=4) + 1j * rng.normal(size=4))
    left = hopf.convolve(eps, mu, f_z4)
    right = hopf.convolve(mu, eps, f_z4)
    assert np.allclose(left.coeffs, mu.coeffs)
    assert np.allclose(right.coeffs, mu.coeffs)
    ev1 = hopf.Functional(np.eye(4)[1])
    assert np.allclose(hopf.convolve(ev1, ev1, f_z4).coeffs, np.eye(4)[2])


def test_convolution_haar_absorbs(f_z4):
    rng = np.random.default_rng(4)
    h = hopf.Functional(f_z4.haar)
    for _ in range(5):
        mu = hopf.Functional(rng.normal(size=4) + 1j * rng.normal(size=4))
        out = hopf.convolve(h, mu, f_z4)
        assert np.allclose(out.coeffs, mu(f_z4.unit) * h.coeffs, atol=1e-12)


def test_convolution_associative(c_s3):
    rng = np.random.default_rng(5)
    for _ in range(10):
        f1, f2, f3 = (hopf.Functional(rng.normal(size=6) + 1j * rng.normal(size=6))
                      for _ in range(3))
        left = hopf.convolve(hopf.convolve(f1, f2, c_s3), f3, c_s3)
        right = hopf.convolve(f1, hopf.convolve(f2, f3, c_s3), c_s3)
        assert np.allclose(left.coeffs, right.coeffs, atol=1e-12)


def test_slice_counit_and_haar(f_z8):
    rng = np.random.default_rng(6)
    eps = hopf.Functional(f_z8.counit)
    h = hopf.Functional(f_z8.haar)
    for _ in range(5):
        a = rng.normal(size=8) + 1j * rng.normal(size=8)
        delta = f_z8.coproduct(a)
        assert np.allclose(hopf.slice_map("left", eps, delta), a, atol=1e-12)
        assert np.allclose(hopf.slice_map("right", h, delta),
                           np.dot(f_z8.haar, a) * f_z8.unit, atol=1e-12)


def test_slice_orders_commute(c_s3):
    rng = np.random.default_rng(7)
    for _ in range(50):
        t = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        phi = hopf.Functional(rng.normal(size=6) + 1j * rng.normal(size=6))
        psi = hopf.Functional(rng.normal(size=6) + 1j * rng.normal(size=6))
        first = psi(hopf.slice_map("left", phi, t))
        second = phi(hopf.slice_map("right", psi, t))
        assert abs(first - second) < 1e-12 * max(1.0, abs(first))


def test_podles_ranks(c_z4):
    report = hopf.check_axioms(c_z4)
    assert report.residuals["podles_right_rank_defect"] == 0.0
    assert report.residuals["podles_left_rank_defect"] == 0.0


def test_counit_support_projection_function(f_z4):
    p = hopf.counit_support_projection(f_z4)
    assert np.allclose(p, np.eye(4)[0])
    assert abs(f_z4.counit_of(p) - 1.0) < 1e-12


def test_counit_support_projection_group(c_s3):
    p = hopf.counit_support_projection(c_s3)
    assert np.allclose(p, np.full(6, 1 / 6))
    assert abs(c_s3.counit_of(p) - 1.0) < 1e-12
    assert np.allclose(c_s3.product(p, p), p, atol=1e-12)
    assert np.allclose(c_s3.star_of(p), p, atol=1e-12)


def test_state_certification(f_z4):
    state = hopf.certify_state(f_z4, np.full(4, 0.25))
    assert state.min_eig >= -1e-12
    with pytest.raises(StateCertificationError):
        hopf.certify_state(f_z4, np.array([1.5, -0.5, 0.0, 0.0]))
    with pytest.raises(StateCertificationError):
        hopf.certify_state(f_z4, np.full(4, 0.3))


def test_counit_is_a_state(c_s3, f_s3):
    for g in (c_s3, f_s3):
        state = hopf.counit_state(g)
        assert state.min_eig >= -1e-12


def test_rep_is_star_homomorphism(c_s3):
    rng = np.random.default_rng(8)
    for _ in range(10):
        a = rng.normal(size=6) + 1j * rng.normal(size=6)
        b = rng.normal(size=6) + 1j * rng.normal(size=6)
        assert np.allclose(c_s3.rho_of(c_s3.product(a, b)),
                           c_s3.rho_of(a) @ c_s3.rho_of(b), atol=1e-12)
        assert np.allclose(c_s3.rho_of(c_s3.star_of(a)),
                           c_s3.rho_of(a).conj().T, atol=1e-12)
