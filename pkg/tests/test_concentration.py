import numpy as np
import pytest

from witwire import concentration as conc
from witwire.multipartite import check_density_matrix
from witwire.states import bell, projector


def test_measurement_vector_identity_schmidt():
    for d in [2, 3]:
        psi_mat = np.eye(d, dtype=complex) / np.sqrt(d)
        vec, norm = conc.measurement_vector(psi_mat, "m")
        assert abs(norm - np.sqrt(d)) < 1e-12
        assert np.max(np.abs(vec / norm - bell("psi_plus", d))) < 1e-12


def test_measurement_vector_diagonal_case():
    psi_mat = np.diag([np.sqrt(0.9), np.sqrt(0.1)]).astype(complex)
    vec, _ = conc.measurement_vector(psi_mat, "m")
    expected = np.kron(
        np.eye(2), np.diag([1.0 / np.sqrt(0.9), 1.0 / np.sqrt(0.1)])
    ) @ bell("psi_plus", 2)
    assert np.max(np.abs(vec - expected)) < 1e-12


def test_measurement_vector_dual_construction_agrees():
    rng = np.random.default_rng(101)
    for d in [2, 3, 4]:
        for _ in range(20):
            psi_mat = conc.random_schmidt_operator(d, rng)
            # kind M runs the internal cross-check; reaching the return
            # statement is the assertion
            vec, norm = conc.measurement_vector(psi_mat, "M")
            assert norm > 0.0
            assert vec.shape == (d * d,)


def test_measurement_vector_rejects_bad_kind():
    psi_mat = np.eye(2, dtype=complex) / np.sqrt(2.0)
    with pytest.raises(ValueError):
        conc.measurement_vector(psi_mat, "x")


def test_concentrate_identity_is_swapping():
    # Psi = 1/sqrt(2) makes |phi> maximally entangled already; the
    # measurement then teleports it onto (A, B') with probability 1/4
    psi_mat = np.eye(2, dtype=complex) / np.sqrt(2.0)
    for kind in ("m", "M"):
        res = conc.concentrate(psi_mat, kind)
        assert abs(res.probability - 0.25) < 1e-10
        assert abs(res.fidelity_with_target - 1.0) < 1e-10
        target = projector(bell("psi_plus", 2))
        assert np.max(np.abs(res.output_state - target)) < 1e-10


def test_concentrate_random_reaches_target():
    rng = np.random.default_rng(103)
    for d in [2, 3]:
        for kind in ("m", "M"):
            for _ in range(15):
                psi_mat = conc.random_schmidt_operator(d, rng)
                res = conc.concentrate(psi_mat, kind)
                assert abs(res.fidelity_with_target - 1.0) < 1e-9
                assert 0.0 < res.probability <= 1.0 + 1e-12
                check_density_matrix(res.output_state, [d, d])
                # kind m leaves a copy of the input state, whose purity is 1
                purity = np.trace(res.output_state @ res.output_state).real
                assert abs(purity - 1.0) < 1e-9


def test_bookkeeping_ratio_kind_m_is_d():
    rng = np.random.default_rng(107)
    for d in [2, 3, 4]:
        psi_mat = conc.random_schmidt_operator(d, rng)
        res = conc.concentrate(psi_mat, "m")
        # raw weight d^-3 gives ratio 1/(d^2 d^-3) = d, above 1: the raw
        # numbers are bookkeeping, not probabilities
        assert abs(res.raw_weight - d ** -3) < 1e-9
        assert abs(res.bookkeeping_ratio - d) < 1e-6


def test_probability_consistency_closed_form():
    rng = np.random.default_rng(109)
    for d in [2, 3]:
        for kind in ("m", "M"):
            for _ in range(10):
                psi_mat = conc.random_schmidt_operator(d, rng)
                lhs, rhs, delta = conc.probability_consistency(psi_mat, kind)
                assert delta < 1e-9
                expected = d ** -3 if kind == "m" else d ** -2
                assert abs(rhs - expected) < 1e-9


def test_random_schmidt_operator_contract():
    rng = np.random.default_rng(113)
    for d in [2, 3, 4]:
        for _ in range(20):
            psi_mat = conc.random_schmidt_operator(d, rng)
            tr = np.trace(psi_mat.conj().T @ psi_mat).real
            assert abs(tr - 1.0) < 1e-12
            assert np.linalg.cond(psi_mat) <= conc.CONDITION_CAP
    # plain integer seeds are accepted too
    a = conc.random_schmidt_operator(2, 12345)
    b = conc.random_schmidt_operator(2, 12345)
    assert np.array_equal(a, b)


def test_concentrate_rejects_unnormalized_input():
    with pytest.raises(ValueError):
        conc.concentrate(np.eye(2, dtype=complex), "m")
