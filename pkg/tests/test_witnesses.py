import numpy as np
import pytest

from witwire import witnesses
from witwire.linalg import hermitian_eig
from witwire.states import projector, w_state


def eigs(name, b=None):
    vals, _ = hermitian_eig(witnesses.catalog(name, b=b).matrix)
    return vals


def test_pair_witness_spectra():
    # the identity-plus-two-Pauli-terms entries all share one negative direction
    for name in ("W", "W1", "W4"):
        assert np.max(np.abs(eigs(name) - np.array([-1.0, 1.0, 1.0, 3.0]))) < 1e-12
    # the partially transposed projectors sit at trace 2
    for name in ("V", "W2", "W3"):
        assert np.max(np.abs(eigs(name) - np.array([-1.0, 1.0, 1.0, 1.0]))) < 1e-12
        assert abs(np.trace(witnesses.catalog(name).matrix).real - 2.0) < 1e-12


def test_p_is_positive_semidefinite():
    vals = eigs("P")
    assert vals[0] > -1e-12
    assert witnesses.catalog("P").kind == "positive_semidefinite"


def test_p_b_family():
    # b=1 collapses to P scaled by 1/4
    p = witnesses.catalog("P").matrix
    p1 = witnesses.catalog("P_b", b=1.0).matrix
    assert np.max(np.abs(p1 - p / 4.0)) < 1e-14
    for b in (1.0, 2.0, 10.0, 100.0):
        vals = eigs("P_b", b=b)
        assert vals[0] > -1e-12
    with pytest.raises(ValueError):
        witnesses.catalog("P_b")  # parameter required
    with pytest.raises(ValueError):
        witnesses.catalog("P_b", b=0.5)  # below the PSD range
    with pytest.raises(ValueError):
        witnesses.catalog("W", b=2.0)  # parameter rejected


def test_three_party_projector_witness():
    spec = witnesses.catalog("WW1")
    assert spec.dims == (2, 2, 2)
    vals, _ = hermitian_eig(spec.matrix)
    assert abs(vals[0] + 1.0 / 3.0) < 1e-12
    assert np.max(np.abs(vals[1:] - 2.0 / 3.0)) < 1e-12
    # explicitly 2/3 - projector onto the tripartite W state
    recon = (2.0 / 3.0) * np.eye(8) - projector(w_state())
    assert np.max(np.abs(spec.matrix - recon)) < 1e-14


def test_catalog_names_and_case():
    names = witnesses.catalog_names()
    assert "W" in names and "WW1" in names
    a = witnesses.catalog("w1").matrix
    b = witnesses.catalog("W1").matrix
    assert np.array_equal(a, b)
    with pytest.raises(ValueError, match="W,"):
        witnesses.catalog("W99")


def test_product_state_batch_is_normalized():
    rng = np.random.default_rng(71)
    batch = witnesses.product_state_batch([2, 3], 50, rng)
    assert batch.shape == (50, 6)
    norms = np.linalg.norm(batch, axis=1)
    assert np.max(np.abs(norms - 1.0)) < 1e-12


def test_min_product_expectation_nonnegative_for_witnesses():
    # block positivity: product states never see the negative eigenvalue
    for name in ("W", "V", "W1", "W2", "W3", "W4", "WW1"):
        spec = witnesses.catalog(name)
        low = witnesses.min_product_expectation(
            spec.matrix, list(spec.dims), samples=4000, seed=97
        )
        assert low >= -1e-9, name


def test_min_product_expectation_sees_entangled_directions():
    # a projector onto an entangled state, negated, dips well below zero
    # on product states only boundedly; compare against the full minimum
    spec = witnesses.catalog("W")
    vals, _ = hermitian_eig(spec.matrix)
    low = witnesses.min_product_expectation(spec.matrix, [2, 2], 4000, seed=3)
    assert low > vals[0] + 0.5  # strictly inside the spectral range


def test_validate_witness_reports():
    for name in ("W", "V", "W1", "W2", "W3", "W4", "WW1"):
        rep = witnesses.validate_witness(witnesses.catalog(name), samples=4000, seed=11)
        assert rep.passed, name
        assert rep.min_eigenvalue < -1e-9
        assert rep.min_product_expectation >= -1e-9
    psd = witnesses.validate_witness(witnesses.catalog("P"), samples=100, seed=11)
    assert psd.passed
    assert psd.kind == "positive_semidefinite"
