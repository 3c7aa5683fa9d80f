import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosmic_dirac.exceptions import ParameterError
from cosmic_dirac.geometry import (
    FLAT_GAMMAS,
    PAULI,
    SIGMA3,
    build_frame,
    christoffel,
    clifford_residual,
    metric,
    metric_inverse,
    modified_pauli,
    spin_connection,
    tetrad,
    tetrad_residual,
)


def test_flat_frame_reproduces_flat_gammas():
    frame = build_frame(1.0, 1.0, 0.0)
    np.testing.assert_array_equal(frame.gammas[1], FLAT_GAMMAS[1])
    assert clifford_residual(frame) < 1e-14


def test_flat_space_has_no_connection():
    conn = spin_connection(1.0, 2.5, 0.9)
    assert np.max(np.abs(conn)) < 1e-15


def test_tetrad_completeness_example():
    assert tetrad_residual(build_frame(0.8, 2.0, 0.7)) < 1e-14


def test_metric_inverse_matches_line_element():
    rho, r = 0.6, 1.7
    np.testing.assert_allclose(metric_inverse(rho, r) @ metric(rho, r), np.eye(4), atol=1e-15)
    assert metric_inverse(rho, r)[2, 2] == pytest.approx(-1 / (rho * r) ** 2)


def test_clifford_example_point():
    assert clifford_residual(build_frame(0.5, 0.3, 1.1)) < 1e-12


def test_perturbed_tetrad_is_detected():
    e = tetrad(0.5, 0.3, 1.1)
    e[1, 1] += 1e-3
    assert clifford_residual(build_frame(0.5, 0.3, 1.1, tetrad_matrix=e)) > 1e-4


@settings(max_examples=100, deadline=None)
@given(rho=st.floats(0.05, 1.0), r=st.floats(1e-3, 1e3), phi=st.floats(-10, 10))
def test_clifford_holds_everywhere(rho, r, phi):
    frame = build_frame(rho, r, phi)
    scale = max(1.0, 1.0 / (rho * r) ** 2)
    assert clifford_residual(frame) < 1e-12 * scale
    assert tetrad_residual(frame) < 1e-12 * scale


@settings(max_examples=50, deadline=None)
@given(rho=st.floats(0.05, 1.0), r=st.floats(1e-2, 1e2), phi=st.floats(-10, 10))
def test_time_and_axial_gammas_are_constant(rho, r, phi):
    frame = build_frame(rho, r, phi)
    np.testing.assert_array_equal(frame.gammas[0], FLAT_GAMMAS[0])
    np.testing.assert_array_equal(frame.gammas[3], FLAT_GAMMAS[3])


@settings(max_examples=50, deadline=None)
@given(rho=st.floats(0.05, 1.0), r=st.floats(1e-2, 1e2), phi=st.floats(-10, 10))
def test_spin_connection_from_definition(rho, r, phi):
    conn = spin_connection(rho, r, phi)
    np.testing.assert_allclose(conn[2], 0.5j * (1 - rho) * SIGMA3, atol=1e-14)
    assert np.max(np.abs(conn[[0, 1, 3]])) < 1e-14


def test_christoffel_against_metric_derivative():
    # Gamma^r_{phi phi} = -1/2 d_r g_{phi phi} / g_rr ... with g_rr = -1: -rho^2 r
    rho, r, h = 0.7, 1.3, 1e-6
    dg = (metric(rho, r + h)[2, 2] - metric(rho, r - h)[2, 2]) / (2 * h)
    chris = christoffel(rho, r)
    assert chris[1, 2, 2] == pytest.approx(0.5 * dg, rel=1e-8)
    assert chris[2, 1, 2] == pytest.approx(0.5 * dg / metric(rho, r)[2, 2], rel=1e-8)


def test_spatial_blocks_are_modified_pauli():
    rho, r, phi = 0.6, 1.4, 0.9
    frame = build_frame(rho, r, phi)
    sig_r, sig_phi = modified_pauli(rho, r, phi)
    np.testing.assert_allclose(frame.gammas[1][:2, 2:], sig_r, atol=1e-15)
    np.testing.assert_allclose(frame.gammas[2][:2, 2:], sig_phi, atol=1e-15)


def test_misprinted_sigma_phi_breaks_hermiticity():
    rho, r, phi = 0.6, 1.4, 0.9
    _, misprint = modified_pauli(rho, r, phi, variant="misprint")
    _, consistent = modified_pauli(rho, r, phi)
    assert np.max(np.abs(misprint - misprint.conj().T)) > 1e-2
    np.testing.assert_allclose(consistent, consistent.conj().T, atol=1e-15)
    # the consistent pair anticommutes like Pauli matrices with scaled norm
    sig_r, _ = modified_pauli(rho, r, phi)
    np.testing.assert_allclose(sig_r @ consistent + consistent @ sig_r, 0, atol=1e-15)
    np.testing.assert_allclose(consistent @ consistent, np.eye(2) / (rho * r) ** 2, atol=1e-15)


def test_pauli_matrices():
    for s in PAULI:
        np.testing.assert_allclose(s @ s, np.eye(2))


@pytest.mark.parametrize("rho,r", [(0.0, 1.0), (1.2, 1.0), (0.5, 0.0), (0.5, -1.0)])
def test_invalid_inputs(rho, r):
    with pytest.raises(ParameterError):
        build_frame(rho, r, 0.0)


def test_unknown_pauli_variant():
    with pytest.raises(ParameterError):
        modified_pauli(0.5, 1.0, 0.0, variant="other")
