import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosmic_dirac.exceptions import StateError
from cosmic_dirac.model import ModelParams, QuantumNumbers
from cosmic_dirac.spectrum import (
    DEGENERATE_DIAGONALIZATION,
    IMAGINARY_E,
    NONPOSITIVE_COUPLING,
    SUBLONGITUDINAL_E,
    asymptotic_energy,
    energy_level,
    spectrum_sweep,
)


def test_flat_hydrogen_like_level():
    # gamma = 1/2, alpha = 1/2, eps = 1/3, E^2 = 1 + 1 - 1/9
    lvl = energy_level(ModelParams(M=1, omega=1, rho=1, s1=0, s2=0), QuantumNumbers(m=0, k=0.0, n_r=0))
    assert lvl.gamma == 0.5 and lvl.alpha == 0.5
    assert lvl.epsilon == pytest.approx(1 / 3, rel=1e-15)
    assert lvl.E == pytest.approx(math.sqrt(17) / 3, rel=1e-15)
    # s1 = 0 with j > 0 makes gamma rho - j vanish; the energy is still reported
    assert lvl.reasons == (DEGENERATE_DIAGONALIZATION,)


def test_magnetic_level():
    lvl = energy_level(ModelParams(M=1, omega=4, rho=1, s1=1, s2=0), QuantumNumbers(m=0, k=0.0, n_r=0))
    assert lvl.gamma == pytest.approx(1.118034, abs=1e-6)
    assert lvl.epsilon == pytest.approx(0.472136, abs=1e-6)
    assert lvl.E == pytest.approx(4.09598, abs=1e-5)
    assert lvl.valid


def test_hand_derived_level():
    # j = 3/2, rho = 1, s1 = 2: gamma = 5/2; omega = 2: alpha = 3 - 2 = 1; eps = 1/(7/2) = 2/7
    # E^2 = k^2 + omega^2 + 1 - eps^2 = 1 + 4 + 1 - 4/49 = 290/49
    p = ModelParams(M=1, omega=2, rho=1, s1=2, s2=0)
    lvl = energy_level(p, QuantumNumbers(m=1, k=1.0, n_r=0))
    assert lvl.gamma == pytest.approx(2.5, rel=1e-15)
    assert lvl.epsilon == pytest.approx(2 / 7, rel=1e-15)
    assert lvl.E == pytest.approx(math.sqrt(290) / 7, rel=1e-15)
    neg = energy_level(p, QuantumNumbers(m=1, k=1.0, n_r=0), sign_E=-1)
    assert neg.E == -lvl.E and neg.valid


def test_nonpositive_coupling_flagged():
    lvl = energy_level(ModelParams(M=1, omega=1, rho=1, s1=1, s2=0), QuantumNumbers(m=0))
    assert lvl.alpha == pytest.approx(-0.5)
    assert not lvl.valid and NONPOSITIVE_COUPLING in lvl.reasons
    with pytest.raises(StateError):
        lvl.require_valid()


def test_binding_never_exceeds_asymptotic_energy():
    # alpha = a j/rho + b c and gamma = sqrt((j/rho)^2 + c^2) with a = M omega, b = M + s2, c = -s1,
    # so Cauchy-Schwarz gives eps^2 < a^2 + b^2: the radicand stays above k^2.
    # Closest approach is along (a, b) parallel to (j/rho, c) with a large coupling.
    p = ModelParams(M=1, omega=1 / 600, rho=1, s1=-600, s2=1)
    lvl = energy_level(p, QuantumNumbers(m=0, k=2.0))
    assert lvl.valid
    assert IMAGINARY_E not in lvl.reasons and SUBLONGITUDINAL_E not in lvl.reasons
    assert lvl.epsilon**2 / ((1 / 600) ** 2 + 2**2) > 0.99
    assert lvl.E**2 > 4.0


def test_bad_sign():
    with pytest.raises(ValueError):
        energy_level(ModelParams(), QuantumNumbers(), sign_E=0)


def test_sweep_lengths(ref_params, ref_qn):
    assert len(spectrum_sweep(ref_params, ref_qn, 0)) == 1
    assert [lv.qn.n_r for lv in spectrum_sweep(ref_params, ref_qn, 4)] == [0, 1, 2, 3, 4]
    with pytest.raises(ValueError):
        spectrum_sweep(ref_params, ref_qn, -1)


def test_sweep_monotone_and_asymptote(ref_params, ref_qn):
    levels = spectrum_sweep(ref_params, ref_qn, 400)
    energies = [lv.E for lv in levels]
    assert all(b > a for a, b in zip(energies, energies[1:]))
    limit = asymptotic_energy(ref_params, ref_qn.k)
    assert energies[-1] < limit
    assert limit - energies[-1] < 1e-5


@settings(max_examples=200, deadline=None)
@given(
    M=st.floats(0.2, 4.0),
    omega=st.floats(-4.0, 6.0),
    rho=st.floats(0.1, 1.0),
    s1=st.floats(-2.0, 2.0),
    s2=st.floats(-1.0, 1.0),
    m=st.integers(-3, 3),
    k=st.floats(-2.0, 2.0),
    n_r=st.integers(0, 6),
)
def test_level_invariants(M, omega, rho, s1, s2, m, k, n_r):
    p = ModelParams(M=M, omega=omega, rho=rho, s1=s1, s2=s2)
    lvl = energy_level(p, QuantumNumbers(m=m, k=k, n_r=n_r))
    assert lvl.epsilon == pytest.approx(lvl.alpha / (n_r + lvl.gamma + 1), rel=1e-14)
    if lvl.valid:
        assert lvl.epsilon > 0
        assert lvl.E**2 == pytest.approx(k * k + (M * omega) ** 2 + (M + s2) ** 2 - lvl.epsilon**2, rel=1e-12)
        assert lvl.E**2 >= k * k
        assert lvl.derived.epsilon_sq == pytest.approx(lvl.epsilon**2, rel=1e-9, abs=1e-12)
    if lvl.alpha <= 0:
        assert NONPOSITIVE_COUPLING in lvl.reasons


def test_flat_space_levels():
    # s1 = s2 = 0, rho = 1: gamma = |j|, alpha = M omega j, eps = alpha / (n_r + |j| + 1)
    p = ModelParams(M=1.3, omega=2.0, rho=1.0, s1=0.0, s2=0.0)
    a = energy_level(p, QuantumNumbers(m=1, n_r=0))
    b = energy_level(p, QuantumNumbers(m=0, n_r=1))
    assert a.gamma == 1.5 and b.gamma == 0.5
    assert a.epsilon == pytest.approx(1.3 * 2.0 * 1.5 / 2.5, rel=1e-15)
    assert b.epsilon == pytest.approx(1.3 * 2.0 * 0.5 / 2.5, rel=1e-15)
