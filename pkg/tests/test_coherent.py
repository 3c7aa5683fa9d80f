import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import gammaln

from cosmic_dirac.coherent import (
    CoherentParams,
    coherent_coupled_residual,
    coherent_norm,
    coherent_radial,
    coherent_spinor,
    perelomov_fock,
)
from cosmic_dirac.exceptions import NormalizationUndefinedError, ParameterError, StateError, UnsupportedBranchError
from cosmic_dirac.model import ModelParams, QuantumNumbers
from cosmic_dirac.radial import radial_functions

R = np.linspace(0.1, 10.0, 200)


@pytest.fixture
def cp(ref_params, ref_qn):
    return CoherentParams(0.3, ref_params, ref_qn)


class TestFockCoefficients:
    def test_lowest_amplitude(self):
        c = perelomov_fock(1.0, 0.5, 10)
        assert c[0] == pytest.approx(0.75, rel=1e-15)
        # c_1 = (1 - |xi|^2)^k sqrt(2k) xi
        assert c[1] == pytest.approx(0.75 * math.sqrt(2.0) * 0.5, rel=1e-15)

    @settings(max_examples=100, deadline=None)
    @given(k=st.floats(0.5, 5.0), a=st.floats(0.0, 0.5), phase=st.floats(0.0, 2 * math.pi))
    def test_unit_sum(self, k, a, phase):
        c = perelomov_fock(k, a * np.exp(1j * phase), 100)
        assert abs(np.sum(np.abs(c) ** 2) - 1) < 1e-12

    def test_real_xi_stays_real(self):
        assert perelomov_fock(1.5, -0.4, 5).dtype.kind == "f"

    @pytest.mark.parametrize("args", [(0.0, 0.1, 5), (1.0, 0.1, 0), (1.0, 1.0, 5), (1.0, 0.8 + 0.8j, 5)])
    def test_invalid(self, args):
        with pytest.raises(ParameterError):
            perelomov_fock(*args)


class TestRadialFunctions:
    @pytest.mark.parametrize("xi", [0.1, 0.3, 0.5, -0.4])
    def test_series_matches_closed_form(self, ref_params, ref_qn, xi):
        p = CoherentParams(xi, ref_params, ref_qn, truncation_N=200)
        closed, series = coherent_radial(p, R), coherent_radial(p, R, "series")
        np.testing.assert_allclose(series.F, closed.F, rtol=1e-10)
        np.testing.assert_allclose(series.G, closed.G, rtol=1e-10)

    @pytest.mark.parametrize("xi", [0.3, 0.2 + 0.3j, -0.45j])
    def test_sturmian_construction_agrees(self, ref_params, ref_qn, xi):
        p = CoherentParams(xi, ref_params, ref_qn, truncation_N=120)
        a, b = coherent_radial(p, R, "series"), coherent_radial(p, R, "series", via="sturmian")
        np.testing.assert_allclose(b.F, a.F, rtol=1e-12)
        np.testing.assert_allclose(b.G, a.G, rtol=1e-12)

    def test_complex_series_against_generating_function(self, ref_params, ref_qn):
        # independent resummation: sum_s xi^s L_s^nu(x) = e^{-x xi/(1-xi)} / (1-xi)^(nu+1) holds for complex xi
        xi = 0.25 + 0.35j
        p = CoherentParams(xi, ref_params, ref_qn, truncation_N=200)
        lvl = p.level
        g, eps = lvl.gamma, lvl.epsilon
        x = 2 * eps * R
        pref = 2 * (1 - abs(xi) ** 2) ** (g + 1) / math.exp(0.5 * gammaln(2 * g + 2))
        expected = pref * x**g * np.exp(-eps * R) * np.exp(-x * xi / (1 - xi)) / (1 - xi) ** (2 * g + 2) * R
        np.testing.assert_allclose(coherent_radial(p, R, "series").F, expected, rtol=1e-10)

    def test_truncation_error_shrinks(self, ref_params, ref_qn):
        errs = []
        for N in (10, 20, 40):
            p = CoherentParams(0.5, ref_params, ref_qn, truncation_N=N)
            errs.append(np.max(np.abs(coherent_radial(p, R, "series").F / coherent_radial(p, R).F - 1)))
        assert errs[0] > errs[1] > errs[2]

    def test_decay_rate(self, ref_params, ref_qn):
        p = CoherentParams(0.5, ref_params, ref_qn)
        assert coherent_radial(p, R).decay_rate == pytest.approx(3 * p.level.epsilon, rel=1e-15)

    def test_xi_zero_upper_is_ground_state(self, ref_params, ref_qn):
        p = CoherentParams(0.0, ref_params, ref_qn)
        ratio = coherent_radial(p, R).F / radial_functions(p.level, R).F
        assert np.ptp(ratio) / abs(np.mean(ratio)) < 1e-12

    def test_xi_zero_lower_is_not_the_partner(self, ref_params, ref_qn):
        # G_coh ~ r^g e^{-eps r} while the partner carries r^g (2g - 2 eps r) e^{-eps r}
        p = CoherentParams(0.0, ref_params, ref_qn)
        ratio = coherent_radial(p, R).G / radial_functions(p.level, R).G
        assert np.ptp(ratio) / abs(np.mean(ratio)) > 1e-2
        lvl = p.level
        shape = 2 * lvl.gamma - 2 * lvl.epsilon * R
        np.testing.assert_allclose(ratio * shape, (ratio * shape)[0], rtol=1e-12)

    def test_coupled_system_holds_only_near_origin(self, cp):
        r = np.array([1e-4, 1e-3, 1e-2])
        res = np.max(np.abs(coherent_coupled_residual(cp, r)), axis=0)
        np.testing.assert_allclose(res[1:] / res[:-1], 10.0, rtol=1e-2)
        assert np.max(np.abs(coherent_coupled_residual(cp, np.array([1.0, 3.0])))) > 1e-2

    def test_errors(self, cp, ref_params, ref_qn):
        with pytest.raises(UnsupportedBranchError):
            coherent_radial(CoherentParams(0.1j, ref_params, ref_qn), R)
        with pytest.raises(ParameterError):
            coherent_radial(cp, R, mode="other")
        with pytest.raises(ParameterError):
            coherent_radial(cp, R, mode="series", via="other")
        with pytest.raises(ParameterError):
            coherent_radial(cp, [0.0])
        with pytest.raises(ParameterError):
            CoherentParams(1.0, ref_params, ref_qn)
        with pytest.raises(ParameterError):
            CoherentParams(0.1, ref_params, ref_qn, truncation_N=0)

    def test_unbound_ground_level(self):
        p = CoherentParams(0.1, ModelParams(M=1, omega=1, rho=1, s1=1, s2=0), QuantumNumbers(m=0, k=0.5))
        with pytest.raises(StateError):
            coherent_radial(p, R)


class TestSpinor:
    @pytest.mark.parametrize("xi", [0.0, 0.2, -0.3, 0.5])
    def test_unit_norm_by_adaptive_quadrature(self, ref_params, ref_qn, xi):
        p = CoherentParams(xi, ref_params, ref_qn)
        lsq1 = p.level.derived.lambda_sq_plus_one

        def integrand(x):
            sp = coherent_spinor(p, [x])
            return lsq1 * x * (sp.F_plus[0] ** 2 + sp.G_minus[0] ** 2)

        rate = p.level.epsilon * (1 + xi) / (1 - xi)
        total = sum(quad(integrand, a, b, epsabs=0, epsrel=1e-12, limit=200)[0] for a, b in [(0, 1 / rate), (1 / rate, 10 / rate), (10 / rate, 80 / rate)])
        assert abs(total - 1) < 1e-8

    def test_closed_form_amplitude_agrees(self, cp):
        sp = coherent_spinor(cp, R)
        assert sp.relative_gap < 1e-12

    def test_norm_scales_quadratically(self, cp):
        assert coherent_norm(cp, C=3.0) == pytest.approx(9 * coherent_norm(cp), rel=1e-14)

    def test_gauss_rule_is_exact(self, cp):
        assert coherent_norm(cp, order=3) == pytest.approx(coherent_norm(cp, order=12), rel=1e-13)

    def test_k_zero(self, ref_params):
        p = CoherentParams(0.2, ref_params, QuantumNumbers(m=1, k=0.0))
        with pytest.raises(NormalizationUndefinedError):
            coherent_spinor(p, R)
        with pytest.raises(NormalizationUndefinedError):
            coherent_norm(p)

    def test_complex_xi_has_no_spinor(self, ref_params, ref_qn):
        with pytest.raises(UnsupportedBranchError):
            coherent_norm(CoherentParams(0.2j, ref_params, ref_qn))


def test_series_uses_normalized_sturmian_weights():
    # sum_s |c_s|^2 <s|s> = 1 means the tilted upper function has unit r dr norm
    p = CoherentParams(0.4, ModelParams(M=1, omega=1, rho=0.8, s1=0.3, s2=0.1), QuantumNumbers(m=1, k=0.5))
    eps = p.level.epsilon
    val, _ = quad(lambda x: x * (coherent_radial(p, [x / eps]).F[0] / (x / eps)) ** 2, 0, np.inf, epsrel=1e-12, limit=200)
    assert val == pytest.approx(1.0, rel=1e-9)
