"""
SU(1,1) Perelomov coherent states of the radial problem.

The upper and lower Sturmian towers carry Bargmann indices k = gamma + 1 and
k = gamma. Displacing their lowest states gives

    F~(r, xi) = 2 (1-|xi|^2)^(g+1) / sqrt(Gamma(2g+2)) (2r)^g     e^{-r} sum_{s>=0} xi^s L_s^{2g+1}(2r)
    G~(r, xi) = 2 (1-|xi|^2)^g     / sqrt(Gamma(2g))   (2r)^(g-1) e^{-r} sum_{s>=0} xi^s L_s^{2g-1}(2r)

and the physical functions follow by r -> eps r and multiplication by r.
The Laguerre generating function sum_s L_s^nu(x) y^s = e^{-xy/(1-y)}/(1-y)^{nu+1}
resums both series. Energy scale, eta and lambda are those of the n_r = 0
level with the same (m, k, s).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .exceptions import NormalizationUndefinedError, ParameterError, UnsupportedBranchError
from .model import ModelParams, QuantumNumbers, coupling_transform
from .radial import sturmian
from .specfun import _laguerre, gauss_laguerre, integrate_halfline
from .spectrum import EnergyLevel, energy_level

__all__ = [
    "perelomov_fock",
    "CoherentParams",
    "CoherentRadial",
    "coherent_radial",
    "CoherentSpinor",
    "coherent_spinor",
    "coherent_norm",
    "coherent_coupled_residual",
    "lower_to_upper_ratio",
    "normalization_closed_form_coherent",
]


def perelomov_fock(k: float, xi: complex, N: int) -> np.ndarray:
    """
    Fock amplitudes c_s = (1-|xi|^2)^k sqrt(Gamma(s+2k)/(s! Gamma(2k))) xi^s, s = 0..N.

    `xi` is the expansion parameter of the state (the zeta of the
    displacement normal form).
    """
    if not k > 0:
        raise ParameterError("Bargmann index must be positive")
    if N < 1:
        raise ParameterError("truncation must be >= 1")
    if not abs(xi) < 1:
        raise ParameterError("|xi| must be < 1")
    s = np.arange(N + 1)
    mag = 0.5 * (gammaln(s + 2 * k) - gammaln(s + 1) - gammaln(2 * k))
    powers = np.asarray(xi, dtype=complex) ** s if np.iscomplexobj(xi) else float(xi) ** s
    return (1 - abs(xi) ** 2) ** k * np.exp(mag) * powers


@dataclass(frozen=True)
class CoherentParams:
    xi: complex
    params: ModelParams
    qn: QuantumNumbers
    truncation_N: int = 200
    sign_E: int = 1

    def __post_init__(self):
        if not abs(self.xi) < 1:
            raise ParameterError(f"|xi| must be < 1, got {abs(self.xi)}")
        if self.truncation_N < 1:
            raise ParameterError("truncation_N must be >= 1")

    @property
    def level(self) -> EnergyLevel:
        """The n_r = 0 level that fixes eps, eta and lambda."""
        return energy_level(self.params, self.qn.with_n_r(0), self.sign_E).require_valid()

    @property
    def is_real(self) -> bool:
        return complex(self.xi).imag == 0


@dataclass(frozen=True)
class CoherentRadial:
    r: np.ndarray
    F: np.ndarray
    G: np.ndarray
    decay_rate: complex


def _series_sum(nu, x, xi, N):
    # sum_{s=0}^{N} xi^s L_s^nu(x), one recurrence pass
    prev, cur = np.zeros_like(x), np.ones_like(x)
    total = np.ones(x.shape, dtype=np.result_type(x, xi))
    power = 1.0
    for s in range(1, N + 1):
        prev, cur = cur, ((2 * s - 1 + nu - x) * cur - (s - 1 + nu) * prev) / s
        power = power * xi
        total = total + power * cur
    return total


def _prefactors(gamma, xi):
    c = 1 - abs(xi) ** 2
    upper = 2 * c ** (gamma + 1) / math.exp(0.5 * gammaln(2 * gamma + 2))
    lower = 2 * c**gamma / math.exp(0.5 * gammaln(2 * gamma))
    return upper, lower


def coherent_radial(cp: CoherentParams, r, mode: str = "closed", via: str = "laguerre") -> CoherentRadial:
    """
    Unnormalized physical coherent functions (C = D = 1).

    mode="series" truncates at cp.truncation_N; via="sturmian" builds the
    series as sum_s c_s |s> from `perelomov_fock` and normalized Sturmian
    functions instead of the collapsed Laguerre sum.
    mode="closed" uses the resummed exponential and needs real xi.
    """
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r <= 0):
        raise ParameterError("radii must be positive")
    lvl = cp.level
    g, eps, xi = lvl.gamma, lvl.epsilon, cp.xi
    x = 2 * eps * r
    if mode == "closed":
        if not cp.is_real:
            raise UnsupportedBranchError("closed-form coherent state is only available for real xi")
        xi = float(complex(xi).real)
        pu, pl = _prefactors(g, xi)
        rate = eps * (1 + xi) / (1 - xi)
        F = pu / (1 - xi) ** (2 * g + 2) * np.exp(g * np.log(x) - rate * r) * r
        G = pl / (1 - xi) ** (2 * g) * np.exp((g - 1) * np.log(x) - rate * r) * r
        return CoherentRadial(r, F, G, rate)
    if mode != "series":
        raise ParameterError(f"unknown mode {mode!r}")
    N = cp.truncation_N
    xi = complex(xi) if not cp.is_real else float(complex(xi).real)
    if via == "laguerre":
        pu, pl = _prefactors(g, xi)
        F = pu * np.exp(g * np.log(x) - eps * r) * _series_sum(2 * g + 1, x, xi, N) * r
        G = pl * np.exp((g - 1) * np.log(x) - eps * r) * _series_sum(2 * g - 1, x, xi, N) * r
    elif via == "sturmian":
        # tilted variable eps r; the Sturmian functions already carry (2 eps r)^power e^{-eps r}
        cu = perelomov_fock(g + 1, xi, N)
        cl = perelomov_fock(g, xi, N)
        F = sum(c * sturmian(s + 1, g, eps * r, "upper") for s, c in enumerate(cu)) * r
        G = sum(c * sturmian(s, g, eps * r, "lower") for s, c in enumerate(cl)) * r
    else:
        raise ParameterError(f"unknown series construction {via!r}")
    return CoherentRadial(r, F, G, eps * (1 + xi) / (1 - xi))


def lower_to_upper_ratio(cp: CoherentParams) -> float:
    """D/C fixed by the first coupled equation as r -> 0 (real xi)."""
    lvl = cp.level
    g, eps, eta = lvl.gamma, lvl.epsilon, lvl.derived.eta
    xi = float(complex(cp.xi).real)
    return 2 * eps * (1 - xi * xi) * (2 * g + 1) / ((1 - xi) ** 2 * eta) * math.exp(0.5 * (gammaln(2 * g) - gammaln(2 * g + 2)))


def _closed_pair(cp, r, C):
    rad = coherent_radial(cp, r, "closed")
    return rad, C * rad.F, C * lower_to_upper_ratio(cp) * rad.G


@dataclass(frozen=True)
class CoherentSpinor:
    r: np.ndarray
    F: np.ndarray
    G: np.ndarray
    F_plus: np.ndarray
    G_minus: np.ndarray
    C_n_quadrature: float
    C_n_closed_form: float
    D_ratio: float
    relative_gap: float


def _matrix_entries(cp, r):
    # spinor = overall * (upper_poly, lower_poly), overall = 2 C (1-|xi|^2)^(g+1)/((1-xi)^(2g+2) sqrt(Gamma(2g+2))) (2eps)^g r^g e^{-rate r}
    lvl = cp.level
    d = lvl.derived
    g, rho, s1, eta = lvl.gamma, cp.params.rho, cp.params.s1, d.eta
    grj = d.gamma_rho_minus_j
    upper = grj * r / rho - s1 * (2 * g + 1) / eta
    lower = s1 * r + (2 * g + 1) * grj / (eta * rho)
    return upper, lower


def coherent_norm(cp: CoherentParams, C: float = 1.0, order: int = 6) -> float:
    """(1+lambda^2) int r (F+^2 + G-^2) dr of the matrix-form spinor, by Gauss-Laguerre."""
    lvl = cp.level
    lsq1 = lvl.derived.lambda_sq_plus_one
    if not math.isfinite(lsq1):
        raise NormalizationUndefinedError("k = 0: 1 + lambda^2 diverges, relativistic norm undefined")
    if not cp.is_real:
        raise UnsupportedBranchError("coherent spinor is only available for real xi")
    g, eps = lvl.gamma, lvl.epsilon
    xi = float(complex(cp.xi).real)
    pu, _ = _prefactors(g, xi)
    rate = eps * (1 + xi) / (1 - xi)
    amp = C * pu / (1 - xi) ** (2 * g + 2) * (2 * eps) ** g
    # r^(2g+1) e^{-2 rate r}: substitute x = 2 rate r
    rule = gauss_laguerre(order, 2 * g + 1)

    def poly(x):
        u, l = _matrix_entries(cp, x / (2 * rate))
        return u * u + l * l

    return lsq1 * amp**2 * integrate_halfline(poly, rule) / (2 * rate) ** (2 * g + 2)


def normalization_closed_form_coherent(cp: CoherentParams) -> float:
    """Closed form for C, evaluated as a diagnostic only (real xi)."""
    lvl = cp.level
    d = lvl.derived
    g, eps, rho = lvl.gamma, lvl.epsilon, cp.params.rho
    xi = float(complex(cp.xi).real)
    sig = (2 * g + 1) ** 2 / (d.eta**2 * (1 - xi * xi) ** 2)
    theta = math.exp(gammaln(2 * g + 4) - gammaln(2 * g + 2)) / ((2 * eps) ** 2 * (1 + xi) ** 4)
    inner = rho * eps**2 * (1 - xi * xi) ** (2 * g) / (
        d.lambda_sq_plus_one * 2 * g * d.gamma_rho_minus_j * (1 - xi * xi) ** (2 * g + 2) * (sig + theta)
    )
    return math.sqrt(inner) if inner >= 0 else math.nan


def coherent_spinor(cp: CoherentParams, r) -> CoherentSpinor:
    """
    Physical coherent pair (F+, G-) from the closed-form (F, G), normalized
    so that the relativistic norm is 1. The closed-form C is reported beside it.
    """
    if cp.qn.k == 0:
        raise NormalizationUndefinedError("k = 0: 1 + lambda^2 diverges, relativistic norm undefined")
    C = 1.0 / math.sqrt(coherent_norm(cp))
    rad, F, G = _closed_pair(cp, r, C)
    mat, _ = coupling_transform(cp.level.derived)
    Fp, Gm = mat @ np.array([F, G])
    closed = normalization_closed_form_coherent(cp)
    return CoherentSpinor(rad.r, F, G, Fp, Gm, C, closed, lower_to_upper_ratio(cp), abs(closed - C) / C)


def coherent_coupled_residual(cp: CoherentParams, r) -> np.ndarray:
    """
    Row residuals of the diagonalized first-order system for the coherent
    (F, G) pair, normalized like `radial.coupled_residual`. Shape (2, len(r)).
    """
    from .radial import _rel

    lvl = cp.level
    d = lvl.derived
    g, a = lvl.gamma, lvl.alpha
    rad, F, G = _closed_pair(cp, r, 1.0)
    r = rad.r
    dF = F * ((g + 1) / r - rad.decay_rate)
    dG = G * (g / r - rad.decay_rate)
    row1 = _rel([dF, g * F / r, -a / g * F, -d.eta * G])
    row2 = _rel([(d.cross_shift - lvl.qn.s * d.root) * F, -dG, g * G / r, -a / g * G])
    return np.array([row1, row2])
