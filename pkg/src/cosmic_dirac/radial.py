"""
Closed-form radial eigenfunctions and their consistency checks.

Conventions
-----------
Public functions take levels labelled by the radial quantum number n_r.
The Laguerre label of the upper decoupled component is n = n_r + 1:

    F(r) = A (2 eps)^gamma     r^(gamma+1) e^(-eps r) L_{n-1}^{2gamma+1}(2 eps r)
    G(r) = B (2 eps)^(gamma-1) r^gamma     e^(-eps r) L_n^{2gamma-1}(2 eps r)

with B/A = n(n + 2 gamma) eps / (gamma eta). The physical pair is
(F+, G-) = M (F, G). All derivatives used in residual checks are analytic.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .exceptions import DomainError, NoBoundStateError, NormalizationUndefinedError, ParameterError, StateError
from .model import ModelParams, QuantumNumbers, coulomb_alpha, coupling_transform, derive, effective_gamma
from .specfun import _laguerre, gauss_laguerre, integrate_halfline, laguerre_at_zero
from .spectrum import EnergyLevel, energy_level

__all__ = [
    "sturmian",
    "default_grid",
    "RadialFunctions",
    "radial_functions",
    "SpinorCoefficients",
    "spinor_coefficients",
    "RadialSpinor",
    "radial_spinor",
    "coupled_residual",
    "second_order_residual",
    "perturb_energy",
    "Normalization",
    "normalize",
    "normalization_closed_form",
    "relativistic_norm",
    "GroundStates",
    "ground_states",
    "full_spinor",
]


def sturmian(n: int, gamma: float, r, component: str = "upper"):
    """
    Sturmian basis function of the su(1,1) representation space.

    upper (n >= 1): 2 sqrt(Gamma(n)/Gamma(n+2g+1)) (2r)^g e^{-r} L_{n-1}^{2g+1}(2r)
    lower (n >= 0): 2 sqrt(Gamma(n+1)/Gamma(n+2g)) (2r)^{g-1} e^{-r} L_n^{2g-1}(2r)

    The upper functions are orthonormal under int_0^inf r f g dr.
    """
    r = np.asarray(r, dtype=float)
    if gamma <= 0:
        raise ParameterError("gamma must be positive")
    if component == "upper":
        if int(n) != n or n < 1:
            raise ParameterError("upper Sturmian index starts at n = 1")
        logc = math.log(2.0) + 0.5 * (gammaln(n) - gammaln(n + 2 * gamma + 1))
        return np.exp(logc + gamma * np.log(2 * r) - r) * _laguerre(int(n) - 1, 2 * gamma + 1, 2 * r)
    if component == "lower":
        if int(n) != n or n < 0:
            raise ParameterError("lower Sturmian index starts at n = 0")
        logc = math.log(2.0) + 0.5 * (gammaln(n + 1) - gammaln(n + 2 * gamma))
        return np.exp(logc + (gamma - 1) * np.log(2 * r) - r) * _laguerre(int(n), 2 * gamma - 1, 2 * r)
    raise ParameterError(f"component must be 'upper' or 'lower', got {component!r}")


def default_grid(level: EnergyLevel, points: int = 400, r_min: float = 1e-4) -> np.ndarray:
    """Log-spaced radii on [r_min, 30/eps]."""
    return np.geomspace(r_min, 30.0 / level.epsilon, points)


def _require_bound(level: EnergyLevel):
    if level.alpha <= 0 or not level.epsilon > 0:
        raise NoBoundStateError("alpha <= 0: the Coulomb-type coupling does not bind")
    if not math.isfinite(level.E):
        raise StateError("level has no real energy")


@dataclass(frozen=True)
class RadialFunctions:
    """Decoupled components on a grid, with first and second derivatives."""

    r: np.ndarray
    F: np.ndarray
    dF: np.ndarray
    d2F: np.ndarray
    G: np.ndarray
    dG: np.ndarray
    d2G: np.ndarray


def _profile(power, eps, deg, order, r, scale):
    # scale * r^power e^{-eps r} L_deg^order(2 eps r) and two analytic derivatives
    x = 2 * eps * r
    base = scale * np.exp(power * np.log(r) - eps * r)
    L0 = _laguerre(deg, order, x)
    L1 = -_laguerre(deg - 1, order + 1, x)
    L2 = _laguerre(deg - 2, order + 2, x)
    w = power / r - eps
    f = base * L0
    df = base * (w * L0 + 2 * eps * L1)
    d2f = base * ((w * w - power / r**2) * L0 + 4 * eps * w * L1 + 4 * eps**2 * L2)
    return f, df, d2f


def radial_functions(level: EnergyLevel, r, A: float = 1.0) -> RadialFunctions:
    """F and G of `level` with upper amplitude `A`; G carries B = A n(n+2g) eps/(g eta)."""
    _require_bound(level)
    r = np.atleast_1d(np.asarray(r, dtype=float))
    d = level.derived
    g, eps, n = level.gamma, level.epsilon, level.n
    B = A * n * (n + 2 * g) * eps / (g * d.eta)
    F = _profile(g + 1, eps, n - 1, 2 * g + 1, r, A * (2 * eps) ** g)
    G = _profile(g, eps, n, 2 * g - 1, r, B * (2 * eps) ** (g - 1))
    return RadialFunctions(r, *F, *G)


@dataclass(frozen=True)
class SpinorCoefficients:
    R1: float
    R2: float
    T1: float
    T2: float


def spinor_coefficients(level: EnergyLevel, misprint: bool = False) -> SpinorCoefficients:
    """
    Coefficients of the explicit (F+, G-) closed form.

    With ``misprint=True`` R2 keeps the extra 1/rho of the misprinted form;
    that variant disagrees with M (F, G) whenever rho != 1 and s1 != 0.
    """
    d = level.derived
    g, n, rho, s1 = level.gamma, level.n, level.params.rho, level.params.s1
    gap = d.gamma_rho_minus_j
    c = n * (n + 2 * g) / (2 * g * d.eta)
    R2 = c * s1 / rho if misprint else c * s1
    return SpinorCoefficients(R1=gap / rho, R2=R2, T1=s1, T2=c * gap / rho)


@dataclass(frozen=True)
class RadialSpinor:
    level: EnergyLevel
    A_n: float
    B_n: float
    normalized: bool
    r: np.ndarray
    F: np.ndarray
    G: np.ndarray
    F_plus: np.ndarray
    G_minus: np.ndarray


def _explicit_pair(level, r, A, coeffs):
    g, eps, n = level.gamma, level.epsilon, level.n
    x = 2 * eps * r
    pref = A * np.exp(g * np.log(2 * eps * r) - eps * r)
    Lu = _laguerre(n - 1, 2 * g + 1, x)
    Ll = _laguerre(n, 2 * g - 1, x)
    return pref * (coeffs.R1 * r * Lu - coeffs.R2 * Ll), pref * (coeffs.T1 * r * Lu + coeffs.T2 * Ll)


def radial_spinor(level: EnergyLevel, r, A_n: float | None = None, misprint: bool = False) -> RadialSpinor:
    """
    Physical radial pair (F+, G-) at radii `r` from the explicit R/T form.

    A_n defaults to the quadrature normalization; for k = 0 the relativistic
    norm is undefined and A_n = 1 is used with ``normalized=False``.
    """
    level.require_valid()
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r <= 0):
        raise ParameterError("radii must be positive")
    normalized = A_n is None and level.qn.k != 0
    if A_n is None:
        A_n = normalize(level).A_n_quadrature if normalized else 1.0
    fg = radial_functions(level, r, A_n)
    Fp, Gm = _explicit_pair(level, r, A_n, spinor_coefficients(level, misprint))
    B_n = A_n * level.n * (level.n + 2 * level.gamma) * level.epsilon / (level.gamma * level.derived.eta)
    return RadialSpinor(level, A_n, B_n, normalized, r, fg.F, fg.G, Fp, Gm)


def _rel(terms):
    total = sum(terms)
    scale = sum(np.abs(t) for t in terms)
    return total / np.where(scale > 0, scale, 1.0)


def coupled_residual(level: EnergyLevel, r, system: str = "decoupled") -> np.ndarray:
    """
    Row residuals of the first-order system, each divided by the sum of
    absolute values of its terms. Shape (2, len(r)).

    system="decoupled": the (F, G) system after diagonalizing the 1/r term,
        (d/dr + g/r - alpha/g) F - eta G = 0,
        (shift - s sqrt(E^2-k^2)) F + (-d/dr + g/r - alpha/g) G = 0.
    system="physical": the original (F+, G-) system with kl = k*lambda,
        F+' - j/(rho r) F+ + s1/r G- + M omega F+ + (M + E - kl + s2) G- = 0,
        G-' + s1/r F+ + j/(rho r) G- + (M - E + kl + s2) F+ - M omega G- = 0.
    """
    _require_bound(level)
    r = np.atleast_1d(np.asarray(r, dtype=float))
    d = level.derived
    g, a = level.gamma, level.alpha
    fg = radial_functions(level, r)
    if system == "decoupled":
        row1 = _rel([fg.dF, g * fg.F / r, -a / g * fg.F, -d.eta * fg.G])
        row2 = _rel([(d.cross_shift - level.qn.s * d.root) * fg.F, -fg.dG, g * fg.G / r, -a / g * fg.G])
        return np.array([row1, row2])
    if system == "physical":
        mat, _ = coupling_transform(d)
        Fp, Gm = mat @ np.array([fg.F, fg.G])
        dFp, dGm = mat @ np.array([fg.dF, fg.dG])
        p, j, kl = level.params, level.qn.j, d.k_lambda
        row1 = _rel([dFp, -j / (p.rho * r) * Fp, p.s1 / r * Gm, p.M * p.omega * Fp, (p.M + d.E - kl + p.s2) * Gm])
        row2 = _rel([dGm, p.s1 / r * Fp, j / (p.rho * r) * Gm, (p.M - d.E + kl + p.s2) * Fp, -p.M * p.omega * Gm])
        return np.array([row1, row2])
    raise ParameterError(f"unknown system {system!r}")


def second_order_residual(level: EnergyLevel, r, component: str = "F", gamma=None) -> np.ndarray:
    """
    Relative residual of -u'' + g'(g'+1) u / r^2 - 2 alpha u / r + eps^2 u.

    g' = gamma for F and gamma - 1 for G unless `gamma` overrides it.
    """
    _require_bound(level)
    r = np.atleast_1d(np.asarray(r, dtype=float))
    fg = radial_functions(level, r)
    u, d2u = (fg.F, fg.d2F) if component == "F" else (fg.G, fg.d2G)
    gp = gamma if gamma is not None else (level.gamma if component == "F" else level.gamma - 1)
    eps_sq = level.derived.epsilon_sq
    return _rel([-d2u, gp * (gp + 1) * u / r**2, -2 * level.alpha * u / r, eps_sq * u])


def perturb_energy(level: EnergyLevel, factor: float) -> EnergyLevel:
    """Same level with E scaled by `factor` and eps recomputed from E (quantization violated)."""
    E = level.E * factor
    d = derive(level.params, level.qn, E)
    if d.epsilon_sq <= 0:
        raise DomainError(f"E = {E} lies above the bound-state threshold")
    return dataclasses.replace(level, E=E, epsilon=math.sqrt(d.epsilon_sq))


@dataclass(frozen=True)
class Normalization:
    A_n_quadrature: float
    A_n_closed_form: float
    B_n: float
    relative_gap: float


def _norm_integral(gamma, eps, n, coeffs, lsq1, order=None):
    # int (1+l^2) r (F+^2 + G-^2) dr at A = 1, substituted x = 2 eps r
    rule = gauss_laguerre(order or n + 8, 2 * gamma + 1)

    def poly(x):
        r = x / (2 * eps)
        Lu = _laguerre(n - 1, 2 * gamma + 1, x)
        Ll = _laguerre(n, 2 * gamma - 1, x)
        return (coeffs.R1 * r * Lu - coeffs.R2 * Ll) ** 2 + (coeffs.T1 * r * Lu + coeffs.T2 * Ll) ** 2

    return lsq1 * integrate_halfline(poly, rule) / (2 * eps) ** 2


def relativistic_norm(spinor: RadialSpinor) -> float:
    """(1+lambda^2) int r (F+^2 + G-^2) dr for the amplitudes carried by `spinor`."""
    lvl = spinor.level
    lsq1 = lvl.derived.lambda_sq_plus_one
    if not math.isfinite(lsq1):
        raise NormalizationUndefinedError("k = 0: 1 + lambda^2 diverges")
    return spinor.A_n**2 * _norm_integral(lvl.gamma, lvl.epsilon, lvl.n, spinor_coefficients(lvl), lsq1)


def normalization_closed_form(level: EnergyLevel) -> float:
    """Closed form for A_n, evaluated as a diagnostic only."""
    d = level.derived
    g, eps, n, rho = level.gamma, level.epsilon, level.n, level.params.rho
    theta = 3 * n * n + g * (6 * n + 2 * g - 1)
    sigma = n * (n + 2 * g) / (g * d.eta) ** 2
    log_ratio = math.lgamma(n) - math.lgamma(n + 2 * g + 1)  # (n-1)!/Gamma(n+2g+1)
    inner = rho * math.exp(log_ratio) / (
        d.lambda_sq_plus_one * g * d.gamma_rho_minus_j * (theta + eps**2 * sigma * (theta + 2 * g))
    )
    return 2 * eps**2 * math.sqrt(inner) if inner >= 0 else math.nan


def normalize(level: EnergyLevel, order: int | None = None) -> Normalization:
    """
    Amplitude A_n enforcing (1+lambda^2) int r (F+^2 + G-^2) dr = 1.

    The quadrature value is exact (Gauss-Laguerre on a polynomial factor)
    and authoritative; the closed form is evaluated beside it.
    """
    level.require_valid()
    d = level.derived
    if level.qn.k == 0:
        raise NormalizationUndefinedError("k = 0: 1 + lambda^2 diverges, relativistic norm undefined")
    integral = _norm_integral(level.gamma, level.epsilon, level.n, spinor_coefficients(level), d.lambda_sq_plus_one, order)
    A = 1.0 / math.sqrt(integral)
    closed = normalization_closed_form(level)
    B = A * level.n * (level.n + 2 * level.gamma) * level.epsilon / (level.gamma * d.eta)
    return Normalization(A, closed, B, abs(closed - A) / A)


@dataclass(frozen=True)
class GroundStates:
    r: np.ndarray
    phi0_schrodinger: np.ndarray  # shape (2, len(r)): (upper, lower)
    phi0_susy: np.ndarray
    max_ratio_deviation: float
    annihilation_residual: float
    rejected_candidate_normalizable: bool


def ground_states(params: ModelParams, qn: QuantumNumbers, r=None) -> GroundStates:
    """
    Compare the factorization ground state with the SUSY ground state.

    The factorization state is the closed-form spinor at Laguerre label
    n = 0: the upper entry needs L_{-1} and is zero, the lower entry is
    r^g e^{-eps0 r} L_0 with eps0 = alpha/g from alpha/eps = n + g. The SUSY
    state is built from the annihilation condition A^- phi = 0 with
    A^- = -d/dr + g/r - alpha/g, whose solution is exp(int (g/r - alpha/g) dr).
    """
    j = qn.j
    g = effective_gamma(params, j)
    alpha = coulomb_alpha(params, j)
    if alpha <= 0:
        raise NoBoundStateError("alpha <= 0: no bound ground state")
    r = np.geomspace(0.01, 20.0, 400) if r is None else np.asarray(r, dtype=float)

    eps0 = alpha / (0 + g)
    lower_sch = np.exp(g * np.log(r) - eps0 * r) * _laguerre(0, 2 * g - 1, 2 * eps0 * r)
    sch = np.array([np.zeros_like(r), lower_sch])

    exponent = g * np.log(r) - (alpha / g) * r  # int (g/r - alpha/g) dr
    phi = np.exp(exponent)
    susy = np.array([np.zeros_like(r), phi])
    dphi = phi * (g / r - alpha / g)
    annihilated = -dphi + (g / r - alpha / g) * phi
    ann = float(np.max(np.abs(annihilated) / (np.abs(dphi) + np.abs(g / r * phi) + np.abs(alpha / g * phi))))

    ratio = sch[1] / susy[1]
    dev = float(np.max(np.abs(ratio / ratio[0] - 1.0)))
    if np.any(sch[0] != 0) or np.any(susy[0] != 0):
        dev = math.inf

    return GroundStates(r, sch, susy, dev, ann, _candidate_normalizable(g, alpha))


def _candidate_normalizable(g, alpha):
    # A^+ phi = 0 gives r^{-g} e^{+alpha r/g}; its norm integrand r^{-2g} e^{2 alpha r/g}
    # grows without bound as r -> inf, so partial integrals never settle
    def partial(R):
        x = np.geomspace(1e-3, R, 4000)
        return np.trapezoid(np.exp(-2 * g * np.log(x) + 2 * alpha / g * x), x)

    p1, p2, p3 = partial(10.0), partial(20.0), partial(40.0)
    return bool(np.isfinite(p3) and (p3 - p2) <= (p2 - p1))


def full_spinor(level: EnergyLevel, t, r, phi, z, A_n: float | None = None) -> np.ndarray:
    """
    Psi = r^{-1/2} e^{-iEt + i m phi + ikz} (F+, -i F- e^{i phi}, G+, i G- e^{i phi})

    with G+ = lambda F+ and F- = lambda G-. Broadcasts over the coordinates;
    returns shape (4,) + broadcast shape.
    """
    level.require_valid()
    if level.qn.k == 0:
        raise NormalizationUndefinedError("k = 0: lambda is singular, the discrete symmetry is undefined")
    t, r, phi, z = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (t, r, phi, z)))
    sp = radial_spinor(level, r.ravel(), A_n)
    Fp, Gm = sp.F_plus.reshape(r.shape), sp.G_minus.reshape(r.shape)
    lam = level.derived.lam
    phase = np.exp(1j * (-level.E * t + level.qn.m * phi + level.qn.k * z)) / np.sqrt(r)
    rot = np.exp(1j * phi)
    return np.array([phase * Fp, -1j * phase * lam * Gm * rot, phase * lam * Fp, 1j * phase * Gm * rot])
