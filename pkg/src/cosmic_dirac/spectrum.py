"""Bound-state energies from the su(1,1) quantization condition n_r + gamma + 1 = alpha/epsilon."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exceptions import StateError
from .model import DerivedQuantities, ModelParams, QuantumNumbers, coulomb_alpha, derive, effective_gamma

__all__ = [
    "NONPOSITIVE_COUPLING",
    "IMAGINARY_E",
    "SUBLONGITUDINAL_E",
    "DEGENERATE_DIAGONALIZATION",
    "EnergyLevel",
    "energy_level",
    "spectrum_sweep",
    "asymptotic_energy",
]

NONPOSITIVE_COUPLING = "nonpositive-coupling"
IMAGINARY_E = "imaginary-E"
SUBLONGITUDINAL_E = "sublongitudinal-E"
DEGENERATE_DIAGONALIZATION = "degenerate-diagonalization"


@dataclass(frozen=True)
class EnergyLevel:
    params: ModelParams
    qn: QuantumNumbers
    gamma: float
    alpha: float
    epsilon: float
    E: float
    sign_E: int
    reasons: tuple[str, ...] = field(default=())

    @property
    def valid(self) -> bool:
        return not self.reasons

    @property
    def n(self) -> int:
        return self.qn.n_r + 1

    @property
    def derived(self) -> DerivedQuantities:
        if IMAGINARY_E in self.reasons or SUBLONGITUDINAL_E in self.reasons:
            raise StateError(f"no real derived quantities for this level: {self.reasons}")
        return derive(self.params, self.qn, self.E)

    def require_valid(self):
        if not self.valid:
            raise StateError(f"energy level is not an admissible bound state: {', '.join(self.reasons)}")
        return self


def asymptotic_energy(params: ModelParams, k: float) -> float:
    """sqrt(k^2 + M^2 omega^2 + (M + s2)^2), the n_r -> infinity limit."""
    return math.sqrt(k * k + (params.M * params.omega) ** 2 + (params.M + params.s2) ** 2)


def energy_level(params: ModelParams, qn: QuantumNumbers, sign_E: int = 1) -> EnergyLevel:
    """
    Energy of the level (qn.m, qn.k, qn.n_r) on the branch `sign_E`.

    Inadmissible levels are returned with reason codes rather than raising,
    so sweeps over parameter space never abort.
    """
    if sign_E not in (1, -1):
        raise ValueError("sign_E must be +1 or -1")
    j = qn.j
    gamma = effective_gamma(params, j)
    alpha = coulomb_alpha(params, j)
    eps = alpha / (qn.n_r + gamma + 1)
    radicand = asymptotic_energy(params, qn.k) ** 2 - eps * eps
    reasons = []
    if alpha <= 0:
        reasons.append(NONPOSITIVE_COUPLING)
    if radicand < 0:
        reasons.append(IMAGINARY_E)
        E = math.nan
    else:
        E = sign_E * math.sqrt(radicand)
        if E * E < qn.k * qn.k:
            reasons.append(SUBLONGITUDINAL_E)
    gap = (params.rho * params.s1) ** 2 / (gamma * params.rho + j) if j > 0 else gamma * params.rho - j
    if gap <= 1e-14 * max(1.0, abs(j)):
        reasons.append(DEGENERATE_DIAGONALIZATION)
    return EnergyLevel(params, qn, gamma, alpha, eps, E, sign_E, tuple(reasons))


def spectrum_sweep(params: ModelParams, qn_template: QuantumNumbers, n_r_max: int, sign_E: int = 1) -> list[EnergyLevel]:
    """Levels n_r = 0 .. n_r_max sharing m, k and s with `qn_template`."""
    if n_r_max < 0:
        raise ValueError("n_r_max must be >= 0")
    return [energy_level(params, qn_template.with_n_r(n), sign_E) for n in range(n_r_max + 1)]
