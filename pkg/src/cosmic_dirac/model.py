"""
Physical parameters, conserved quantum numbers and derived scalars.

Units: c = hbar = 1. The scalar potential is S(r) = s1/r + s2 and the
uniform field enters only through the cyclotron-type frequency ``omega``.

The discrete-symmetry ratio lambda = (E + s sqrt(E^2 - k^2)) / k is never
stored. It is singular at k = 0 while every formula downstream uses it
through the regular products k*lambda and k/lambda (their product is k^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateTransformError, DomainError, ParameterError

__all__ = [
    "ModelParams",
    "QuantumNumbers",
    "DerivedQuantities",
    "effective_gamma",
    "coulomb_alpha",
    "derive",
    "coupling_matrix",
    "coupling_transform",
    "diagonalizing_transform",
]


@dataclass(frozen=True)
class ModelParams:
    """
    Physical inputs.

    Attributes
    ----------
    M : float
        Particle mass, > 0.
    omega : float
        Cyclotron-type frequency of the uniform field.
    rho : float
        Deficit parameter, 0 < rho <= 1 (rho = 1 is flat space).
    s1 : float
        Strength of the Coulomb-type scalar term s1/r.
    s2 : float
        Constant scalar shift.
    """

    M: float = 1.0
    omega: float = 1.0
    rho: float = 1.0
    s1: float = 0.0
    s2: float = 0.0

    def __post_init__(self):
        for name in ("M", "omega", "rho", "s1", "s2"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        if self.M <= 0:
            raise ParameterError(f"mass must be positive, got M={self.M}")
        if not 0 < self.rho <= 1:
            raise ParameterError(f"deficit parameter must satisfy 0 < rho <= 1, got {self.rho}")


@dataclass(frozen=True)
class QuantumNumbers:
    """Magnetic number m (j = m + 1/2), longitudinal momentum k, sign s, radial index n_r."""

    m: int = 0
    k: float = 0.0
    s: int = 1
    n_r: int = 0

    def __post_init__(self):
        if int(self.m) != self.m:
            raise ParameterError(f"m must be an integer, got {self.m}")
        if self.s not in (1, -1):
            raise ParameterError(f"s must be +1 or -1, got {self.s}")
        if int(self.n_r) != self.n_r or self.n_r < 0:
            raise ParameterError(f"n_r must be a nonnegative integer, got {self.n_r}")
        if not math.isfinite(self.k):
            raise ParameterError("k must be finite")

    @property
    def j(self) -> float:
        return self.m + 0.5

    @property
    def n(self) -> int:
        """Laguerre label of the upper decoupled component (n = n_r + 1)."""
        return self.n_r + 1

    def with_n_r(self, n_r: int) -> "QuantumNumbers":
        return QuantumNumbers(self.m, self.k, self.s, n_r)


def effective_gamma(params: ModelParams, j: float) -> float:
    """gamma = sqrt(j^2 + rho^2 s1^2) / rho."""
    return math.sqrt(j * j + (params.rho * params.s1) ** 2) / params.rho


def coulomb_alpha(params: ModelParams, j: float) -> float:
    """alpha = (M/rho)(omega j - rho s1 - rho s1 s2 / M)."""
    p = params
    return p.M / p.rho * (p.omega * j - p.rho * p.s1 - p.rho * p.s1 * p.s2 / p.M)


@dataclass(frozen=True)
class DerivedQuantities:
    params: ModelParams
    qn: QuantumNumbers
    E: float
    gamma: float
    alpha: float
    root: float  # sqrt(E^2 - k^2) >= 0
    k_lambda: float
    k_over_lambda: float
    lambda_sq_plus_one: float  # nan when k == 0
    eta: float
    epsilon_sq: float

    @property
    def j(self) -> float:
        return self.qn.j

    @property
    def cross_shift(self) -> float:
        """(M omega rho s1 + (M + s2) j) / (gamma rho)."""
        p, j = self.params, self.qn.j
        return (p.M * p.omega * p.rho * p.s1 + (p.M + p.s2) * j) / (self.gamma * p.rho)

    @property
    def gamma_rho_minus_j(self) -> float:
        """gamma rho - j, in the cancellation-free form rho^2 s1^2 / (gamma rho + j) for j > 0."""
        rho, j = self.params.rho, self.qn.j
        if j > 0:
            return (rho * self.params.s1) ** 2 / (self.gamma * rho + j)
        return self.gamma * rho - j

    @property
    def lam(self) -> float:
        """lambda itself; only defined for k != 0."""
        if self.qn.k == 0:
            raise DomainError("lambda is singular at k = 0")
        return self.k_lambda / self.qn.k

    @property
    def diag_matrix(self):
        return coupling_transform(self)


def derive(params: ModelParams, qn: QuantumNumbers, E: float) -> DerivedQuantities:
    """
    Every derived scalar for energy `E`.

    eta carries the sign s of the square root: eta = s sqrt(E^2-k^2) + shift,
    which reduces to the usual expression for s = +1.
    """
    k = qn.k
    disc = E * E - k * k
    if disc < 0:
        raise DomainError(f"E^2 < k^2 (E={E}, k={k}); sqrt(E^2 - k^2) is not real")
    root = math.sqrt(disc)
    j = qn.j
    gamma = effective_gamma(params, j)
    alpha = coulomb_alpha(params, j)
    k_lambda = E + qn.s * root
    k_over_lambda = E - qn.s * root
    lam = k_lambda / k if k != 0 else math.nan
    lsq1 = 1.0 + lam * lam  # inf rather than OverflowError as k -> 0
    shift = (params.M * params.omega * params.rho * params.s1 + (params.M + params.s2) * j) / (gamma * params.rho)
    eps_sq = k * k - E * E + (params.M * params.omega) ** 2 + (params.M + params.s2) ** 2
    return DerivedQuantities(
        params=params,
        qn=qn,
        E=float(E),
        gamma=gamma,
        alpha=alpha,
        root=root,
        k_lambda=k_lambda,
        k_over_lambda=k_over_lambda,
        lambda_sq_plus_one=lsq1,
        eta=qn.s * root + shift,
        epsilon_sq=eps_sq,
    )


def coupling_matrix(params: ModelParams, j: float) -> np.ndarray:
    """The 1/r coupling matrix [[-j/rho, s1], [s1, j/rho]]."""
    return np.array([[-j / params.rho, params.s1], [params.s1, j / params.rho]])


def coupling_transform(d: DerivedQuantities) -> tuple[np.ndarray, np.ndarray]:
    """
    Matrix M with M^{-1} C M = diag(gamma, -gamma), and its closed-form inverse.

    Raises DegenerateTransformError when gamma*rho - j vanishes, which is
    the case s1 = 0 with j > 0 (M is then the zero matrix).
    """
    rho, s1, g, j = d.params.rho, d.params.s1, d.gamma, d.qn.j
    gap = d.gamma_rho_minus_j
    if gap <= 1e-14 * max(1.0, abs(j)):
        raise DegenerateTransformError(
            "gamma*rho - j = 0: the 1/r coupling is already diagonal; "
            "use diagonalizing_transform for the s1 = 0 limit"
        )
    a = gap / rho
    mat = np.array([[a, -s1], [s1, a]])
    off = rho * s1 / (2 * g * gap)
    inv = np.array([[1 / (2 * g), off], [-off, 1 / (2 * g)]])
    return mat, inv


def diagonalizing_transform(d: DerivedQuantities) -> tuple[np.ndarray, np.ndarray]:
    """
    Like `coupling_transform` but returns the s1 -> 0 limit when it degenerates.

    For s1 = 0 and j > 0 the coupling matrix is diag(-gamma, gamma); the
    rotation [[0, -1], [1, 0]] reorders it while keeping the same signs in
    the decoupled system as the regular branch.
    """
    try:
        return coupling_transform(d)
    except DegenerateTransformError:
        rot = np.array([[0.0, -1.0], [1.0, 0.0]])
        return rot, rot.T.copy()
