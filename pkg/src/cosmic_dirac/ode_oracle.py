"""
Finite-difference eigensolver for the decoupled radial equation.

    (-d^2/dr^2 + g(g+1)/r^2 - 2 alpha/r) F = -eps^2 F,   F(0) = F(R) = 0

discretized with the 3-point Laplacian on a uniform grid. Nothing here
touches the Laguerre closed forms, so it is an independent check of the
quantization condition alpha/eps = n_r + g + 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .exceptions import NoBoundStateError, ParameterError
from .spectrum import EnergyLevel

__all__ = [
    "DiscretizationSpec",
    "fd_eigenpairs",
    "FDSpectrum",
    "fd_spectrum",
    "richardson",
    "OracleComparison",
    "oracle_compare",
]


@dataclass(frozen=True)
class DiscretizationSpec:
    """Interior points N on the coarsest grid, cutoff R, number of grid doublings."""

    N: int = 2000
    R: float = 100.0
    richardson_levels: int = 3
    scheme: str = "uniform-second-order"

    def __post_init__(self):
        if self.N < 200:
            raise ParameterError("need at least 200 interior points")
        if self.R <= 0:
            raise ParameterError("cutoff must be positive")
        if self.richardson_levels < 1:
            raise ParameterError("richardson_levels must be >= 1")
        if self.scheme != "uniform-second-order":
            raise ParameterError(f"unsupported scheme {self.scheme!r}")

    @classmethod
    def for_epsilon(cls, eps: float, **kw) -> "DiscretizationSpec":
        return cls(R=30.0 / eps, **kw)


def fd_eigenpairs(gamma: float, alpha: float, N: int, R: float, count: int, vectors: bool = False):
    """
    Lowest `count` eigenvalues (and optionally unit eigenvectors) of the
    discretized operator on N interior points of (0, R).
    """
    h = R / (N + 1)
    r = h * np.arange(1, N + 1)
    diag = 2.0 / h**2 + gamma * (gamma + 1) / r**2 - 2 * alpha / r
    off = np.full(N - 1, -1.0 / h**2)
    # LAPACK stebz (bisection) + stein (inverse iteration)
    out = eigh_tridiagonal(diag, off, eigvals_only=not vectors, select="i", select_range=(0, count - 1))
    if vectors:
        vals, vecs = out
        return r, vals, vecs
    return r, out, None


def richardson(hs, values) -> float:
    """Extrapolate values(h) = v0 + c1 h^2 + c2 h^4 + ... to h = 0 (Neville in h^2)."""
    x = np.asarray(hs, dtype=float) ** 2
    t = list(np.asarray(values, dtype=float))
    m = len(t)
    for level in range(1, m):
        for i in range(m - level):
            t[i] = (x[i + level] * t[i] - x[i] * t[i + 1]) / (x[i + level] - x[i])
    return float(t[0])


@dataclass(frozen=True)
class FDSpectrum:
    epsilon: np.ndarray  # extrapolated, one per level
    raw_epsilon: np.ndarray  # shape (levels, grids)
    steps: np.ndarray
    eigenvalues: np.ndarray  # shape (levels, grids)

    def convergence_ratios(self, exact_eigenvalues=None) -> np.ndarray:
        """
        Error ratio e(h)/e(h/2) per doubling. Against `exact_eigenvalues`
        when given, otherwise from successive differences.
        """
        ev = self.eigenvalues
        if exact_eigenvalues is not None:
            err = np.abs(ev - np.asarray(exact_eigenvalues)[:, None])
            return err[:, :-1] / err[:, 1:]
        diffs = np.abs(np.diff(ev, axis=1))
        return diffs[:, :-1] / diffs[:, 1:]


def fd_spectrum(gamma: float, alpha: float, spec: DiscretizationSpec, count: int = 1) -> FDSpectrum:
    """
    Bound-state eps values from `richardson_levels` grids (N, 2N, 4N, ...),
    Richardson-extrapolated in h^2.
    """
    if alpha <= 0:
        raise NoBoundStateError("alpha <= 0: the radial operator has no bound states")
    ev, hs = [], []
    for lvl in range(spec.richardson_levels):
        N = spec.N * 2**lvl
        _, vals, _ = fd_eigenpairs(gamma, alpha, N, spec.R, count)
        if np.any(vals >= 0):
            raise NoBoundStateError(f"only {int(np.sum(vals < 0))} negative eigenvalues on the N={N} grid")
        ev.append(vals)
        hs.append(spec.R / (N + 1))
    ev = np.array(ev).T
    extrap = np.array([richardson(hs, row) for row in ev])
    return FDSpectrum(np.sqrt(-extrap), np.sqrt(-ev), np.array(hs), ev)


@dataclass(frozen=True)
class OracleComparison:
    epsilon_algebraic: float
    epsilon_numeric: float
    relative_gap: float
    overlap: float


def oracle_compare(level: EnergyLevel, spec: DiscretizationSpec | None = None, gamma: float | None = None) -> OracleComparison:
    """
    Compare the algebraic eps of `level` with the finite-difference value.

    The eigenvector of the finest grid is also compared, by normalized
    discrete inner product, with the closed-form F sampled on that grid.
    `gamma` overrides the level's gamma in the numerical operator only.
    """
    level.require_valid()
    from .radial import radial_functions

    spec = spec or DiscretizationSpec.for_epsilon(level.epsilon)
    g = level.gamma if gamma is None else gamma
    count = level.qn.n_r + 1
    fd = fd_spectrum(g, level.alpha, spec, count)
    eps_num = float(fd.epsilon[level.qn.n_r])
    N = spec.N * 2 ** (spec.richardson_levels - 1)
    r, _, vecs = fd_eigenpairs(g, level.alpha, N, spec.R, count, vectors=True)
    v = vecs[:, level.qn.n_r]
    F = radial_functions(level, r).F
    overlap = abs(np.dot(v, F)) / (np.linalg.norm(v) * np.linalg.norm(F))
    gap = abs(level.epsilon - eps_num) / level.epsilon
    return OracleComparison(level.epsilon, eps_num, gap, float(overlap))
