"""
Frame fields and curved-space Dirac matrices for the cosmic-string line element

    ds^2 = dt^2 - dr^2 - rho^2 r^2 dphi^2 - dz^2

Coordinates are ordered (t, r, phi, z); flat indices (0, 1, 2, 3).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ParameterError

__all__ = [
    "PAULI",
    "FLAT_GAMMAS",
    "ETA",
    "SIGMA3",
    "FrameBundle",
    "tetrad",
    "metric_inverse",
    "christoffel",
    "spin_connection",
    "modified_pauli",
    "build_frame",
    "clifford_residual",
    "tetrad_residual",
]

_I2 = np.eye(2, dtype=complex)
_Z2 = np.zeros((2, 2), dtype=complex)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

# Dirac representation
FLAT_GAMMAS = (np.block([[_I2, _Z2], [_Z2, -_I2]]),) + tuple(np.block([[_Z2, s], [-s, _Z2]]) for s in PAULI)
ETA = np.diag([1.0, -1.0, -1.0, -1.0])
SIGMA3 = np.block([[PAULI[2], _Z2], [_Z2, PAULI[2]]])


def _check(rho, r):
    if not 0 < rho <= 1:
        raise ParameterError(f"deficit parameter must satisfy 0 < rho <= 1, got {rho}")
    if not r > 0:
        raise ParameterError(f"radial coordinate must be positive, got {r}")


def tetrad(rho: float, r: float, phi: float) -> np.ndarray:
    """e_(a)^mu with the flat index a on rows and the coordinate index mu on columns."""
    c, s = np.cos(phi), np.sin(phi)
    return np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, c, -s / (rho * r), 0.0],
            [0.0, s, c / (rho * r), 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


def metric(rho: float, r: float) -> np.ndarray:
    return np.diag([1.0, -1.0, -(rho * r) ** 2, -1.0])


def metric_inverse(rho: float, r: float) -> np.ndarray:
    return np.diag([1.0, -1.0, -1.0 / (rho * r) ** 2, -1.0])


def christoffel(rho: float, r: float) -> np.ndarray:
    """Gamma^sigma_{mu nu} indexed [sigma, mu, nu]; only r-phi components are nonzero."""
    out = np.zeros((4, 4, 4))
    out[1, 2, 2] = -(rho**2) * r
    out[2, 1, 2] = out[2, 2, 1] = 1.0 / r
    return out


def _lowered_tetrad_derivative(rho, r, phi):
    # d_mu e_(b)nu with e_(b)nu = g_{nu lam} e_(b)^lam, indexed [mu, b, nu]
    c, s = np.cos(phi), np.sin(phi)
    out = np.zeros((4, 4, 4))
    # e_(1)nu = (0, -c, rho r s, 0), e_(2)nu = (0, -s, -rho r c, 0)
    out[1, 1, 2] = rho * s
    out[1, 2, 2] = -rho * c
    out[2, 1, 1] = s
    out[2, 1, 2] = rho * r * c
    out[2, 2, 1] = -c
    out[2, 2, 2] = rho * r * s
    return out


def spin_connection(rho: float, r: float, phi: float) -> np.ndarray:
    """
    Spinor connection Gamma_mu for mu = t, r, phi, z, shape (4, 4, 4).

    Gamma_mu = 1/4 gamma^(a) gamma^(b) e_(a)^nu [d_mu e_(b)nu - Gamma^sigma_{mu nu} e_(b)sigma]
    """
    _check(rho, r)
    e_up = tetrad(rho, r, phi)
    e_low = e_up @ metric(rho, r)
    de = _lowered_tetrad_derivative(rho, r, phi)
    chris = christoffel(rho, r)
    out = np.zeros((4, 4, 4), dtype=complex)
    for mu in range(4):
        # bracket[b, nu]
        bracket = de[mu] - np.einsum("sn,bs->bn", chris[:, mu, :], e_low)
        coeff = e_up @ bracket.T  # coeff[a, b] = e_(a)^nu bracket[b, nu]
        for a in range(4):
            for b in range(4):
                if coeff[a, b] != 0:
                    out[mu] += 0.25 * coeff[a, b] * FLAT_GAMMAS[a] @ FLAT_GAMMAS[b]
    return out


def modified_pauli(rho: float, r: float, phi: float, variant: str = "consistent"):
    """
    (sigma^r, sigma^phi). ``variant="misprint"`` reproduces a sigma^phi whose
    lower-left entry carries e^{-i phi}; it is not Hermitian and breaks the
    Clifford algebra. ``"consistent"`` uses e^{+i phi} there.
    """
    em, ep = np.exp(-1j * phi), np.exp(1j * phi)
    sig_r = np.array([[0, em], [ep, 0]])
    low = em if variant == "misprint" else ep
    if variant not in ("misprint", "consistent"):
        raise ParameterError(f"unknown variant {variant!r}")
    sig_phi = -1j / (rho * r) * np.array([[0, em], [-low, 0]])
    return sig_r, sig_phi


@dataclass(frozen=True)
class FrameBundle:
    rho: float
    r: float
    phi: float
    tetrad: np.ndarray
    gammas: tuple[np.ndarray, ...]
    metric_inv: np.ndarray
    spin_connection_phi: np.ndarray


def build_frame(rho: float, r: float, phi: float, tetrad_matrix: np.ndarray | None = None) -> FrameBundle:
    """
    Assemble gamma^mu(x) = e_(a)^mu gamma^(a) and the phi spin connection.

    `tetrad_matrix` overrides the frame (used to check that the Clifford
    residual detects a wrong tetrad).
    """
    _check(rho, r)
    e = tetrad(rho, r, phi) if tetrad_matrix is None else np.asarray(tetrad_matrix, dtype=float)
    gammas = tuple(sum(e[a, mu] * FLAT_GAMMAS[a] for a in range(4)) for mu in range(4))
    return FrameBundle(rho, r, phi, e, gammas, metric_inverse(rho, r), spin_connection(rho, r, phi)[2])


def clifford_residual(frame: FrameBundle) -> float:
    """max_{mu,nu} max-entry |{gamma^mu, gamma^nu} - 2 g^{mu nu} I|."""
    eye = np.eye(4)
    worst = 0.0
    for mu in range(4):
        for nu in range(mu, 4):
            gm, gn = frame.gammas[mu], frame.gammas[nu]
            dev = gm @ gn + gn @ gm - 2 * frame.metric_inv[mu, nu] * eye
            worst = max(worst, float(np.max(np.abs(dev))))
    return worst


def tetrad_residual(frame: FrameBundle) -> float:
    """max |eta^{ab} e_a^mu e_b^nu - g^{mu nu}|."""
    e = frame.tetrad
    return float(np.max(np.abs(e.T @ ETA @ e - frame.metric_inv)))
