"""
Special functions and half-line quadrature.

Associated Laguerre polynomials (upward recurrence), the confluent
hypergeometric function 1F1 in its series form, generalized Gauss-Laguerre
rules, and the two Laguerre integral identities used by the normalization
constants, each paired with an independent quadrature evaluation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammaln, roots_genlaguerre

from .exceptions import NumericError, ParameterError

__all__ = [
    "laguerre",
    "laguerre_table",
    "laguerre_at_zero",
    "laguerre_derivative",
    "laguerre_generating_function",
    "laguerre_series",
    "kummer",
    "gamma_ratio",
    "QuadratureRule",
    "gauss_laguerre",
    "integrate_halfline",
    "LaguerreIdentityResult",
    "laguerre_identity",
]


def _laguerre(n, a, x):
    # no range check on `a`: the second integral identity needs L_n^{a-2}
    x = np.asarray(x, dtype=float)
    if n < 0:
        return np.zeros_like(x)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + a - x
    for m in range(1, n):
        prev, cur = cur, ((2 * m + 1 + a - x) * cur - (m + a) * prev) / (m + 1)
    return cur


def laguerre(n: int, a: float, x):
    """
    Associated Laguerre polynomial L_n^a(x) by upward three-term recurrence.

    Parameters
    ----------
    n : int
        Degree, n >= 0.
    a : float
        Order, a > -1.
    x : float or array_like
        Evaluation points.

    Returns
    -------
    float or ndarray
        Same shape as `x`.
    """
    if int(n) != n or n < 0:
        raise ParameterError(f"Laguerre degree must be a nonnegative integer, got {n!r}")
    if a <= -1:
        raise ParameterError(f"Laguerre order must exceed -1, got {a!r}")
    out = _laguerre(int(n), float(a), x)
    return out[()] if out.ndim == 0 else out


def laguerre_table(nmax: int, a: float, x) -> np.ndarray:
    """Rows L_0^a(x) ... L_nmax^a(x); shape (nmax + 1,) + shape(x)."""
    if a <= -1:
        raise ParameterError(f"Laguerre order must exceed -1, got {a!r}")
    x = np.asarray(x, dtype=float)
    table = np.empty((nmax + 1,) + x.shape)
    table[0] = 1.0
    if nmax >= 1:
        table[1] = 1.0 + a - x
    for m in range(1, nmax):
        table[m + 1] = ((2 * m + 1 + a - x) * table[m] - (m + a) * table[m - 1]) / (m + 1)
    return table


def laguerre_derivative(n: int, a: float, x, order: int = 1):
    """d^order/dx^order L_n^a(x) = (-1)^order L_{n-order}^{a+order}(x)."""
    if n - order < 0:
        return np.zeros_like(np.asarray(x, dtype=float))
    return (-1) ** order * _laguerre(n - order, a + order, x)


def laguerre_at_zero(n: int, a: float) -> float:
    """L_n^a(0) = Gamma(n+a+1) / (n! Gamma(a+1))."""
    return float(np.exp(gammaln(n + a + 1) - gammaln(n + 1) - gammaln(a + 1)))


def gamma_ratio(num: float, den: float) -> float:
    """Gamma(num) / Gamma(den) for positive arguments, computed in log space."""
    return float(np.exp(gammaln(num) - gammaln(den)))


def laguerre_generating_function(nu: float, x, y):
    """Closed form of sum_n L_n^nu(x) y^n, valid for |y| < 1."""
    y = np.asarray(y)
    return np.exp(-x * y / (1 - y)) / (1 - y) ** (nu + 1)


def laguerre_series(nu: float, x, y, N: int):
    """Partial sum sum_{n=0}^{N} L_n^nu(x) y^n (complex y allowed)."""
    table = laguerre_table(N, nu, x)
    powers = np.asarray(y) ** np.arange(N + 1)
    return np.tensordot(powers, table, axes=(0, 0))


def kummer(a: float, b: float, x, rtol: float = 1e-16, max_terms: int = 10_000):
    """
    Confluent hypergeometric function 1F1(a; b; x) by direct series.

    The series terminates exactly when `a` is a nonpositive integer. No
    asymptotic branch is provided, so large positive `x` with non-integer
    `a` converges slowly and may hit `max_terms`.
    """
    polynomial = float(a).is_integer() and a <= 0
    if float(b).is_integer() and b <= 0:
        if not (polynomial and -a < -b + 1):
            raise ParameterError(f"1F1 undefined for b={b!r} with a={a!r}")
    x = np.asarray(x, dtype=float)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for i in range(max_terms):
        if polynomial and a + i == 0:
            break
        term = term * (a + i) * x / ((b + i) * (i + 1))
        total = total + term
        if not polynomial and np.all(np.abs(term) <= rtol * np.abs(total)):
            break
    else:
        raise NumericError(f"1F1({a}; {b}; x) did not converge in {max_terms} terms")
    return total[()] if total.ndim == 0 else total


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule for integrals of the form int_0^inf x^weight_exponent e^{-x} g(x) dx."""

    nodes: np.ndarray
    weights: np.ndarray
    weight_exponent: float
    order: int


def gauss_laguerre(order: int, weight_exponent: float = 0.0) -> QuadratureRule:
    """Generalized Gauss-Laguerre rule; exact for g of degree <= 2*order - 1."""
    if order < 1:
        raise ParameterError("quadrature order must be >= 1")
    if weight_exponent <= -1:
        raise ParameterError("weight exponent must exceed -1")
    x, w = roots_genlaguerre(order, weight_exponent)
    return QuadratureRule(np.asarray(x), np.asarray(w), float(weight_exponent), order)


def integrate_halfline(f: Callable[[np.ndarray], np.ndarray], rule: QuadratureRule) -> float:
    """
    Apply `rule` to `f`, i.e. approximate int_0^inf x^alpha e^{-x} f(x) dx.

    `f` is the smooth factor left after removing the rule's weight; it is
    called once on the full node array.
    """
    values = np.asarray(f(rule.nodes))
    if not np.all(np.isfinite(values)):
        raise NumericError("non-finite integrand sample in half-line quadrature")
    return float(np.real_if_close(np.dot(rule.weights, values)))


@dataclass(frozen=True)
class LaguerreIdentityResult:
    identity: int
    n: int
    a: float
    closed_form: float
    quadrature: float
    discrepancy: float

    @property
    def relative_discrepancy(self) -> float:
        return self.discrepancy / max(abs(self.quadrature), np.finfo(float).tiny)


def laguerre_identity(identity: int, n: int, a: float, order: int | None = None) -> LaguerreIdentityResult:
    """
    Evaluate one of the two Laguerre integrals behind the normalization constants.

    identity=1:  int e^{-x} x^{a+2} [L_{n-1}^a(x)]^2 dx
                 against Gamma(n+a)/Gamma(n) [6(n-1)(n+a) + (a+1)(a+2)]
    identity=2:  int e^{-x} x^{a+1} L_{n-1}^a(x) L_n^{a-2}(x) dx
                 against -Gamma(n+a+1)/Gamma(n) (5n + 3a - 3)

    For identity 2 the weight is taken as e^{-x}; with e^{+x} the integral
    diverges. The closed form is returned unchanged, so the
    discrepancy is data, not an error.
    """
    if identity not in (1, 2):
        raise ParameterError("identity must be 1 or 2")
    if int(n) != n or n < 1:
        raise ParameterError("n must be a positive integer")
    n = int(n)
    order = order or n + 8
    if identity == 1:
        closed = gamma_ratio(n + a, n) * (6 * (n - 1) * (n + a) + (a + 1) * (a + 2))
        rule = gauss_laguerre(order, a + 2)
        quad = integrate_halfline(lambda x: _laguerre(n - 1, a, x) ** 2, rule)
    else:
        closed = -gamma_ratio(n + a + 1, n) * (5 * n + 3 * a - 3)
        rule = gauss_laguerre(order, a + 1)
        quad = integrate_halfline(lambda x: _laguerre(n - 1, a, x) * _laguerre(n, a - 2, x), rule)
    return LaguerreIdentityResult(identity, n, float(a), closed, quad, abs(closed - quad))
