"""
Grid realizations of the su(1,1) generators and numerical checks of the algebra.

Two realizations are provided:

* tilting, acting on F~ = F/r and independent of the energy::

    A0 = (r P^2 + g(g+1)/r + r)/2,  A1 = (r P^2 + g(g+1)/r - r)/2,
    A2 = -i (r d/dr + 1),           K+- = A1 +- i A2

  with P^2 = -d^2/dr^2 - (2/r) d/dr. K+- is our naming for the ladder pair.

* Schrodinger factorization, acting on F::

    B3 = (-r d^2/dr^2 + eps^2 r + g(g+1)/r) / (2 eps),
    B+- = -+ r d/dr + eps r - B3,   J+- = -+ r d/dr + eps r - alpha/eps

Derivatives use 4th-order finite differences (5-point central stencils,
one-sided near the ends). On geometric grids they are taken in t = ln r,
where r d/dr = d/dt and r^2 d^2/dr^2 = d^2/dt^2 - d/dt.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import expm

from .exceptions import DiscretizationError, ParameterError

__all__ = [
    "GridFunction",
    "GeneratorContext",
    "log_grid",
    "derivatives",
    "apply_generator",
    "commutator",
    "scale",
    "inner",
    "norm",
    "relative_residual",
    "CheckResult",
    "algebra_check",
    "factorization_constant",
    "ladder_coefficients",
    "fock_generators",
    "normal_form_parameters",
    "displacement_check",
    "DEFAULT_TOLERANCE",
]

DEFAULT_TOLERANCE = 1e-6
BOUNDARY_PAD = 6
MIN_POINTS = 64

TILTING = ("A0", "A1", "A2", "K_plus", "K_minus")
SCHRODINGER = ("B_plus", "B_minus", "B3", "J_plus", "J_minus")


@dataclass(frozen=True)
class GridFunction:
    """
    Samples of a radial function.

    `valid` marks samples that carry data; points lost to resampling off
    the grid, and the stencil shadow they cast on derivatives, are False.
    """

    grid: np.ndarray
    values: np.ndarray
    boundary_pad: int = BOUNDARY_PAD
    valid: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise DiscretizationError("grid and values must be 1-D arrays of equal length")
        if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
            raise DiscretizationError("grid must be positive and strictly increasing")
        valid = np.ones(grid.shape, bool) if self.valid is None else np.asarray(self.valid, bool)
        if not np.all(np.isfinite(values[valid])):
            raise DiscretizationError("non-finite samples on the valid part of the grid")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", np.where(valid, values, 0))
        object.__setattr__(self, "valid", valid)

    @classmethod
    def sample(cls, func, grid, **kw) -> "GridFunction":
        grid = np.asarray(grid, dtype=float)
        return cls(grid, np.asarray(func(grid)), **kw)

    def with_values(self, values, valid=None) -> "GridFunction":
        return replace(self, values=values, valid=self.valid if valid is None else valid)

    def __add__(self, other):
        return self.with_values(self.values + other.values, self.valid & other.valid)

    def __sub__(self, other):
        return self.with_values(self.values - other.values, self.valid & other.valid)

    def __mul__(self, c):
        return self.with_values(self.values * c)

    __rmul__ = __mul__


@dataclass(frozen=True)
class GeneratorContext:
    gamma: float
    epsilon: float | None = None
    alpha: float | None = None
    realization: str = "tilting"

    def __post_init__(self):
        if not self.gamma > 0:
            raise ParameterError("gamma must be positive")
        if self.realization not in ("tilting", "schrodinger"):
            raise ParameterError(f"unknown realization {self.realization!r}")
        if self.realization == "schrodinger" and not (self.epsilon or 0) > 0:
            raise ParameterError("the Schrodinger realization needs epsilon > 0")

    @property
    def casimir(self) -> float:
        return self.gamma * (self.gamma + 1)


def log_grid(r_min: float, r_max: float, points: int) -> np.ndarray:
    return np.geomspace(r_min, r_max, points)


def _spacing(grid):
    if grid.size < MIN_POINTS:
        raise DiscretizationError(f"need at least {MIN_POINTS} grid points, got {grid.size}")
    t = np.log(grid)
    dt = np.diff(t)
    if np.allclose(dt, dt[0], rtol=1e-8, atol=0):
        return "log", (t[-1] - t[0]) / (grid.size - 1)
    dr = np.diff(grid)
    if np.allclose(dr, dr[0], rtol=1e-8, atol=0):
        return "uniform", (grid[-1] - grid[0]) / (grid.size - 1)
    raise DiscretizationError("grid must be uniform or geometric")


def _d1(f, h):
    out = np.empty_like(f)
    out[2:-2] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * h)
    out[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h)
    out[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h)
    out[-1] = (25 * f[-1] - 48 * f[-2] + 36 * f[-3] - 16 * f[-4] + 3 * f[-5]) / (12 * h)
    out[-2] = (3 * f[-1] + 10 * f[-2] - 18 * f[-3] + 6 * f[-4] - f[-5]) / (12 * h)
    return out


def _d2(f, h):
    out = np.empty_like(f)
    out[2:-2] = (-f[:-4] + 16 * f[1:-3] - 30 * f[2:-2] + 16 * f[3:-1] - f[4:]) / (12 * h * h)
    out[0] = (45 * f[0] - 154 * f[1] + 214 * f[2] - 156 * f[3] + 61 * f[4] - 10 * f[5]) / (12 * h * h)
    out[1] = (10 * f[0] - 15 * f[1] - 4 * f[2] + 14 * f[3] - 6 * f[4] + f[5]) / (12 * h * h)
    out[-1] = (45 * f[-1] - 154 * f[-2] + 214 * f[-3] - 156 * f[-4] + 61 * f[-5] - 10 * f[-6]) / (12 * h * h)
    out[-2] = (10 * f[-1] - 15 * f[-2] - 4 * f[-3] + 14 * f[-4] - 6 * f[-5] + f[-6]) / (12 * h * h)
    return out


def _erode(mask, width=2):
    out = mask.copy()
    for shift in range(1, width + 1):
        out[shift:] &= mask[:-shift]
        out[:-shift] &= mask[shift:]
    return out


def derivatives(f: GridFunction):
    """(r f', r^2 f'', valid) by 4th-order differences."""
    kind, h = _spacing(f.grid)
    v = f.values
    if kind == "log":
        ft, ftt = _d1(v, h), _d2(v, h)
        rd1, rd2 = ft, ftt - ft
    else:
        r = f.grid
        rd1, rd2 = r * _d1(v, h), r * r * _d2(v, h)
    return rd1, rd2, _erode(f.valid)


def apply_generator(name: str, f: GridFunction, ctx: GeneratorContext) -> GridFunction:
    """Apply one generator to `f`; the result lives on the same grid."""
    allowed = TILTING if ctx.realization == "tilting" else SCHRODINGER
    if name not in allowed:
        raise ParameterError(f"{name} does not belong to the {ctx.realization} realization")
    r, v = f.grid, f.values
    rd1, rd2, valid = derivatives(f)
    c = ctx.casimir
    if ctx.realization == "tilting":
        rP2 = -(rd2 + 2 * rd1) / r
        x_part = rP2 + c * v / r
        if name == "A0":
            out = 0.5 * (x_part + r * v)
        elif name == "A1":
            out = 0.5 * (x_part - r * v)
        elif name == "A2":
            out = -1j * (rd1 + v)
        else:
            sign = 1 if name == "K_plus" else -1
            out = 0.5 * (x_part - r * v) + sign * (rd1 + v)
    else:
        eps = ctx.epsilon
        b3 = (-rd2 / r + eps * eps * r * v + c * v / r) / (2 * eps)
        if name == "B3":
            out = b3
        else:
            sign = 1 if name.endswith("plus") else -1
            last = b3 if name.startswith("B") else (ctx.alpha / eps) * v
            out = -sign * rd1 + eps * r * v - last
    return f.with_values(out, valid)


def commutator(x: str, y: str, f: GridFunction, ctx: GeneratorContext) -> GridFunction:
    """[X, Y] f = X(Y f) - Y(X f)."""
    return apply_generator(x, apply_generator(y, f, ctx), ctx) - apply_generator(y, apply_generator(x, f, ctx), ctx)


def scale(f: GridFunction, theta: float) -> GridFunction:
    """
    (S_theta f)(r) = e^theta f(e^theta r), the action of exp(i theta A2).

    Off-grid samples come from a cubic spline through the valid samples;
    radii whose image leaves the valid range are marked invalid.
    """
    kind, _ = _spacing(f.grid)
    coord = np.log(f.grid) if kind == "log" else f.grid
    target = coord + theta if kind == "log" else f.grid * math.exp(theta)
    idx = np.flatnonzero(f.valid)
    lo, hi = idx[0], idx[-1]
    src_x = coord[lo : hi + 1]
    src_y = f.values[lo : hi + 1]
    inside = (target >= src_x[0]) & (target <= src_x[-1])
    out = np.zeros(f.grid.shape, dtype=np.result_type(src_y, float))
    spline_re = CubicSpline(src_x, src_y.real)
    out_vals = spline_re(target[inside])
    if np.iscomplexobj(src_y):
        out_vals = out_vals + 1j * CubicSpline(src_x, src_y.imag)(target[inside])
    out[inside] = math.exp(theta) * out_vals
    return f.with_values(out, inside)


def _measure_mask(*fs):
    mask = np.logical_and.reduce([g.valid for g in fs])
    pad = fs[0].boundary_pad
    if pad:
        mask[:pad] = False
        mask[-pad:] = False
    return mask


def inner(f: GridFunction, g: GridFunction, weight_power: float = 1.0, mask=None) -> complex:
    """int conj(f) g r^weight_power dr over the common valid region (trapezoid in ln r)."""
    mask = _measure_mask(f, g) if mask is None else mask
    r = f.grid[mask]
    integrand = np.conj(f.values[mask]) * g.values[mask] * r ** (weight_power + 1)
    return complex(np.trapezoid(integrand, np.log(r)))


def norm(f: GridFunction, weight_power: float = 1.0, mask=None) -> float:
    return math.sqrt(max(inner(f, f, weight_power, mask).real, 0.0))


def relative_residual(residual: GridFunction, reference: GridFunction, weight_power: float = 1.0) -> float:
    mask = _measure_mask(residual, reference)
    ref = norm(reference, weight_power, mask)
    return norm(residual, weight_power, mask) / ref if ref > 0 else norm(residual, weight_power, mask)


def _weight(ctx):
    # natural Hilbert-space measure: r dr for F~, dr/r for F = r F~
    return 1.0 if ctx.realization == "tilting" else -1.0


def factorization_constant(sign: int, ratio: float, gamma: float, misprint: bool = False) -> float:
    """
    Eigenvalue of (J-+ -+ 1) J+- on eigenfunctions, ratio = alpha/eps.

    Direct expansion gives (ratio +- 1/2)^2 - (gamma + 1/2)^2 for both signs.
    ``misprint=True`` returns +-[(ratio +- 1/2)^2 - (gamma -+ 1/2)^2] instead.
    """
    if misprint:
        return sign * ((ratio + sign * 0.5) ** 2 - (gamma - sign * 0.5) ** 2)
    return (ratio + sign * 0.5) ** 2 - (gamma + 0.5) ** 2


@dataclass(frozen=True)
class CheckResult:
    check: str
    residual: float
    tolerance: float
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"check": self.check, "residual": self.residual, "tolerance": self.tolerance, "pass": self.passed, "detail": self.detail}


def _result(name, residual, tol, detail="", expect_fail=False):
    ok = residual < tol
    return CheckResult(name, float(residual), tol, (not ok) if expect_fail else ok, detail)


def default_test_functions(ctx: GeneratorContext, points: int = 2048, n_max: int = 6, r_min: float = 1e-3, r_max: float = 80.0):
    """Sturmian upper functions n = 1..n_max on a geometric grid."""
    from .radial import sturmian

    grid = log_grid(r_min, r_max, points)
    return [GridFunction.sample(lambda r, n=n: sturmian(n, ctx.gamma, r), grid) for n in range(1, n_max + 1)]


def _tilting_commutators(f, ctx, tol):
    w = _weight(ctx)
    out = []
    two_a0 = apply_generator("A0", f, ctx) * 2
    out.append(relative_residual(commutator("K_minus", "K_plus", f, ctx) - two_a0, two_a0, w))
    for name, sign in (("K_plus", 1), ("K_minus", -1)):
        # K- annihilates the lowest weight, so scale by |2 A0 f| instead of |K f|
        k = apply_generator(name, f, ctx)
        out.append(relative_residual(commutator("A0", name, f, ctx) - k * sign, two_a0, w))
    return out


def _schrodinger_commutators(f, ctx, tol):
    w = _weight(ctx)
    out = []
    two_b3 = apply_generator("B3", f, ctx) * 2
    out.append(relative_residual(commutator("B_minus", "B_plus", f, ctx) - two_b3, two_b3, w))
    for name, sign in (("B_plus", 1), ("B_minus", -1)):
        b = apply_generator(name, f, ctx)
        out.append(relative_residual(commutator("B3", name, f, ctx) - b * sign, two_b3, w))
    return out


def algebra_check(which: str, ctx: GeneratorContext, test_functions=None, tolerance: float = DEFAULT_TOLERANCE, **kw) -> list[CheckResult]:
    """
    Run one family of su(1,1) checks and report residual norms.

    which : {"commutators", "casimir", "factorization", "tilting_scaling",
             "ladder", "displacement_normal_form", "eigenvalue"}

    Tilting checks default to Sturmian test functions; Schrodinger checks
    need closed-form eigenfunctions of the level described by `ctx`
    (alpha/eps = n_r + gamma + 1) and take them from `test_functions`.
    """
    results: list[CheckResult] = []
    if which == "commutators":
        fs = test_functions or default_test_functions(ctx)
        per = _tilting_commutators if ctx.realization == "tilting" else _schrodinger_commutators
        labels = (
            ("[K-,K+]-2A0", "[A0,K+]-K+", "[A0,K-]+K-")
            if ctx.realization == "tilting"
            else ("[B-,B+]-2B3", "[B3,B+]-B+", "[B3,B-]+B-")
        )
        for i, f in enumerate(fs):
            for label, res in zip(labels, per(f, ctx, tolerance)):
                results.append(_result(f"commutator {label}", res, tolerance, f"test function {i}"))
    elif which == "casimir":
        _need(ctx, "schrodinger", which)
        for i, f in enumerate(test_functions or []):
            bm = apply_generator("B_minus", f, ctx)
            bpbm = apply_generator("B_plus", bm, ctx)
            b3 = apply_generator("B3", f, ctx)
            b3b3 = apply_generator("B3", b3, ctx)
            cas = (b3b3 - b3) - bpbm
            ref = f * ctx.casimir
            results.append(_result("casimir", relative_residual(cas - ref, ref, _weight(ctx)), tolerance, f"test function {i}"))
    elif which == "factorization":
        _need(ctx, "schrodinger", which)
        ratio = ctx.alpha / ctx.epsilon
        misprint = kw.get("misprint", False)
        for i, f in enumerate(test_functions or []):
            for sign, outer in ((1, "J_minus"), (-1, "J_plus")):
                inner_f = apply_generator("J_plus" if sign == 1 else "J_minus", f, ctx)
                lhs = apply_generator(outer, inner_f, ctx) - inner_f * sign
                ref = f * factorization_constant(sign, ratio, ctx.gamma, misprint)
                # J- annihilates the n_r = 0 state; J+- are dimensionless, so |f| is a fair floor
                scale_ref = lhs if norm(lhs, _weight(ctx)) > norm(f, _weight(ctx)) else f
                res = relative_residual(lhs - ref, scale_ref, _weight(ctx))
                results.append(_result(f"factorization {'upper' if sign == 1 else 'lower'}", res, tolerance, f"test function {i}"))
    elif which == "tilting_scaling":
        _need(ctx, "tilting", which)
        fs = test_functions or default_test_functions(ctx)
        for theta in kw.get("thetas", (-0.5, math.log(2.0))):
            for sign in (1, -1):
                for i, f in enumerate(fs):
                    res = _tilting_scaling_residual(f, ctx, theta, sign)
                    results.append(_result(f"scaling A0{'+' if sign > 0 else '-'}A1", res, tolerance, f"theta={theta:.6g}, test function {i}"))
    elif which == "eigenvalue":
        fs = test_functions or default_test_functions(ctx)
        if ctx.realization == "tilting":
            for i, f in enumerate(fs):
                ev = kw.get("eigenvalues", [ctx.gamma + n for n in range(1, len(fs) + 1)])[i]
                a0 = apply_generator("A0", f, ctx)
                results.append(_result("A0 eigenvalue", relative_residual(a0 - f * ev, a0, 1.0), tolerance, f"expected {ev:.12g}"))
        else:
            ratio = ctx.alpha / ctx.epsilon
            for i, f in enumerate(fs):
                b3 = apply_generator("B3", f, ctx)
                results.append(_result("B3 eigenvalue", relative_residual(b3 - f * ratio, b3, -1.0), tolerance, f"expected {ratio:.12g}"))
    elif which == "ladder":
        _need(ctx, "tilting", which)
        n_max = kw.get("n_max", 5)
        k = ctx.gamma + 1
        up, down = ladder_coefficients(ctx, n_max, points=kw.get("points", 2048))
        for s in range(n_max + 1):
            exp_up = math.sqrt((s + 1) * (2 * k + s))
            results.append(_result(f"ladder K+ n={s}", abs(up[s] - exp_up), kw.get("ladder_tolerance", 1e-5), f"numeric {up[s]:.12g}, expected {exp_up:.12g}"))
            if s >= 1:
                exp_dn = math.sqrt(s * (2 * k + s - 1))
                results.append(_result(f"ladder K- n={s}", abs(down[s] - exp_dn), kw.get("ladder_tolerance", 1e-5), f"numeric {down[s]:.12g}, expected {exp_dn:.12g}"))
    elif which == "displacement_normal_form":
        k = kw.get("k", ctx.gamma + 1)
        for xi in kw.get("xis", (0.05, 0.1 + 0.1j, -0.2, 0.2j, 0.2 * np.exp(0.7j))):
            dev, unit = displacement_check(k, xi, kw.get("dim", 40))
            results.append(_result("displacement normal form", dev, kw.get("fock_tolerance", 1e-8), f"k={k:.6g}, xi={xi}"))
            results.append(_result("displacement unitarity", unit, kw.get("fock_tolerance", 1e-8), f"k={k:.6g}, xi={xi}"))
    else:
        raise ParameterError(f"unknown check {which!r}")
    return results


def _need(ctx, realization, which):
    if ctx.realization != realization:
        raise ParameterError(f"{which} check needs the {realization} realization")


def _tilting_scaling_residual(f, ctx, theta, sign):
    name_sum = lambda g: apply_generator("A0", g, ctx) + apply_generator("A1", g, ctx) * sign  # noqa: E731
    conj = scale(name_sum(scale(f, theta)), -theta)
    ref = name_sum(f) * math.exp(sign * theta)
    return relative_residual(conj - ref, ref, 1.0)


def ladder_coefficients(ctx: GeneratorContext, n_max: int = 5, points: int = 2048, r_min: float = 1e-3, r_max: float = 80.0):
    """
    Matrix elements <s+1|K+|s> and <s-1|K-|s> for Fock index s = 0..n_max,
    with |s> the upper Sturmian function n = s + 1 and inner product r dr.
    Entry 0 of the K- list is 0 by convention.
    """
    from .radial import sturmian

    grid = log_grid(r_min, r_max, points)
    basis = [GridFunction.sample(lambda r, n=n: sturmian(n, ctx.gamma, r), grid) for n in range(1, n_max + 3)]
    up, down = [], [0.0]
    for s in range(n_max + 1):
        kp = apply_generator("K_plus", basis[s], ctx)
        up.append(inner(basis[s + 1], kp).real)
        if s >= 1:
            km = apply_generator("K_minus", basis[s], ctx)
            down.append(inner(basis[s - 1], km).real)
    return np.array(up), np.array(down)


def fock_generators(k: float, dim: int):
    """Truncated (K+, K-, K0) on |k, n>, n = 0..dim-1."""
    n = np.arange(dim - 1)
    kp = np.zeros((dim, dim))
    kp[n + 1, n] = np.sqrt((n + 1) * (2 * k + n))
    return kp, kp.T.copy(), np.diag(k + np.arange(dim, dtype=float))


def normal_form_parameters(xi: complex) -> tuple[complex, float]:
    """
    (zeta, eta) of D(xi) = exp(zeta K+) exp(eta K0) exp(-zeta* K-).

    With xi = -(tau/2) e^{-i phi}: zeta = -tanh(tau/2) e^{-i phi} = tanh|xi| xi/|xi|
    and eta = -2 ln cosh|xi| = ln(1 - |zeta|^2).
    """
    a = abs(xi)
    if a == 0:
        return 0j, 0.0
    return complex(xi) * (math.tanh(a) / a), -2.0 * math.log(math.cosh(a))


def displacement_check(k: float, xi: complex, dim: int = 40, probe: int = 5) -> tuple[float, float]:
    """
    Compare expm(xi K+ - xi* K-) with its normal-ordered product on the
    first `probe` Fock states of a `dim`-level truncation. Returns the max
    state-vector deviation and the max unitarity defect | |Dv| - |v| |.
    """
    kp, km, k0 = fock_generators(k, dim)
    D = expm(xi * kp - np.conj(xi) * km)
    zeta, eta = normal_form_parameters(xi)
    N = expm(zeta * kp) @ np.diag(np.exp(eta * np.diag(k0))) @ expm(-np.conj(zeta) * km)
    dev = float(np.max(np.abs(D[:, :probe] - N[:, :probe])))
    unit = float(np.max(np.abs(np.linalg.norm(D[:, :probe], axis=0) - 1.0)))
    return dev, unit
