"""
Command-line entry point.

    cosmic-dirac spectrum     --config FILE [--nrmax N] [--json|--csv] [--out PATH]
    cosmic-dirac wavefunction --config FILE [--nr N] [--rmax R] [--points P]
    cosmic-dirac coherent     --config FILE --xi X [--mode closed|series] [--N 200]
    cosmic-dirac clifford     --rho RHO --r R --phi PHI
    cosmic-dirac verify       {clifford,specfun,spectrum,su11,coherent,normalization,all}

Exit status: 0 success, 2 bad parameters, 3 a verification check failed.
Output is deterministic: CSV floats use 17 significant digits, JSON floats
use the shortest round-trip representation and NaN is written as null.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .coherent import CoherentParams, coherent_radial, coherent_spinor, lower_to_upper_ratio
from .config import RunConfig, load_config, parse_config
from .exceptions import CosmicDiracError
from .geometry import SIGMA3, build_frame, clifford_residual, spin_connection, tetrad_residual
from .model import coupling_transform
from .radial import full_spinor, radial_spinor
from .spectrum import energy_level
from .verify import SUITES, run_suite

__all__ = ["run", "main", "build_parser"]

SCHEMA = 1
EXIT_OK, EXIT_PARAM, EXIT_CHECK = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAM, f"{self.prog}: error: {message}\n")


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    return obj


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _json_text(payload) -> str:
    return json.dumps(_clean({"schema": SCHEMA, **payload}), indent=2, allow_nan=False) + "\n"


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _format(args, default="json"):
    if args.csv:
        return "csv"
    if args.json:
        return "json"
    if getattr(args, "out", None):
        return "json" if str(args.out).endswith(".json") else "csv"
    return default


def _config(args) -> RunConfig:
    if args.config is None:
        raise CosmicDiracError("--config is required for this command")
    cfg = load_config(args.config)
    if not args.set:
        return cfg
    merged = cfg.as_dict()
    for item in args.set:
        key, sep, value = item.partition("=")
        if not sep:
            raise CosmicDiracError(f"--set expects KEY=VALUE, got {item!r}")
        merged[key.strip()] = value.strip()
    return parse_config(json.dumps(merged))


def _add_output(p, config_required=True):
    p.add_argument("--config", required=config_required, help="key=value or JSON parameter file")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="write JSON")
    fmt.add_argument("--csv", action="store_true", help="write CSV")
    p.add_argument("--out", help="output path (default: standard output)")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override one config value (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cosmic-dirac", description="Bound states, su(1,1) structure and coherent states of the radial Dirac problem on a cosmic string.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="energy levels n_r = 0..nrmax on both branches")
    _add_output(p)
    p.add_argument("--nrmax", type=int, default=5)

    p = sub.add_parser("wavefunction", help="normalized radial spinor on a uniform grid")
    _add_output(p)
    p.add_argument("--nr", type=int, help="radial quantum number (overrides the config)")
    p.add_argument("--sign-E", type=int, choices=(1, -1), default=1, dest="sign_E")
    p.add_argument("--rmax", type=float, help="outer radius (default 30/eps)")
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--full", action="store_true", help="add the four spinor components at fixed (t, phi, z)")
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--z", type=float, default=0.0)

    p = sub.add_parser("coherent", help="radial coherent state on a uniform grid")
    _add_output(p)
    p.add_argument("--xi", type=complex, required=True, help="coherent-state parameter, |xi| < 1 (complex only in series mode)")
    p.add_argument("--mode", choices=("closed", "series"), default="closed")
    p.add_argument("--N", type=int, default=200, help="series truncation")
    p.add_argument("--rmin", type=float, default=0.1)
    p.add_argument("--rmax", type=float, default=10.0)
    p.add_argument("--points", type=int, default=200)

    p = sub.add_parser("clifford", help="frame, Clifford and spin-connection residuals at one point")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    _add_output(p, config_required=False)
    p.add_argument("--grid", type=int, default=2048, help="points on the su(1,1) log grids")
    p.add_argument("--nrmax", type=int, default=2)
    return parser


def _cmd_spectrum(args) -> int:
    cfg = _config(args)
    if args.nrmax < 0:
        raise CosmicDiracError("--nrmax must be >= 0")
    rows = []
    for n_r in range(args.nrmax + 1):
        plus = energy_level(cfg.params, cfg.qn.with_n_r(n_r), 1)
        minus = energy_level(cfg.params, cfg.qn.with_n_r(n_r), -1)
        reasons = sorted(set(plus.reasons) | set(minus.reasons))
        rows.append(
            {"n_r": n_r, "gamma": plus.gamma, "alpha": plus.alpha, "epsilon": plus.epsilon,
             "E_plus": plus.E, "E_minus": minus.E, "valid": not reasons, "reasons": reasons}
        )
    if _format(args) == "csv":
        header = ["n_r", "gamma", "alpha", "epsilon", "E_plus", "E_minus", "valid", "reason"]
        text = _csv_text(header, [[row[h] if h != "reason" else ";".join(row["reasons"]) for h in header] for row in rows])
    else:
        text = _json_text({"command": "spectrum", "config": cfg.as_dict(), "levels": rows})
    _emit(text, args.out)
    return EXIT_OK


def _cmd_wavefunction(args) -> int:
    cfg = _config(args)
    n_r = cfg.qn.n_r if args.nr is None else args.nr
    if args.points < 2:
        raise CosmicDiracError("--points must be >= 2")
    level = energy_level(cfg.params, cfg.qn.with_n_r(n_r), args.sign_E).require_valid()
    rmax = args.rmax if args.rmax is not None else 30.0 / level.epsilon
    if not rmax > 0:
        raise CosmicDiracError("--rmax must be positive")
    r = np.linspace(rmax / args.points, rmax, args.points)
    sp = radial_spinor(level, r)
    header = ["r", "F", "G", "F_plus", "G_minus"]
    cols = [r, sp.F, sp.G, sp.F_plus, sp.G_minus]
    if args.full:
        psi = full_spinor(level, args.t, r, args.phi, args.z, sp.A_n)
        for i in range(4):
            header += [f"psi{i + 1}_re", f"psi{i + 1}_im"]
            cols += [psi[i].real, psi[i].imag]
    if _format(args, "csv") == "csv":
        text = _csv_text(header, zip(*cols))
    else:
        payload = {"command": "wavefunction", "config": cfg.as_dict(), "n_r": n_r, "E": level.E,
                   "A_n": sp.A_n, "normalized": sp.normalized}
        payload.update({h: c for h, c in zip(header, cols)})
        text = _json_text(payload)
    _emit(text, args.out)
    return EXIT_OK


def _cmd_coherent(args) -> int:
    cfg = _config(args)
    if args.points < 2 or not 0 < args.rmin < args.rmax:
        raise CosmicDiracError("need --points >= 2 and 0 < --rmin < --rmax")
    cp = CoherentParams(args.xi, cfg.params, cfg.qn, args.N)
    r = np.linspace(args.rmin, args.rmax, args.points)
    rad = coherent_radial(cp, r, args.mode)
    if cp.is_real:
        if cfg.qn.k != 0:
            C = coherent_spinor(cp, r[:1]).C_n_quadrature
        else:
            C = 1.0
        F, G = C * rad.F.real, C * lower_to_upper_ratio(cp) * rad.G.real
        mat, _ = coupling_transform(cp.level.derived)
        Fp, Gm = mat @ np.array([F, G])
        header = ["r", "F_coh", "G_coh", "F_plus", "G_minus"]
        cols = [r, F, G, Fp, Gm]
    else:
        # complex xi: no closed-form normalization, lower coefficient left at 1
        header = ["r", "F_coh_re", "F_coh_im", "G_coh_re", "G_coh_im"]
        cols = [r, rad.F.real, rad.F.imag, rad.G.real, rad.G.imag]
    if _format(args, "csv") == "csv":
        text = _csv_text(header, zip(*cols))
    else:
        payload = {"command": "coherent", "config": cfg.as_dict(), "xi": [cp.xi.real, cp.xi.imag] if isinstance(cp.xi, complex) else cp.xi,
                   "mode": args.mode, "N": args.N}
        payload.update({h: c for h, c in zip(header, cols)})
        text = _json_text(payload)
    _emit(text, args.out)
    return EXIT_OK


def _cmd_clifford(args) -> int:
    frame = build_frame(args.rho, args.r, args.phi)
    conn = spin_connection(args.rho, args.r, args.phi)
    conn_dev = max(float(np.max(np.abs(conn[2] - 0.5j * (1 - args.rho) * SIGMA3))), float(np.max(np.abs(conn[[0, 1, 3]]))))
    checks = [
        {"check": "clifford anticommutator", "residual": clifford_residual(frame), "tolerance": 1e-12},
        {"check": "tetrad completeness", "residual": tetrad_residual(frame), "tolerance": 1e-12},
        {"check": "spin connection", "residual": conn_dev, "tolerance": 1e-12},
    ]
    for c in checks:
        c["pass"] = c["residual"] < c["tolerance"]
    ok = all(c["pass"] for c in checks)
    sys.stdout.write(_json_text({"command": "clifford", "rho": args.rho, "r": args.r, "phi": args.phi, "checks": checks, "pass": ok}))
    return EXIT_OK if ok else EXIT_CHECK


def _cmd_verify(args) -> int:
    needs_config = args.suite not in ("clifford", "specfun")
    cfg = _config(args) if needs_config else (load_config(args.config) if args.config else RunConfig())
    results = run_suite(args.suite, cfg, args.grid, args.nrmax)
    ok = all(c.passed for c in results)
    if _format(args) == "csv":
        text = _csv_text(["check", "residual", "tolerance", "pass", "detail"],
                         [[c.check, c.residual, c.tolerance, c.passed, c.detail.replace(",", ";")] for c in results])
    else:
        text = _json_text({"command": "verify", "suite": args.suite, "config": cfg.as_dict() if needs_config else None,
                           "checks": [c.as_dict() for c in results], "pass": ok})
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_CHECK


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "wavefunction": _cmd_wavefunction,
    "coherent": _cmd_coherent,
    "clifford": _cmd_clifford,
    "verify": _cmd_verify,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except CosmicDiracError as exc:
        sys.stderr.write(f"cosmic-dirac: error: {exc}\n")
        return EXIT_PARAM


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
