"""Command-line front end.

Subcommands: spectrum, wavefunction, quadrupole, figures, check.
Exit codes: 0 ok, 1 usage, 2 domain error, 3 check failure.
"""
from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import __version__
from .angular import spherical_harmonic
from .checks import DEFAULT_TOLERANCES, GROUPS, run_checks
from .errors import DomainError, QoscError
from .observables import quadrupole_moment
from .qnum import CasimirKind, QParam, Regime
from .radial import alpha_roots, radial_function, radial_state
from .spectrum import Figure, enumerate_levels, figure_data
from .table import Table

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CHECK = 0, 1, 2, 3
TOL_ENV = "QOSC_TOL_OVERRIDE"

# keys accepted in a --config file, mapped to argparse dests
CONFIG_KEYS = {
    "regime": "regime", "w": "w", "w-range": "w_range", "w_range": "w_range",
    "casimir": "casimir", "nmax": "nmax", "lmax": "lmax", "format": "format",
    "out": "out", "tol": "tol", "figure": "figure", "group": "group",
    "n": "n", "l": "l", "m": "m", "branch": "branch",
    "r": "r", "theta": "theta", "phi": "phi",
}

DEFAULTS = {
    "regime": "real",
    "casimir": "cq",
    "nmax": 3,
    "lmax": 3,
    "format": "csv",
    "n": 0, "l": 0, "m": 0, "branch": "plus",
    "r": "0:3:0.5", "theta": "0.5,1.5707963267948966,2.5", "phi": "0",
}

FIGURE_GRIDS = {
    Figure.FIG1: "0:3:0.05",
    Figure.FIG2: "0.02:3.12:0.02",
    Figure.FIG3: "0:3:0.05",
    Figure.FIG4: "0.02:3.12:0.02",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# parsing helpers --------------------------------------------------------------
def parse_grid(text):
    """``A:B:STEP`` (inclusive) or a comma list of numbers."""
    text = str(text).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"range must look like A:B:STEP, got {text!r}")
        a, b, step = (float(x) for x in parts)
        if step <= 0 or b < a:
            raise UsageError(f"empty or invalid range {text!r}")
        count = int(math.floor((b - a) / step + 1e-9)) + 1
        return [round(a + k * step, 12) for k in range(count)]
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse numbers from {text!r}") from None


def parse_tolerances(items):
    """``NAME=VALUE`` pairs; ``all=VALUE`` sets every tolerance."""
    out = {}
    for item in items:
        for piece in str(item).split(","):
            piece = piece.strip()
            if not piece:
                continue
            name, sep, value = piece.partition("=")
            if not sep:
                raise UsageError(f"tolerance must be NAME=VALUE, got {piece!r}")
            try:
                v = float(value)
            except ValueError:
                raise UsageError(f"bad tolerance value in {piece!r}") from None
            name = name.strip()
            if name == "all":
                out.update({k: v for k in DEFAULT_TOLERANCES})
            elif name in DEFAULT_TOLERANCES:
                out[name] = v
            else:
                raise UsageError(
                    f"unknown tolerance {name!r}; known: all, {', '.join(DEFAULT_TOLERANCES)}")
    return out


def read_config(path):
    """Flat ``key=value`` file; ``#`` starts a comment."""
    cfg = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower()
        if not sep or key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{num}: unrecognised line {line!r}")
        dest = CONFIG_KEYS[key]
        if dest in ("tol", "group"):
            cfg.setdefault(dest, []).append(value.strip())
        else:
            cfg[dest] = value.strip()
    return cfg


def resolve(args):
    """Merge defaults < config file < flags; returns a plain dict."""
    cfg = read_config(args.config) if args.config else {}
    out = {}
    for key in set(vars(args)) | set(cfg) | set(DEFAULTS):
        flag = getattr(args, key, None)
        if flag is not None and flag != []:
            out[key] = flag
        elif key in cfg:
            out[key] = cfg[key]
        else:
            out[key] = DEFAULTS.get(key)
    tol = parse_tolerances([os.environ[TOL_ENV]]) if os.environ.get(TOL_ENV) else {}
    tol.update(parse_tolerances(cfg.get("tol", [])))
    tol.update(parse_tolerances(args.tol or []))
    out["tol"] = tol
    return out


def _w_values(cfg, default=None):
    if cfg.get("w_range") is not None:
        return parse_grid(cfg["w_range"])
    if cfg.get("w") is not None:
        return parse_grid(cfg["w"])
    if default is not None:
        return parse_grid(default)
    raise UsageError("one of --w or --w-range is required")


def _qparams(cfg, default=None):
    regime = Regime.parse(cfg["regime"])
    return [QParam(regime, w) for w in _w_values(cfg, default)]


def _kinds(cfg):
    text = str(cfg["casimir"]).strip().lower()
    if text in ("both", "all"):
        return list(CasimirKind)
    return [CasimirKind.parse(x) for x in text.split(",")]


def _int(cfg, key):
    try:
        v = int(cfg[key])
    except (TypeError, ValueError):
        raise UsageError(f"{key} must be an integer, got {cfg[key]!r}") from None
    return v


def _emit(table, cfg):
    text = table.dumps(cfg["format"])
    if cfg.get("out"):
        with open(cfg["out"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# commands ---------------------------------------------------------------------
def cmd_spectrum(cfg):
    qps = _qparams(cfg)
    multi = len(qps) > 1
    cols = (["w"] if multi else []) + ["n", "l", "kind", "branch", "alpha", "energy"]
    table = Table(cols)
    for qp in qps:
        for kind in _kinds(cfg):
            for lv in enumerate_levels(_int(cfg, "nmax"), _int(cfg, "lmax"), kind, qp):
                row = [lv.n, lv.l, lv.kind.value, lv.branch.value, lv.alpha, lv.energy]
                table.append(([qp.w] if multi else []) + row)
    _emit(table, cfg)
    return EXIT_OK


def cmd_wavefunction(cfg):
    qps = _qparams(cfg)
    if len(qps) != 1:
        raise UsageError("wavefunction needs a single --w")
    qp = qps[0]
    kinds = _kinds(cfg)
    if len(kinds) != 1:
        raise UsageError("wavefunction needs a single --casimir")
    n, l, m = _int(cfg, "n"), _int(cfg, "l"), _int(cfg, "m")
    state = radial_state(n, l, kinds[0], cfg["branch"], qp)
    harmonic = spherical_harmonic(l, m, qp)
    table = Table(["r", "theta", "phi", "re", "im"])
    rs = parse_grid(cfg["r"])
    radial = np.atleast_1d(radial_function(state, rs))
    for r, rad in zip(rs, radial):
        for theta in parse_grid(cfg["theta"]):
            for phi in parse_grid(cfg["phi"]):
                psi = complex(rad) * complex(harmonic(theta, phi)) if rad != 0 else 0j
                table.append([r, theta, phi, psi.real, psi.imag])
    _emit(table, cfg)
    return EXIT_OK


def cmd_quadrupole(cfg):
    table = Table(["w", "n", "kind", "branch", "radial", "angular", "value"])
    for qp in _qparams(cfg):
        for kind in _kinds(cfg):
            for branch, _ in alpha_roots(0, kind, qp):
                for n in range(_int(cfg, "nmax") + 1):
                    res = quadrupole_moment(n, kind, branch, qp)
                    table.append([qp.w, n, kind.value, branch.value,
                                  res.radial_part, res.angular_part, res.value])
    _emit(table, cfg)
    return EXIT_OK


def cmd_figures(cfg):
    if cfg.get("figure") is None:
        raise UsageError("figures needs --figure 1|2|3|4")
    fig = Figure.parse(cfg["figure"])
    grid = _w_values(cfg, FIGURE_GRIDS[fig])
    _emit(figure_data(fig, grid), cfg)
    return EXIT_OK


def cmd_check(cfg):
    if cfg.get("w") is None and cfg.get("w_range") is None:
        qps = None
    else:
        qps = _qparams(cfg)
    groups = cfg.get("group") or None
    if groups:
        groups = [g.strip() for item in groups for g in str(item).split(",") if g.strip()]
        for g in groups:
            if g not in GROUPS:
                raise UsageError(f"unknown group {g!r}; choose from {', '.join(GROUPS)}")
    results = run_checks(qps, groups, cfg["tol"])
    for res in results:
        print(res.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_CHECK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "quadrupole": cmd_quadrupole,
    "figures": cmd_figures,
    "check": cmd_check,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--regime", help="real | circle (default real)")
    common.add_argument("--w", help="deformation w, or a comma list")
    common.add_argument("--w-range", dest="w_range", help="A:B:STEP, inclusive")
    common.add_argument("--casimir", help="cq | cqprime | both (default cq)")
    common.add_argument("--nmax", type=int)
    common.add_argument("--lmax", type=int)
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                        help="tolerance override; NAME=all sets every tolerance")
    common.add_argument("--config", help="flat key=value file; flags take precedence")

    p = _Parser(prog="qosc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("spectrum", parents=[common], help="energy levels table")

    wf = sub.add_parser("wavefunction", parents=[common], help="psi on an (r, theta, phi) grid")
    wf.add_argument("--n", type=int)
    wf.add_argument("--l", type=int)
    wf.add_argument("--m", type=int)
    wf.add_argument("--branch", choices=["plus", "minus"])
    wf.add_argument("--r", help="radial grid, A:B:STEP or list")
    wf.add_argument("--theta", help="polar grid, A:B:STEP or list")
    wf.add_argument("--phi", help="azimuthal grid, A:B:STEP or list")

    sub.add_parser("quadrupole", parents=[common], help="l = 0 quadrupole moments")

    fg = sub.add_parser("figures", parents=[common], help="tidy figure data")
    fg.add_argument("--figure", help="1 | 2 | 3 | 4")

    ck = sub.add_parser("check", parents=[common], help="run the invariant suite")
    ck.add_argument("--group", action="append", default=[],
                    help=f"restrict to a group: {', '.join(GROUPS)}")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve(args)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"qosc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, QoscError) as exc:
        print(f"qosc: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
