"""Invariant suite behind ``qosc check``.

Each group returns a list of :class:`CheckResult`; a result passes when its
achieved residual is within the named tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import angular as ang
from .errors import DomainError, QuadratureError
from .qnum import CasimirKind, QParam, bracket, casimir_eigenvalue, gamma_q, lambda_q
from .quadrature import integrate_semi_infinite
from .radial import (RadialState, RootBranch, alpha_roots,
                     radial_r2_matrix_element, radial_wavefunction)
from .spectrum import energy_closed_form

__all__ = [
    "CheckResult",
    "DEFAULT_TOLERANCES",
    "GROUPS",
    "theta_grid",
    "operator_residuals",
    "gram_error",
    "radial_residuals",
    "closed_form_error",
    "quadrupole_error",
    "run_checks",
]

DEFAULT_TOLERANCES = {
    "qnum": 1e-12,
    "commutator": 1e-9,
    "casimir": 1e-9,
    "gram": 1e-8,
    "radial_norm": 1e-9,
    "radial_ode": 1e-5,
    "radial_r2": 1e-9,
    "closed_form": 1e-12,
    "quadrupole": 1e-8,
}


@dataclass(frozen=True)
class CheckResult:
    group: str
    name: str
    residual: float
    tol: float

    @property
    def passed(self):
        return bool(self.residual <= self.tol)

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag}  {self.group:<14s} {self.name:<40s} {self.residual:.3e} <= {self.tol:.1e}"


def theta_grid(npts=100):
    """Midpoint grid strictly inside (0, pi)."""
    return math.pi * (np.arange(npts) + 0.5) / npts


def _sup(f, theta):
    return float(np.max(np.abs(ang.evaluate(f, theta))))


def operator_residuals(l, m, qp, theta=None):
    """Relative sup-norm residuals of the algebra relations and eigen-equations on Y_lm."""
    theta = theta_grid() if theta is None else theta
    y = ang.spherical_harmonic(l, m, qp, strict=False).f
    ny = _sup(y, theta)
    jp, jm = ang.apply_jplus(y, qp), ang.apply_jminus(y, qp)
    out = {
        "j3_jplus": _sup(ang.apply_j3(jp) - ang.apply_jplus(ang.apply_j3(y), qp) - jp, theta),
        "j3_jminus": _sup(ang.apply_j3(jm) - ang.apply_jminus(ang.apply_j3(y), qp) + jm, theta),
        "jplus_jminus": _sup(ang.apply_jplus(jm, qp) - ang.apply_jminus(jp, qp)
                             - y * bracket(2 * m, qp), theta),
    }
    for kind in CasimirKind:
        c = casimir_eigenvalue(l, kind, qp)
        out[f"casimir_{kind.value}"] = _sup(ang.apply_casimir(y, kind, qp) - y * c, theta)
    return {k: v / ny for k, v in out.items()}


def gram_error(l_max, qp, abs_tol=1e-10, strict=False):
    """Largest entry of ``|G - I|`` for the harmonics with ``l <= l_max``."""
    _, g = ang.gram_matrix(l_max, qp, abs_tol=abs_tol, strict=strict)
    return float(np.max(np.abs(g - np.eye(len(g)))))


def radial_residuals(l, kind, qp, n_max=5, abs_tol=1e-12):
    """Orthonormality, ODE and <r^2> residuals for every admissible root."""
    out = {"norm": 0.0, "ode": 0.0, "r2": 0.0}
    c = casimir_eigenvalue(l, kind, qp)
    h = 1e-4
    r = np.linspace(0.1, 4.0, 400)
    for branch, alpha in alpha_roots(l, kind, qp):
        states = [RadialState(n, l, alpha, kind, branch, qp) for n in range(n_max + 1)]

        def f(x, states=states):
            s = np.array([radial_wavefunction(st, x) for st in states])
            prod = s[:, None, :] * s[None, :, :]
            return np.concatenate([prod.reshape(-1, x.size),
                                   s * s * x * x], axis=0)

        vals = integrate_semi_infinite(f, abs_tol=abs_tol).value
        k = len(states)
        gram = vals[: k * k].reshape(k, k)
        out["norm"] = max(out["norm"], float(np.max(np.abs(gram - np.eye(k)))))
        r2 = np.array([radial_r2_matrix_element(st) for st in states])
        out["r2"] = max(out["r2"], float(np.max(np.abs(vals[k * k:] - r2))))
        for st in states:
            s0 = radial_wavefunction(st, r)
            d2 = (radial_wavefunction(st, r + h) - 2.0 * s0
                  + radial_wavefunction(st, r - h)) / (h * h)
            res = d2 - (c / r ** 2 + r ** 2 - 2.0 * st.energy) * s0
            out["ode"] = max(out["ode"], float(np.max(np.abs(res)) / np.max(np.abs(s0))))
    return out


def closed_form_error(qp, l_max=6, n=0):
    """Largest relative disagreement between closed-form energies and the root solver.

    A level present in one route but not the other counts as infinite error.
    """
    worst = 0.0
    for kind in CasimirKind:
        for l in range(l_max + 1):
            roots = dict(alpha_roots(l, kind, qp))
            for branch in RootBranch:
                try:
                    e_closed = energy_closed_form(n, l, kind, branch, qp)
                except DomainError:
                    e_closed = None
                if branch not in roots:
                    if e_closed is not None:
                        return math.inf
                    continue
                if e_closed is None:
                    return math.inf
                e_root = 2 * n + roots[branch] + 0.5
                worst = max(worst, abs(e_closed - e_root) / max(1.0, abs(e_root)))
    return worst


def quadrupole_error(qp):
    """Closed-form angular quadrupole element against the quadrature route."""
    from .observables import quadrupole_angular_closed, quadrupole_angular_quadrature
    re, im = quadrupole_angular_quadrature(qp)
    return max(abs(re - quadrupole_angular_closed(qp)), abs(im))


def _qnum_residual(qp):
    worst = 0.0
    xs = np.linspace(-3.0, 6.0, 37)
    for x in xs:
        worst = max(worst, abs(bracket(x, qp) - bracket(x, qp.inverse())))
        if qp.is_real:
            lhs = bracket(x + 1, qp) * bracket(x - 1, qp)
            rhs = bracket(x, qp) ** 2 - 1.0
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    for l in range(7):
        for kind in CasimirKind:
            c = casimir_eigenvalue(l, kind, qp)
            try:
                lam = lambda_q(l, kind, qp)
                worst = max(worst, abs(lam * lam - 0.25 - c) / max(1.0, abs(c)))
            except DomainError:
                pass
            if not qp.is_real:
                g = gamma_q(l, kind, qp)
                worst = max(worst, abs(g - 4.0 * math.sin(qp.w) ** 2 * c))
    return worst


# groups -----------------------------------------------------------------------
def _group_qnum(qps, tol):
    return [CheckResult("qnum", f"identities {qp}", _qnum_residual(qp), tol["qnum"])
            for qp in qps]


def _group_operators(qps, tol, l_max=4):
    out = []
    for qp in qps:
        comm = cas = 0.0
        for l in range(l_max + 1):
            for m in range(-l, l + 1):
                r = operator_residuals(l, m, qp)
                comm = max(comm, r["j3_jplus"], r["j3_jminus"], r["jplus_jminus"])
                cas = max(cas, r["casimir_cq"], r["casimir_cqprime"])
        out.append(CheckResult("operators", f"commutators l<={l_max} {qp}", comm,
                               tol["commutator"]))
        out.append(CheckResult("operators", f"casimir eigen l<={l_max} {qp}", cas,
                               tol["casimir"]))
    return out


def _group_orthonormality(qps, tol, l_max=4):
    out = []
    for qp in qps:
        try:
            err = gram_error(l_max, qp)
        except QuadratureError as exc:
            err = math.inf if exc.error is None else float(exc.error)
        out.append(CheckResult("orthonormality", f"gram l<={l_max} {qp}", err, tol["gram"]))
    return out


def _group_radial(qps, tol, l_max=2, n_max=5):
    out = []
    for qp in qps:
        agg = {"norm": 0.0, "ode": 0.0, "r2": 0.0}
        for kind in CasimirKind:
            for l in range(l_max + 1):
                for k, v in radial_residuals(l, kind, qp, n_max).items():
                    agg[k] = max(agg[k], v)
        out.append(CheckResult("radial", f"orthonormality n<={n_max} {qp}", agg["norm"],
                               tol["radial_norm"]))
        out.append(CheckResult("radial", f"ode residual {qp}", agg["ode"], tol["radial_ode"]))
        out.append(CheckResult("radial", f"<r^2> closed vs quadrature {qp}", agg["r2"],
                               tol["radial_r2"]))
    return out


def _group_spectrum(qps, tol):
    return [CheckResult("spectrum", f"closed forms l<=6 {qp}", closed_form_error(qp),
                        tol["closed_form"]) for qp in qps]


def _group_quadrupole(qps, tol):
    return [CheckResult("quadrupole", f"closed vs quadrature {qp}", quadrupole_error(qp),
                        tol["quadrupole"]) for qp in qps if qp.w != 0.0]


GROUPS = {
    "qnum": _group_qnum,
    "operators": _group_operators,
    "orthonormality": _group_orthonormality,
    "radial": _group_radial,
    "spectrum": _group_spectrum,
    "quadrupole": _group_quadrupole,
}


def run_checks(qps=None, groups=None, tolerances=None):
    """Run the selected groups (default: all) at the given deformations.

    The default deformation set is real w in {0.2, 0.5, 1.0}.
    """
    if qps is None:
        qps = [QParam.real(w) for w in (0.2, 0.5, 1.0)]
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    names = list(GROUPS) if not groups else list(groups)
    results = []
    for name in names:
        if name not in GROUPS:
            raise DomainError(f"unknown check group {name!r}; choose from {sorted(GROUPS)}")
        results.extend(GROUPS[name](qps, tol))
    return results
