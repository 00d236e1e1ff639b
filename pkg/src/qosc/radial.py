"""Radial sector: admissible exponents, Laguerre functions, S_{nlq}(r)."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .qnum import CasimirKind, QParam, casimir_eigenvalue, lambda_q

__all__ = [
    "RootBranch",
    "RadialState",
    "ALPHA_TOL",
    "BOUNDARY_TOL",
    "alpha_roots",
    "radial_state",
    "laguerre",
    "radial_wavefunction",
    "radial_function",
    "energy",
    "radial_r2_matrix_element",
]

#: roots with alpha <= ALPHA_TOL are treated as the q = 1 boundary (alpha = 0)
ALPHA_TOL = 1e-12
#: tolerance for the unit-circle boundary gamma'(l) = -sin^2 w
BOUNDARY_TOL = 1e-12


class RootBranch(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self):
        return 1.0 if self is RootBranch.PLUS else -1.0

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        if key in ("plus", "+", "p"):
            return cls.PLUS
        if key in ("minus", "-", "m"):
            return cls.MINUS
        raise DomainError(f"unknown branch {value!r}")


def alpha_roots(l, kind, qp):
    """Admissible exponents ``alpha = 1/2 +- lambda`` with ``alpha > 0``.

    Returns a list of ``(RootBranch, alpha)``, Plus first; it may be empty.
    On the unit circle the count follows the sign of ``gamma_q(l)``
    (C_q: two roots iff gamma < 0) or its position relative to ``-sin^2 w``
    (C'_q: two iff -sin^2 w < gamma' < 0, one at the boundary or for
    gamma' >= 0, none below).
    """
    if l < 0:
        raise DomainError(f"l must be non-negative, got {l}")
    kind = CasimirKind.parse(kind)
    if not qp.is_real and kind is CasimirKind.CQ_PRIME:
        # lambda^2 = (sin^2 w + gamma') / (4 sin^2 w); tested in this scaled form
        # because gamma' and sin^2 w are both O(w^2) near w = 0
        c = casimir_eigenvalue(l, kind, qp)
        rad = 0.25 + c
        if rad < -BOUNDARY_TOL:
            return []
        if abs(rad) <= BOUNDARY_TOL:
            return [(RootBranch.PLUS, 0.5)]
        lam = math.sqrt(rad)
        if c >= 0.0:
            return [(RootBranch.PLUS, 0.5 + lam)]
        return [(RootBranch.PLUS, 0.5 + lam), (RootBranch.MINUS, 0.5 - lam)]
    lam = lambda_q(l, kind, qp)
    roots = [(RootBranch.PLUS, 0.5 + lam)]
    minus = 0.5 - lam
    if qp.is_real:
        if minus > ALPHA_TOL:
            roots.append((RootBranch.MINUS, minus))
    # sign(gamma_q) = sign(C_q); the trigonometric gamma_q(0) cancels to
    # O(w^4) near w = 0, so the bracket form is used for the test
    elif casimir_eigenvalue(l, kind, qp) < 0.0 and minus > ALPHA_TOL:
        roots.append((RootBranch.MINUS, minus))
    return roots


@dataclass(frozen=True)
class RadialState:
    """Radial solution labelled by ``n``, ``l`` and the exponent ``alpha``."""

    n: int
    l: int
    alpha: float
    kind: CasimirKind
    branch: RootBranch
    qp: QParam

    def __post_init__(self):
        if self.n < 0 or self.l < 0:
            raise DomainError("n and l must be non-negative")
        if not self.alpha > 0.0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        c = casimir_eigenvalue(self.l, self.kind, self.qp)
        if abs(self.alpha * (self.alpha - 1.0) - c) > 1e-12 * max(1.0, abs(c)):
            raise DomainError(
                f"alpha={self.alpha} does not solve alpha(alpha-1) = {c}")

    @property
    def energy(self):
        return energy(self)


def radial_state(n, l, kind, branch, qp):
    """Look up the admissible root for ``branch`` and build the state."""
    kind = CasimirKind.parse(kind)
    branch = RootBranch.parse(branch)
    for b, alpha in alpha_roots(l, kind, qp):
        if b is branch:
            return RadialState(n, l, alpha, kind, branch, qp)
    raise DomainError(
        f"no admissible {branch.value} root for l={l}, {kind.value} at {qp}")


def laguerre(n, a, x):
    """Associated Laguerre polynomial ``L_n^a(x)`` by upward recurrence."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + a - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def _norm(state):
    # sqrt(2 n! / Gamma(alpha + n + 1/2)), in logs to stay finite
    n, alpha = state.n, state.alpha
    return math.exp(0.5 * (math.log(2.0) + math.lgamma(n + 1)
                           - math.lgamma(alpha + n + 0.5)))


def radial_wavefunction(state, r):
    """``S_{nlq}(r)``; the full radial function is ``S(r) / r``."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("r must be non-negative")
    x = r * r
    out = (_norm(state) * np.exp(-0.5 * x) * r ** state.alpha
           * laguerre(state.n, state.alpha - 0.5, x))
    return out if np.ndim(out) else float(out)


def radial_function(state, r):
    """``R_{nlq}(r) = S_{nlq}(r) / r`` with its limit at ``r = 0``.

    The limit is 0 for ``alpha > 1``, finite for ``alpha == 1`` and
    infinite below.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("r must be non-negative")
    x = r * r
    with np.errstate(divide="ignore"):
        powr = np.where(r > 0, r, 1.0) ** (state.alpha - 1.0)
    if state.alpha > 1.0:
        powr = np.where(r > 0, powr, 0.0)
    elif state.alpha < 1.0:
        powr = np.where(r > 0, powr, np.inf)
    out = (_norm(state) * np.exp(-0.5 * x) * powr
           * laguerre(state.n, state.alpha - 0.5, x))
    return out if np.ndim(out) else float(out)


def energy(state):
    return 2.0 * state.n + state.alpha + 0.5


def radial_r2_matrix_element(state):
    """Closed form of the diagonal element of r^2 between S_{nlq}."""
    return 2.0 * state.n + state.alpha + 0.5
