"""Level enumeration, closed-form energies, small-w series and figure tables."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError
from .qnum import CasimirKind, QParam, Regime, nearest_root_of_unity
from .radial import ALPHA_TOL, BOUNDARY_TOL, RootBranch, alpha_roots
from .table import Table

__all__ = [
    "Level",
    "Figure",
    "FIGURE_ROU_TOL",
    "SERIES_MAX_W",
    "TWO_LEVEL_WINDOW",
    "enumerate_levels",
    "energy_closed_form",
    "energy_series",
    "figure_data",
    "undeformed_energy",
]

#: grid points this close to pi p/s (s <= 64) are dropped from figure tables
FIGURE_ROU_TOL = 1e-6
SERIES_MAX_W = 0.3
#: cos w interval in which the unit-circle C_q l=1 level splits in two
TWO_LEVEL_WINDOW = ((-7.0 - math.sqrt(17.0)) / 16.0, (-7.0 + math.sqrt(17.0)) / 16.0)

_BRANCH_ORDER = {RootBranch.PLUS: 0, RootBranch.MINUS: 1}


@dataclass(frozen=True)
class Level:
    n: int
    l: int
    kind: CasimirKind
    branch: RootBranch
    alpha: float
    energy: float
    qp: QParam

    def sort_key(self):
        return (self.energy, self.l, self.n, _BRANCH_ORDER[self.branch])

    def label(self):
        return (self.n, self.l, self.kind.value, self.branch.value)


def undeformed_energy(n, l):
    return 2 * n + l + 1.5


def enumerate_levels(n_max, l_max, kind, qp):
    """All admissible ``(n, l, branch)`` levels with ``n <= n_max``, ``l <= l_max``.

    Sorted by energy, ties by ``(l, n, branch)`` with Plus before Minus.
    """
    if n_max < 0 or l_max < 0:
        raise DomainError("n_max and l_max must be non-negative")
    kind = CasimirKind.parse(kind)
    levels = []
    for l in range(l_max + 1):
        for branch, alpha in alpha_roots(l, kind, qp):
            for n in range(n_max + 1):
                levels.append(Level(n, l, kind, branch, alpha,
                                    2.0 * n + alpha + 0.5, qp))
    levels.sort(key=Level.sort_key)
    return levels


# closed forms -----------------------------------------------------------------
def _missing(msg, n, l, kind, branch, qp):
    raise DomainError(
        f"no level n={n}, l={l}, {kind.value}, {branch.value} at {qp}: {msg}")


def _real_lambda(l, kind, w):
    if w == 0.0:
        return l + 0.5
    if kind is CasimirKind.CQ:
        if l == 0:
            return 1.0 / (2.0 * math.cosh(w / 2.0))
        return math.sinh((l + 0.5) * w) / math.sinh(w)
    sh = math.sinh(w)
    return math.sqrt(4.0 * math.sinh(l * w) * math.sinh((l + 1) * w)
                     + sh * sh) / (2.0 * sh)


def energy_closed_form(n, l, kind, branch, qp):
    """Energy from the printed closed forms, with their region conditions.

    Independent of :func:`alpha_roots`: each regime/kind/l combination uses
    its own trigonometric or hyperbolic expression and its own existence
    test. For the unit-circle C_q levels with l >= 2 (and C'_q, l >= 2) the
    general forms ``|sin((l+1/2)w)/sin w|`` and
    ``sqrt(sin^2 w + gamma'(l)) / (2|sin w|)`` are used.
    """
    kind = CasimirKind.parse(kind)
    branch = RootBranch.parse(branch)
    if n < 0 or l < 0:
        raise DomainError("n and l must be non-negative")
    w = abs(qp.w)
    sign = branch.sign

    if qp.is_real:
        lam = _real_lambda(l, kind, w)
        if branch is RootBranch.MINUS:
            if kind is CasimirKind.CQ_PRIME:
                _missing("C'_q admits only the plus root for real q",
                         n, l, kind, branch, qp)
            if l > 0:
                _missing("lambda_q(l) > 1/2 for l >= 1", n, l, kind, branch, qp)
            if 0.5 - lam <= ALPHA_TOL:
                _missing("alpha_0- vanishes at q = 1", n, l, kind, branch, qp)
        return 2.0 * n + 1.0 + sign * lam

    c = math.cos(w)
    sw = math.sin(w)
    if kind is CasimirKind.CQ:
        if l == 0:
            if branch is RootBranch.MINUS:
                _missing("a single l = 0 level exists on the unit circle",
                         n, l, kind, branch, qp)
            return 2.0 * n + 1.0 + 1.0 / (2.0 * math.cos(w / 2.0))
        if l == 1:
            h = math.cos(w / 2.0)
            lam = abs(4.0 * h * h - 1.0) / (2.0 * h)
            two = TWO_LEVEL_WINDOW[0] < c < TWO_LEVEL_WINDOW[1]
            if branch is RootBranch.MINUS and not two:
                _missing(f"cos w = {c:.6g} outside "
                         f"({TWO_LEVEL_WINDOW[0]:.6g}, {TWO_LEVEL_WINDOW[1]:.6g})",
                         n, l, kind, branch, qp)
            return 2.0 * n + 1.0 + sign * lam
        gamma = 0.5 * (-4.0 * math.cos((2 * l + 1) * w) + math.cos(2 * w) + 3.0)
        if branch is RootBranch.MINUS and not gamma < 0.0:
            _missing(f"gamma_q(l) = {gamma:.6g} >= 0", n, l, kind, branch, qp)
        lam = abs(math.sin((l + 0.5) * w) / sw)
        return 2.0 * n + 1.0 + sign * lam

    # C'_q on the unit circle
    if l == 0:
        if branch is RootBranch.MINUS:
            _missing("a single l = 0 level exists for C'_q", n, l, kind, branch, qp)
        return 2.0 * n + 1.5
    if l == 1:
        if c < -0.125:
            _missing(f"cos w = {c:.6g} < -1/8", n, l, kind, branch, qp)
        if branch is RootBranch.MINUS and not (-0.125 < c < 0.0):
            _missing(f"cos w = {c:.6g} outside (-1/8, 0)", n, l, kind, branch, qp)
        return 2.0 * n + 1.0 + sign * 0.5 * math.sqrt(max(1.0 + 8.0 * c, 0.0))
    gp = 4.0 * math.sin((l + 1) * w) * math.sin(l * w)
    s2 = sw * sw
    lam2 = (s2 + gp) / (4.0 * s2)
    if lam2 < -BOUNDARY_TOL:
        _missing(f"gamma'_q(l) = {gp:.6g} < -sin^2 w", n, l, kind, branch, qp)
    if branch is RootBranch.MINUS and not (BOUNDARY_TOL < lam2 and gp < 0.0):
        _missing(f"gamma'_q(l) = {gp:.6g} outside (-sin^2 w, 0)",
                 n, l, kind, branch, qp)
    return 2.0 * n + 1.0 + sign * math.sqrt(max(lam2, 0.0))


# series -----------------------------------------------------------------------
def energy_series(n, l, kind, branch, w, order=4, regime=Regime.REAL):
    """Truncated small-w expansion of the level going into ``2n + l + 3/2``.

    ``w`` may be a float (with ``regime``) or a :class:`QParam`. On the unit
    circle ``w**2`` is replaced by ``-w**2``. Terms up to ``w**order`` are
    kept; only even powers occur.
    """
    if isinstance(w, QParam):
        regime, w = w.regime, w.w
    regime = Regime.parse(regime)
    kind = CasimirKind.parse(kind)
    branch = RootBranch.parse(branch)
    if not 0 <= order <= 4 or int(order) != order:
        raise DomainError(f"series order must be an integer in 0..4, got {order}")
    if abs(w) > SERIES_MAX_W:
        raise DomainError(f"|w| = {abs(w)} exceeds the series range {SERIES_MAX_W}")
    if n < 0 or l < 0:
        raise DomainError("n and l must be non-negative")
    x = w * w if regime is Regime.REAL else -w * w
    x2 = x if order >= 2 else 0.0
    x4 = x * x if order >= 4 else 0.0

    if kind is CasimirKind.CQ and l == 0:
        if branch is RootBranch.MINUS and regime is not Regime.REAL:
            raise DomainError("no minus l = 0 level near w = 0 on the unit circle")
        s = branch.sign
        return 2.0 * n + 1.0 + s * 0.5 - s * (x2 - 5.0 * x4 / 48.0) / 16.0
    if branch is RootBranch.MINUS:
        raise DomainError(f"no minus level for l={l}, {kind.value} near w = 0")
    base = 2.0 * n + l + 1.5
    if kind is CasimirKind.CQ:
        a = (2 * l - 1) * (2 * l + 1) * (2 * l + 3) / 48.0
        b = (12 * l * (l + 1) - 25) / 240.0
        return base + a * (x2 + b * x4)
    L = l * (l + 1)
    a = L / (6.0 * (2 * l + 1))
    b = (24 * L ** 3 - 56 * L ** 2 - 10 * L + 7) / (60.0 * (4 * L + 1))
    return base + a * ((2 * L - 1) * x2 + b * x4)


# figures ----------------------------------------------------------------------
class Figure(enum.Enum):
    FIG1 = "fig1"
    FIG2 = "fig2"
    FIG3 = "fig3"
    FIG4 = "fig4"

    @property
    def regime(self):
        return Regime.REAL if self in (Figure.FIG1, Figure.FIG3) else Regime.CIRCLE

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        if key.isdigit():
            key = "fig" + key
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"unknown figure {value!r}") from None


def _fig_rows(fig, qp):
    from .observables import quadrupole_moment

    rows = []
    cq, cqp = CasimirKind.CQ, CasimirKind.CQ_PRIME
    plus, minus = RootBranch.PLUS, RootBranch.MINUS

    def energies(l, kind):
        return dict(alpha_roots(l, kind, qp))

    if fig is Figure.FIG1:
        roots = energies(0, cq)
        rows.append(("E_00q+", roots[plus] + 0.5))
        if minus in roots:
            rows.append(("E_00q-", roots[minus] + 0.5))
        for l in range(1, 7):
            rows.append((f"E_0{l}q", energies(l, cq)[plus] + 0.5))
    elif fig is Figure.FIG2:
        for l in range(4):
            rows.append((f"E_0{l}q", energies(l, cq)[plus] + 0.5))
    elif fig is Figure.FIG3:
        for n in (0, 1):
            roots = energies(0, cq)
            rows.append((f"Q_{n}0q+", quadrupole_moment(n, cq, plus, qp).value))
            if minus in roots:
                rows.append((f"Q_{n}0q-", quadrupole_moment(n, cq, minus, qp).value))
            rows.append((f"Q'_{n}0q", quadrupole_moment(n, cqp, plus, qp).value))
    else:
        for n in (0, 1):
            rows.append((f"Q_{n}0q", quadrupole_moment(n, cq, plus, qp).value))
            rows.append((f"Q'_{n}0q", quadrupole_moment(n, cqp, plus, qp).value))
    return rows


def figure_data(figure, w_grid):
    """Tidy ``(w, curve, value)`` table for one of the four figures.

    Fig1/Fig3 use real q, Fig2/Fig4 the unit circle. Unit-circle grid points
    within :data:`FIGURE_ROU_TOL` of a root of unity are replaced by a row
    with curve ``WARNING_root_of_unity`` and value NaN.
    """
    fig = Figure.parse(figure)
    table = Table(["w", "curve", "value"])
    for w in w_grid:
        w = float(w)
        if fig.regime is Regime.CIRCLE:
            if not 0.0 < w < math.pi:
                raise DomainError(f"unit-circle figures need 0 < w < pi, got {w}")
            dist, p, s = nearest_root_of_unity(w)
            if dist <= FIGURE_ROU_TOL:
                table.append([w, "WARNING_root_of_unity", math.nan])
                continue
        qp = QParam(fig.regime, w)
        for curve, value in _fig_rows(fig, qp):
            table.append([w, curve, float(value)])
    return table
