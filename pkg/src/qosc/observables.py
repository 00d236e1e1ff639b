"""Quadrupole moment of l = 0 states."""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .qnum import CasimirKind, QParam
from .quadrature import integrate_semi_infinite
from .radial import RootBranch, radial_r2_matrix_element, radial_state

__all__ = [
    "IqMethod",
    "QuadrupoleResult",
    "ANGULAR_SERIES_W",
    "undeformed_quadrupole",
    "quadrupole_angular_closed",
    "quadrupole_angular_quadrature",
    "iq_integral",
    "quadrupole_moment",
]

#: below this |w| the angular matrix element is taken from its Taylor series;
#: the closed form loses about eps / w^4 relative accuracy to cancellation
ANGULAR_SERIES_W = 0.1
# coefficients of w^2 .. w^12 in the real-q angular element
_ANGULAR_SERIES = (4.0 / 15.0, -4.0 / 105.0, 8.0 / 1575.0, -4.0 / 6237.0,
                   5528.0 / 70945875.0, -8.0 / 868725.0)
#: below this |ln q| the combination  l cosh l - sinh l  in I_q is summed as a series
IQ_SERIES_W = 0.5


class IqMethod(enum.Enum):
    CLOSED = "closed"
    QUADRATURE = "quadrature"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise DomainError(f"unknown method {value!r}") from None


@dataclass(frozen=True)
class QuadrupoleResult:
    n: int
    kind: CasimirKind
    branch: RootBranch
    radial_part: float
    angular_part: float
    value: float
    qp: QParam


def undeformed_quadrupole(n, l):
    """``(2n + l + 3/2) * (-2l / (2l + 3))``."""
    if n < 0 or l < 0:
        raise DomainError("n and l must be non-negative")
    return (2 * n + l + 1.5) * (-2.0 * l / (2 * l + 3))


def quadrupole_angular_closed(qp):
    """``<00| 3cos^2(theta) - 1 |00>_q`` in closed form.

    Even in w; tends to 2 for large real w and to -inf as w -> pi on the
    unit circle. Near w = 0 the two terms cancel, so a Taylor series is used.
    """
    w = abs(qp.w)
    if w < ANGULAR_SERIES_W:
        x = w * w if qp.is_real else -w * w
        return sum(c * x ** (k + 1) for k, c in enumerate(_ANGULAR_SERIES))
    if qp.is_real:
        # 2 coth^2 + 1/sinh^2 - 3 coth / w, written to avoid overflow
        t = math.tanh(w)
        e = math.exp(-2.0 * w)
        return 2.0 / (t * t) + 4.0 * e / (1.0 - e) ** 2 - 3.0 / (w * t)
    c, s = math.cos(w), math.sin(w)
    return -(2.0 * c * c + 1.0) / (s * s) + 3.0 * c / (w * s)


def _iq_closed(qp):
    # with z = ln q:  8 pi (q + 1/q)/(q - 1/q)^2 (x ln q - 1)
    #               = 4 pi cosh z (z cosh z - sinh z) / sinh^3 z
    z = complex(qp.log_q)
    if abs(z) < IQ_SERIES_W:
        # z cosh z - sinh z = sum_k 2k z^(2k+1) / (2k+1)!
        diff, term, z2 = 0j, z, z * z
        for k in range(1, 14):
            term = term * z2 / ((2 * k) * (2 * k + 1))
            diff += 2 * k * term
    else:
        diff = z * cmath.cosh(z) - cmath.sinh(z)
    sh = cmath.sinh(z)
    return 4.0 * math.pi * cmath.cosh(z) * diff / sh ** 3


def _iq_quadrature(qp, abs_tol=1e-12):
    qi2 = qp.power(-2)

    def f(eta):
        u = qi2 * eta
        return (1.0 - u) ** 2 / ((1.0 + eta) * (1.0 + u) ** 3)

    res = integrate_semi_infinite(f, abs_tol=abs_tol)
    return 4.0 * math.pi * res.value / qp.q


def iq_integral(qp, method=IqMethod.CLOSED, abs_tol=1e-12):
    """The angular integral ``I_q`` of ``cos^2(theta)`` under the shifted weight.

    ``Closed`` evaluates the logarithmic closed form with the principal
    ``ln q``; ``Quadrature`` integrates the eta-form along the positive axis.
    For real q both are real. On the unit circle the quadrature value is
    complex and only its real part, i.e. the half-sum ``(I_q + I_{1/q})/2``
    that enters the angular matrix element, is returned.
    """
    method = IqMethod.parse(method)
    if qp.w == 0.0:
        return 4.0 * math.pi / 3.0
    if method is IqMethod.CLOSED:
        return _iq_closed(qp).real
    return _iq_quadrature(qp, abs_tol).real


def quadrupole_angular_quadrature(qp, abs_tol=1e-12):
    """Angular element from ``3 (q - 1/q) / (16 pi ln q) (I_q + I_{1/q}) - 1``.

    Both integrals are computed by quadrature with complex arithmetic; the
    imaginary part of the result is returned separately.
    """
    if qp.w == 0.0:
        return 0.0, 0.0
    total = _iq_quadrature(qp, abs_tol) + _iq_quadrature(qp.inverse(), abs_tol)
    pref = 3.0 * (qp.q - 1.0 / qp.q) / (16.0 * math.pi * qp.log_q)
    val = pref * total - 1.0
    return val.real, val.imag


def quadrupole_moment(n, kind, branch, qp):
    """``Q_{n0q}`` (or ``Q'_{n0q}``) as radial times angular matrix element."""
    state = radial_state(n, 0, kind, branch, qp)
    radial = radial_r2_matrix_element(state)
    angular = quadrupole_angular_closed(qp)
    return QuadrupoleResult(n, state.kind, state.branch, radial, angular,
                            radial * angular, qp)
