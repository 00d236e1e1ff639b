"""Scalar q-arithmetic.

q-brackets, q-factorials, su_q(2) Casimir eigenvalues and the quantities
used to classify the admissible radial exponents. The deformation
parameter is carried by :class:`QParam`, which stores the real exponent
``w`` together with a regime flag: ``q = exp(w)`` on the positive real
axis or ``q = exp(i w)`` on the unit circle.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, NoRealRootsError, RootOfUnityError

__all__ = [
    "Regime",
    "CasimirKind",
    "QParam",
    "SMALL_W",
    "ROOT_OF_UNITY_TOL",
    "ROOT_OF_UNITY_MAX_DENOMINATOR",
    "nearest_root_of_unity",
    "bracket",
    "q_factorial",
    "casimir_eigenvalue",
    "lambda_q",
    "gamma_q",
]

#: Below this |w| brackets are evaluated from their Taylor expansion.
SMALL_W = 1e-6
ROOT_OF_UNITY_TOL = 1e-9
ROOT_OF_UNITY_MAX_DENOMINATOR = 64


class Regime(enum.Enum):
    REAL = "real"
    CIRCLE = "circle"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {
            "real": cls.REAL, "r": cls.REAL, "realpositive": cls.REAL,
            "circle": cls.CIRCLE, "c": cls.CIRCLE, "unitcircle": cls.CIRCLE,
            "complex": cls.CIRCLE,
        }
        try:
            return aliases[key.replace("_", "").replace("-", "")]
        except KeyError:
            raise DomainError(f"unknown regime {value!r}") from None


class CasimirKind(enum.Enum):
    """Choice of su_q(2) Casimir operator: C_q or C'_q."""

    CQ = "cq"
    CQ_PRIME = "cqprime"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("'", "prime").replace("_", "")
        for kind in cls:
            if kind.value == key:
                return kind
        raise DomainError(f"unknown Casimir kind {value!r}")


def nearest_root_of_unity(w, max_denominator=ROOT_OF_UNITY_MAX_DENOMINATOR):
    """Return ``(distance, p, s)`` for the angle ``pi p / s`` closest to ``w``.

    Only reduced fractions with ``1 <= s <= max_denominator`` are scanned.
    """
    best = (math.inf, 0, 1)
    x = w / math.pi
    for s in range(1, max_denominator + 1):
        p = round(x * s)
        d = abs(w - math.pi * p / s)
        if d < best[0]:
            frac = Fraction(p, s)
            best = (d, frac.numerator, frac.denominator)
    return best


@dataclass(frozen=True)
class QParam:
    """Deformation parameter.

    ``w`` may carry either sign; ``inverse()`` flips it, which maps q to 1/q.
    The real regime accepts ``w == 0`` (the undeformed oscillator). On the
    unit circle, ``0 < |w| < pi`` and angles within ``ROOT_OF_UNITY_TOL`` of
    ``pi p / s`` (``s <= 64``) are rejected.
    """

    regime: Regime
    w: float

    def __post_init__(self):
        object.__setattr__(self, "regime", Regime.parse(self.regime))
        w = float(self.w)
        object.__setattr__(self, "w", w)
        if not math.isfinite(w):
            raise DomainError(f"w must be finite, got {w}")
        if self.regime is Regime.CIRCLE:
            if not 0.0 < abs(w) < math.pi:
                raise RootOfUnityError(
                    f"unit-circle w must satisfy 0 < |w| < pi, got {w}")
            d, p, s = nearest_root_of_unity(w)
            if d < ROOT_OF_UNITY_TOL:
                raise RootOfUnityError(
                    f"w={w!r} is within {d:.2e} of the root-of-unity angle "
                    f"pi*{p}/{s}")

    @classmethod
    def real(cls, w):
        return cls(Regime.REAL, w)

    @classmethod
    def circle(cls, w):
        return cls(Regime.CIRCLE, w)

    @property
    def is_real(self):
        return self.regime is Regime.REAL

    @property
    def log_q(self):
        """Principal logarithm of q: ``w`` or ``i w``."""
        return complex(self.w, 0.0) if self.is_real else complex(0.0, self.w)

    @property
    def q(self):
        return self.power(1.0)

    def power(self, t):
        """q**t computed as exp(t log q), without branch ambiguity."""
        if self.is_real:
            return complex(math.exp(t * self.w), 0.0)
        return cmath.exp(complex(0.0, t * self.w))

    def inverse(self):
        # -0.0 is kept distinct from 0.0 only cosmetically; q = 1 either way
        return QParam(self.regime, -self.w if self.w != 0.0 else 0.0)

    def __str__(self):
        return f"{self.regime.value}:w={self.w!r}"


def _sinh_ratio(x, w, circle):
    # sinh(xw)/sinh(w), or sin(xw)/sin(w) on the circle; w >= 0 here
    if w < SMALL_W:
        s = -1.0 if circle else 1.0
        x2 = x * x
        w2 = s * w * w
        return x * (1.0 + (x2 - 1.0) * w2 / 6.0
                    + (3.0 * x2 * x2 - 10.0 * x2 + 7.0) * w2 * w2 / 360.0)
    if circle:
        return math.sin(x * w) / math.sin(w)
    return math.sinh(x * w) / math.sinh(w)


def bracket(x, qp):
    """q-number ``[x]_q = (q^x - q^-x) / (q - 1/q)``.

    Real for both regimes and even in ``w``.

    >>> bracket(2, QParam.real(math.log(2)))
    2.5
    """
    return _sinh_ratio(float(x), abs(qp.w), not qp.is_real)


def q_factorial(x, qp):
    """``[x]_q! = [x]_q [x-1]_q ... [1]_q`` with ``[0]_q! = 1``."""
    if int(x) != x or x < 0:
        raise DomainError(f"q_factorial needs a non-negative integer, got {x}")
    out = 1.0
    for j in range(1, int(x) + 1):
        out *= bracket(j, qp)
    return out


def casimir_eigenvalue(l, kind, qp):
    """Eigenvalue of C_q or C'_q on the spin-l multiplet."""
    if l < 0:
        raise DomainError(f"l must be non-negative, got {l}")
    kind = CasimirKind.parse(kind)
    if kind is CasimirKind.CQ:
        b = bracket(l + 0.5, qp)
        return b * b - 0.25
    return bracket(l, qp) * bracket(l + 1, qp)


def lambda_q(l, kind, qp):
    """``sqrt(1/4 + C(l))``; raises NoRealRootsError for a negative radicand."""
    kind = CasimirKind.parse(kind)
    if kind is CasimirKind.CQ:
        # exact square: avoid the subtraction/addition of 1/4
        return abs(bracket(l + 0.5, qp))
    radicand = 0.25 + casimir_eigenvalue(l, kind, qp)
    if radicand < 0.0:
        raise NoRealRootsError(
            f"1/4 + C'_q({l}) = {radicand:.3e} < 0 at {qp}: no real roots")
    return math.sqrt(radicand)


def gamma_q(l, kind, qp):
    """Unit-circle classifier ``4 sin^2(w) C(l)`` in trigonometric form."""
    if qp.is_real:
        raise DomainError("gamma_q is defined on the unit circle only")
    if l < 0:
        raise DomainError(f"l must be non-negative, got {l}")
    kind = CasimirKind.parse(kind)
    w = qp.w
    if kind is CasimirKind.CQ:
        return 0.5 * (-4.0 * math.cos((2 * l + 1) * w) + math.cos(2 * w) + 3.0)
    return 4.0 * math.sin((l + 1) * w) * math.sin(l * w)
