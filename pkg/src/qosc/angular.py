"""Deformed angular sector.

Functions on the sphere are handled in the variable ``rho = cot(theta/2)``
where ``sin(theta) d/dtheta = -rho d/drho``. On a sector of fixed azimuthal
index ``m`` the generators become

    T1 = (rho d/drho - m) / 2,        T2 = (rho d/drho + m) / 2,

so every power ``q**(t T)`` acts by rescaling the argument,
``rho -> q**(t/2) rho``, times a constant. A finite sum of terms

    coeff * rho**p * prod_j (1 + c_j rho**2) ** e_j

is therefore mapped to another such sum by J3, J+, J-, both Casimir
operators and the shift operators of the deformed scalar product. All of
them are applied here exactly; numerics only enter at evaluation and in the
final quadrature.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, HarmonicUndefinedError
from .qnum import SMALL_W, CasimirKind, QParam, bracket, q_factorial
from .quadrature import integrate

__all__ = [
    "Term",
    "AngularFunction",
    "QSphericalHarmonic",
    "ImaginaryResidueWarning",
    "scale_operator",
    "bracket_operator",
    "apply_j3",
    "apply_jplus",
    "apply_jminus",
    "apply_casimir",
    "spherical_harmonic",
    "evaluate",
    "cos_theta",
    "deformed_matrix",
    "deformed_inner_product",
    "gram_matrix",
]

FACTOR_TOL = 1e-13
DROP_TOL = 1e-15
IMAG_TOL = 1e-8
LOG_ETA_SPAN = 100.0
#: below this |w| bracket operators are summed from their Taylor series;
#: each power of X multiplies the term count, and below SMALL_W the X^3 term
#: is under 1e-11 relative for l <= 4, so only the leading term is kept
OPERATOR_SERIES_W = SMALL_W
OPERATOR_SERIES_TERMS = 1


class ImaginaryResidueWarning(UserWarning):
    """A unit-circle scalar product left an imaginary part above tolerance."""


@dataclass(frozen=True)
class Term:
    """``coeff * rho**power * prod (1 + c rho^2)**e`` for ``(c, e)`` in factors."""

    coeff: complex
    power: int
    factors: tuple = ()

    def scaled(self, s):
        s = complex(s)
        s2 = s * s
        return Term(self.coeff * s ** self.power, self.power,
                    tuple((c * s2, e) for c, e in self.factors))

    def value(self, rho, cache=None):
        """Term value at real ``rho >= 0``.

        For ``rho > 1`` the factors are written as ``rho^2 (c + rho^-2)`` so
        high powers never overflow before the denominators act.
        """
        rho = np.asarray(rho, dtype=float)
        big = rho > 1.0
        small_rho = np.where(big, 1.0, rho)
        inv2 = np.where(big, 1.0 / (rho * rho), 1.0)
        lead = np.where(big, rho, 1.0).astype(complex) ** self.degree_at_infinity
        out = np.where(big, lead, small_rho.astype(complex) ** self.power)
        rho2 = small_rho * small_rho
        for c, e in self.factors:
            key = c
            base = None if cache is None else cache.get(key)
            if base is None:
                base = np.where(big, c + inv2, 1.0 + c * rho2)
                if cache is not None:
                    cache[key] = base
            out = out * base ** e
        return self.coeff * out

    @property
    def degree_at_infinity(self):
        return self.power + 2 * sum(e for c, e in self.factors if c != 0)


def _canonical_factors(factors, registry):
    merged = {}
    for c, e in factors:
        c = complex(c)
        if e == 0 or c == 0:
            continue
        key = None
        for k, ref in enumerate(registry):
            if abs(c - ref) <= FACTOR_TOL * max(1.0, abs(ref)):
                key = k
                break
        if key is None:
            registry.append(c)
            key = len(registry) - 1
        merged[key] = merged.get(key, 0) + e
    return tuple(sorted((k, e) for k, e in merged.items() if e != 0))


@dataclass(frozen=True)
class AngularFunction:
    """Immutable sum of :class:`Term` objects times ``exp(i m phi)``."""

    m: int
    terms: tuple = field(default=())

    @classmethod
    def build(cls, m, terms, scale=None):
        """Create a function, merging equal factors and equal terms.

        Terms whose merged coefficient falls below ``DROP_TOL * scale`` are
        dropped; ``scale`` defaults to the largest input coefficient.
        """
        terms = list(terms)
        if not terms:
            return cls(int(m), ())
        if scale is None:
            scale = max(abs(t.coeff) for t in terms)
        registry = []
        acc = {}
        order = []
        for t in terms:
            key = (t.power, _canonical_factors(t.factors, registry))
            if key not in acc:
                acc[key] = 0j
                order.append(key)
            acc[key] += complex(t.coeff)
        out = []
        for key in order:
            coeff = acc[key]
            if abs(coeff) <= DROP_TOL * scale:
                continue
            power, fac = key
            out.append(Term(coeff, power,
                            tuple((registry[k], e) for k, e in fac)))
        return cls(int(m), tuple(out))

    @classmethod
    def constant(cls, value, m=0):
        return cls.build(m, [Term(complex(value), 0)])

    # arithmetic -----------------------------------------------------------
    def _check_m(self, other):
        if self.m != other.m:
            raise DomainError(
                f"cannot add functions with m={self.m} and m={other.m}")

    def __add__(self, other):
        if not isinstance(other, AngularFunction):
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        self._check_m(other)
        return AngularFunction.build(self.m, self.terms + other.terms)

    def __neg__(self):
        return AngularFunction(self.m, tuple(
            Term(-t.coeff, t.power, t.factors) for t in self.terms))

    def __sub__(self, other):
        if not isinstance(other, AngularFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AngularFunction):
            terms = [Term(a.coeff * b.coeff, a.power + b.power,
                          a.factors + b.factors)
                     for a in self.terms for b in other.terms]
            return AngularFunction.build(self.m + other.m, terms)
        c = complex(other)
        if c == 0:
            return AngularFunction(self.m, ())
        return AngularFunction(self.m, tuple(
            Term(t.coeff * c, t.power, t.factors) for t in self.terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1.0 / complex(other))

    # structural maps ------------------------------------------------------
    def scaled(self, s):
        """Argument rescaling ``rho -> s rho``; exact."""
        return AngularFunction(self.m, tuple(t.scaled(s) for t in self.terms))

    def times_rho(self, k):
        return AngularFunction(self.m, tuple(
            Term(t.coeff, t.power + k, t.factors) for t in self.terms))

    def with_m(self, m):
        return AngularFunction(int(m), self.terms)

    def euler(self):
        """``rho d/drho`` applied termwise."""
        out = []
        for t in self.terms:
            if t.power:
                out.append(Term(t.coeff * t.power, t.power, t.factors))
            for j, (c, e) in enumerate(t.factors):
                # rho d/drho (1 + c rho^2)^e = 2 e c rho^2 (1 + c rho^2)^(e-1)
                fac = list(t.factors)
                fac[j] = (c, e - 1)
                out.append(Term(t.coeff * 2 * e * c, t.power + 2, tuple(fac)))
        return AngularFunction.build(self.m, out,
                                     scale=self._scale() or None)

    def conj_coefficients(self):
        """Complex conjugate on real rho (coefficients and factor constants)."""
        return AngularFunction(-self.m, tuple(
            Term(t.coeff.conjugate(), t.power,
                 tuple((c.conjugate(), e) for c, e in t.factors))
            for t in self.terms))

    def _scale(self):
        return max((abs(t.coeff) for t in self.terms), default=0.0)

    def is_zero(self):
        return not self.terms

    # evaluation -----------------------------------------------------------
    def evaluate_rho(self, rho):
        """Sum of the terms at ``rho`` (no azimuthal phase)."""
        rho = np.asarray(rho)
        out = np.zeros(rho.shape, dtype=complex)
        cache = {}
        for t in self.terms:
            out = out + t.value(rho, cache)
        return out

    def __call__(self, theta, phi=0.0):
        return evaluate(self, theta, phi)

    # serialization --------------------------------------------------------
    def to_dict(self):
        return {
            "m": self.m,
            "terms": [
                {
                    "coeff": [t.coeff.real, t.coeff.imag],
                    "power": t.power,
                    "factors": [[c.real, c.imag, e] for c, e in t.factors],
                }
                for t in self.terms
            ],
        }

    @classmethod
    def from_dict(cls, data):
        terms = tuple(
            Term(complex(*d["coeff"]), int(d["power"]),
                 tuple((complex(c[0], c[1]), int(c[2])) for c in d["factors"]))
            for d in data["terms"])
        return cls(int(data["m"]), terms)


# limits at the poles: theta -> pi is rho -> 0, theta -> 0 is rho -> inf
def _limit_at_zero(f):
    lowest = min(t.power for t in f.terms)
    if lowest > 0:
        return 0j
    s = sum(t.coeff for t in f.terms if t.power == lowest)
    if lowest < 0 and abs(s) > DROP_TOL * f._scale():
        raise DomainError("function diverges at theta = pi")
    if lowest < 0:
        return 0j
    return s


def _limit_at_infinity(f):
    top = max(t.degree_at_infinity for t in f.terms)
    s = 0j
    for t in f.terms:
        if t.degree_at_infinity == top:
            s += t.coeff * np.prod([c ** e for c, e in t.factors if c != 0])
    if top > 0 and abs(s) > DROP_TOL * f._scale():
        raise DomainError("function diverges at theta = 0")
    if top < 0:
        return 0j
    return s if top == 0 else 0j


def evaluate(f, theta, phi=0.0):
    """Value of ``f`` at ``(theta, phi)``; arrays broadcast.

    At the poles the limiting value is returned, or DomainError is raised
    when the function diverges there.
    """
    theta, phi = np.broadcast_arrays(np.asarray(theta, float),
                                     np.asarray(phi, float))
    if np.any((theta < 0) | (theta > np.pi)):
        raise DomainError("theta must lie in [0, pi]")
    out = np.empty(theta.shape, dtype=complex)
    north = theta == 0.0
    south = theta == np.pi
    inner = ~(north | south)
    if f.is_zero():
        out[...] = 0.0
    else:
        rho = 1.0 / np.tan(0.5 * theta[inner])
        out[inner] = f.evaluate_rho(rho)
        if north.any():
            out[north] = _limit_at_infinity(f)
        if south.any():
            out[south] = _limit_at_zero(f)
    out = out * np.exp(1j * f.m * phi)
    return out if out.ndim else complex(out)


def cos_theta(power=1):
    """``cos(theta)**power`` as an m = 0 function: cos = (rho^2-1)/(rho^2+1)."""
    base = AngularFunction.build(0, [Term(1.0, 2, ((1.0, -1),)),
                                     Term(-1.0, 0, ((1.0, -1),))])
    out = AngularFunction.constant(1.0)
    for _ in range(power):
        out = out * base
    return out


# operators ------------------------------------------------------------------
def scale_operator(f, qp, t, which):
    """``q**(t X)`` for X in {"T1", "T2", "sin_dtheta"}; exact.

    ``q**(t T1)`` = ``q**(-t m/2) f(q**(t/2) rho)``,
    ``q**(t T2)`` = ``q**(t m/2) f(q**(t/2) rho)`` and
    ``q**(t sin(theta) d/dtheta)`` = ``f(q**(-t) rho)``.
    """
    if which == "T1":
        return f.scaled(qp.power(t / 2)) * qp.power(-t * f.m / 2)
    if which == "T2":
        return f.scaled(qp.power(t / 2)) * qp.power(t * f.m / 2)
    if which == "sin_dtheta":
        return f.scaled(qp.power(-t))
    raise DomainError(f"unknown generator {which!r}")


def _generator(f, which):
    sign = -1 if which == "T1" else 1
    return (f.euler() + sign * f.m * f) * 0.5


def bracket_operator(f, qp, which):
    """``[X]_q = (q^X - q^-X) / (q - 1/q)`` for X = T1 or T2.

    The difference quotient loses about ``log10(1/w)`` digits per
    application, so below ``OPERATOR_SERIES_W`` the odd Taylor series of
    ``sinh(wX) / sinh(w)`` in powers of X is summed instead. Each power of X
    is exact on the term class but multiplies the number of terms.
    """
    w = abs(qp.w)
    if w == 0.0:
        return _generator(f, which)
    if w < OPERATOR_SERIES_W:
        s = 1.0 if qp.is_real else -1.0
        norm = math.sinh(w) if qp.is_real else math.sin(w)
        xk = _generator(f, which)
        out = xk * (w / norm)
        for j in range(1, OPERATOR_SERIES_TERMS):
            xk = _generator(_generator(xk, which), which)
            coeff = s ** j * w ** (2 * j + 1) / (math.factorial(2 * j + 1) * norm)
            out = out + xk * coeff
        return out
    denom = qp.power(1) - qp.power(-1)
    return (scale_operator(f, qp, 1, which)
            - scale_operator(f, qp, -1, which)) / denom


def apply_j3(f):
    return f * f.m


def apply_jplus(f, qp):
    """J+ = -e^{i phi} (tan(theta/2) [T1] q^T2 + cot(theta/2) q^T1 [T2])."""
    a = bracket_operator(scale_operator(f, qp, 1, "T2"), qp, "T1").times_rho(-1)
    b = scale_operator(bracket_operator(f, qp, "T2"), qp, 1, "T1").times_rho(1)
    return (-(a + b)).with_m(f.m + 1)


def apply_jminus(f, qp):
    """J- = e^{-i phi} (cot(theta/2) [T1] q^T2 + tan(theta/2) q^T1 [T2])."""
    a = bracket_operator(scale_operator(f, qp, 1, "T2"), qp, "T1").times_rho(1)
    b = scale_operator(bracket_operator(f, qp, "T2"), qp, 1, "T1").times_rho(-1)
    return (a + b).with_m(f.m - 1)


def apply_casimir(f, kind, qp):
    kind = CasimirKind.parse(kind)
    m = f.m
    ladder = apply_jplus(apply_jminus(f, qp), qp)
    if kind is CasimirKind.CQ:
        diag = bracket(m - 0.5, qp) ** 2 - 0.25
    else:
        diag = bracket(m, qp) * bracket(m - 1, qp)
    return ladder + f * diag


# harmonics ------------------------------------------------------------------
@dataclass(frozen=True)
class QSphericalHarmonic:
    l: int
    m: int
    qp: QParam
    f: AngularFunction
    norm_constant: complex
    real_norm: bool = True

    def __call__(self, theta, phi=0.0):
        return evaluate(self.f, theta, phi)

    def to_dict(self):
        return {
            "l": self.l,
            "m": self.m,
            "regime": self.qp.regime.value,
            "w": self.qp.w,
            "norm_constant": [self.norm_constant.real, self.norm_constant.imag],
            "real_norm": self.real_norm,
            "function": self.f.to_dict(),
        }


def _inv_qfact(x, qp):
    return 0.0 if x < 0 else 1.0 / q_factorial(x, qp)


def spherical_harmonic(l, m, qp, strict=True):
    """Build ``Y_{lmq}``.

    The normalization ``N_{lmq}`` takes the square root of
    ``[2l+1]_q [l+m]_q! / (4 pi [l-m]_q!)``. On the unit circle that
    radicand turns negative for some (l, m, w); with ``strict`` this raises
    :class:`HarmonicUndefinedError`, otherwise the principal (imaginary)
    root is used and ``real_norm`` is set to False.
    """
    if l < 0 or abs(m) > l:
        raise DomainError(f"invalid labels l={l}, m={m}")
    radicand = (bracket(2 * l + 1, qp) * q_factorial(l + m, qp)
                / (4.0 * math.pi * q_factorial(l - m, qp)))
    if radicand <= 0.0:
        if strict:
            raise HarmonicUndefinedError(
                f"N_{{{l},{m}}} is not real at {qp}: radicand {radicand:.4g}")
        norm = (-1) ** l * 1j * math.sqrt(-radicand)
    else:
        norm = complex((-1) ** l * math.sqrt(radicand))
    q_factors = tuple((qp.power(2 * k - 2 * l), -1) for k in range(l))
    pref = norm * q_factorial(l, qp) * q_factorial(l - m, qp)
    terms = []
    for k in range(max(0, -m), l - m + 1):
        c = (_inv_qfact(k, qp) * _inv_qfact(l - m - k, qp)
             * _inv_qfact(l - k, qp) * _inv_qfact(m + k, qp))
        if c == 0.0:
            continue
        terms.append(Term(pref * (-1) ** k * c, 2 * k + m, q_factors))
    f = AngularFunction.build(m, terms)
    return QSphericalHarmonic(l, m, qp, f, norm, radicand > 0.0)


# deformed scalar product ------------------------------------------------------
def _prefactor(qp):
    # (q - 1/q) / (4 ln q), times the analytic phi integral 2 pi
    w = abs(qp.w)
    if w < SMALL_W:
        s = 1.0 if qp.is_real else -1.0
        ratio = 0.5 * (1.0 + s * w * w / 6.0)
    elif qp.is_real:
        ratio = math.sinh(w) / (2.0 * w)
    else:
        ratio = math.sin(w) / (2.0 * w)
    return 2.0 * math.pi * ratio


def _as_labels(items):
    return [tuple(x) for x in items]


def deformed_matrix(bras, kets, qp, operator=None, abs_tol=1e-10,
                    strict=True, max_intervals=2 ** 20):
    """Matrix ``<l'm'| O |lm>_q`` of the deformed angular scalar product.

    ``bras`` and ``kets`` are sequences of ``(l, m)`` labels; ``operator`` is
    an optional m = 0 :class:`AngularFunction` multiplying the ket before
    the shift operators act. The phi integral is exact; the theta integral
    runs over ``s = log(eta)``, ``eta = cot^2(theta/2)``, on
    ``|s| <= LOG_ETA_SPAN``. Harmonics of real q grow to ``O(q^(l(l+1)))``
    before their denominators switch on, so the integrand has long power
    tails that cancel; the logarithmic variable resolves them evenly.
    Returns a complex array of shape ``(len(bras), len(kets))``.
    """
    bras, kets = _as_labels(bras), _as_labels(kets)
    qi = qp.inverse()
    q = qp.power(1)
    cache = {}

    def harm(l, m, p):
        key = (l, m, p.w)
        if key not in cache:
            cache[key] = spherical_harmonic(l, m, p, strict=strict).f
        return cache[key]

    # bra in the first summand uses q^-1 (real) or q (circle); the second the other
    first_bra, second_bra = (qi, qp) if qp.is_real else (qp, qi)
    bra1 = [harm(l, m, first_bra).conj_coefficients() for l, m in bras]
    bra2 = [harm(l, m, second_bra).conj_coefficients() for l, m in bras]
    ket1, ket2 = [], []
    for l, m in kets:
        y, yi = harm(l, m, qp), harm(l, m, qi)
        if operator is not None:
            y, yi = y * operator, yi * operator
        # q^(sin d_theta - 1) Y_q  and  q^(-sin d_theta + 1) Y_{1/q}
        ket1.append(scale_operator(y, qp, 1, "sin_dtheta") * qp.power(-1))
        ket2.append(scale_operator(yi, qp, -1, "sin_dtheta") * qp.power(1))

    out = np.zeros((len(bras), len(kets)), dtype=complex)
    for m in sorted({m for _, m in bras} & {m for _, m in kets}):
        rows = [i for i, (_, mm) in enumerate(bras) if mm == m]
        cols = [j for j, (_, mm) in enumerate(kets) if mm == m]

        def integrand(s, rows=rows, cols=cols):
            eta = np.exp(s)
            rho = np.exp(0.5 * s)
            # d eta = eta ds; measure 2 d eta / (1 + eta)^2 times the weights
            w1 = 2.0 * eta / ((1.0 + eta) * (1.0 + eta / (q * q)))
            w2 = 2.0 * eta / ((1.0 + eta) * (1.0 + q * q * eta))
            b1 = np.array([bra1[i].evaluate_rho(rho) for i in rows])
            b2 = np.array([bra2[i].evaluate_rho(rho) for i in rows])
            k1 = np.array([ket1[j].evaluate_rho(rho) for j in cols]) * w1
            k2 = np.array([ket2[j].evaluate_rho(rho) for j in cols]) * w2
            return b1[:, None, :] * k1[None, :, :] + b2[:, None, :] * k2[None, :, :]

        res = integrate(integrand, -LOG_ETA_SPAN, LOG_ETA_SPAN,
                        abs_tol=abs_tol / _prefactor(qp),
                        max_intervals=max_intervals, initial=32)
        out[np.ix_(rows, cols)] = res.value
    return out * _prefactor(qp)


def _clean(value, qp):
    value = complex(value)
    if qp.is_real:
        return complex(value.real, 0.0) if abs(value.imag) <= IMAG_TOL else value
    if abs(value.imag) > IMAG_TOL:
        warnings.warn(
            f"imaginary residue {value.imag:.3e} in unit-circle scalar product "
            f"at {qp}", ImaginaryResidueWarning, stacklevel=3)
        return value
    return complex(value.real, 0.0)


def deformed_inner_product(lp, mp, l, m, qp, operator=None, abs_tol=1e-10,
                           strict=True):
    """``<l' m' | l m>_q``; equals the Kronecker delta where it is defined."""
    if mp != m and operator is None:
        return 0j
    value = deformed_matrix([(lp, mp)], [(l, m)], qp, operator=operator,
                            abs_tol=abs_tol, strict=strict)[0, 0]
    return _clean(value, qp)


def gram_matrix(l_max, qp, abs_tol=1e-10, strict=True):
    """Gram matrix of all ``Y_{lmq}`` with ``l <= l_max``.

    Returns ``(labels, G)`` with labels ordered by ``(l, m)``.
    """
    labels = [(l, m) for l in range(l_max + 1) for m in range(-l, l + 1)]
    return labels, deformed_matrix(labels, labels, qp, abs_tol=abs_tol,
                                   strict=strict)
