import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qosc.errors import DomainError, NoRealRootsError, RootOfUnityError
from qosc.qnum import (CasimirKind, QParam, Regime, bracket, casimir_eigenvalue,
                       gamma_q, lambda_q, nearest_root_of_unity, q_factorial)

CQ, CQP = CasimirKind.CQ, CasimirKind.CQ_PRIME


def mp_bracket(x, w, circle=False):
    mpmath.mp.dps = 40
    x, w = mpmath.mpf(x), mpmath.mpf(w)
    if circle:
        return float(mpmath.sin(x * w) / mpmath.sin(w))
    return float(mpmath.sinh(x * w) / mpmath.sinh(w))


def test_bracket_examples():
    assert bracket(2, QParam.real(math.log(2))) == pytest.approx(2.5, abs=1e-14)
    # pi/3 itself is a root of unity and rejected; 2 cos(w) just beside it
    assert bracket(2, QParam.circle(math.pi / 3 + 1e-8)) == pytest.approx(1.0, abs=1e-7)
    for x in (0.0, 0.5, 1.0, 3.7):
        assert bracket(x, QParam.real(0.0)) == x


@pytest.mark.parametrize("w", [1e-8, 5e-7, 2e-6, 0.3, 1.7])
@pytest.mark.parametrize("circle", [False, True])
def test_bracket_against_mpmath(w, circle):
    qp = QParam(Regime.CIRCLE if circle else Regime.REAL, w)
    for x in (0.5, 1.0, 2.5, 4.0, 7.5):
        ref = mp_bracket(x, w, circle)
        assert bracket(x, qp) == pytest.approx(ref, rel=1e-13, abs=1e-14)


def test_series_switch_is_continuous():
    # just below and above the Taylor threshold
    for x in (0.5, 3.0, 8.5):
        lo = bracket(x, QParam.real(1e-6 * (1 - 1e-9)))
        hi = bracket(x, QParam.real(1e-6 * (1 + 1e-9)))
        assert abs(lo - hi) <= 1e-12 * max(1.0, abs(x))


@settings(max_examples=200, deadline=None)
@given(x=st.floats(-6, 6), w=st.floats(0, 1e-6))
def test_small_w_close_to_x(x, w):
    assert abs(bracket(x, QParam.real(w)) - x) <= 1e-10 * (1 + abs(x) ** 3)


@settings(max_examples=200, deadline=None)
@given(x=st.floats(-5, 5), w=st.floats(0.01, 3.0))
def test_inverse_symmetry_and_product_identity(x, w):
    qp = QParam.real(w)
    assert bracket(x, qp) == bracket(x, qp.inverse())
    lhs = bracket(x + 1, qp) * bracket(x - 1, qp)
    rhs = bracket(x, qp) ** 2 - 1.0
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


def test_q_factorial():
    assert q_factorial(0, QParam.real(0.7)) == 1.0
    assert q_factorial(3, QParam.real(0.0)) == 6.0
    assert q_factorial(3, QParam.real(1e-9)) == pytest.approx(6.0, abs=1e-12)
    assert q_factorial(3, QParam.real(math.log(2))) == pytest.approx(13.125, rel=1e-14)
    with pytest.raises(DomainError):
        q_factorial(-1, QParam.real(0.5))


def test_casimir_examples():
    assert casimir_eigenvalue(0, CQ, QParam.real(0.0)) == 0.0
    for qp in (QParam.real(0.4), QParam.circle(1.1)):
        assert casimir_eigenvalue(0, CQP, qp) == 0.0
    ref = mp_bracket(1.5, 1.0) ** 2 - 0.25
    assert casimir_eigenvalue(1, CQ, QParam.real(1.0)) == pytest.approx(ref, rel=1e-14)
    assert ref == pytest.approx(3.0327732, abs=1e-7)
    for l in range(6):
        for kind in CasimirKind:
            assert casimir_eigenvalue(l, kind, QParam.real(0.0)) == l * (l + 1)


def test_lambda_examples():
    assert lambda_q(0, CQ, QParam.real(0.0)) == 0.5
    assert lambda_q(0, CQ, QParam.real(1.0)) == pytest.approx(1 / (2 * math.cosh(0.5)), rel=1e-14)
    assert lambda_q(1, CQ, QParam.real(1.0)) == pytest.approx(mp_bracket(1.5, 1.0), rel=1e-14)
    assert lambda_q(1, CQ, QParam.real(1.0)) == pytest.approx(1.8118425, abs=1e-7)


def test_lambda_negative_radicand():
    # C'_q(1) on the circle: 1/4 + [1][2] = (1 + 8 cos w) / 4 < 0 for cos w < -1/8
    with pytest.raises(NoRealRootsError):
        lambda_q(1, CQP, QParam.circle(2.5))


@pytest.mark.parametrize("w", [0.3, 1.0, 2.0, 2.9])
def test_lambda_and_gamma_consistency(w):
    qp = QParam.circle(w)
    for l in range(7):
        for kind in CasimirKind:
            c = casimir_eigenvalue(l, kind, qp)
            assert gamma_q(l, kind, qp) == pytest.approx(4 * math.sin(w) ** 2 * c, abs=1e-12)
            try:
                lam = lambda_q(l, kind, qp)
            except NoRealRootsError:
                assert 0.25 + c < 0
                continue
            assert lam * lam - 0.25 == pytest.approx(c, abs=1e-12 * max(1, abs(c)))


def test_gamma_examples():
    assert gamma_q(0, CQ, QParam.circle(math.pi / 3 + 1e-7)) == pytest.approx(0.25, abs=1e-6)
    assert gamma_q(1, CQ, QParam.circle(1.0)) == pytest.approx(3.2719116, abs=1e-7)
    assert gamma_q(1, CQP, QParam.circle(2.0)) == pytest.approx(-2.7526, abs=1e-4)
    with pytest.raises(DomainError):
        gamma_q(1, CQ, QParam.real(1.0))


def test_qparam_validation():
    with pytest.raises(RootOfUnityError):
        QParam.circle(math.pi / 3)
    with pytest.raises(RootOfUnityError):
        QParam.circle(math.pi * 7 / 64 + 1e-10)
    with pytest.raises(DomainError):
        QParam.circle(0.0)
    with pytest.raises(DomainError):
        QParam.circle(3.5)
    with pytest.raises(DomainError):
        QParam.real(float("nan"))
    QParam.circle(math.pi * 7 / 64 + 1e-8)
    d, p, s = nearest_root_of_unity(math.pi * 3 / 8)
    assert (p, s) == (3, 8) and d < 1e-15


def test_regime_and_kind_parsing():
    assert Regime.parse("complex") is Regime.CIRCLE
    assert Regime.parse("RealPositive") is Regime.REAL
    assert CasimirKind.parse("CqPrime") is CQP
    assert CasimirKind.parse("Cq'") is CQP
    assert CasimirKind.parse("cq") is CQ
    with pytest.raises(DomainError):
        CasimirKind.parse("other")
