import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sint
from scipy.special import binom, eval_genlaguerre, gamma

from qosc.checks import radial_residuals
from qosc.errors import DomainError
from qosc.qnum import CasimirKind, QParam, casimir_eigenvalue, gamma_q
from qosc.radial import (RadialState, RootBranch, alpha_roots, energy, laguerre,
                         radial_function, radial_r2_matrix_element, radial_state,
                         radial_wavefunction)

CQ, CQP = CasimirKind.CQ, CasimirKind.CQ_PRIME
PLUS, MINUS = RootBranch.PLUS, RootBranch.MINUS


def test_alpha_roots_examples():
    assert alpha_roots(0, CQ, QParam.real(0.0)) == [(PLUS, 1.0)]
    lam = 1 / (2 * math.cosh(0.5))
    roots = dict(alpha_roots(0, CQ, QParam.real(1.0)))
    assert roots[PLUS] == pytest.approx(0.5 + lam, abs=1e-15)
    assert roots[MINUS] == pytest.approx(0.5 - lam, abs=1e-15)
    assert alpha_roots(1, CQP, QParam.circle(2.5)) == []


def test_alpha_roots_real_regime_counts():
    for w in (1e-3, 0.5, 2.0):
        qp = QParam.real(w)
        assert len(alpha_roots(0, CQ, qp)) == 2
        for l in range(1, 6):
            assert [b for b, _ in alpha_roots(l, CQ, qp)] == [PLUS]
        for l in range(6):
            assert [b for b, _ in alpha_roots(l, CQP, qp)] == [PLUS]


def test_near_q1_single_root():
    for qp in (QParam.real(1e-7), QParam.circle(1e-7)):
        for l in range(5):
            for kind in CasimirKind:
                roots = alpha_roots(l, kind, qp)
                assert len(roots) == 1
                assert roots[0][1] == pytest.approx(l + 1, abs=1e-10)


def _count_from_gamma(l, kind, w):
    qp = QParam.circle(w)
    g = gamma_q(l, kind, qp)
    if kind is CQ:
        return 2 if g < 0 else 1
    s2 = math.sin(w) ** 2
    if g < -s2:
        return 0
    if -s2 < g < 0:
        return 2
    return 1


@pytest.mark.parametrize("kind", list(CasimirKind))
def test_root_count_matches_classifier_scan(kind):
    ws = np.linspace(0.01, math.pi - 0.01, 1000)
    mismatches = []
    for w in ws:
        try:
            qp = QParam.circle(w)
        except DomainError:
            continue
        for l in range(1, 5):
            got = len(alpha_roots(l, kind, qp))
            if got != _count_from_gamma(l, kind, w):
                mismatches.append((w, l, got))
    assert mismatches == []


@pytest.mark.parametrize("w", [0.3, 1.0, 1.9, 2.6])
def test_roots_solve_quadratic(w):
    for qp in (QParam.real(w), QParam.circle(w)):
        for l in range(7):
            for kind in CasimirKind:
                c = casimir_eigenvalue(l, kind, qp)
                for _, a in alpha_roots(l, kind, qp):
                    assert a > 0
                    assert abs(a * (a - 1) - c) <= 1e-12 * max(1, abs(c))


def test_state_validation():
    qp = QParam.real(0.5)
    with pytest.raises(DomainError):
        RadialState(0, 1, 1.3, CQ, PLUS, qp)
    with pytest.raises(DomainError):
        radial_state(0, 1, CQ, MINUS, qp)
    with pytest.raises(DomainError):
        RadialState(-1, 0, 1.0, CQ, PLUS, QParam.real(0.0))


def series_laguerre(n, a, x):
    return sum(binom(n + a, n - k) * (-x) ** k / math.factorial(k) for k in range(n + 1))


def test_laguerre_examples():
    assert laguerre(0, 0.7, 2.0) == 1.0
    assert laguerre(1, 0.7, 2.0) == pytest.approx(1 + 0.7 - 2.0, abs=1e-15)
    assert laguerre(3, 0.5, 1.0) == pytest.approx(series_laguerre(3, 0.5, 1.0), abs=1e-14)


@settings(max_examples=100, deadline=None)
@given(n=st.integers(0, 12), a=st.floats(-0.49, 12), x=st.floats(0, 30))
def test_laguerre_against_scipy(n, a, x):
    ref = eval_genlaguerre(n, a, x)
    assert laguerre(n, a, x) == pytest.approx(ref, rel=1e-10, abs=1e-10 * max(1, abs(ref)))


def test_wavefunction_examples():
    state = radial_state(0, 0, CQ, PLUS, QParam.real(0.0))
    assert radial_wavefunction(state, 0.0) == 0.0
    ref = math.sqrt(2 / gamma(1.5)) * math.exp(-0.5)
    assert radial_wavefunction(state, 1.0) == pytest.approx(ref, rel=1e-14)
    assert ref == pytest.approx(0.911161, abs=1e-6)


def test_radial_function_limit_at_origin():
    qp = QParam.real(1.0)
    assert radial_function(radial_state(0, 1, CQ, PLUS, qp), 0.0) == 0.0
    assert math.isinf(radial_function(radial_state(0, 0, CQ, MINUS, qp), 0.0))
    s = radial_state(2, 0, CQ, PLUS, QParam.real(0.0))
    r = np.array([1e-9, 0.0])
    assert radial_function(s, r)[1] == pytest.approx(radial_function(s, r)[0], rel=1e-8)


@pytest.mark.parametrize("qp", [QParam.real(1.0), QParam.circle(2.0)])
def test_norm_against_scipy(qp):
    for branch, alpha in alpha_roots(0, CQ, qp):
        for n in range(6):
            s = RadialState(n, 0, alpha, CQ, branch, qp)
            val, _ = sint.quad(lambda r: radial_wavefunction(s, r) ** 2, 0, np.inf,
                               epsabs=1e-13, limit=200)
            assert val == pytest.approx(1.0, abs=1e-9)


def test_energy_and_r2_examples():
    s = radial_state(2, 3, CQ, PLUS, QParam.real(0.0))
    assert energy(s) == 2 * 2 + 3 + 1.5
    assert radial_r2_matrix_element(radial_state(0, 0, CQ, PLUS, QParam.real(0.0))) == 1.5
    s = radial_state(0, 0, CQ, PLUS, QParam.real(1.0))
    assert energy(s) == pytest.approx(1 + 1 / (2 * math.cosh(0.5)), abs=1e-14)
    s = radial_state(0, 0, CQ, PLUS, QParam.circle(math.pi / 3 + 1e-7))
    assert energy(s) == pytest.approx(1.5773503, abs=1e-7)
    s = radial_state(1, 0, CQ, MINUS, QParam.real(1.0))
    assert radial_r2_matrix_element(s) == pytest.approx(2.5565906, abs=1e-7)
    val, _ = sint.quad(lambda r: (radial_wavefunction(s, r) * r) ** 2, 0, np.inf, epsabs=1e-13)
    assert val == pytest.approx(radial_r2_matrix_element(s), abs=1e-9)


def test_large_w_limit_of_r2():
    for branch in (PLUS, MINUS):
        s = radial_state(1, 0, CQ, branch, QParam.real(60.0))
        assert radial_r2_matrix_element(s) == pytest.approx(3.0, abs=1e-12)


@pytest.mark.parametrize("qp", [QParam.real(0.2), QParam.real(1.0), QParam.circle(0.7),
                                QParam.circle(1.9)])
def test_radial_suite(qp):
    for kind in CasimirKind:
        for l in range(4):
            res = radial_residuals(l, kind, qp)
            assert res["norm"] <= 1e-9
            assert res["r2"] <= 1e-9
            assert res["ode"] <= 1e-5
