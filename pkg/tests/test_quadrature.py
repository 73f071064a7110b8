"""Bilateral Jackson sums and the discrete orthogonality relation."""

import pytest
from mpmath import mp, mpf

from qhermite.errors import ConvergenceError, DomainError, EvaluationError
from qhermite.qcore import QParams, gen_q_shifted_factorial, q_pochhammer
from qhermite.quadrature import (
    LatticeSpec,
    default_lattice,
    jackson_bilateral,
    orthogonality_check,
    orthogonality_rhs,
    orthogonality_weight,
)


def test_lattice_validation():
    with pytest.raises(DomainError, match=r"q out of range \(0,1\)"):
        LatticeSpec(mpf("1.5"), -10, 10)
    with pytest.raises(DomainError):
        LatticeSpec(mpf("0.5"), 5, 10)   # k_min must sit below zero
    with pytest.raises(DomainError):
        LatticeSpec(mpf("0.5"), -5, 0)


def test_default_lattice_width():
    lat = default_lattice(mpf("0.5"))
    # 120/log10(2) = 398.6..., rounded up
    assert lat.k_max == 399 and lat.k_min == -399
    lat = default_lattice(mpf("1e-40"))
    assert lat.k_max == 3  # ceil(120/40)


def test_jackson_odd_integrand_cancels_exactly():
    lat = LatticeSpec(mpf("0.5"), -50, 50)
    assert jackson_bilateral(lambda x: x ** 3, lat) == 0
    assert jackson_bilateral(lambda x: mp.sin(x), lat) == 0


def test_jackson_indicator_telescopes_to_two():
    # sum over the lattice of the indicator of [-1,1] is the telescoping
    # geometric identity: 2(1-q) * sum_{k>=0} q^k = 2
    lat = LatticeSpec(mpf("0.5"), -200, 200)
    val = jackson_bilateral(lambda x: mpf(1) if abs(x) <= 1 else mpf(0), lat)
    assert abs(val - 2) < mpf("1e-50")


def test_jackson_nonfinite_point_reported():
    lat = LatticeSpec(mpf("0.5"), -5, 5)
    with pytest.raises(EvaluationError, match="non-finite at lattice point"):
        jackson_bilateral(lambda x: mp.inf if x == mpf("0.25") else mpf(1),
                          lat)


def test_jackson_full_output_diagnostics():
    lat = LatticeSpec(mpf("0.5"), -30, 30)
    val, diag = jackson_bilateral(lambda x: mp.exp(-x * x), lat,
                                  full_output=True)
    assert val > 0
    assert diag["max_term"] >= diag["term_at_k_max"]
    assert diag["term_at_k_min"] >= 0


def test_weight_is_even_and_decaying():
    p = QParams(mpf("0.5"), mpf("0.5"))
    w1 = orthogonality_weight(mpf("0.7"), p)
    assert orthogonality_weight(mpf("-0.7"), p) == w1
    assert orthogonality_weight(mpf("2.1"), p) < w1


def test_rhs_two_path():
    # the closed form uses infinite products; rebuild it from partial
    # products long enough that the tails are below target precision
    p = QParams(mpf("0.5"), mpf("0.5"))
    q = p.q
    for n in (0, 1, 3):
        M = 400
        num = (q_pochhammer(-q, q * q, M) ** 2
               * q_pochhammer(q * q, q * q, M))
        den = (q_pochhammer(-q ** (-2 * p.alpha - 1), q * q, M)
               * q_pochhammer(-q ** (2 * p.alpha + 3), q * q, M)
               * q_pochhammer(q ** (2 * p.alpha + 2), q * q, M))
        direct = (2 * q ** (-mpf(n) ** 2) * (1 - q) * num / den
                  * q_pochhammer(q, q, n) ** 2
                  / gen_q_shifted_factorial(n, p))
        closed = orthogonality_rhs(n, p)
        assert abs(direct - closed) / abs(closed) < mpf("1e-45"), n


def test_orthogonality_diagonal_base_case():
    r = orthogonality_check(0, 0, QParams(mpf("0.5"), mpf(0)))
    assert r.passed and r.rel_residual < mpf("1e-12")


def test_orthogonality_diagonal_n3_alpha_half():
    r = orthogonality_check(3, 3, QParams(mpf("0.5"), mpf("0.5")))
    assert r.passed and r.rel_residual < mpf("1e-10")


def test_orthogonality_opposite_parity_exact_zero():
    # integrand is odd in x, so the bilateral sum cancels term by term
    r = orthogonality_check(2, 1, QParams(mpf("0.5"), mpf(0)))
    assert r.lhs == 0 and r.rel_residual == 0


def test_orthogonality_equal_parity_off_diagonal():
    r = orthogonality_check(4, 2, QParams(mpf("0.5"), mpf("0.5")))
    assert r.passed and r.rel_residual < mpf("1e-12")


def test_orthogonality_lattice_widening_stability():
    p = QParams(mpf("0.5"), mpf(0))
    base = default_lattice(p.q)
    wide = LatticeSpec(p.q, base.k_min - 10, base.k_max + 10)
    a = orthogonality_check(1, 1, p, lat=base)
    b = orthogonality_check(1, 1, p, lat=wide)
    assert abs(a.lhs - b.lhs) < mpf("1e-45") * abs(a.lhs)


def test_orthogonality_narrow_lattice_flagged():
    with pytest.raises(ConvergenceError, match="widen the lattice"):
        orthogonality_check(1, 1, QParams(mpf("0.5"), mpf(0)),
                            lat=LatticeSpec(mpf("0.5"), -3, 3))
