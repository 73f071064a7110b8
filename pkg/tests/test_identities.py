"""Connection, inversion, generating functions, Bessel forms, limit trends."""

from fractions import Fraction as F

import pytest
from mpmath import mp, mpf

from qhermite.errors import DomainError
from qhermite.identities import (
    DEFAULT_GRID,
    IdentityGrid,
    check_bessel_forms,
    check_connection,
    check_even_odd_gf,
    check_generating_function,
    check_inversion,
    check_recurrence,
    check_representations,
    hermite_scaled_deviation,
    residuals,
    run_identity_suite,
    stieltjes_wigert_limit,
    summarize_reports,
)
from qhermite.polyfam import gdqh2
from qhermite.qcore import QParams, q_pochhammer
from qhermite.qseries import euler_e, gen_E
from qhermite.scalars import binom2


def test_residual_normalization():
    a, r = residuals(mpf(2), mpf(2))
    assert a == 0 and r == 0
    a, r = residuals(mpf("1e6"), mpf("1e6") + 1)
    assert abs(r - 1 / (mpf("1e6") + 1)) < mpf("1e-50")
    # below 1 in magnitude the relative residual degrades to the absolute one
    a, r = residuals(mpf("0.25"), mpf("0.5"))
    assert a == r == mpf("0.25")


def test_connection_reference_point():
    r = check_connection(5, QParams(mpf("0.5"), mpf("0.3")),
                         mpf("1.2"), mpf("0.4"), mpf("0.9"))
    assert r.passed
    assert r.rel_residual < mpf("1e-30")


def test_connection_structural_zero_exact():
    # omega = y kills every k >= 1 coefficient through the Hahn product;
    # on rationals the two sides agree exactly
    p = QParams(F(1, 2), F(1))
    r = check_connection(6, p, F(5, 4), F(2, 3), F(2, 3))
    assert r.abs_residual == 0
    assert r.rel_residual == 0


def test_connection_y_zero_collapses_to_definition():
    r = check_connection(7, QParams(mpf("0.5"), mpf("0.3")),
                         mpf("1.2"), mpf(0), mpf("0.9"))
    assert r.passed and r.rel_residual < mpf("1e-30")


def test_inversion_reference_points():
    r = check_inversion(6, QParams(mpf("0.7"), mpf("1.5")), mpf("0.8"), mpf("1.3"))
    assert r.passed and r.rel_residual < mpf("1e-30")
    r = check_inversion(0, QParams(mpf("0.7"), mpf("1.5")), mpf("0.8"), mpf("1.3"))
    assert r.lhs == 1 and r.rel_residual == 0
    r = check_inversion(1, QParams(mpf("0.7"), mpf("1.5")), mpf("0.8"), mpf("1.3"))
    assert r.rel_residual < mpf("1e-45")


def test_inversion_severe_cancellation_regime():
    # q^(-2nk+3k^2) coefficients reach ~1e114 at n=20, q=0.2 while the
    # reconstructed monomial is O(1); the internal escalation must absorb it
    r = check_inversion(20, QParams(mpf("0.2"), mpf("-0.4")), mpf("1.7"), mpf(1))
    assert r.passed and r.rel_residual < mpf("1e-25")


def test_inversion_well_conditioned_near_one():
    r = check_inversion(20, QParams(mpf("0.99"), mpf("0.5")), mpf("1.1"), mpf(1))
    assert r.rel_residual < mpf("1e-12")


def test_generating_function_reference_point():
    r = check_generating_function(mpf("0.3"), mpf(1), mpf("0.5"),
                                  QParams(mpf("0.5"), mpf(0)), N=60)
    assert r.passed and r.rel_residual < mpf("1e-25")
    assert "binding bound" in r.note


def test_generating_function_trivial_points():
    p = QParams(mpf("0.5"), mpf("0.25"))
    r = check_generating_function(mpf(0), mpf(1), mpf("0.5"), p)
    assert r.lhs == 1 and r.rhs == 1
    r = check_generating_function(mpf("0.3"), mpf("0.8"), mpf(0), p)
    assert r.rel_residual < mpf("1e-40")


def test_generating_function_domain():
    p = QParams(mpf("0.5"), mpf(0))
    with pytest.raises(DomainError, match=r"\|y\*t\| < 1"):
        check_generating_function(mpf("0.9"), mpf(1), mpf(2), p)
    # |yt| binds at t < 1, |yt^2| quoted when t > 1 would bind -- note names it
    r = check_generating_function(mpf("0.2"), mpf(1), mpf(1), p)
    assert r.note == "binding bound: |y*t|"


def test_generating_function_taylor_coefficients():
    # finite Taylor coefficients of the closed form at t = 0 must reproduce
    # the series-side coefficients q^C(n,2) h_n / (q;q)_n, degree <= 6
    p = QParams(mpf("0.5"), mpf("0.25"))
    x, y = mpf("0.9"), mpf("0.6")
    q = p.q

    def closed(t):
        return euler_e(-y * t * t, q * q) * gen_E(x * t, p)

    with mp.workdps(mp.dps + 25):
        coeffs = mp.taylor(closed, 0, 6)
    for n in range(7):
        want = (q ** binom2(n) * gdqh2(n, x, y, p)
                / q_pochhammer(q, q, n))
        assert abs(coeffs[n] - want) < mpf("1e-15"), n


def test_even_odd_gf_reference_point():
    ev, od = check_even_odd_gf(mpf("0.3"), mpf("0.6"), mpf("0.4"),
                               QParams(mpf("0.5"), mpf("0.25")))
    assert ev.passed and ev.rel_residual < mpf("1e-20")
    assert od.passed and od.rel_residual < mpf("1e-20")


def test_even_odd_gf_trivial_t():
    ev, od = check_even_odd_gf(mpf(0), mpf("0.6"), mpf("0.4"),
                               QParams(mpf("0.5"), mpf("0.25")))
    assert ev.lhs == 1 and ev.rhs == 1
    assert od.lhs == 0 and od.rhs == 0


def test_bessel_forms_reference_point():
    ev, od = check_bessel_forms(mpf("0.3"), mpf("0.6"), mpf("0.4"),
                                QParams(mpf("0.5"), mpf("0.25")))
    assert ev.passed and ev.rel_residual < mpf("1e-15")
    assert od.passed and od.rel_residual < mpf("1e-15")


def test_bessel_forms_negative_x_domain_error():
    with pytest.raises(DomainError):
        check_bessel_forms(mpf("0.3"), mpf("-0.6"), mpf("0.4"),
                           QParams(mpf("0.5"), mpf("0.25")))


def test_representation_and_recurrence_checks():
    p = QParams(mpf("0.2"), mpf("1.5"))
    reps = check_representations(9, p, mpf("-1.1"), mpf("0.3"))
    assert {r.identity_id for r in reps} \
        == {"representation_phi", "representation_laguerre"}
    assert all(r.passed for r in reps)
    r = check_recurrence(25, QParams(mpf("0.8"), mpf("-0.4")), mpf("1.7"), mpf(1))
    assert r.passed and r.rel_residual < mpf("1e-25")


# --- limit trends -----------------------------------------------------------------


def test_stieltjes_wigert_limit_trend():
    q = mpf("0.5")
    x, y = mpf("0.9"), mpf("0.7")
    for n in range(5):
        devs = [abs(gdqh2(n, x, y, QParams(q, mpf(a)))
                    - stieltjes_wigert_limit(n, x, y, q))
                for a in (5, 10, 20, 40)]
        assert all(devs[i] > devs[i + 1] for i in range(len(devs) - 1)) \
            or max(devs) < mpf("1e-30"), (n, devs)


def test_hermite_scaling_limit_trend():
    x = mpf("0.7")
    for n in range(5):
        devs = [hermite_scaled_deviation(n, x, mpf(qq))
                for qq in ("0.9", "0.99", "0.999")]
        assert all(devs[i] > devs[i + 1] for i in range(len(devs) - 1)) \
            or max(devs) < mpf("1e-30"), (n, devs)


# --- suite runner -----------------------------------------------------------------


def test_suite_empty_grid():
    grid = IdentityGrid(q_values=(), alpha_values=(), n_values=(),
                        x_values=(), y_values=(), omega_values=(), t_values=())
    assert run_identity_suite(grid) == []


def test_suite_small_grid_all_pass():
    grid = IdentityGrid(q_values=("0.5",), alpha_values=("0.3",),
                        n_values=(0, 3, 6), x_values=("1.2",),
                        y_values=("0.4",), omega_values=("0.9",),
                        t_values=("0.25",))
    reports = run_identity_suite(grid)
    summary = summarize_reports(reports)
    assert summary["all_passed"], summary
    # every identity family shows up on a grid with x > 0
    assert {r.identity_id for r in reports} == {
        "representation_phi", "representation_laguerre", "recurrence",
        "connection", "inversion", "generating_function",
        "even_gf", "odd_gf", "bessel_even", "bessel_odd"}


def test_suite_single_identity_filter():
    grid = IdentityGrid(q_values=("0.5",), alpha_values=("0",),
                        n_values=(2,), x_values=("0.4",), y_values=("1",),
                        omega_values=("0.6",), t_values=("0.2",))
    reports = run_identity_suite(grid, identity_id="inversion")
    assert reports and all(r.identity_id == "inversion" for r in reports)
    with pytest.raises(DomainError):
        run_identity_suite(grid, identity_id="no_such_identity")


def test_summarize_counts():
    grid = IdentityGrid(q_values=("0.5",), alpha_values=("0",),
                        n_values=(1, 2), x_values=("0.4",), y_values=("1",),
                        omega_values=("0.6",), t_values=("0.2",))
    reports = run_identity_suite(grid, identity_id="recurrence")
    s = summarize_reports(reports)
    assert s["total"] == 2 and s["passed"] == 2
    assert s["failed"] == 0 and s["errors"] == 0
    assert "recurrence" in s["worst_rel_residual"]
