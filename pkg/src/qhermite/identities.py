"""Identity verification harness.

Every check evaluates both sides of one identity through *independent* code
paths and reports absolute and relative residuals.  The relative residual is

    |lhs - rhs| / max(1, |lhs|, |rhs|)

so identities remain checkable through zeros of either side (the residual
degrades to the absolute one there).

Checks escalate their internal working precision before summing: the
connection and inversion sums cancel terms of size roughly q^(-n^2), so a
result good to the ambient precision needs about n^2*log10(1/q) guard
digits.  Reports carry values rounded back to the ambient context.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from mpmath import mp, mpf

from .errors import DomainError, QHermiteError
from .polyfam import gdqh2, gdqh2_recurrence_ladder, rosenblum_hermite, stieltjes_wigert
from .qcore import (
    QParams,
    Truncation,
    default_truncation,
    gen_q_shifted_factorial,
    hahn_add_power,
    q_pochhammer,
)
from .qseries import euler_e, gen_E, q_bessel2, q_cos_alpha, q_sin_alpha
from .scalars import binom2, qpow, to_mpf, unify

__all__ = [
    "IdentityReport",
    "residuals",
    "default_identity_tol",
    "check_representations",
    "check_recurrence",
    "check_connection",
    "check_inversion",
    "check_generating_function",
    "check_even_odd_gf",
    "check_bessel_forms",
    "stieltjes_wigert_limit",
    "hermite_scaled_deviation",
    "IdentityGrid",
    "DEFAULT_GRID",
    "run_identity_suite",
    "summarize_reports",
    "IDENTITY_IDS",
]

IDENTITY_IDS = (
    "representation_phi",
    "representation_laguerre",
    "recurrence",
    "connection",
    "inversion",
    "generating_function",
    "even_gf",
    "odd_gf",
    "bessel_even",
    "bessel_odd",
)


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    params: dict
    lhs: mpf
    rhs: mpf
    abs_residual: mpf
    rel_residual: mpf
    truncation: Truncation
    tolerance: mpf
    passed: bool
    terms_used: int = 0
    note: str = ""
    error: Optional[str] = None


def residuals(lhs, rhs):
    """(absolute, relative) residual pair; relative uses max(1,|lhs|,|rhs|)."""
    lhs, rhs = to_mpf(lhs), to_mpf(rhs)
    a = abs(lhs - rhs)
    return a, a / max(mpf(1), abs(lhs), abs(rhs))


def default_identity_tol():
    # half the ambient digits: 1e-25 at the standard 50-digit context
    return mpf(10) ** (-(mp.dps // 2))


def _work_digits(kind: str, n: int, q) -> int:
    """Guard digits for a check dominated by cancellation of size q^(-c n^2)."""
    grow = mp.log10(1 / to_mpf(q))
    c = {"poly": 0.5, "cancel": 1.0}.get(kind, 0.0)
    return int(mp.dps + mp.ceil(c * n * n * grow) + 30)


def _report(identity_id, params, lhs, rhs, tol, trunc, terms_used=0, note=""):
    tol = to_mpf(tol) if tol is not None else default_identity_tol()
    abs_r, rel_r = residuals(lhs, rhs)
    return IdentityReport(
        identity_id=identity_id,
        params=params,
        lhs=to_mpf(lhs),
        rhs=to_mpf(rhs),
        abs_residual=abs_r,
        rel_residual=rel_r,
        truncation=trunc or default_truncation(),
        tolerance=tol,
        passed=bool(rel_r <= tol),
        terms_used=terms_used,
        note=note,
    )


# --- local families: representations and recurrence --------------------------


def check_representations(n: int, p: QParams, x, y,
                          tol=None, trunc: Optional[Truncation] = None):
    """definition_sum vs phi_form vs laguerre_form at one point.

    Returns up to two reports; laguerre_form is skipped (not failed) when
    y < 0, outside its real-power domain.
    """
    params = {"n": n, "q": p.q, "alpha": p.alpha, "x": x, "y": y}
    out = []
    tol = to_mpf(tol) if tol is not None else default_identity_tol()
    with mp.workdps(_work_digits("poly", n, p.q)):
        base = gdqh2(n, x, y, p, rep="definition_sum", trunc=trunc)
        alt = gdqh2(n, x, y, p, rep="phi_form", trunc=trunc)
        out.append(_report("representation_phi", params, base, alt, tol, trunc))
        if to_mpf(y) >= 0:
            lag = gdqh2(n, x, y, p, rep="laguerre_form", trunc=trunc)
            out.append(_report("representation_laguerre", params, base, lag, tol, trunc))
    return out


def check_recurrence(n: int, p: QParams, x, y, tol=None,
                     trunc: Optional[Truncation] = None) -> IdentityReport:
    """Three-term recurrence ladder vs the definition sum at degree n."""
    params = {"n": n, "q": p.q, "alpha": p.alpha, "x": x, "y": y}
    tol = to_mpf(tol) if tol is not None else default_identity_tol()
    with mp.workdps(_work_digits("poly", n, p.q)):
        lhs = gdqh2_recurrence_ladder(n, x, y, p)[-1]
        rhs = gdqh2(n, x, y, p, trunc=trunc)
        return _report("recurrence", params, lhs, rhs, tol, trunc)


# --- connection and inversion -------------------------------------------------


def check_connection(n: int, p: QParams, x, y, omega, tol=None,
                     trunc: Optional[Truncation] = None) -> IdentityReport:
    """Parameter-shift expansion: the degree-n polynomial at second variable
    omega expanded in the family at second variable y,

      h_n(x, omega) = (q;q)_n sum_k q^(-2nk+k(2k+1)) (-omega (+)_{q^2} y)^k
                      / [(q^2;q^2)_k (q;q)_{n-2k}] * h_{n-2k}(x, y).

    The Hahn power is formed as a product, so omega = y annihilates every
    k >= 1 term exactly.
    """
    params = {"n": n, "q": p.q, "alpha": p.alpha, "x": x, "y": y, "omega": omega}
    tol = to_mpf(tol) if tol is not None else default_identity_tol()
    with mp.workdps(_work_digits("cancel", n, p.q)):
        x, y, omega, q = unify(x, y, omega, p.q)
        q2 = q * q
        lhs = gdqh2(n, x, omega, p, trunc=trunc)
        ladder = gdqh2_recurrence_ladder(n, x, y, p)
        total = q - q
        poch_q2 = 1 + (q - q)
        poch_q_down = q_pochhammer(q, q, n)  # (q;q)_{n-2k}, walked down
        acc = poch_q_down
        for k in range(n // 2 + 1):
            if k > 0:
                poch_q2 *= 1 - qpow(q2, k)
                acc = acc / (1 - qpow(q, n - 2 * k + 2)) / (1 - qpow(q, n - 2 * k + 1))
            coeff = (
                qpow(q, -2 * n * k + k * (2 * k + 1))
                * hahn_add_power(-omega, y, q2, k)
                / (poch_q2 * acc)
            )
            total = total + coeff * ladder[n - 2 * k]
        rhs = poch_q_down * total
        return _report("connection", params, lhs, rhs, tol, trunc,
                       terms_used=n // 2 + 1)


def check_inversion(n: int, p: QParams, x, y, tol=None,
                    trunc: Optional[Truncation] = None) -> IdentityReport:
    """Monomial expansion:
      x^n = (q;q)_{n,alpha} sum_k q^(-2nk+3k^2) y^k
            / [(q^2;q^2)_k (q;q)_{n-2k}] * h_{n-2k}(x, y)."""
    params = {"n": n, "q": p.q, "alpha": p.alpha, "x": x, "y": y}
    tol = to_mpf(tol) if tol is not None else default_identity_tol()
    with mp.workdps(_work_digits("cancel", n, p.q)):
        x, y, q = unify(x, y, p.q)
        q2 = q * q
        lhs = qpow(x, n)
        ladder = gdqh2_recurrence_ladder(n, x, y, p)
        total = q - q
        poch_q2 = 1 + (q - q)
        acc = q_pochhammer(q, q, n)
        for k in range(n // 2 + 1):
            if k > 0:
                poch_q2 *= 1 - qpow(q2, k)
                acc = acc / (1 - qpow(q, n - 2 * k + 2)) / (1 - qpow(q, n - 2 * k + 1))
            coeff = qpow(q, -2 * n * k + 3 * k * k) * qpow(y, k) / (poch_q2 * acc)
            total = total + coeff * ladder[n - 2 * k]
        rhs = gen_q_shifted_factorial(n, p) * total
        return _report("inversion", params, lhs, rhs, tol, trunc,
                       terms_used=n // 2 + 1)


# --- generating functions ------------------------------------------------------


def _gf_domain(y, t):
    """Enforce both |yt| < 1 and |yt^2| < 1; return a note naming the binding
    (larger) bound."""
    b1, b2 = abs(to_mpf(y) * to_mpf(t)), abs(to_mpf(y) * to_mpf(t) ** 2)
    if not (b1 < 1 and b2 < 1):
        raise DomainError(
            "generating function needs |y*t| < 1 and |y*t^2| < 1: "
            "|y*t| = %s, |y*t^2| = %s" % (mp.nstr(b1, 6), mp.nstr(b2, 6))
        )
    return "binding bound: %s" % ("|y*t|" if b1 >= b2 else "|y*t^2|")


def _gf_series(coeff_fn: Callable[[int, object], object], ladder, trunc) -> tuple:
    """Sum coeff_fn(n, ladder[n]) adaptively; two consecutive small terms stop."""
    trunc = trunc or default_truncation()
    total = mpf(0)
    small = 0
    n_used = 0
    for n in range(len(ladder)):
        term = to_mpf(coeff_fn(n, ladder[n]))
        total += term
        n_used = n + 1
        if abs(term) < trunc.tail_tol * max(1, abs(total)):
            small += 1
            if small >= 2 and n >= 4:
                break
        else:
            small = 0
    return total, n_used


def check_generating_function(t, x, y, p: QParams, N: Optional[int] = None,
                              tol=None, trunc: Optional[Truncation] = None
                              ) -> IdentityReport:
    """Closed form e_{q^2}(-y t^2) * bigE_{q,alpha}(x t) against the series
    sum_n q^C(n,2) t^n h_n(x,y) / (q;q)_n, truncated adaptively (or at N)."""
    params = {"q": p.q, "alpha": p.alpha, "x": x, "y": y, "t": t}
    note = _gf_domain(y, t)
    tol = to_mpf(tol) if tol is not None else default_identity_tol()
    trunc = trunc or default_truncation()
    with mp.workdps(mp.dps + 30):
        x, y, t, q = (to_mpf(v) for v in unify(x, y, t, p.q))
        lhs = euler_e(-y * t * t, q * q) * gen_E(x * t, p)
        n_cap = N if N is not None else 8 * mp.dps
        ladder = gdqh2_recurrence_ladder(n_cap, x, y, p)
        # running t^n q^C(n,2) / (q;q)_n
        state = {"w": mpf(1)}

        def coeff(n, h):
            if n > 0:
                state["w"] *= t * qpow(q, n - 1) / (1 - qpow(q, n))
            return state["w"] * h

        if N is not None:
            rhs = mpf(0)
            for n in range(N + 1):
                rhs += coeff(n, ladder[n])
            used = N + 1
        else:
            rhs, used = _gf_series(coeff, ladder, trunc)
        return _report("generating_function", params, lhs, rhs, tol, trunc,
                       terms_used=used, note=note)


def check_even_odd_gf(t, x, y, p: QParams, N: Optional[int] = None,
                      tol=None, trunc: Optional[Truncation] = None):
    """Parity halves of the generating function:

      sum_n (-1)^n q^(n(2n-1)) t^(2n)   h_{2n}   / (q;q)_{2n}
          = Cos_{q,alpha}(x t) * e_{q^2}(y t^2)
      sum_n (-1)^n q^(n(2n+1)) t^(2n+1) h_{2n+1} / (q;q)_{2n+1}
          = Sin_{q,alpha}(x t) * e_{q^2}(y t^2)

    Returns (even_report, odd_report).
    """
    params = {"q": p.q, "alpha": p.alpha, "x": x, "y": y, "t": t}
    note = _gf_domain(y, t)
    tol = to_mpf(tol) if tol is not None else default_identity_tol()
    trunc = trunc or default_truncation()
    with mp.workdps(mp.dps + 30):
        x, y, t, q = (to_mpf(v) for v in unify(x, y, t, p.q))
        envelope = euler_e(y * t * t, q * q)
        rhs_even = q_cos_alpha(x * t, p, trunc=trunc) * envelope
        rhs_odd = q_sin_alpha(x * t, p, trunc=trunc) * envelope
        n_cap = N if N is not None else 8 * mp.dps
        ladder = gdqh2_recurrence_ladder(2 * n_cap + 1, x, y, p)
        poch = [mpf(1)]
        for j in range(1, len(ladder)):
            poch.append(poch[-1] * (1 - qpow(q, j)))

        def even_coeff(n, _):
            return ((-1) ** n * qpow(q, n * (2 * n - 1)) * qpow(t, 2 * n)
                    * ladder[2 * n] / poch[2 * n])

        def odd_coeff(n, _):
            return ((-1) ** n * qpow(q, n * (2 * n + 1)) * qpow(t, 2 * n + 1)
                    * ladder[2 * n + 1] / poch[2 * n + 1])

        half = list(range(n_cap + 1))
        if N is not None:
            lhs_even = sum(to_mpf(even_coeff(n, None)) for n in range(N + 1))
            lhs_odd = sum(to_mpf(odd_coeff(n, None)) for n in range(N + 1))
            used_e = used_o = N + 1
        else:
            lhs_even, used_e = _gf_series(even_coeff, half, trunc)
            lhs_odd, used_o = _gf_series(odd_coeff, half, trunc)
        even = _report("even_gf", params, lhs_even, rhs_even, tol, trunc,
                       terms_used=used_e, note=note)
        odd = _report("odd_gf", params, lhs_odd, rhs_odd, tol, trunc,
                      terms_used=used_o, note=note)
        return even, odd


def check_bessel_forms(t, x, y, p: QParams, N: Optional[int] = None,
                       tol=None, trunc: Optional[Truncation] = None):
    """The parity generating functions with the trig factor replaced by its
    second-Jackson-q-Bessel closed form (z = x t):

      even: q^(a(a+1/2))   (q^2;q^2)_inf/(q^(2a+2);q^2)_inf z^-a
              * J2_a(2 z q^(-a-1/2); q^2)     * e_{q^2}(y t^2)
      odd:  q^((a+1)(a+1/2)) (q^2;q^2)_inf/(q^(2a+2);q^2)_inf z^-a
              * J2_{a+1}(2 z q^(-a-1/2); q^2) * e_{q^2}(y t^2)

    Needs z > 0 unless alpha is an integer (real power z^-a).
    Returns (even_report, odd_report).
    """
    params = {"q": p.q, "alpha": p.alpha, "x": x, "y": y, "t": t}
    note = _gf_domain(y, t)
    tol = to_mpf(tol) if tol is not None else default_identity_tol()
    trunc = trunc or default_truncation()
    with mp.workdps(mp.dps + 30):
        x, y, t, q = (to_mpf(v) for v in unify(x, y, t, p.q))
        alpha = to_mpf(p.alpha)
        z = x * t
        q2 = q * q
        front = (q_pochhammer(q2, q2, None, trunc=trunc)
                 / q_pochhammer(qpow(q, 2 * alpha + 2), q2, None, trunc=trunc)
                 * qpow(z, -alpha))
        warg = 2 * z * qpow(q, -alpha - mpf("0.5"))
        envelope = euler_e(y * t * t, q2)
        rhs_even = (qpow(q, alpha * (alpha + mpf("0.5"))) * front
                    * q_bessel2(alpha, warg, q2, trunc=trunc) * envelope)
        rhs_odd = (qpow(q, (alpha + 1) * (alpha + mpf("0.5"))) * front
                   * q_bessel2(alpha + 1, warg, q2, trunc=trunc) * envelope)
        n_cap = N if N is not None else 8 * mp.dps
        ladder = gdqh2_recurrence_ladder(2 * n_cap + 1, x, y, p)
        poch = [mpf(1)]
        for j in range(1, len(ladder)):
            poch.append(poch[-1] * (1 - qpow(q, j)))

        def even_coeff(n, _):
            return ((-1) ** n * qpow(q, n * (2 * n - 1)) * qpow(t, 2 * n)
                    * ladder[2 * n] / poch[2 * n])

        def odd_coeff(n, _):
            return ((-1) ** n * qpow(q, n * (2 * n + 1)) * qpow(t, 2 * n + 1)
                    * ladder[2 * n + 1] / poch[2 * n + 1])

        half = list(range(n_cap + 1))
        lhs_even, used_e = _gf_series(even_coeff, half, trunc)
        lhs_odd, used_o = _gf_series(odd_coeff, half, trunc)
        even = _report("bessel_even", params, lhs_even, rhs_even, tol, trunc,
                       terms_used=used_e, note=note)
        odd = _report("bessel_odd", params, lhs_odd, rhs_odd, tol, trunc,
                      terms_used=used_o, note=note)
        return even, odd


# --- limit targets --------------------------------------------------------------


def stieltjes_wigert_limit(n: int, x, y, q, trunc: Optional[Truncation] = None):
    """Large-alpha limit of the degree-n polynomial:
      even n=2m:   q^(-m(2m-1)) (q;q)_{2m}    (-y)^m   S_m(x^2 y^-1 q^-1; q^2)
      odd  n=2m+1: q^(-m(2m+1)) (q;q)_{2m+1} x (-y)^m  S_m(x^2 y^-1 q;    q^2)

    The odd argument carries q, not q^-1: the order-(alpha+1) Laguerre factor
    rescales by one extra power of q^2 before the large-alpha limit.
    """
    x, y, q = unify(x, y, q)
    m = n // 2
    if n % 2 == 0:
        sw = stieltjes_wigert(m, x * x / y * qpow(q, -1), q * q, trunc=trunc)
        return qpow(q, -m * (2 * m - 1)) * q_pochhammer(q, q, 2 * m) * qpow(-y, m) * sw
    sw = stieltjes_wigert(m, x * x / y * q, q * q, trunc=trunc)
    return (qpow(q, -m * (2 * m + 1)) * q_pochhammer(q, q, 2 * m + 1)
            * x * qpow(-y, m) * sw)


def hermite_scaled_deviation(n: int, x, q):
    """|h_n(sqrt(1-q^2) x, 1) / (1-q^2)^(n/2) - H_n(x)/2^n| at alpha = -1/2,
    the distance from the classical Hermite scaling limit."""
    x, q = (to_mpf(v) for v in unify(x, q))
    s = mp.sqrt(1 - q * q)
    p = QParams(q, mpf(-0.5))
    scaled = gdqh2(n, s * x, mpf(1), p) / s ** n
    target = rosenblum_hermite(n, 0, x) / mpf(2) ** n
    return abs(scaled - target)


# --- grid runner -----------------------------------------------------------------


@dataclass(frozen=True)
class IdentityGrid:
    """Cartesian parameter grid for the suite runner.  Values are kept as
    strings so a run at any precision sees the exact decimal literals."""

    q_values: tuple = ("0.2", "0.5", "0.8")
    alpha_values: tuple = ("-0.4", "0", "1.5")
    n_values: tuple = tuple(range(13))
    x_values: tuple = ("-1.1", "0.4", "1.7")
    y_values: tuple = ("0.3", "1")
    omega_values: tuple = ("0.6",)
    t_values: tuple = ("0.2",)


DEFAULT_GRID = IdentityGrid()


def _grid_mpf(values):
    return [mpf(v) if isinstance(v, str) else to_mpf(v) for v in values]


def run_identity_suite(grid: IdentityGrid = DEFAULT_GRID, tol=None,
                       trunc: Optional[Truncation] = None,
                       identity_id: str = "all"):
    """Run the selected identity family (or all of them) over the grid.
    Individual check errors become error reports instead of raising."""
    if identity_id not in ("all",) + IDENTITY_IDS:
        raise DomainError(
            "unknown identity id %r (expected 'all' or one of %s)"
            % (identity_id, ", ".join(IDENTITY_IDS)))
    reports = []

    def guard(fn, *args, **kw):
        try:
            got = fn(*args, **kw)
        except (QHermiteError, ZeroDivisionError, OverflowError) as exc:
            reports.append(IdentityReport(
                identity_id=kw.pop("_id", getattr(fn, "__name__", "?")),
                params=kw.pop("_params", {}),
                lhs=mp.nan, rhs=mp.nan,
                abs_residual=mp.inf, rel_residual=mp.inf,
                truncation=trunc or default_truncation(),
                tolerance=to_mpf(tol) if tol is not None else default_identity_tol(),
                passed=False, error=str(exc)))
            return
        if isinstance(got, IdentityReport):
            reports.append(got)
        elif isinstance(got, (list, tuple)):
            reports.extend(got)

    want = lambda name: identity_id in ("all", name)
    qs = _grid_mpf(grid.q_values)
    alphas = _grid_mpf(grid.alpha_values)
    xs = _grid_mpf(grid.x_values)
    ys = _grid_mpf(grid.y_values)
    omegas = _grid_mpf(grid.omega_values)
    ts = _grid_mpf(grid.t_values)

    for q in qs:
        for alpha in alphas:
            p = QParams(q, alpha)
            for x in xs:
                for y in ys:
                    for n in grid.n_values:
                        if want("representation_phi") or want("representation_laguerre"):
                            guard(check_representations, n, p, x, y, tol, trunc)
                        if want("recurrence"):
                            guard(check_recurrence, n, p, x, y, tol, trunc)
                        if want("connection"):
                            for omega in omegas:
                                guard(check_connection, n, p, x, y, omega, tol, trunc)
                        if want("inversion"):
                            guard(check_inversion, n, p, x, y, tol, trunc)
                    for t in ts:
                        if want("generating_function"):
                            guard(check_generating_function, t, x, y, p, None, tol, trunc)
                        if want("even_gf") or want("odd_gf"):
                            guard(check_even_odd_gf, t, x, y, p, None, tol, trunc)
                        if (want("bessel_even") or want("bessel_odd")) and x * t > 0:
                            guard(check_bessel_forms, t, x, y, p, None, tol, trunc)

    return [r for r in reports
            if identity_id == "all" or r.identity_id == identity_id]


def summarize_reports(reports):
    """Aggregate: counts, per-identity worst relative residual, overall pass."""
    worst = {}
    n_pass = n_fail = n_err = 0
    for r in reports:
        if r.error is not None:
            n_err += 1
        elif r.passed:
            n_pass += 1
        else:
            n_fail += 1
        prev = worst.get(r.identity_id)
        if r.error is None and (prev is None or r.rel_residual > prev):
            worst[r.identity_id] = r.rel_residual
    return {
        "total": len(reports),
        "passed": n_pass,
        "failed": n_fail,
        "errors": n_err,
        "worst_rel_residual": worst,
        "all_passed": n_fail == 0 and n_err == 0 and len(reports) > 0,
    }
