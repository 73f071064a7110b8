"""Polynomial families: q-Laguerre, Stieltjes-Wigert, the two-variable
generalized discrete q-Hermite II family and its relatives.

The central object is gdqh2(n, x, y, params): degree n in x, with y the
second (scaling) variable and params = (q, alpha).  Three representations
are provided and must agree wherever they are all defined:

  definition_sum   the defining double-indexed sum (total; the fallback)
  phi_form         prefactor * x^n * 2-phi-1(...; q^2, -y q^(2a+3)/x^2)
  laguerre_form    prefactor * (-y)^m * q-Laguerre at x^2 y^-1 q^(-2a-1)

The recurrence

  (1 - q^(n+1+theta_n(2a+1))) / (1 - q^(n+1)) * h_{n+1}
      = x h_n - y q^(-2n+1) (1 - q^n) h_{n-1}

is exposed step-wise (gdqh2_recurrence_step) and as an iterator, and is the
cheap way to evaluate a whole ladder of degrees at one point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mpmath import mp, mpf

from .errors import DomainError, RepresentationDomainError
from .qcore import (
    QParams,
    Truncation,
    gen_q_shifted_factorial,
    parity_indicator,
    q_pochhammer,
)
from .qseries import phi
from .scalars import Numeric, binom2, is_exact, qpow, to_mpf, unify

__all__ = [
    "q_laguerre",
    "stieltjes_wigert",
    "gdqh2",
    "RecurrenceState",
    "gdqh2_recurrence_step",
    "gdqh2_recurrence",
    "gdqh2_recurrence_ladder",
    "discrete_q_hermite2",
    "mu_hermite",
    "rosenblum_hermite",
    "PolyEval",
    "eval_poly",
]


def q_laguerre(n: int, alpha, x, q, rep: str = "phi11",
               trunc: Optional[Truncation] = None):
    """q-Laguerre polynomial L_n^(alpha)(x; q).

    phi11:  (q^(a+1);q)_n / (q;q)_n * 1-phi-1(q^-n; q^(a+1); q, -q^(n+a+1) x)
    phi21:  1/(q;q)_n * 2-phi-1(q^-n, -x; 0; q, q^(n+a+1))

    Note the phi21 argument is q^(n+a+1) alone; x enters only through the
    upper parameter -x.
    """
    if n < 0:
        raise DomainError("degree n must be >= 0: got %d" % n)
    alpha, x, q = unify(alpha, x, q)
    qa1 = qpow(q, alpha + 1)
    if rep == "phi11":
        series = phi(
            (qpow(q, -n),),
            (qa1,),
            q,
            -qpow(q, n) * qa1 * x,
            terminate_at=n,
            trunc=trunc,
        )
        return q_pochhammer(qa1, q, n) / q_pochhammer(q, q, n) * series
    if rep == "phi21":
        series = phi(
            (qpow(q, -n), -x),
            (x - x,),
            q,
            qpow(q, n) * qa1,
            terminate_at=n,
            trunc=trunc,
        )
        return series / q_pochhammer(q, q, n)
    raise DomainError("rep must be 'phi11' or 'phi21': got %r" % rep)


def stieltjes_wigert(n: int, x, q, trunc: Optional[Truncation] = None):
    """Stieltjes-Wigert polynomial
    S_n(x; q) = 1/(q;q)_n * 1-phi-1(q^-n; 0; q, -q^(n+1) x)."""
    if n < 0:
        raise DomainError("degree n must be >= 0: got %d" % n)
    x, q = unify(x, q)
    series = phi(
        (qpow(q, -n),),
        (x - x,),
        q,
        -qpow(q, n + 1) * x,
        terminate_at=n,
        trunc=trunc,
    )
    return series / q_pochhammer(q, q, n)


def _gdqh2_definition(n: int, x, y, params: QParams):
    x, y, q, alpha = unify(x, y, params.q, params.alpha)
    q2 = q * q
    # running pieces: (q;q)_{n-2k,alpha} walked down from n, (q^2;q^2)_k up
    gen_fact = [gen_q_shifted_factorial(m, params) for m in range(n + 1)]
    total = q - q
    poch_q2 = q - q + 1
    for k in range(n // 2 + 1):
        if k > 0:
            poch_q2 *= 1 - qpow(q2, k)
        term = (
            (-1) ** k
            * qpow(q, -2 * n * k + k * (2 * k + 1))
            * qpow(x, n - 2 * k)
            * qpow(y, k)
            / (gen_fact[n - 2 * k] * poch_q2)
        )
        total = total + term
    return q_pochhammer(q, q, n) * total


def _gdqh2_phi(n: int, x, y, params: QParams, trunc):
    x, y, q, alpha = unify(x, y, params.q, params.alpha)
    if to_mpf(x) == 0:
        # the 2-phi-1 form divides by x^2; the definition is total
        return _gdqh2_definition(n, x, y, params)
    m = n // 2
    q2 = q * q
    if n % 2 == 0:
        upper = (qpow(q, -2 * m), qpow(q, -2 * m - 2 * alpha))
    else:
        upper = (qpow(q, -2 * m), qpow(q, -2 * m - 2 * alpha - 2))
    z = -y * qpow(q, 2 * alpha + 3) / (x * x)
    series = phi(upper, (x - x,), q2, z, terminate_at=m, trunc=trunc)
    front = (
        q_pochhammer(q, q, n)
        / gen_q_shifted_factorial(n, params)
        * qpow(x, n)
    )
    return front * series


def _gdqh2_laguerre(n: int, x, y, params: QParams, trunc):
    x, y, q, alpha = unify(x, y, params.q, params.alpha)
    if to_mpf(y) == 0:
        return _gdqh2_definition(n, x, y, params)
    if to_mpf(y) < 0:
        raise RepresentationDomainError(
            "laguerre_form needs y > 0 (real-power argument); "
            "use definition_sum for y < 0"
        )
    m = n // 2
    q2 = q * q
    arg = x * x / y * qpow(q, -2 * alpha - 1)
    a_even = qpow(q, 2 * alpha + 2)
    if n % 2 == 0:
        pref = (
            qpow(q, -m * (2 * m - 1))
            * q_pochhammer(q, q, 2 * m)
            / q_pochhammer(a_even, q2, m)
        )
        return pref * qpow(-y, m) * q_laguerre(m, alpha, arg, q2, trunc=trunc)
    pref = (
        qpow(q, -m * (2 * m + 1))
        * q_pochhammer(q, q, 2 * m + 1)
        / q_pochhammer(a_even, q2, m + 1)
    )
    return pref * x * qpow(-y, m) * q_laguerre(m, alpha + 1, arg, q2, trunc=trunc)


def gdqh2(n: int, x, y, params: QParams, rep: str = "definition_sum",
          trunc: Optional[Truncation] = None):
    """Two-variable generalized discrete q-Hermite II polynomial of degree n.

    rep selects the representation: 'definition_sum' (total), 'phi_form'
    (routes to the definition at x = 0), or 'laguerre_form' (y > 0; routes
    to the definition at y = 0).  All inputs may be exact rationals as long
    as 2*alpha is an integer; the result is then exact.  laguerre_form is
    stricter: it takes the power (q^2)^(alpha+1), so exact inputs need an
    integer alpha (half-integers raise ExactBackendError).
    """
    if n < 0:
        raise DomainError("degree n must be >= 0: got %d" % n)
    if rep == "definition_sum":
        return _gdqh2_definition(n, x, y, params)
    if rep == "phi_form":
        return _gdqh2_phi(n, x, y, params, trunc)
    if rep == "laguerre_form":
        return _gdqh2_laguerre(n, x, y, params, trunc)
    raise DomainError(
        "rep must be 'definition_sum', 'phi_form' or 'laguerre_form': got %r" % rep
    )


@dataclass(frozen=True)
class RecurrenceState:
    """Ladder state: degree n together with values at n and n-1."""

    n: int
    current: Numeric
    previous: Numeric


def gdqh2_recurrence_step(state: RecurrenceState, x, y, params: QParams) -> RecurrenceState:
    """One step of the three-term recurrence, n -> n+1."""
    n = state.n
    x, y, q, alpha = unify(x, y, params.q, params.alpha)
    lead = (1 - qpow(q, n + 1 + parity_indicator(n) * (2 * alpha + 1))) / (
        1 - qpow(q, n + 1)
    )
    nxt = x * state.current
    if n >= 1:
        nxt = nxt - y * qpow(q, -2 * n + 1) * (1 - qpow(q, n)) * state.previous
    return RecurrenceState(n + 1, nxt / lead, state.current)


def gdqh2_recurrence(n: int, x, y, params: QParams):
    """Evaluate degree n via the recurrence (seeded at h_0 = 1)."""
    return gdqh2_recurrence_ladder(n, x, y, params)[-1]


def gdqh2_recurrence_ladder(n: int, x, y, params: QParams) -> list:
    """Values for all degrees 0..n at one point, via the recurrence."""
    if n < 0:
        raise DomainError("degree n must be >= 0: got %d" % n)
    x, y, q, alpha = unify(x, y, params.q, params.alpha)
    one = q - q + 1
    state = RecurrenceState(0, one, q - q)
    out = [state.current]
    for _ in range(n):
        state = gdqh2_recurrence_step(state, x, y, params)
        out.append(state.current)
    return out


def discrete_q_hermite2(n: int, x, q):
    """Discrete q-Hermite II polynomial: the alpha = -1/2, y = 1 member."""
    params = QParams(q, Fraction(-1, 2) if is_exact(q) else to_mpf(-0.5))
    one = 1 if is_exact(q) and is_exact(x) else mpf(1)
    return gdqh2(n, x, one, params)


def mu_hermite(n: int, mu, x, q, trunc: Optional[Truncation] = None):
    """mu-deformed q-Hermite polynomial H_n^(mu)(x; q), mu > -1/2.

    H_{2m}^(mu)(x;q)   = (-1)^m (q;q)_m L_m^(mu-1/2)(x^2; q)
    H_{2m+1}^(mu)(x;q) = (-1)^m (q;q)_m x L_m^(mu+1/2)(x^2; q)
    """
    if n < 0:
        raise DomainError("degree n must be >= 0: got %d" % n)
    mu, x, q = unify(mu, x, q)
    if not (to_mpf(mu) > -0.5):
        raise DomainError("mu must be > -1/2: got %s" % to_mpf(mu))
    m = n // 2
    half = Fraction(1, 2) if is_exact(mu) else mpf(0.5)
    sign_poch = (-1) ** m * q_pochhammer(q, q, m)
    if n % 2 == 0:
        return sign_poch * q_laguerre(m, mu - half, x * x, q, trunc=trunc)
    return sign_poch * x * q_laguerre(m, mu + half, x * x, q, trunc=trunc)


def _laguerre_classical(n: int, a, z):
    """Classical Laguerre polynomial L_n^(a)(z) =
    sum_k (-1)^k binom(n+a, n-k) z^k / k!."""
    a, z = (to_mpf(v) for v in unify(a, z))
    total = mpf(0)
    for k in range(n + 1):
        total += (-1) ** k * mp.binomial(n + a, n - k) * z ** k / mp.factorial(k)
    return total


def rosenblum_hermite(n: int, mu, x):
    """Generalized (mu-deformed) Hermite polynomial, classical limit family.

    h_{2m}^mu(x)   = (-1)^m 2^(2m)   m! L_m^(mu-1/2)(x^2)
    h_{2m+1}^mu(x) = (-1)^m 2^(2m+1) m! x L_m^(mu+1/2)(x^2)

    Normalized so that mu = 0 gives the physicists' Hermite polynomials H_n.
    """
    if n < 0:
        raise DomainError("degree n must be >= 0: got %d" % n)
    mu, x = (to_mpf(v) for v in unify(mu, x))
    if not (mu >= 0):
        raise DomainError("mu must be >= 0: got %s" % mu)
    m = n // 2
    front = (-1) ** m * mpf(2) ** (2 * m) * mp.factorial(m)
    if n % 2 == 0:
        return front * _laguerre_classical(m, mu - mpf(0.5), x * x)
    return 2 * front * x * _laguerre_classical(m, mu + mpf(0.5), x * x)


_FAMILIES = {
    "gdqh2",
    "discrete_q_hermite2",
    "q_laguerre",
    "stieltjes_wigert",
    "mu_hermite",
    "rosenblum_hermite",
}


@dataclass(frozen=True)
class PolyEval:
    """One polynomial evaluation request (used by the CLI)."""

    family: str
    degree: int
    point: Numeric
    params: Optional[QParams] = None
    y: Numeric = 1
    mu: Numeric = 0
    rep: str = ""

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise DomainError(
                "unknown family %r (expected one of %s)"
                % (self.family, ", ".join(sorted(_FAMILIES)))
            )
        if self.degree < 0:
            raise DomainError("degree must be >= 0: got %d" % self.degree)


def eval_poly(pe: PolyEval):
    """Dispatch a PolyEval to the corresponding family function."""
    if pe.family == "gdqh2":
        rep = pe.rep or "definition_sum"
        return gdqh2(pe.degree, pe.point, pe.y, pe.params, rep=rep)
    if pe.family == "discrete_q_hermite2":
        return discrete_q_hermite2(pe.degree, pe.point, pe.params.q)
    if pe.family == "q_laguerre":
        rep = pe.rep or "phi11"
        return q_laguerre(pe.degree, pe.params.alpha, pe.point, pe.params.q, rep=rep)
    if pe.family == "stieltjes_wigert":
        return stieltjes_wigert(pe.degree, pe.point, pe.params.q)
    if pe.family == "mu_hermite":
        return mu_hermite(pe.degree, pe.mu, pe.point, pe.params.q)
    if pe.family == "rosenblum_hermite":
        return rosenblum_hermite(pe.degree, pe.mu, pe.point)
    raise DomainError("unknown family %r" % pe.family)
