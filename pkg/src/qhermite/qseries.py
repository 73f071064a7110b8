"""Basic hypergeometric series and the q-special functions built on them.

The r-phi-s engine sums

    phi(a1..ar; b1..bs; q, z)
      = sum_k [(-1)^k q^C(k,2)]^(1+s-r) * prod (ai;q)_k / prod (bj;q)_k
              * z^k / (q;q)_k

with a term-ratio recurrence.  Termination via an upper parameter equal to
q^(-m) is detected (or declared via PhiSpec.terminate_at); terminating series
work on the exact backend, everything else runs on mpf.

On top of it: Euler's q-exponentials E_q / e_q, their two-parameter
generalizations, Jackson's second q-Bessel function, and the generalized
q-cosine / q-sine pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from mpmath import mp, mpf

from .errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    PoleError,
)
from .qcore import (
    QParams,
    Truncation,
    default_truncation,
    gen_q_shifted_factorial,
    parity_indicator,
    q_pochhammer,
)
from .scalars import (
    CompensatedSum,
    Numeric,
    binom2,
    is_exact,
    qpow,
    to_mpf,
    unify,
)

__all__ = [
    "PhiSpec",
    "SeriesValue",
    "phi_rs",
    "phi",
    "euler_E",
    "euler_e",
    "gen_E",
    "gen_e",
    "q_bessel2",
    "q_cos_alpha",
    "q_sin_alpha",
]

# |a q^m - 1| below this means "a is q^(-m)" on the float backend.
_TERMINATION_MATCH_TOL = 1e-12


@dataclass(frozen=True)
class SeriesValue:
    """A summed series: value, number of terms, and a bound on what was cut."""

    value: Numeric
    terms_used: int
    tail_estimate: Numeric


@dataclass(frozen=True)
class PhiSpec:
    """Parameters of an r-phi-s basic hypergeometric series.

    terminate_at, when given, asserts that the summand vanishes for
    k > terminate_at (callers that build q^(-n) upper parameters know this
    index exactly and should pass it; detection from floats is a fallback).
    """

    upper: tuple
    lower: tuple
    q: Numeric
    z: Numeric
    terminate_at: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        qf = to_mpf(self.q)
        if not (0 < qf < 1):
            raise DomainError("q out of range (0,1): got %s" % qf)
        if self.terminate_at is not None and self.terminate_at < 0:
            raise DomainError(
                "terminate_at must be >= 0: got %s" % self.terminate_at
            )


def _neg_q_power_index(a, q) -> Optional[int]:
    """Return m >= 0 if a == q^(-m) (within matching tolerance), else None."""
    if is_exact(a) and a == 1:
        return 0
    af = to_mpf(a)
    qf = to_mpf(q)
    if af <= 0:
        return None
    if af < 1:
        return None
    # candidate from logs, then verify
    try:
        m = int(mp.nint(mp.log(af) / mp.log(1 / qf)))
    except (ValueError, ZeroDivisionError):
        return None
    if m < 0:
        return None
    for cand in (m - 1, m, m + 1):
        if cand < 0:
            continue
        if abs(af * qf ** cand - 1) < _TERMINATION_MATCH_TOL:
            return cand
    return None


def phi_rs(spec: PhiSpec, trunc: Optional[Truncation] = None) -> SeriesValue:
    """Sum a basic hypergeometric series.

    Terminating series are summed exactly through their last nonzero term.
    Non-terminating series require r <= s+1 (r = s+1 additionally needs
    |z| < 1) and stop when the absolute term drops below tail_tol with a
    geometric tail bound recorded.
    """
    tr = trunc or default_truncation()
    r, s = len(spec.upper), len(spec.lower)
    vals = unify(spec.q, spec.z, *spec.upper, *spec.lower)
    q, z = vals[0], vals[1]
    upper = vals[2 : 2 + r]
    lower = vals[2 + r :]

    n_term = spec.terminate_at
    if n_term is None:
        hits = [m for m in (_neg_q_power_index(a, q) for a in upper) if m is not None]
        if hits:
            n_term = min(hits)

    # a lower parameter q^(-m) kills the denominator at k = m+1
    for b in lower:
        mb = _neg_q_power_index(b, q)
        if mb is not None and (n_term is None or mb < n_term):
            raise PoleError(
                "lower parameter %s = q^-%d vanishes inside the summation range"
                % (b, mb)
            )

    if n_term is None:
        if is_exact(q):
            # exact backend only makes sense for terminating sums
            raise DivergenceError(
                "non-terminating series on the exact backend; "
                "pass terminate_at or use mpf operands"
            )
        if r > s + 1:
            raise DivergenceError(
                "r=%d > s+1=%d diverges for z != 0 unless terminating" % (r, s + 1)
            )
        if r == s + 1 and not abs(z) < 1:
            raise DivergenceError(
                "r = s+1 requires |z| < 1 for convergence: got |z|=%s" % abs(z)
            )

    power_exponent = 1 + s - r
    tail_tol = to_mpf(tr.tail_tol)
    total = CompensatedSum(q - q)
    term = q - q + 1
    total.add(term)
    qk = q - q + 1  # q^k
    k = 0
    while True:
        if n_term is not None and k >= n_term:
            return SeriesValue(total.total, k + 1, q - q)
        if k + 1 >= tr.max_terms:
            raise ConvergenceError(
                "phi series needed more than max_terms=%d terms (last |term|=%s)"
                % (tr.max_terms, abs(to_mpf(term)))
            )
        # term_{k+1} / term_k; the bracket [(-1)^k q^C(k,2)]^(1+s-r)
        # contributes [(-1) q^k]^(1+s-r) per step
        ratio = z / (1 - q * qk)
        for a in upper:
            ratio *= 1 - a * qk
        for b in lower:
            denom = 1 - b * qk
            if denom == 0:
                raise PoleError("lower parameter %s hits a pole at k=%d" % (b, k + 1))
            ratio /= denom
        if power_exponent:
            ratio *= ((-1) ** power_exponent) * qpow(qk, power_exponent)
        term = term * ratio
        total.add(term)
        qk *= q
        k += 1
        if n_term is None and abs(to_mpf(term)) < tail_tol:
            rho = abs(to_mpf(ratio))
            if rho < 1:
                tail = abs(to_mpf(term)) * rho / (1 - rho)
                if tail < tail_tol:
                    return SeriesValue(total.total, k + 1, tail)


def phi(upper, lower, q, z, terminate_at=None, trunc=None):
    """Convenience wrapper: the value of phi_rs."""
    return phi_rs(
        PhiSpec(tuple(upper), tuple(lower), q, z, terminate_at=terminate_at),
        trunc=trunc,
    ).value


def euler_E(x, q, trunc: Optional[Truncation] = None):
    """Big q-exponential E_q(x) = sum q^C(k,2) x^k / (q;q)_k = (-x;q)_inf.

    Entire in x; computed as the 0-phi-0 series (float backend: the sum is
    infinite).
    """
    x, q = to_mpf(x), to_mpf(q)
    return phi((), (), q, -x, trunc=trunc)


def euler_e(x, q, trunc: Optional[Truncation] = None):
    """Small q-exponential e_q(x) = sum x^k / (q;q)_k = 1/(x;q)_inf, |x| < 1."""
    x, q = to_mpf(x), to_mpf(q)
    if not abs(x) < 1:
        raise DomainError("e_q requires |x| < 1: got |x|=%s" % abs(x))
    return phi((mpf(0),), (), q, x, trunc=trunc)


def _gen_series(x, params: QParams, m: int, big: bool, trunc: Optional[Truncation]):
    """Shared engine for gen_E / gen_e: term ratio against the generalized
    factorial recursion (q^m;q^m)_{k+1,a} = (1 - Q^(k+1+theta_k(2a+1))) (...)_k."""
    if m < 1:
        raise DomainError("base exponent m must be >= 1: got %d" % m)
    tr = trunc or default_truncation()
    x, q, alpha = unify(x, params.q, params.alpha)
    Q = qpow(q, m)
    if not big and not abs(to_mpf(x)) < 1:
        raise DomainError("the small exponential requires |x| < 1: got |x|=%s" % abs(to_mpf(x)))
    if is_exact(x) and is_exact(q) and is_exact(alpha):
        # infinite series: float backend
        x, q, alpha, Q = (to_mpf(v) for v in (x, q, alpha, Q))
    tail_tol = to_mpf(tr.tail_tol)
    total = CompensatedSum(x - x)
    term = x - x + 1
    total.add(term)
    Qk = term  # Q^k
    for k in range(tr.max_terms):
        step = 1 - qpow(Q, k + 1 + parity_indicator(k) * (2 * alpha + 1))
        ratio = x / step
        if big:
            ratio *= Qk  # Q^C(k+1,2) / Q^C(k,2)
        term = term * ratio
        total.add(term)
        Qk *= Q
        if abs(to_mpf(term)) < tail_tol:
            rho = abs(to_mpf(ratio))
            if rho < 1:
                tail = abs(to_mpf(term)) * rho / (1 - rho)
                if tail < tail_tol:
                    return SeriesValue(total.total, k + 2, tail)
    raise ConvergenceError(
        "generalized exponential did not converge in max_terms=%d" % tr.max_terms
    )


def gen_E(x, params: QParams, m: int = 1, trunc: Optional[Truncation] = None):
    """Generalized big q-exponential:
    sum_k q^(m k(k-1)/2) x^k / (q^m;q^m)_{k,alpha}.  Entire in x.

    At m=1, alpha=-1/2 it reduces to euler_E.
    """
    return _gen_series(x, params, m, True, trunc).value


def gen_e(x, params: QParams, m: int = 1, trunc: Optional[Truncation] = None):
    """Generalized small q-exponential:
    sum_k x^k / (q^m;q^m)_{k,alpha}, |x| < 1.

    At m=1, alpha=-1/2 it reduces to euler_e.
    """
    return _gen_series(x, params, m, False, trunc).value


def q_bessel2(nu, z, q, trunc: Optional[Truncation] = None):
    """Jackson's second q-Bessel function J_nu^(2)(z; q).

    (q^(nu+1);q)_inf / (q;q)_inf * (z/2)^nu
        * 0-phi-1(-; q^(nu+1); q, -q^(nu+1) z^2 / 4)

    Float backend (the prefactor is an infinite product).  z must be > 0
    unless nu is a nonnegative integer; z = 0 returns the limit value.
    """
    nu, z, q = (to_mpf(v) for v in unify(nu, z, q))
    if not (0 < q < 1):
        raise DomainError("q out of range (0,1): got %s" % q)
    nu_int = mp.isint(nu)
    if z < 0 and not nu_int:
        raise DomainError(
            "q_bessel2 needs z >= 0 for non-integer nu (real power branch): got z=%s" % z
        )
    a = qpow(q, nu + 1)
    if z == 0:
        if nu == 0:
            front = mpf(1)
        elif nu > 0:
            return mpf(0)
        else:
            raise DomainError("q_bessel2 at z=0 needs nu >= 0: got nu=%s" % nu)
    else:
        front = qpow(z / 2, nu)
    series = phi((), (a,), q, -a * z * z / 4, trunc=trunc)
    pref = q_pochhammer(a, q, None, trunc=trunc) / q_pochhammer(q, q, None, trunc=trunc)
    return pref * front * series


def q_cos_alpha(x, params: QParams, trunc: Optional[Truncation] = None, rep: str = "series"):
    """Generalized q-cosine:
    sum_n (-1)^n q^(n(2n-1)) x^(2n) / (q;q)_{2n,alpha},
    equivalently 0-phi-1(-; q^(2a+2); q^2, -q x^2).
    """
    x, q, alpha = unify(x, params.q, params.alpha)
    if rep == "phi":
        x, q, alpha = (to_mpf(v) for v in (x, q, alpha))
        return phi((), (qpow(q, 2 * alpha + 2),), q * q, -q * x * x, trunc=trunc)
    if rep != "series":
        raise DomainError("rep must be 'series' or 'phi': got %r" % rep)
    return _cos_sin_series(x, params, odd=False, trunc=trunc)


def q_sin_alpha(x, params: QParams, trunc: Optional[Truncation] = None, rep: str = "series"):
    """Generalized q-sine:
    sum_n (-1)^n q^(n(2n+1)) x^(2n+1) / (q;q)_{2n+1,alpha},
    equivalently x/(1-q^(2a+2)) * 0-phi-1(-; q^(2a+4); q^2, -q^3 x^2).
    """
    x, q, alpha = unify(x, params.q, params.alpha)
    if rep == "phi":
        x, q, alpha = (to_mpf(v) for v in (x, q, alpha))
        head = x / (1 - qpow(q, 2 * alpha + 2))
        return head * phi(
            (), (qpow(q, 2 * alpha + 4),), q * q, -(q ** 3) * x * x, trunc=trunc
        )
    if rep != "series":
        raise DomainError("rep must be 'series' or 'phi': got %r" % rep)
    return _cos_sin_series(x, params, odd=True, trunc=trunc)


def _cos_sin_series(x, params: QParams, odd: bool, trunc: Optional[Truncation]):
    """Direct summation of the generalized cosine/sine series.

    Maintains the denominator (q;q)_{2n+par,alpha} by applying the two
    factorial recursion steps per n instead of recomputing it.
    """
    tr = trunc or default_truncation()
    x, q, alpha = (to_mpf(v) for v in unify(x, params.q, params.alpha))
    tail_tol = to_mpf(tr.tail_tol)
    par = 1 if odd else 0
    denom = mpf(1)
    for idx in range(par):
        denom *= 1 - qpow(q, idx + 1 + parity_indicator(idx) * (2 * alpha + 1))
    total = CompensatedSum(mpf(0))
    xpow = x ** par
    for n in range(tr.max_terms):
        idx = 2 * n + par
        term = (-1) ** n * qpow(q, n * (2 * n + (1 if odd else -1))) * xpow / denom
        total.add(term)
        if abs(term) < tail_tol and n >= 1:
            return total.total
        for j in (idx, idx + 1):
            denom *= 1 - qpow(q, j + 1 + parity_indicator(j) * (2 * alpha + 1))
        xpow *= x * x
    raise ConvergenceError(
        "q_cos/q_sin series did not converge in max_terms=%d" % tr.max_terms
    )
