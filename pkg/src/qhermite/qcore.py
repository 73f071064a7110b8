"""Core q-calculus building blocks.

q-shifted factorials (finite and infinite), q-numbers and q-factorials, the
parity-indexed generalized q-shifted factorial, Hahn's q-addition powers and
the mixed (q, q^2) subtraction powers.  Everything downstream (series,
polynomial families, identity checks) is assembled from these.

Conventions: 0 < q < 1 throughout, alpha > -1 where alpha appears, and the
empty product is 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mpmath import mp, mpf

from .errors import ConvergenceError, DomainError, ExactBackendError
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
    "QParams",
    "Truncation",
    "default_truncation",
    "q_pochhammer",
    "q_number",
    "q_factorial",
    "parity_indicator",
    "gen_q_shifted_factorial",
    "gen_q_factorial",
    "q_binomial",
    "hahn_add_power",
    "hahn_sub_power",
    "mixed_sub_power",
]


def _check_q(q) -> None:
    qf = to_mpf(q)
    if not (0 < qf < 1):
        raise DomainError("q out of range (0,1): got %s" % qf)


def _check_alpha(alpha) -> None:
    af = to_mpf(alpha)
    if not (af > -1):
        raise DomainError("alpha out of range (-1, inf): got %s" % af)


@dataclass(frozen=True)
class QParams:
    """Base q in (0,1) and family parameter alpha > -1.

    Either field may be an int/Fraction (exact backend) or an mpf.  The
    derived quantity q^(2*alpha+2) shows up in every generalized factorial;
    it stays exact whenever 2*alpha is an integer, otherwise it is computed
    as an mpf real power.
    """

    q: Numeric
    alpha: Numeric

    def __post_init__(self):
        _check_q(self.q)
        _check_alpha(self.alpha)

    def q_even_step(self):
        """q^(2*alpha+2), the extra factor picked up at even indices."""
        return qpow(self.q, 2 * self.alpha + 2)


@dataclass(frozen=True)
class Truncation:
    """Budget for infinite sums/products.

    max_terms is a hard cap; tail_tol is the absolute size at which a tail
    is declared negligible; rel_tol is what callers use to judge residuals.
    """

    max_terms: int = 100_000
    tail_tol: Numeric = None  # type: ignore[assignment]
    rel_tol: Numeric = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.tail_tol is None:
            object.__setattr__(self, "tail_tol", mpf(10) ** (-(mp.dps + 10)))
        if self.rel_tol is None:
            object.__setattr__(self, "rel_tol", mpf(10) ** (-(mp.dps - 5)))
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1: got %s" % self.max_terms)
        if not (to_mpf(self.tail_tol) > 0):
            raise DomainError("tail_tol must be > 0: got %s" % self.tail_tol)
        if not (to_mpf(self.rel_tol) > 0):
            raise DomainError("rel_tol must be > 0: got %s" % self.rel_tol)


def default_truncation() -> Truncation:
    """Truncation tied to the ambient mpmath precision."""
    return Truncation()


def _is_infinite_n(n) -> bool:
    if n is None:
        return True
    if isinstance(n, str):
        return n in ("inf", "infinity")
    if isinstance(n, mpf):
        return not mp.isfinite(n)
    if isinstance(n, float):
        return math.isinf(n)
    return False


def q_pochhammer(a, q, n=None, *, trunc: Optional[Truncation] = None):
    """q-shifted factorial (a; q)_n.

    (a;q)_0 = 1, (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k), and n=None (or inf)
    gives (a;q)_infinity, truncated once the next factor differs from 1 by
    less than trunc.tail_tol.  `a` may be a tuple, meaning the product of the
    individual shifted factorials (a1, ..., am; q)_n.
    """
    if isinstance(a, tuple):
        out = None
        for ai in a:
            term = q_pochhammer(ai, q, n, trunc=trunc)
            out = term if out is None else out * term
        return out if out is not None else 1

    if _is_infinite_n(n):
        _check_q(q)
        if is_exact(a) and is_exact(q):
            raise ExactBackendError(
                "(a;q)_infinity is an infinite product; use mpf operands"
            )
        a = to_mpf(a)
        q = to_mpf(q)
        tr = trunc or default_truncation()
        tail = to_mpf(tr.tail_tol)
        prod = mpf(1)
        power = mpf(1)  # q^k
        for _ in range(tr.max_terms):
            factor = 1 - a * power
            prod *= factor
            power *= q
            if abs(a) * power < tail:
                return prod
        raise ConvergenceError(
            "(a;q)_inf did not meet tail_tol=%s within max_terms=%d (|a q^k|=%s)"
            % (tail, tr.max_terms, abs(a) * power)
        )

    if not isinstance(n, int):
        raise DomainError("n must be a nonnegative integer or infinite: got %r" % (n,))
    if n < 0:
        raise DomainError("n must be >= 0: got %d" % n)
    a, q = unify(a, q)
    prod = a - a + 1  # one, on the right backend
    power = prod
    for _ in range(n):
        prod *= 1 - a * power
        power *= q
    return prod


def q_number(n: int, q):
    """[n]_q = (1 - q^n) / (1 - q)."""
    _check_q(q)
    (q,) = unify(q)
    return (1 - qpow(q, n)) / (1 - q)


def q_factorial(n: int, q):
    """[n]_q! = prod_{k=1}^{n} [k]_q, with [0]_q! = 1."""
    if n < 0:
        raise DomainError("n must be >= 0: got %d" % n)
    _check_q(q)
    (q,) = unify(q)
    out = q - q + 1
    power = out  # q^k
    for _ in range(1, n + 1):
        power *= q
        out *= (1 - power) / (1 - q)
    return out


def parity_indicator(n: int) -> int:
    """1 for even n, 0 for odd n."""
    if n < 0:
        raise DomainError("n must be >= 0: got %d" % n)
    return 1 - (n & 1)


def gen_q_shifted_factorial(n: int, params: QParams, method: str = "recursion"):
    """Generalized q-shifted factorial (q; q)_{n, alpha}.

    recursion (ground truth):
        (q;q)_{0,alpha} = 1
        (q;q)_{m+1,alpha} = (1 - q^(m+1+theta_m*(2*alpha+1))) * (q;q)_{m,alpha}
    closed_form:
        (q;q)_{2m,alpha}   = (q^2;q^2)_m (q^(2a+2);q^2)_m
        (q;q)_{2m+1,alpha} = (q^2;q^2)_m (q^(2a+2);q^2)_{m+1}

    At alpha = -1/2 both collapse to the plain (q;q)_n.
    """
    if n < 0:
        raise DomainError("n must be >= 0: got %d" % n)
    q, alpha = unify(params.q, params.alpha)
    if method == "recursion":
        out = q - q + 1
        for m in range(n):
            exponent = m + 1 + parity_indicator(m) * (2 * alpha + 1)
            out *= 1 - qpow(q, exponent)
        return out
    if method == "closed_form":
        q2 = q * q
        a_even = qpow(q, 2 * alpha + 2)
        half, rem = divmod(n, 2)
        out = q_pochhammer(q2, q2, half) * q_pochhammer(a_even, q2, half + rem)
        return out
    raise DomainError("method must be 'recursion' or 'closed_form': got %r" % method)


def gen_q_factorial(n: int, params: QParams):
    """Generalized q-factorial [n]_{q,alpha}!.

    [m+1]_{q,alpha}! = [m+1+theta_m*(2*alpha+1)]_q * [m]_{q,alpha}!, so it
    equals (q;q)_{n,alpha} / (1-q)^n.  At alpha = -1/2 this is the plain
    [n]_q! = (1-q)^(-n) (q;q)_n (note the negative exponent: the recursion
    pins it).
    """
    if n < 0:
        raise DomainError("n must be >= 0: got %d" % n)
    q, alpha = unify(params.q, params.alpha)
    out = q - q + 1
    for m in range(n):
        exponent = m + 1 + parity_indicator(m) * (2 * alpha + 1)
        out *= (1 - qpow(q, exponent)) / (1 - q)
    return out


def q_binomial(n: int, k: int, q):
    """Gaussian binomial [n choose k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k})."""
    if not 0 <= k <= n:
        raise DomainError("need 0 <= k <= n: got k=%d, n=%d" % (k, n))
    (q,) = unify(q)
    return (
        q_pochhammer(q, q, n)
        / q_pochhammer(q, q, k)
        / q_pochhammer(q, q, n - k)
    )


def hahn_add_power(x, y, q, n: int, form: str = "product"):
    """Hahn q-addition power (x (+)_q y)^n.

    product (the definition):  prod_{j=0}^{n-1} (x + q^j y)
    sum (the expansion):       sum_k [n,k]_q q^C(k,2) x^(n-k) y^k

    The two forms agree identically; the product form is the default because
    it preserves structural zeros (a vanishing factor) exactly.
    """
    if n < 0:
        raise DomainError("n must be >= 0: got %d" % n)
    _check_q(q)
    x, y, q = unify(x, y, q)
    if form == "product":
        out = q - q + 1
        power = out
        for _ in range(n):
            out *= x + power * y
            power *= q
        return out
    if form == "sum":
        total = CompensatedSum(q - q)
        for k in range(n + 1):
            term = (
                q_binomial(n, k, q)
                * qpow(q, binom2(k))
                * qpow(x, n - k)
                * qpow(y, k)
            )
            total.add(term)
        return total.total
    raise DomainError("form must be 'product' or 'sum': got %r" % form)


def hahn_sub_power(x, y, q, n: int, form: str = "product"):
    """Hahn q-subtraction power (x (-)_q y)^n = (x (+)_q (-y))^n."""
    x, y, q = unify(x, y, q)
    return hahn_add_power(x, -y, q, n, form=form)


def mixed_sub_power(a, b, q, n: int):
    """Mixed two-base subtraction power (a (-)_{q,q^2} b)^n.

    n!_q * sum_{k=0}^{n} (-1)^k q^(k(k-1)) a^(n-k) b^k / ((n-k)!_q  k!_{q^2}),
    with the n = 0 power defined as 1.  Reduces to (a - b) at n = 1 and to
    a^n at b = 0.
    """
    if n < 0:
        raise DomainError("n must be >= 0: got %d" % n)
    _check_q(q)
    a, b, q = unify(a, b, q)
    q2 = q * q
    fact_q = [q_factorial(m, q) for m in range(n + 1)]
    fact_q2 = [q_factorial(m, q2) for m in range(n + 1)]
    total = CompensatedSum(q - q)
    for k in range(n + 1):
        term = (
            (-1) ** k
            * qpow(q, k * (k - 1))
            * qpow(a, n - k)
            * qpow(b, k)
            / (fact_q[n - k] * fact_q2[k])
        )
        total.add(term)
    return fact_q[n] * total.total
