"""Bilateral Jackson q-integration on the lattice {±q^k} and numerical
verification of the orthogonality relation for the one-variable family
h_n(x; q) = gdqh2(n, x, 1).

The measure assigns weight (1-q) q^k to the pair of points ±q^k.  Large |x|
(k very negative) is tamed by the super-geometrically decaying weight
function; the k -> +inf end (points crowding 0) is controlled by the q^k
factor itself, so a lattice reaching q^k ~ 1e-120 is converged far below
any tolerance used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from mpmath import mp, mpf

from .errors import ConvergenceError, DomainError, EvaluationError
from .identities import IdentityReport, residuals, default_identity_tol
from .polyfam import gdqh2_recurrence_ladder
from .qcore import QParams, Truncation, default_truncation, gen_q_shifted_factorial, q_pochhammer
from .scalars import CompensatedSum, qpow, to_mpf

__all__ = [
    "LatticeSpec",
    "default_lattice",
    "jackson_bilateral",
    "orthogonality_weight",
    "orthogonality_rhs",
    "orthogonality_check",
]


@dataclass(frozen=True)
class LatticeSpec:
    """Lattice exponents k_min..k_max for the bilateral sum over ±q^k."""

    q: mpf
    k_min: int
    k_max: int

    def __post_init__(self):
        q = to_mpf(self.q)
        if not (0 < q < 1):
            raise DomainError("q out of range (0,1): got %s" % q)
        if not (self.k_min < 0 < self.k_max):
            raise DomainError(
                "lattice needs k_min < 0 < k_max: got [%d, %d]"
                % (self.k_min, self.k_max))


def default_lattice(q) -> LatticeSpec:
    """Symmetric lattice reaching q^k ~ 1e-120 on the small-x end."""
    q = to_mpf(q)
    bound = min(int(mp.ceil(120 / abs(mp.log10(q)))), 4000)
    return LatticeSpec(q, -bound, bound)


def jackson_bilateral(f: Callable, lat: LatticeSpec,
                      full_output: bool = False,
                      tail_tol=None):
    """(1-q) sum_{k=k_min..k_max} q^k [f(q^k) + f(-q^k)].

    With full_output=True returns (value, diagnostics) where diagnostics
    holds the end-term magnitudes at both lattice ends and the largest term.
    """
    q = to_mpf(lat.q)
    acc = CompensatedSum()
    first_term = last_term = mpf(0)
    max_term = mpf(0)
    for k in range(lat.k_min, lat.k_max + 1):
        xk = qpow(q, k)
        fv = to_mpf(f(xk)) + to_mpf(f(-xk))
        if not mp.isfinite(fv):
            raise EvaluationError(
                "integrand non-finite at lattice point x = %s" % mp.nstr(xk, 8))
        term = xk * fv
        if k == lat.k_min:
            first_term = abs(term)
        last_term = abs(term)
        if abs(term) > max_term:
            max_term = abs(term)
        acc.add(term)
    value = (1 - q) * acc.total
    if not full_output:
        return value
    diag = {
        "term_at_k_min": first_term,
        "term_at_k_max": last_term,
        "max_term": max_term,
        "tail_tol": to_mpf(tail_tol) if tail_tol is not None
                    else default_truncation().tail_tol,
    }
    return value, diag


def orthogonality_weight(x, p: QParams, trunc: Optional[Truncation] = None):
    """w_alpha(x) = 1 / (-q^(-2 alpha - 1) x^2; q^2)_inf."""
    x, q, alpha = to_mpf(x), to_mpf(p.q), to_mpf(p.alpha)
    return 1 / q_pochhammer(-qpow(q, -2 * alpha - 1) * x * x, q * q, None,
                            trunc=trunc)


def orthogonality_rhs(n: int, p: QParams, trunc: Optional[Truncation] = None):
    """Diagonal normalization constant:

      2 q^(-n^2) (1-q) (-q, -q, q^2; q^2)_inf
        / (-q^(-2a-1), -q^(2a+3), q^(2a+2); q^2)_inf
        * (q;q)_n^2 / (q;q)_{n,alpha}.
    """
    q, alpha = to_mpf(p.q), to_mpf(p.alpha)
    q2 = q * q
    num = q_pochhammer((-q, -q, q2), q2, None, trunc=trunc)
    den = q_pochhammer(
        (-qpow(q, -2 * alpha - 1), -qpow(q, 2 * alpha + 3), qpow(q, 2 * alpha + 2)),
        q2, None, trunc=trunc)
    pn = q_pochhammer(q, q, n)
    return (2 * qpow(q, -n * n) * (1 - q) * num / den
            * pn * pn / gen_q_shifted_factorial(n, p))


@lru_cache(maxsize=8)
def _weight_vector(p: QParams, lat: LatticeSpec, prec: int):
    """Cached per-point measure factors q^k * w_alpha(x) |x|^(2a+1) for
    x = ±q^k over the lattice.  Keyed on the working precision so escalated
    contexts do not reuse low-precision values."""
    q, alpha = to_mpf(p.q), to_mpf(p.alpha)
    out = []
    for k in range(lat.k_min, lat.k_max + 1):
        xk = qpow(q, k)
        w = orthogonality_weight(xk, p) * qpow(abs(xk), 2 * alpha + 1)
        out.append((xk, qpow(q, k) * w))
    return tuple(out)


def orthogonality_check(n: int, m: int, p: QParams,
                        lat: Optional[LatticeSpec] = None,
                        tol=None, trunc: Optional[Truncation] = None
                        ) -> IdentityReport:
    """Quadrature vs closed form for the weighted pairing of degrees n and m.

    n == m: relative residual against the closed-form constant.
    n != m: |quadrature| / scale with scale = sqrt(rhs(n) rhs(m)), reported
    with rhs = 0.
    """
    if n < 0 or m < 0:
        raise DomainError("degrees must be >= 0: got n=%d, m=%d" % (n, m))
    tol = to_mpf(tol) if tol is not None else default_identity_tol()
    trunc = trunc or default_truncation()
    params = {"n": n, "m": m, "q": p.q, "alpha": p.alpha}
    with mp.workdps(mp.dps + 20):
        q = to_mpf(p.q)
        lat = lat or default_lattice(q)
        weights = _weight_vector(p, lat, mp.prec)
        top = max(n, m)
        acc = CompensatedSum()
        max_term = mpf(0)
        far_term = near_term = mpf(0)
        for i, (xk, wk) in enumerate(weights):
            lad_p = gdqh2_recurrence_ladder(top, xk, mpf(1), p)
            lad_n = gdqh2_recurrence_ladder(top, -xk, mpf(1), p)
            term = wk * (lad_p[n] * lad_p[m] + lad_n[n] * lad_n[m])
            if not mp.isfinite(term):
                raise EvaluationError(
                    "integrand non-finite at lattice point x = %s" % mp.nstr(xk, 8))
            if abs(term) > max_term:
                max_term = abs(term)
            if i == 0:
                far_term = abs(term)
            near_term = abs(term)
            acc.add(term)
        lhs = (1 - q) * acc.total
        floor = trunc.tail_tol * max(mpf(1), max_term)
        if near_term > floor or far_term > floor:
            end, where = ((near_term, "k_max %d" % lat.k_max)
                          if near_term >= far_term
                          else (far_term, "k_min %d" % lat.k_min))
            raise ConvergenceError(
                "lattice tail not converged: end term %s vs tail_tol %s "
                "(max term %s); widen the lattice beyond %s"
                % (mp.nstr(end, 4), mp.nstr(trunc.tail_tol, 4),
                   mp.nstr(max_term, 4), where))
        if n == m:
            rhs = orthogonality_rhs(n, p, trunc=trunc)
            abs_r, rel_r = residuals(lhs, rhs)
        else:
            rhs = mpf(0)
            scale = mp.sqrt(orthogonality_rhs(n, p, trunc=trunc)
                            * orthogonality_rhs(m, p, trunc=trunc))
            abs_r = abs(lhs)
            rel_r = abs(lhs) / scale
        return IdentityReport(
            identity_id="orthogonality",
            params=params,
            lhs=lhs,
            rhs=rhs,
            abs_residual=abs_r,
            rel_residual=rel_r,
            truncation=trunc,
            tolerance=tol,
            passed=bool(rel_r <= tol),
            terms_used=lat.k_max - lat.k_min + 1,
        )
