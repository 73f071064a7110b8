"""Exception types shared across the package.

Every precondition failure raises a subclass of QHermiteError whose message
names the violated precondition, so CLI code can map them to exit status 2
without string matching.
"""

from __future__ import annotations


class QHermiteError(Exception):
    """Base class for all package errors."""


class DomainError(QHermiteError, ValueError):
    """A parameter or argument lies outside the documented domain."""


class RepresentationDomainError(DomainError):
    """A representation was requested outside its own domain.

    The message names the representation that is valid at the point
    (usually the definition sum, which is total).
    """


class ExactBackendError(QHermiteError, TypeError):
    """Exact (rational) operands were combined with a non-integer exponent,
    or an intrinsically infinite computation was requested exactly."""


class PoleError(QHermiteError, ZeroDivisionError):
    """A lower series parameter makes a denominator factor vanish before
    the series terminates."""


class DivergenceError(QHermiteError, ArithmeticError):
    """The requested series/parameter combination diverges."""


class ConvergenceError(QHermiteError, ArithmeticError):
    """The term budget was exhausted before the tail tolerance was met.

    Carries enough context (terms used, last term size) to diagnose whether
    max_terms or tail_tol was at fault.
    """


class EvaluationError(QHermiteError, ArithmeticError):
    """A supplied callable produced a non-finite value."""
