"""Scalar kernels: log-gamma, log-binomial and Jacobi polynomials.

Everything that involves ``Gamma(2*kappa + n)`` is assembled in the log domain
and exponentiated once by the caller, since the bare values overflow double
precision around ``n ~ 170``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import DomainError

__all__ = [
    "JacobiParams",
    "log_gamma",
    "log_gamma_ratio",
    "log_binomial",
    "jacobi",
    "jacobi_eval",
    "jacobi_sup_norm",
]

# Slack on the interval check so that 1 - 2u with u = 0 or u -> 1 passes.
_X_SLACK = 1e-12


@dataclass(frozen=True)
class JacobiParams:
    """Superscripts ``(a, b)`` and degree of a Jacobi polynomial."""

    a: float
    b: float
    degree: int

    def __post_init__(self):
        if not (self.a > -1 and self.b > -1):
            raise DomainError(f"Jacobi superscripts must exceed -1, got a={self.a}, b={self.b}")
        if int(self.degree) != self.degree or self.degree < 0:
            raise DomainError(f"Jacobi degree must be a nonnegative integer, got {self.degree}")


def log_gamma(x):
    """Natural log of the gamma function for positive arguments.

    Accepts scalars or arrays; raises :class:`DomainError` if any entry is
    nonpositive.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"log_gamma needs x > 0, got {x!r}")
    out = gammaln(arr)
    return float(out) if out.ndim == 0 else out


def log_gamma_ratio(num, den):
    """``ln Gamma(num) - ln Gamma(den)`` without forming either gamma value."""
    return log_gamma(num) - log_gamma(den)


def log_binomial(top, k):
    """``ln C(top, k)`` for real ``top > k - 1`` and integer ``k >= 0``."""
    top = np.asarray(top, dtype=float)
    k = np.asarray(k, dtype=float)
    out = gammaln(top + 1) - gammaln(k + 1) - gammaln(top - k + 1)
    return float(out) if out.ndim == 0 else out


def jacobi(degree: int, a, b, x):
    """Evaluate ``P_degree^{(a, b)}(x)`` by the three-term recurrence in degree.

    ``a``, ``b`` and ``x`` broadcast against each other, so one call can sweep
    the first superscript (the ``n - s`` of a matrix element) together with a
    grid of arguments. Cost is ``O(degree)`` array operations.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    x = np.asarray(x, dtype=float)
    shape = np.broadcast_shapes(a.shape, b.shape, x.shape)
    p_prev = np.ones(shape)
    if degree == 0:
        return p_prev
    p_curr = (a + 1) + (a + b + 2) * (x - 1) / 2 + np.zeros(shape)
    ab = a + b
    a2b2 = a * a - b * b
    for n in range(2, degree + 1):
        c = 2 * n + ab
        lead = 2 * n * (n + ab) * (c - 2)
        mid = (c - 1) * (c * (c - 2) * x + a2b2)
        tail = 2 * (n + a - 1) * (n + b - 1) * c
        p_prev, p_curr = p_curr, (mid * p_curr - tail * p_prev) / lead
    return p_curr


def jacobi_eval(params: JacobiParams, x):
    """Checked scalar/array front end to :func:`jacobi`."""
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1 + _X_SLACK):
        raise DomainError(f"Jacobi argument must lie in [-1, 1], got {x!r}")
    out = jacobi(int(params.degree), params.a, params.b, xa)
    return float(out) if out.ndim == 0 else out


def jacobi_sup_norm(degree, a, b):
    """``max |P_degree^{(a,b)}|`` over ``[-1, 1]``, in log form.

    Valid when ``max(a, b) >= -1/2``: the maximum is attained at an endpoint and
    equals ``max(C(degree + a, degree), C(degree + b, degree))``.
    """
    return np.maximum(log_binomial(np.add(degree, a), degree),
                      log_binomial(np.add(degree, b), degree))
