"""Gaussian rules adapted to the radial weights of the two families.

Every radial integrand of the SU(1,1) family carries ``(1-u)^(2 kappa)`` from
``|phi_n|^2`` against the singular weight ``(2 kappa - 1)(1-u)^(-2)``; what is
left is ``(1-u)^(2 kappa - 2)`` times a polynomial, which a Gauss-Jacobi rule
on ``[0, 1]`` integrates exactly. The Glauber family uses Gauss-Laguerre.

Nodes and weights come from the Golub-Welsch eigenproblem of the monic
three-term recurrence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from .errors import DomainError

__all__ = [
    "QuadratureRule",
    "golub_welsch",
    "gauss_jacobi_unit",
    "gauss_laguerre",
    "su11_radial_rule",
    "glauber_radial_rule",
]


@dataclass(frozen=True)
class QuadratureRule:
    """Rule for ``int_0^1 (1-u)^exponent g(u) du`` exact for polynomial ``g`` of degree < 2 order."""

    nodes: np.ndarray
    weights: np.ndarray
    exponent: float
    order: int

    @property
    def kappa(self) -> float:
        """The discrete-series label whose resolving weight this rule absorbs."""
        return (self.exponent + 2) / 2

    def integrate(self, values) -> np.ndarray:
        return np.tensordot(np.asarray(values), self.weights, axes=([-1], [0]))


def golub_welsch(diag, offdiag_sq, mu0, polish: int = 2):
    """Nodes and weights from monic recurrence coefficients.

    ``diag`` holds ``alpha_0..alpha_{m-1}``, ``offdiag_sq`` holds
    ``beta_1..beta_m`` and ``mu0`` is the total mass of the weight. The
    Jacobi-matrix eigenvalues seed the nodes, which get ``polish`` Newton steps
    on the degree-m orthonormal polynomial. Weights come from the Christoffel
    function ``1 / sum_k p_k(x)^2``; squared eigenvector components would lose
    the relative accuracy of the tiny outer weights.
    """
    diag = np.asarray(diag, dtype=float)
    beta = np.asarray(offdiag_sq, dtype=float)
    m = diag.size
    if beta.size != m:
        raise ValueError("offdiag_sq must hold beta_1..beta_m")
    nodes = eigh_tridiagonal(diag, np.sqrt(beta[: m - 1]), eigvals_only=True)
    for _ in range(polish):
        p, dp = _orthonormal_values(nodes, diag, beta, mu0, with_derivative=True)
        nodes = nodes - p[-1] / dp[-1]
    # at high Laguerre orders the outer p_k overflow; their weights are below the double range anyway
    with np.errstate(over="ignore"):
        p = _orthonormal_values(nodes, diag, beta[: m - 1], mu0)
        weights = 1.0 / np.sum(p ** 2, axis=0)
    return nodes, weights


def _orthonormal_values(x, diag, beta, mu0, with_derivative=False):
    # rows k = 0..len(beta): p_k(x) for the orthonormal family
    m = len(beta) + 1
    p = np.zeros((m,) + x.shape)
    dp = np.zeros_like(p)
    p[0] = 1.0 / math.sqrt(mu0)
    sb = np.sqrt(beta)
    for k in range(m - 1):
        prev = p[k - 1] if k > 0 else 0.0
        dprev = dp[k - 1] if k > 0 else 0.0
        back = sb[k - 1] if k > 0 else 0.0
        p[k + 1] = ((x - diag[k]) * p[k] - back * prev) / sb[k]
        dp[k + 1] = (p[k] + (x - diag[k]) * dp[k] - back * dprev) / sb[k]
    return (p, dp) if with_derivative else p


def _jacobi_recurrence(order, a, b):
    # diag alpha_0..alpha_{order-1}, beta_1..beta_order
    n = np.arange(order + 1, dtype=float)
    ab = a + b
    diag = np.empty(order)
    diag[0] = (b - a) / (ab + 2)
    c = 2 * n[1:order] + ab
    diag[1:] = (b * b - a * a) / (c * (c + 2))
    beta = np.empty(order)
    # n = 1 written with (1 + a + b) cancelled, valid when a + b = -1
    beta[0] = 4 * (1 + a) * (1 + b) / ((2 + ab) ** 2 * (3 + ab))
    k = n[2:]
    c2 = 2 * k + ab
    beta[1:] = 4 * k * (k + a) * (k + b) * (k + ab) / (c2 * c2 * (c2 + 1) * (c2 - 1))
    log_mu0 = (ab + 1) * math.log(2) + gammaln(a + 1) + gammaln(b + 1) - gammaln(ab + 2)
    return diag, beta, math.exp(log_mu0)


def gauss_jacobi_unit(order: int, exponent: float, u_exponent: float = 0.0) -> QuadratureRule:
    """Gauss rule for ``int_0^1 (1-u)^exponent u^u_exponent g(u) du``."""
    if order < 1:
        raise DomainError(f"quadrature order must be positive, got {order}")
    if not (exponent > -1 and u_exponent > -1):
        raise DomainError(f"endpoint exponents must exceed -1, got {exponent}, {u_exponent}")
    diag, beta, mu0 = _jacobi_recurrence(order, exponent, u_exponent)
    x, wx = golub_welsch(diag, beta, mu0)
    # u = (1 + x)/2 maps (1-x)^a (1+x)^b dx to 2^(a+b+1) (1-u)^a u^b du
    scale = 2.0 ** (-(exponent + u_exponent + 1))
    return QuadratureRule((1 + x) / 2, wx * scale, float(exponent), int(order))


def gauss_laguerre(order: int):
    """Nodes and weights for ``int_0^inf exp(-u) g(u) du``."""
    if order < 1:
        raise DomainError(f"quadrature order must be positive, got {order}")
    n = np.arange(order + 1, dtype=float)
    return golub_welsch(2 * n[:order] + 1, n[1:] ** 2, 1.0)


def _legendre_on(order, lo, hi):
    rule = gauss_jacobi_unit(order, 0.0)
    return lo + (hi - lo) * rule.nodes, (hi - lo) * rule.weights


def su11_radial_rule(kappa, order, pole_order=0.0, u_max=None):
    """Weights for ``int w(u) (1-u)^(-pole_order) h_m h_n g du`` on reduced ``h``.

    Raises :class:`DomainError` when ``(1-u)^(2 kappa - 2 - pole_order)`` is not
    integrable at ``u = 1`` (unless a Heaviside cut ``u_max < 1`` removes it).
    """
    exponent = 2 * kappa - 2 - pole_order
    if u_max is None or u_max >= 1.0:
        if not exponent > -1:
            raise DomainError(
                f"integrand behaves like (1-u)^{exponent:g} at u = 1 and diverges; "
                f"weights may grow at most like (1-u)^-(2 kappa - 1)")
        rule = gauss_jacobi_unit(order, exponent)
        return rule.nodes, (2 * kappa - 1) * rule.weights
    if not 0 < u_max:
        raise DomainError(f"Heaviside cut must be positive, got {u_max}")
    u, w = _legendre_on(order, 0.0, u_max)
    return u, (2 * kappa - 1) * w * (1 - u) ** exponent


def glauber_radial_rule(order, pole_order=0.0, u_max=None):
    if pole_order != 0.0:
        raise DomainError("the Glauber family has no u = 1 endpoint; pole_order must be 0")
    if u_max is None or math.isinf(u_max):
        return gauss_laguerre(order)
    u, w = _legendre_on(order, 0.0, u_max)
    return u, w * np.exp(-u)
