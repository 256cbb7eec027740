"""Photon-counting distributions, their moments and the Mandel parameter."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect
from scipy.special import gammaln

from .errors import ConvergenceError, DomainError
from .states import (
    N_MAX, U_MAX, GlauberFamily, RepresentationLabel, SU11Family, _check_tol,
)

__all__ = [
    "POISSONIAN_BAND",
    "Regime",
    "MomentSummary",
    "PhotonDistribution",
    "distribution",
    "gscs_distribution",
    "negative_binomial_pmf",
    "mean_photon_number",
    "invert_mean",
    "mandel_q",
    "mandel_q_rsu",
    "mandel_q_derivative",
    "mandel_q_limit_kappa_infinity",
    "poisson_crossover",
    "crossover_by_bisection",
    "photocount_distribution",
    "sample_counts",
]

POISSONIAN_BAND = 1e-9


class Regime(enum.Enum):
    SUB_POISSONIAN = "SubPoissonian"
    POISSONIAN = "Poissonian"
    SUPER_POISSONIAN = "SuperPoissonian"

    @classmethod
    def classify(cls, q: float, band: float = POISSONIAN_BAND) -> "Regime":
        if abs(q) < band:
            return cls.POISSONIAN
        return cls.SUB_POISSONIAN if q < 0 else cls.SUPER_POISSONIAN


@dataclass(frozen=True)
class MomentSummary:
    mean_n: float
    mean_n2: float
    delta_n: float
    mandel_q: float
    regime: Regime


@dataclass(frozen=True)
class PhotonDistribution:
    """Truncated counting distribution ``P_0 .. P_N`` plus the discarded mass."""

    probs: np.ndarray
    tail_mass: float
    label: RepresentationLabel | None
    u: float

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def truncation_n(self) -> int:
        return self.probs.size - 1

    def total(self) -> float:
        return float(np.sum(self.probs))

    def moments(self) -> MomentSummary:
        """Moments by direct summation over the truncated support."""
        n = np.arange(self.probs.size, dtype=float)
        m1 = float(np.dot(n, self.probs))
        m2 = float(np.dot(n * n, self.probs))
        var = max(m2 - m1 * m1, 0.0)
        # vacuum: Q = 0 by the same convention as the closed form
        q = var / m1 - 1.0 if m1 > 0 else 0.0
        return MomentSummary(m1, m2, math.sqrt(var), q, Regime.classify(q))


def _check_u(u):
    if not 0 <= u < U_MAX:
        raise DomainError(f"u must lie in [0, {U_MAX}), got {u}")


def distribution(label: RepresentationLabel, u: float, tol: float = 1e-12) -> PhotonDistribution:
    """``P_n^{(kappa,s)}(u) = |phi_n|^2`` from the matrix-element coefficients."""
    _check_u(u)
    _check_tol(tol)
    st = SU11Family(label)._state(math.sqrt(u), tol)
    return PhotonDistribution(st.probabilities, st.tail_bound, label, float(u))


def gscs_distribution(alpha: complex, tol: float = 1e-12) -> PhotonDistribution:
    st = GlauberFamily().state(alpha, tol)
    return PhotonDistribution(st.probabilities, st.tail_bound, None, abs(alpha) ** 2)


def negative_binomial_pmf(kappa: float, u: float, n) -> np.ndarray:
    """``(1-u)^(2 kappa) C(2 kappa - 1 + n, n) u^n``, evaluated in the log domain."""
    n = np.asarray(n, dtype=float)
    if u == 0:
        return (n == 0).astype(float)
    logp = (2 * kappa * math.log1p(-u) + gammaln(2 * kappa + n) - gammaln(n + 1)
            - gammaln(2 * kappa) + n * math.log(u))
    return np.exp(logp)


def mean_photon_number(label: RepresentationLabel, u: float) -> float:
    _check_u(u)
    s, k = label.s, label.kappa
    return (s + (s + 2 * k) * u) / (1 - u)


def invert_mean(label: RepresentationLabel, nbar: float) -> float:
    s, k = label.s, label.kappa
    if nbar < s:
        raise DomainError(f"mean photon number {nbar} is below the fiducial number s={s}")
    return (nbar - s) / (nbar + s + 2 * k)


def mandel_q(label: RepresentationLabel, u: float) -> float:
    """Closed form in ``(kappa, s, u)``; equal to ``u / (1-u)`` when ``s = 0``."""
    _check_u(u)
    s, k = label.s, label.kappa
    den = (1 - u) * (s + (s + 2 * k) * u)
    if den == 0:
        # s = 0 and u = 0: the vacuum, Q = 0
        return 0.0
    return 2 * (s * s + (2 * s + 1) * k) * u / den - 1


def mandel_q_rsu(label: RepresentationLabel, u: float) -> float:
    """Same parameter written with ``r = s eta / (1 + s eta)``; singular at ``s = u = 0``."""
    r, s = label.r, label.s
    den = (1 - u) * (u + r)
    if den == 0:
        raise DomainError("the (r, s, u) form is 0/0 at s = 0, u = 0")
    return (u * u + 2 * s * u - r) / den


def mandel_q_derivative(label: RepresentationLabel, u: float) -> float:
    r, s = label.r, label.s
    return ((2 * s + 1 - r) * u * u + 2 * s * r + r * (1 - r)) / ((1 - u) ** 2 * (u + r) ** 2)


def mandel_q_limit_kappa_infinity(s: int, u: float) -> float:
    _check_u(u)
    return (2 * s + u) / (1 - u)


def poisson_crossover(label: RepresentationLabel) -> float:
    """The ``u`` at which ``Q`` changes sign, ``sqrt(s^2 + r) - s``."""
    s = label.s
    if s == 0:
        raise DomainError("for s = 0, Q >= 0 everywhere: no crossover")
    r = label.r
    # sqrt(s^2 + r) - s without cancellation
    return r / (math.sqrt(s * s + r) + s)


def crossover_by_bisection(label: RepresentationLabel, xtol: float = 1e-15) -> float:
    """Root of :func:`mandel_q` on ``[0, 1)`` by plain bisection."""
    if label.s == 0:
        raise DomainError("for s = 0, Q >= 0 everywhere: no crossover")
    return bisect(lambda x: mandel_q(label, x), 0.0, 0.5, xtol=xtol, rtol=4 * np.finfo(float).eps,
                  maxiter=400)


def photocount_distribution(eta: float, nbar_counts: float, tol: float = 1e-12) -> PhotonDistribution:
    """Counting law against the corrected mean ``N = eta * nbar``.

    ``(1 + N)^(-1/eta) C(1/eta - 1 + n, n) (N / (1 + N))^n``; at ``eta = 1`` this
    is the Bose-Einstein law ``N^n / (1 + N)^(n+1)``.
    """
    if not 0 < eta <= 1:
        raise DomainError(f"eta must lie in (0, 1], got {eta}")
    if nbar_counts < 0:
        raise DomainError(f"corrected mean must be nonnegative, got {nbar_counts}")
    _check_tol(tol)
    inv = 1.0 / eta
    label = RepresentationLabel(inv / 2) if eta < 1 else None
    if nbar_counts == 0:
        return PhotonDistribution(np.array([1.0]), 0.0, label, 0.0)
    p = nbar_counts / (1 + nbar_counts)
    # ratio (inv + n)/(n + 1) p is nonincreasing for inv >= 1: geometric tail bound
    n_cut = None
    n = 0
    log_tol = math.log(tol)
    while n <= N_MAX:
        m = n + 1
        q = (inv + m) / (m + 1) * p
        if q < 1:
            log_next = (-inv * math.log1p(nbar_counts) + math.lgamma(inv + m) - math.lgamma(m + 1)
                        - math.lgamma(inv) + m * math.log(p))
            log_tail = log_next - math.log1p(-q)
            if log_tail <= log_tol:
                n_cut = n
                break
        n += 1
    if n_cut is None:
        raise ConvergenceError(f"no certified truncation below N_MAX for N={nbar_counts}")
    k = np.arange(n_cut + 1, dtype=float)
    logp = (-inv * math.log1p(nbar_counts) + gammaln(inv + k) - gammaln(k + 1)
            - gammaln(inv) + k * math.log(p))
    # N = eta * nbar = u / (1 - u), so the disk parameter is N / (1 + N)
    return PhotonDistribution(np.exp(logp), math.exp(log_tail), label, p)


def sample_counts(dist: PhotonDistribution, count: int, seed: int) -> np.ndarray:
    """Inverse-CDF draws from ``dist`` renormalized over its truncated support.

    The bias from renormalizing is at most ``dist.tail_mass``.
    """
    if count < 1:
        raise DomainError(f"count must be positive, got {count}")
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(dist.probs)
    cdf /= cdf[-1]
    draws = np.searchsorted(cdf, rng.random(count), side="right")
    return np.minimum(draws, dist.probs.size - 1).astype(np.int64)
