"""Coefficient vectors of SU(1,1)-displaced coherent states and of Glauber states.

A state of either family has Fock coefficients

    phi_n(alpha) = h_n(u) * |alpha|**|n - s| * exp(1j * (n - s) * arg(alpha)),   u = |alpha|**2,

with real functions ``h_n``. The SU(1,1) family uses the discrete-series matrix
elements ``U^kappa_{ns}``; the Glauber family is ``s = 0`` with
``h_n = exp(-u/2) / sqrt(n!)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import ConvergenceError, DomainError, SupportRangeError
from .special import jacobi, jacobi_sup_norm, log_binomial

__all__ = [
    "KAPPA_MAX",
    "S_MAX",
    "N_MAX",
    "U_MAX",
    "GSCS_MAX_MODULUS",
    "RepresentationLabel",
    "DiskAmplitude",
    "GroupElement",
    "StateCoefficients",
    "CoherentFamily",
    "SU11Family",
    "GlauberFamily",
    "matrix_element",
    "build_state",
    "gscs_state",
    "nonlinear_factorization_check",
]

KAPPA_MAX = 100.0
S_MAX = 100
N_MAX = 20000
# Amplitudes with u >= U_MAX are rejected: truncation cost diverges as u -> 1.
U_MAX = 1.0 - 1e-6
GSCS_MAX_MODULUS = 20.0


@dataclass(frozen=True)
class RepresentationLabel:
    """Discrete-series label ``kappa > 1/2`` and fiducial photon number ``s``."""

    kappa: float
    s: int = 0

    def __post_init__(self):
        if not self.kappa > 0.5:
            raise DomainError(f"kappa must exceed 1/2, got {self.kappa}")
        if int(self.s) != self.s or self.s < 0:
            raise DomainError(f"s must be a nonnegative integer, got {self.s}")
        object.__setattr__(self, "s", int(self.s))
        object.__setattr__(self, "kappa", float(self.kappa))

    @property
    def eta(self) -> float:
        """Detector efficiency ``1 / (2 kappa)``."""
        return 1.0 / (2.0 * self.kappa)

    @property
    def r(self) -> float:
        """``s eta / (1 + s eta)``, the combined parameter of the Mandel curves."""
        se = self.s * self.eta
        return se / (1.0 + se)

    def check_support(self):
        if self.kappa > KAPPA_MAX:
            raise SupportRangeError(f"kappa={self.kappa} exceeds supported maximum {KAPPA_MAX}")
        if self.s > S_MAX:
            raise SupportRangeError(f"s={self.s} exceeds supported maximum {S_MAX}")


@dataclass(frozen=True)
class DiskAmplitude:
    """A point ``alpha`` of the open unit disk."""

    alpha: complex

    def __post_init__(self):
        a = complex(self.alpha)
        if not abs(a) ** 2 < U_MAX:
            raise DomainError(f"|alpha|^2 must be below {U_MAX}, got |alpha|={abs(a)}")
        object.__setattr__(self, "alpha", a)

    @classmethod
    def from_polar(cls, modulus: float, phase: float = 0.0) -> "DiskAmplitude":
        return cls(cmath.rect(modulus, phase))

    @classmethod
    def from_rapidity(cls, rho: complex) -> "DiskAmplitude":
        rho = complex(rho)
        return cls(cmath.rect(math.tanh(abs(rho)), cmath.phase(rho)))

    @property
    def u(self) -> float:
        return abs(self.alpha) ** 2

    @property
    def modulus(self) -> float:
        return abs(self.alpha)

    @property
    def phase(self) -> float:
        return cmath.phase(self.alpha)

    @property
    def rho(self) -> complex:
        """Rapidity ``artanh|alpha| * exp(i arg alpha)``."""
        return cmath.rect(math.atanh(abs(self.alpha)), self.phase)

    def group_element(self) -> "GroupElement":
        return GroupElement.from_amplitude(self)


@dataclass(frozen=True)
class GroupElement:
    """SU(1,1) matrix ``[[a, b], [conj(b), conj(a)]]``."""

    a_entry: complex
    b_entry: complex

    @classmethod
    def from_amplitude(cls, amp: DiskAmplitude) -> "GroupElement":
        # p(conj(alpha)): diagonal (1-u)^(-1/2), upper right (1-u)^(-1/2) conj(alpha)
        c = 1.0 / math.sqrt(1.0 - amp.u)
        return cls(complex(c), c * amp.alpha.conjugate())

    def determinant(self) -> float:
        return abs(self.a_entry) ** 2 - abs(self.b_entry) ** 2

    def as_matrix(self) -> np.ndarray:
        a, b = self.a_entry, self.b_entry
        return np.array([[a, b], [b.conjugate(), a.conjugate()]])


@dataclass(frozen=True)
class StateCoefficients:
    """Fock coefficients ``phi_0 .. phi_N`` with a certified bound on the discarded mass."""

    coeffs: np.ndarray
    truncation_n: int
    tail_bound: float
    family: "CoherentFamily | None" = field(default=None, compare=False)
    amplitude: complex | None = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.coeffs) ** 2

    def norm_sq(self) -> float:
        return float(np.sum(self.probabilities))

    def padded(self, n: int) -> np.ndarray:
        """Coefficients on levels ``0..n``, zero-filled or cut as needed."""
        out = np.zeros(n + 1, dtype=complex)
        m = min(n, self.truncation_n)
        out[: m + 1] = self.coeffs[: m + 1]
        return out


def _check_tol(tol):
    if not 1e-14 < tol < 1e-2:
        raise DomainError(f"tol must lie in (1e-14, 1e-2), got {tol}")


class CoherentFamily:
    """Common contract of the coherent-state families.

    Subclasses provide the real sequence ``h_n(u)``, the resolving weight
    ``w(u)``, a reduced form of ``h_n`` that is polynomial in ``u`` (what the
    quadrature integrates against its own weight) and a certified truncation.
    """

    s: int = 0
    radius_sq: float = math.inf
    label: RepresentationLabel | None = None

    def h(self, u, n_max: int) -> np.ndarray:
        """``h_n(u)`` for ``n = 0..n_max``, shape ``(n_max + 1,) + u.shape``."""
        raise NotImplementedError

    def reduced_h(self, u, n_max: int) -> np.ndarray:
        raise NotImplementedError

    def weight(self, u):
        raise NotImplementedError

    def truncation(self, u: float, tol: float) -> tuple[int, float]:
        """Smallest admissible ``N`` and a rigorous bound on ``sum_{n>N} P_n``."""
        raise NotImplementedError

    def radial_rule(self, order: int, pole_order: float = 0.0, u_max: float | None = None):
        """Nodes/weights for ``int w(u) (1-u)^(-pole_order) h_m h_n g du``.

        Returned weights multiply ``reduced_h[m] * reduced_h[n] * g`` at the
        nodes. Implemented in :mod:`su11cs.quadrature`.
        """
        raise NotImplementedError

    def check_amplitude(self, alpha: complex) -> complex:
        return complex(alpha)

    def coefficients(self, alpha: complex, n_max: int) -> np.ndarray:
        alpha = self.check_amplitude(alpha)
        n = np.arange(n_max + 1)
        if alpha == 0:
            # the fiducial state itself, exactly
            return (n == self.s).astype(complex)
        u = abs(alpha) ** 2
        d = n - self.s
        hn = self.h(np.array(u), n_max)
        with np.errstate(under="ignore"):
            mono = np.abs(alpha) ** np.abs(d).astype(float)
        mono = np.where(d == 0, 1.0, mono)
        return hn * mono * np.exp(1j * d * cmath.phase(alpha))

    def state(self, alpha: complex, tol: float = 1e-12) -> StateCoefficients:
        _check_tol(tol)
        return self._state(alpha, tol)

    def _state(self, alpha, tol):
        alpha = self.check_amplitude(alpha)
        n_trunc, tail = self.truncation(abs(alpha) ** 2, tol)
        return StateCoefficients(self.coefficients(alpha, n_trunc), n_trunc, tail, self, alpha)


class SU11Family(CoherentFamily):
    """States ``U^kappa(p(conj alpha)) |s>`` of the discrete series."""

    radius_sq = 1.0

    def __init__(self, label: RepresentationLabel):
        label.check_support()
        self.label = label
        self.kappa = label.kappa
        self.s = label.s

    def __repr__(self):
        return f"SU11Family(kappa={self.kappa}, s={self.s})"

    def __eq__(self, other):
        return isinstance(other, SU11Family) and other.label == self.label

    def __hash__(self):
        return hash(self.label)

    def check_amplitude(self, alpha):
        return DiskAmplitude(alpha).alpha

    def weight(self, u):
        return (2 * self.kappa - 1) / (1 - np.asarray(u, dtype=float)) ** 2

    def _log_prefactor(self, n):
        # log of sqrt(n_<! Gamma(2k + n_>) / (n_>! Gamma(2k + n_<)))
        k2, s = 2 * self.kappa, self.s
        lo = np.minimum(n, s)
        hi = np.maximum(n, s)
        # paired so that n = s cancels exactly
        return 0.5 * ((gammaln(lo + 1) - gammaln(hi + 1)) + (gammaln(k2 + hi) - gammaln(k2 + lo)))

    def reduced_h(self, u, n_max):
        """``h_n(u) / (1-u)^kappa``: sign, gamma prefactor and Jacobi factor."""
        if n_max > N_MAX:
            raise SupportRangeError(f"n={n_max} exceeds supported maximum {N_MAX}")
        u = np.asarray(u, dtype=float)
        x = 1 - 2 * u
        s, b = self.s, 2 * self.kappa - 1
        out = np.zeros((n_max + 1,) + u.shape)
        n = np.arange(n_max + 1)
        pref = np.exp(self._log_prefactor(n))
        for m in range(min(s, n_max + 1)):
            # n < s: degree-n Jacobi, sign (-1)^(s-n)
            out[m] = (-1.0) ** (s - m) * pref[m] * jacobi(m, s - m, b, x)
        if n_max >= s:
            a = (n[s:] - s).astype(float).reshape((-1,) + (1,) * u.ndim)
            out[s:] = pref[s:].reshape(a.shape) * jacobi(s, a, b, x)
        return out

    def h(self, u, n_max):
        u = np.asarray(u, dtype=float)
        return self.reduced_h(u, n_max) * (1 - u) ** self.kappa

    def _log_majorant(self, n, u):
        # log of an upper bound on P_n for n >= s (endpoint bound on the Jacobi factor)
        s, k = self.s, self.kappa
        return (2 * self._log_prefactor(n) + 2 * k * math.log1p(-u)
                + (n - s) * math.log(u) + 2 * jacobi_sup_norm(s, n - s, 2 * k - 1))

    def truncation(self, u, tol):
        s, k = self.s, self.kappa
        if u == 0.0:
            return s, 0.0
        if not 0 <= u < U_MAX:
            raise DomainError(f"u must lie in [0, {U_MAX}), got {u}")
        # Past n_switch the majorant ratio q(n) = u (2k+n)/(n+1) ((n+1)/(n+1-s))^2 is
        # decreasing, so once q(N+1) <= (1+u)/2 the tail is a dominated geometric series.
        n_switch = s
        while log_binomial(n_switch, s) < log_binomial(s + 2 * k - 1, s):
            n_switch += 1
        gate = (1 + u) / 2
        log_tol = math.log(tol)
        start = max(s, n_switch - 1)
        chunk = 512
        while start <= N_MAX:
            n = np.arange(start, min(start + chunk, N_MAX + 1), dtype=float)
            m = n + 1
            q = u * (2 * k + m) / (m + 1) * ((m + 1) / (m + 1 - s)) ** 2
            with np.errstate(divide="ignore", invalid="ignore"):
                log_tail = self._log_majorant(m, u) - np.log1p(-np.where(q < 1, q, 0.0))
            ok = (q <= gate) & (log_tail <= log_tol)
            if np.any(ok):
                i = int(np.argmax(ok))
                return int(n[i]), float(math.exp(log_tail[i]))
            start += chunk
        raise ConvergenceError(
            f"no certified truncation below N_MAX={N_MAX} for kappa={k}, s={s}, u={u}, tol={tol}")

    def radial_rule(self, order, pole_order=0.0, u_max=None):
        from .quadrature import su11_radial_rule
        return su11_radial_rule(self.kappa, order, pole_order, u_max)


class GlauberFamily(CoherentFamily):
    """Standard coherent states, ``h_n(u) = exp(-u/2) / sqrt(n!)`` with ``w = 1``."""

    s = 0
    radius_sq = math.inf

    def __repr__(self):
        return "GlauberFamily()"

    def __eq__(self, other):
        return isinstance(other, GlauberFamily)

    def __hash__(self):
        return hash("GlauberFamily")

    def check_amplitude(self, alpha):
        alpha = complex(alpha)
        if abs(alpha) > GSCS_MAX_MODULUS:
            raise SupportRangeError(f"|alpha|={abs(alpha)} exceeds supported maximum {GSCS_MAX_MODULUS}")
        return alpha

    def weight(self, u):
        return np.ones_like(np.asarray(u, dtype=float))

    def reduced_h(self, u, n_max):
        u = np.asarray(u, dtype=float)
        n = np.arange(n_max + 1).reshape((-1,) + (1,) * u.ndim)
        return np.exp(-0.5 * gammaln(n + 1)) + np.zeros((n_max + 1,) + u.shape)

    def h(self, u, n_max):
        u = np.asarray(u, dtype=float)
        return self.reduced_h(u, n_max) * np.exp(-u / 2)

    def coefficients(self, alpha, n_max):
        # log domain: |alpha|^n overflows and 1/sqrt(n!) underflows separately for |alpha| ~ 20
        alpha = self.check_amplitude(alpha)
        n = np.arange(n_max + 1)
        if alpha == 0:
            return (n == 0).astype(complex)
        r = abs(alpha)
        log_mod = -0.5 * r * r - 0.5 * gammaln(n + 1) + n * math.log(r)
        return np.exp(log_mod) * np.exp(1j * n * cmath.phase(alpha))

    def truncation(self, u, tol):
        if u == 0.0:
            return 0, 0.0
        # Poisson ratio u/(n+1) decreases; bound the tail by P_{N+1} / (1 - u/(N+2)).
        log_tol = math.log(tol)
        n = max(int(math.ceil(u)), 0)
        while n <= N_MAX:
            m = n + 1
            q = u / (m + 1)
            if q <= 0.5:
                log_tail = -u + m * math.log(u) - math.lgamma(m + 1) - math.log1p(-q)
                if log_tail <= log_tol:
                    return n, math.exp(log_tail)
            n += 1
        raise ConvergenceError(f"no certified truncation below N_MAX={N_MAX} for u={u}")

    def radial_rule(self, order, pole_order=0.0, u_max=None):
        from .quadrature import glauber_radial_rule
        return glauber_radial_rule(order, pole_order, u_max)


def matrix_element(label: RepresentationLabel, n: int, amp: DiskAmplitude) -> complex:
    """``U^kappa_{ns}(p(conj alpha))`` assembled from its closed form.

    Sign factor ``sgn(n - s)^(n - s)`` with ``sgn(0) = 1``; the level ``n = s``
    goes through the ``n >= s`` branch.
    """
    label.check_support()
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n}")
    if n > N_MAX:
        raise SupportRangeError(f"n={n} exceeds supported maximum {N_MAX}")
    if not isinstance(amp, DiskAmplitude):
        amp = DiskAmplitude(amp)
    k, s, u = label.kappa, label.s, amp.u
    if u == 0.0:
        return complex(n == s)
    lo, hi = min(n, s), max(n, s)
    log_pref = 0.5 * ((math.lgamma(lo + 1) - math.lgamma(hi + 1))
                      + (math.lgamma(2 * k + hi) - math.lgamma(2 * k + lo)))
    sign = (-1.0) ** (n - s) if n < s else 1.0
    jac = float(jacobi(lo, hi - lo, 2 * k - 1, 1 - 2 * u))
    mono = amp.alpha ** (n - s) if n >= s else amp.alpha.conjugate() ** (s - n)
    return math.exp(log_pref + k * math.log1p(-u)) * sign * jac * mono


def build_state(label: RepresentationLabel, amp, tol: float = 1e-12) -> StateCoefficients:
    """Coefficients of ``|alpha; kappa; s>`` with ``tail_bound <= tol``."""
    if isinstance(amp, DiskAmplitude):
        amp = amp.alpha
    return SU11Family(label).state(amp, tol)


def gscs_state(alpha: complex, tol: float = 1e-12) -> StateCoefficients:
    """Glauber coefficients ``alpha^n exp(-u/2) / sqrt(n!)`` with a Poisson tail bound."""
    return GlauberFamily().state(alpha, tol)


def nonlinear_factorization_check(label: RepresentationLabel, amp, tol: float = 1e-13) -> float:
    """Max deviation between ``s = 0`` coefficients and ``(1-u)^kappa alpha^n / sqrt(x_n!)``.

    ``x_n = n / (2 kappa - 1 + n)`` and ``x_n! = x_1 x_2 ... x_n``, accumulated
    as a running product independent of the gamma-function route.
    """
    if label.s != 0:
        raise DomainError("the nonlinear form exists only for s = 0")
    if not isinstance(amp, DiskAmplitude):
        amp = DiskAmplitude(amp)
    if amp.u == 0.0:
        return 0.0
    st = build_state(label, amp, tol)
    n = np.arange(1, st.truncation_n + 1)
    xfact = np.concatenate([[1.0], np.cumprod(n / (2 * label.kappa - 1 + n))])
    powers = amp.alpha ** np.arange(st.truncation_n + 1)
    ref = (1 - amp.u) ** label.kappa * powers / np.sqrt(xfact)
    return float(np.max(np.abs(st.coeffs - ref)))
