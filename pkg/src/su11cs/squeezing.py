"""su(1,1) generators on a truncated Fock space, displacements and squeezing.

Conventions: ``K1 = i/2 (K+ - K-)``, ``K2 = (K+ + K-)/2``, so that
``[K1, K2] = -i K0``. Expectation values in ``|alpha; kappa; s>``:

    <K0> = (kappa + s)(1 + u)/(1 - u)
    <K+> = 2 (kappa + s) conj(alpha)/(1 - u),   <K-> = conj(<K+>)
    <K1> = 2 (kappa + s) Im(alpha)/(1 - u),     <K2> = 2 (kappa + s) Re(alpha)/(1 - u)
    dK1  = sqrt((kappa + s(s + 2 kappa))/2) |1 - alpha^2| / (1 - u)
    dK2  = sqrt((kappa + s(s + 2 kappa))/2) |1 + alpha^2| / (1 - u)

The first moments follow from ``<K0>^2 - <K1>^2 - <K2>^2 = (kappa + s)^2``
(the group action preserves this form) and are what the coefficient
contraction in :func:`numeric_moments` reproduces.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import DomainError, TruncationError
from .states import DiskAmplitude, RepresentationLabel, SU11Family, build_state
from .statistics import mean_photon_number

__all__ = [
    "OperatorRole",
    "SqueezedAxis",
    "TruncatedOperator",
    "SqueezingReport",
    "build_generators",
    "quadrature_generators",
    "ladder_operators",
    "even_odd_generators",
    "displacement_operator",
    "truncation_flux_bound",
    "DISPLACEMENT_LEAK_TOL",
    "squeezing_report",
    "numeric_moments",
    "phase_space_point",
    "phase_space_point_rapidity",
    "squeezing_parameter",
    "squeezing_inequality_surfaces",
    "uncertainty_slack",
    "trivial_inequality_sides",
]

DISPLACEMENT_LEAK_TOL = 1e-8
RHO_MAX = 3.0


class OperatorRole(enum.Enum):
    K_PLUS = "KPlus"
    K_MINUS = "KMinus"
    K_ZERO = "KZero"
    K_ONE = "KOne"
    K_TWO = "KTwo"
    DISPLACEMENT = "Displacement"
    ANNIHILATION = "Annihilation"
    CREATION = "Creation"
    DIAGONAL = "Diagonal"


class SqueezedAxis(enum.Enum):
    NONE = "None"
    K1 = "K1"
    K2 = "K2"
    BOTH = "Both"

    @classmethod
    def from_flags(cls, k1: bool, k2: bool) -> "SqueezedAxis":
        if k1 and k2:
            return cls.BOTH
        return cls.K1 if k1 else cls.K2 if k2 else cls.NONE


@dataclass(frozen=True)
class TruncatedOperator:
    """Dense matrix on Fock levels ``0..truncation_n``."""

    matrix: np.ndarray
    role: OperatorRole
    label: object
    truncation_n: int

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __matmul__(self, other):
        return self.matrix @ (other.matrix if isinstance(other, TruncatedOperator) else other)

    def dagger(self) -> np.ndarray:
        return self.matrix.conj().T


def _ladder_matrices(kappa: float, n_max: int):
    n = np.arange(n_max + 1, dtype=float)
    up = np.sqrt((n[:-1] + 1) * (2 * kappa + n[:-1]))
    k_plus = np.diag(up, -1).astype(complex)
    return k_plus, k_plus.T.copy(), np.diag(n + kappa).astype(complex)


def build_generators(label: RepresentationLabel, n_max: int):
    """``K+``, ``K-``, ``K0`` of the discrete series on levels ``0..n_max``."""
    if n_max < 1:
        raise DomainError(f"truncation must be at least 1, got {n_max}")
    kp, km, k0 = _ladder_matrices(label.kappa, n_max)
    return (TruncatedOperator(kp, OperatorRole.K_PLUS, label, n_max),
            TruncatedOperator(km, OperatorRole.K_MINUS, label, n_max),
            TruncatedOperator(k0, OperatorRole.K_ZERO, label, n_max))


def quadrature_generators(label: RepresentationLabel, n_max: int):
    """``K1 = i/2 (K+ - K-)`` and ``K2 = (K+ + K-)/2``."""
    kp, km, _ = build_generators(label, n_max)
    k1 = 0.5j * (kp.matrix - km.matrix)
    k2 = 0.5 * (kp.matrix + km.matrix)
    return (TruncatedOperator(k1, OperatorRole.K_ONE, label, n_max),
            TruncatedOperator(k2, OperatorRole.K_TWO, label, n_max))


def ladder_operators(n_max: int):
    """Photon annihilation and creation operators ``a``, ``a^dagger``."""
    a = np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1).astype(complex)
    return (TruncatedOperator(a, OperatorRole.ANNIHILATION, None, n_max),
            TruncatedOperator(a.T.copy(), OperatorRole.CREATION, None, n_max))


def even_odd_generators(parity: str, n_sub: int):
    """Two-photon operators restricted to even or odd photon numbers.

    Returns ``(a^2/2, a^dagger^2/2, (a^dagger a + 1/2)/2)`` on the relabelled
    basis ``|m>_e = |2n>`` (``parity='even'``) or ``|m>_o = |2n+1>``
    (``parity='odd'``), ``n = 0..n_sub``, together with the discrete-series
    generators at ``kappa = 1/4`` or ``3/4`` for comparison.
    """
    if parity not in ("even", "odd"):
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")
    offset = 0 if parity == "even" else 1
    kappa = 0.25 if parity == "even" else 0.75
    full = 2 * n_sub + offset + 2
    a, adag = ladder_operators(full)
    idx = 2 * np.arange(n_sub + 1) + offset
    sub = np.ix_(idx, idx)
    a2 = (a.matrix @ a.matrix / 2)[sub]
    ad2 = (adag.matrix @ adag.matrix / 2)[sub]
    k0 = (0.5 * (adag.matrix @ a.matrix + 0.5 * np.eye(full + 1)))[sub]
    kp, km, kz = _ladder_matrices(kappa, n_sub)
    return (a2, ad2, k0), (km, kp, kz)


def truncation_flux_bound(coupling_top: float, rho_abs: float, column_top: complex) -> float:
    """First-order estimate of what the top level ``N`` lets through to ``N + 1``.

    ``|rho| * <N+1|K+|N> * |psi_N|`` bounds the Duhamel error term of the
    truncated exponential up to the variation of ``psi_N`` along the path.
    """
    return rho_abs * coupling_top * abs(column_top)


def displacement_operator(label: RepresentationLabel, rho: complex, n_max: int,
                          leak_tol: float = DISPLACEMENT_LEAK_TOL,
                          certify: bool = True) -> TruncatedOperator:
    """``exp(rho K+ - conj(rho) K-)`` on levels ``0..n_max`` (scaling and squaring).

    The column of the fiducial level ``s`` is certified by
    :func:`truncation_flux_bound`; :class:`TruncationError` is raised if it
    exceeds ``leak_tol``. ``certify=False`` skips the check, for measuring
    the error of an uncertified truncation.
    """
    rho = complex(rho)
    if abs(rho) > RHO_MAX:
        raise DomainError(f"|rho| must not exceed {RHO_MAX}, got {abs(rho)}")
    if n_max <= label.s:
        raise DomainError(f"truncation {n_max} must exceed s={label.s}")
    kp, km, _ = _ladder_matrices(label.kappa, n_max)
    u = expm(rho * kp - rho.conjugate() * km)
    coupling = math.sqrt((n_max + 1) * (2 * label.kappa + n_max))
    flux = truncation_flux_bound(coupling, abs(rho), u[n_max, label.s])
    if certify and flux > leak_tol:
        raise TruncationError(
            f"displacement with |rho|={abs(rho):.3g} leaks {flux:.2e} past level {n_max}; "
            f"increase the truncation")
    return TruncatedOperator(u, OperatorRole.DISPLACEMENT, label, n_max)


@dataclass(frozen=True)
class SqueezingReport:
    mean_k0: float
    mean_k1: float
    mean_k2: float
    delta_k1: float
    delta_k2: float
    uncertainty_product: float
    bound: float
    squeezed_axis_paper_def: SqueezedAxis
    squeezed_axis_we_def: SqueezedAxis


def _report(k0, k1, k2, v1, v2):
    # takes variances so the strict comparison below sees no sqrt round trip
    half = 0.5 * abs(k0)
    d1, d2 = math.sqrt(v1), math.sqrt(v2)
    ours = SqueezedAxis.from_flags(d1 <= half, d2 <= half)
    # variance criterion: variance (not deviation) against |<K0>|/2
    we = SqueezedAxis.from_flags(v1 < half, v2 < half)
    return SqueezingReport(k0, k1, k2, d1, d2, d1 * d2, half, ours, we)


def squeezing_report(label: RepresentationLabel, amp) -> SqueezingReport:
    """Closed-form first and second moments of ``K0``, ``K1``, ``K2``."""
    if not isinstance(amp, DiskAmplitude):
        amp = DiskAmplitude(amp)
    k, s, a, u = label.kappa, label.s, amp.alpha, amp.u
    c2 = (k + s * (s + 2 * k)) / 2
    k0 = (k + s) * (1 + u) / (1 - u)
    k1 = 2 * (k + s) * a.imag / (1 - u)
    k2 = 2 * (k + s) * a.real / (1 - u)
    v1 = c2 * abs(1 - a * a) ** 2 / (1 - u) ** 2
    v2 = c2 * abs(1 + a * a) ** 2 / (1 - u) ** 2
    return _report(k0, k1, k2, v1, v2)


def _apply_plus(kappa, psi):
    # K+ psi on levels 0..N+1
    n = np.arange(psi.size, dtype=float)
    out = np.zeros(psi.size + 1, dtype=complex)
    out[1:] = np.sqrt((n + 1) * (2 * kappa + n)) * psi
    return out


def _apply_minus(kappa, psi):
    n = np.arange(psi.size, dtype=float)
    out = np.zeros(psi.size + 1, dtype=complex)
    out[:-2] = np.sqrt(n[1:] * (2 * kappa + n[1:] - 1)) * psi[1:]
    return out


def numeric_moments(label: RepresentationLabel, amp, n_max: int | None = None,
                    tol: float = 1e-13) -> SqueezingReport:
    """Moments by contracting the coefficient vector with the generator actions.

    The state is cut at its certified truncation for ``tol``, or at ``n_max``
    if given; the generators act on one extra level so no term is lost at the top.
    """
    if not isinstance(amp, DiskAmplitude):
        amp = DiskAmplitude(amp)
    if n_max is None:
        psi = build_state(label, amp, tol).coeffs
    else:
        psi = SU11Family(label).coefficients(amp.alpha, n_max)
    k = label.kappa
    n = np.arange(psi.size, dtype=float)
    pad = np.concatenate([psi, [0.0]])
    kp = _apply_plus(k, psi)
    km = _apply_minus(k, psi)
    k1v = 0.5j * (kp - km)
    k2v = 0.5 * (kp + km)
    k0 = float(np.sum((n + k) * np.abs(psi) ** 2))
    m1 = np.vdot(pad, k1v).real
    m2 = np.vdot(pad, k2v).real
    v1 = max(np.vdot(k1v, k1v).real - m1 * m1, 0.0)
    v2 = max(np.vdot(k2v, k2v).real - m2 * m2, 0.0)
    return _report(k0, float(m1), float(m2), float(v1), float(v2))


def phase_space_point(label: RepresentationLabel, amp) -> complex:
    """``sqrt(nbar(u)) exp(i arg alpha)``."""
    if not isinstance(amp, DiskAmplitude):
        amp = DiskAmplitude(amp)
    return cmath.rect(math.sqrt(mean_photon_number(label, amp.u)), amp.phase)


def phase_space_point_rapidity(label: RepresentationLabel, amp) -> complex:
    """Same point from the rapidity: ``sqrt((kappa + s) cosh 2|rho| - kappa)``."""
    if not isinstance(amp, DiskAmplitude):
        amp = DiskAmplitude(amp)
    k, s = label.kappa, label.s
    return cmath.rect(math.sqrt((k + s) * math.cosh(2 * abs(amp.rho)) - k), amp.phase)


def squeezing_parameter(label: RepresentationLabel, definition: str = "paper") -> float:
    """``S = (kappa+s)^2 / (2 (kappa + s(s+2kappa)))``, or ``S'`` for the variance criterion."""
    k, s = label.kappa, label.s
    casimir_var = k + s * (s + 2 * k)
    if definition == "paper":
        return 0.5 * (k + s) ** 2 / casimir_var
    if definition == "we":
        return (k + s) / casimir_var
    raise DomainError(f"unknown squeezing definition {definition!r}")


def squeezing_inequality_surfaces(label: RepresentationLabel, rho_grid, phi_grid,
                                  axis: str = "K1", definition: str = "paper") -> np.ndarray:
    """Signed margin of a squeezing inequality on an ``(|rho|, phi)`` grid.

    With ``definition='paper'`` and ``axis='K1'`` this is
    ``S - (1 - tanh^2(2|rho|) cos^2(phi))``, nonnegative exactly where
    ``dK1 <= |<K0>|/2``; ``axis='K2'`` swaps ``cos`` for ``sin``. With
    ``definition='we'`` the margin is
    ``S' cosh(2|rho|) - (1 + sinh^2(2|rho|) sin^2(phi))`` (``cos`` for ``K2``),
    nonnegative where ``dK_i^2 <= |<K0>|/2``.

    Returns shape ``(len(rho_grid), len(phi_grid))``.
    """
    rho = np.asarray(rho_grid, dtype=float)[:, None]
    phi = np.asarray(phi_grid, dtype=float)[None, :]
    if axis not in ("K1", "K2"):
        raise DomainError(f"axis must be 'K1' or 'K2', got {axis!r}")
    S = squeezing_parameter(label, definition)
    if definition == "paper":
        trig = np.cos(phi) ** 2 if axis == "K1" else np.sin(phi) ** 2
        return S - (1 - np.tanh(2 * rho) ** 2 * trig)
    trig = np.sin(phi) ** 2 if axis == "K1" else np.cos(phi) ** 2
    return S * np.cosh(2 * rho) - (1 + np.sinh(2 * rho) ** 2 * trig)


def uncertainty_slack(label: RepresentationLabel, amp) -> float:
    """``(kappa + s(s+2kappa)) |1 - alpha^4| - (kappa + s)(1 - u^2)`` (nonnegative)."""
    if not isinstance(amp, DiskAmplitude):
        amp = DiskAmplitude(amp)
    k, s, a, u = label.kappa, label.s, amp.alpha, amp.u
    return (k + s * (s + 2 * k)) * abs(1 - a ** 4) - (k + s) * (1 - u * u)


def trivial_inequality_sides(label: RepresentationLabel, rho_abs, phi):
    """Both sides of the uncertainty relation in rapidity form.

    Left: ``sqrt(1 + (1/4) tanh^2(2r) sinh^2(2r) sin^2(2 phi))``, which equals
    ``|1 - alpha^4| / (1 - |alpha|^4)``; right: ``(kappa + s)/(kappa + s(s+2kappa))``.
    """
    r = np.asarray(rho_abs, dtype=float)
    phi = np.asarray(phi, dtype=float)
    lhs = np.sqrt(1 + 0.25 * np.tanh(2 * r) ** 2 * np.sinh(2 * r) ** 2 * np.sin(2 * phi) ** 2)
    return lhs, squeezing_parameter(label, "we")
