"""Coherent-state quantization on the disk (or the plane for Glauber states).

A symbol ``f(alpha) = F(u) * m(alpha)`` with a radial factor ``F`` and a
monomial ``m`` in ``{1, alpha, conj(alpha)}`` is mapped to

    A_f = int d^2 alpha / pi  w(u) f(alpha) |alpha><alpha|.

With ``alpha = sqrt(u) exp(i theta)`` the measure is ``du dtheta / (2 pi)``
and the angular integral picks one diagonal of the matrix exactly, so only
radial integrals are evaluated, with the Gaussian rules of
:mod:`su11cs.quadrature`.
"""
from __future__ import annotations

import cmath
import enum
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .errors import DomainError, LabelMismatchError, TruncationError, QuadratureWarning
from .squeezing import (
    DISPLACEMENT_LEAK_TOL, OperatorRole, TruncatedOperator, truncation_flux_bound,
)
from .states import (
    CoherentFamily, DiskAmplitude, GlauberFamily, RepresentationLabel, SU11Family,
    StateCoefficients,
)

__all__ = [
    "Monomial",
    "PortraitDensity",
    "as_family",
    "radial_integral",
    "identity_resolution_check",
    "orthonormality_matrix",
    "overlap",
    "portrait_density",
    "portrait_normalization",
    "radial_section",
    "count_crests",
    "peak_cell",
    "alpha_cell",
    "corrective_weight",
    "quantize_radial_function",
    "k_minus_quantization_check",
    "lower_symbol",
    "tau_series",
    "displacement_from_quantized",
]

REFINE_RTOL = 1e-10
IDENTITY_WARN_TOL = 1e-8
MAX_ORDER = 4096
# overlaps are summed to this tail so that w(u) ~ (1-u)^-2 near the rim cannot amplify the cut
_OVERLAP_TAIL = 1e-30


class Monomial(enum.Enum):
    ONE = "1"
    ALPHA = "alpha"
    ALPHA_BAR = "alpha_bar"


def as_family(obj) -> CoherentFamily:
    """Accept a family, a :class:`RepresentationLabel` or the string ``'gscs'``."""
    if isinstance(obj, CoherentFamily):
        return obj
    if isinstance(obj, RepresentationLabel):
        return SU11Family(obj)
    if isinstance(obj, str) and obj.lower() in ("gscs", "glauber"):
        return GlauberFamily()
    raise DomainError(f"cannot interpret {obj!r} as a coherent-state family")


def _family_key(family: CoherentFamily):
    return family.label if isinstance(family, SU11Family) else family


def _log_reduced_glauber(n):
    return -0.5 * gammaln(np.asarray(n, dtype=float) + 1)


def _pair_values(family, u, lo, hi, exps):
    """``reduced_h[lo] * reduced_h[hi] * u**exps`` at nodes ``u``; shape ``(len(lo), len(u))``.

    Glauber reduced values are formed in the log domain since ``1/sqrt(n!)`` and
    Laguerre nodes of order several hundred under/overflow separately.
    """
    lo = np.asarray(lo)
    hi = np.asarray(hi)
    exps = np.asarray(exps, dtype=float)[:, None]
    u = np.asarray(u, dtype=float)[None, :]
    if isinstance(family, GlauberFamily):
        with np.errstate(divide="ignore"):
            logu = np.log(u)
        logs = (_log_reduced_glauber(lo)[:, None] + _log_reduced_glauber(hi)[:, None]
                + np.where(exps == 0, 0.0, exps * logu))
        return np.exp(logs)
    n_top = int(max(lo.max(initial=0), hi.max(initial=0)))
    red = family.reduced_h(u[0], n_top)
    return red[lo] * red[hi] * np.where(exps == 0, 1.0, u ** exps)


def radial_integral(family: CoherentFamily, integrand: Callable[[np.ndarray, int], np.ndarray],
                    order: int, pole_order: float = 0.0, u_max: float | None = None,
                    rtol: float = REFINE_RTOL, warn_tol: float | None = None):
    """Integrate with the family's radial rule, doubling the order until stable.

    ``integrand(nodes, order)`` returns values with the node axis last; the
    result is accepted once doubling the order moves every entry by less than
    ``rtol * max(1, |value|)``. Returns ``(values, change, order)``; emits
    :class:`QuadratureWarning` if ``MAX_ORDER`` is reached first, or if the
    final change exceeds ``warn_tol``.
    """
    def evaluate(m):
        nodes, weights = family.radial_rule(m, pole_order, u_max)
        return np.tensordot(integrand(nodes, m), weights, axes=([-1], [0]))

    m = max(int(order), 2)
    prev = evaluate(m)
    while True:
        cur = evaluate(2 * m)
        change = float(np.max(np.abs(cur - prev) / np.maximum(1.0, np.abs(cur)), initial=0.0))
        m *= 2
        if change <= rtol:
            break
        if m >= MAX_ORDER:
            warnings.warn(f"radial quadrature not converged at order {m}: change {change:.2e}",
                          QuadratureWarning, stacklevel=2)
            break
        prev = cur
    if warn_tol is not None and change > warn_tol:
        warnings.warn(f"successive refinements differ by {change:.2e}", QuadratureWarning,
                      stacklevel=2)
    return cur, change, m


def _diag_exponents(n, s):
    return np.abs(np.asarray(n) - s)


def identity_resolution_check(family, n_list, order: int | None = None) -> np.ndarray:
    """``int_0^1 w(u) |phi_n|^2 du`` for each ``n`` (angular part done exactly).

    Each entry should be 1: these are the diagonal elements of the resolved identity.
    """
    family = as_family(family)
    n = np.asarray(list(n_list), dtype=int)
    if n.size == 0:
        return np.zeros(0)
    if np.any(n < 0):
        raise DomainError("levels must be nonnegative")
    s = family.s
    order = order or int(n.max()) + s + 4
    vals, _, _ = radial_integral(
        family, lambda u, m: _pair_values(family, u, n, n, _diag_exponents(n, s)), order,
        warn_tol=IDENTITY_WARN_TOL)
    return vals


def orthonormality_matrix(family, n_max: int, order: int | None = None,
                          n_angle: int | None = None) -> np.ndarray:
    """Gram matrix ``int d^2 alpha/pi w conj(phi_m) phi_n`` for ``m, n <= n_max``.

    Unlike :func:`identity_resolution_check` the angle is integrated here too,
    with an equispaced rule of ``n_angle > 2 n_max`` points (exact for the
    harmonics ``exp(i k theta)``, ``|k| <= 2 n_max``), so the off-diagonal
    zeros are produced by the rule rather than assumed.
    """
    family = as_family(family)
    s = family.s
    order = order or n_max + s + 4
    n_angle = n_angle or 2 * n_max + 3
    theta = 2 * np.pi * np.arange(n_angle) / n_angle
    levels = np.arange(n_max + 1)
    d = levels - s
    phase = np.exp(1j * np.outer(d, theta))  # (n, angle)

    def gram_at(u, _m):
        # conj(phi_m) phi_n without the (1-u)^kappa factors, which the rule absorbs
        red = family.reduced_h(u, n_max) if not isinstance(family, GlauberFamily) else np.exp(
            _log_reduced_glauber(levels))[:, None] * np.ones_like(u)[None, :]
        mods = red * np.sqrt(u)[None, :] ** np.abs(d)[:, None]
        amp = mods[:, :, None] * phase[:, None, :]  # (n, node, angle)
        g = np.einsum("mka,nka->mnk", amp.conj(), amp) / n_angle
        return g

    vals, _, _ = radial_integral(family, gram_at, order)
    return vals


def overlap(family, amp1, amp2, tol: float = 1e-13) -> complex:
    """``<alpha_1 | alpha_2>``, summed until the shorter state's tail is below ``tol**2``."""
    family = as_family(family)
    a1 = _alpha(amp1)
    a2 = _alpha(amp2)
    n1, _ = family.truncation(abs(a1) ** 2, min(tol * tol, tol))
    n2, _ = family.truncation(abs(a2) ** 2, min(tol * tol, tol))
    n = max(min(n1, n2), family.s)
    return complex(np.vdot(family.coefficients(a1, n), family.coefficients(a2, n)))


def _alpha(amp):
    return amp.alpha if isinstance(amp, DiskAmplitude) else complex(amp)


@dataclass(frozen=True)
class PortraitDensity:
    """``w(|beta|^2) |<alpha|beta>|^2`` on a cell-centred polar grid.

    ``grid[j, k]`` sits at radius ``radii[j] = (j + 1/2) R / n_radial`` and
    angle ``angles[k] = 2 pi k / n_angle``, with ``R = 1`` for the disk.
    """

    grid: np.ndarray
    radii: np.ndarray
    angles: np.ndarray
    alpha: complex
    label: object

    def __post_init__(self):
        for name in ("grid", "radii", "angles"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def _overlap_rows(family, alpha, u_nodes, theta):
    # <alpha|beta> for beta = sqrt(u) e^{i theta}: (nodes, angles), plus w(u) at the nodes
    n, _ = family.truncation(abs(alpha) ** 2, _OVERLAP_TAIL)
    n = max(n, family.s)
    c = family.coefficients(alpha, n).conj()
    d = np.arange(n + 1) - family.s
    h = family.h(u_nodes, n) if not isinstance(family, GlauberFamily) else (
        np.exp(_log_reduced_glauber(np.arange(n + 1)))[:, None] * np.exp(-u_nodes / 2)[None, :])
    with np.errstate(under="ignore"):
        radial = h * np.sqrt(u_nodes)[None, :] ** np.abs(d)[:, None]  # (n, nodes)
    ang = np.exp(1j * np.outer(d, theta))  # (n, angles)
    return np.einsum("n,nr,na->ra", c, radial, ang), n


def portrait_density(family, alpha, n_radial: int = 64, n_angle: int = 64,
                     radius: float | None = None) -> PortraitDensity:
    """Density of ``beta`` given ``alpha``, a probability on the disk for ``d^2 beta / pi``."""
    family = as_family(family)
    if n_radial < 64 or n_angle < 64:
        raise DomainError(f"portrait grids need at least 64x64 cells, got {n_radial}x{n_angle}")
    alpha = family.check_amplitude(_alpha(alpha))
    if radius is None:
        radius = 1.0 if isinstance(family, SU11Family) else max(4.0, 2 * abs(alpha) + 4.0)
    radii = (np.arange(n_radial) + 0.5) * radius / n_radial
    angles = 2 * np.pi * np.arange(n_angle) / n_angle
    u = radii ** 2
    ov, _ = _overlap_rows(family, alpha, u, angles)
    dens = family.weight(u)[:, None] * np.abs(ov) ** 2
    return PortraitDensity(dens, radii, angles, alpha, _family_key(family))


def portrait_normalization(family, alpha, order: int | None = None) -> float:
    """``int d^2 beta / pi`` of the portrait density by radial Gauss x angular trapezoid."""
    family = as_family(family)
    alpha = family.check_amplitude(_alpha(alpha))
    n, _ = family.truncation(abs(alpha) ** 2, _OVERLAP_TAIL)
    n = max(n, family.s)
    n_angle = 2 * n + 3
    theta = 2 * np.pi * np.arange(n_angle) / n_angle
    order = order or n + family.s + 4

    def integrand(u, _m):
        ov, _ = _overlap_rows(family, alpha, u, theta)
        # the rule carries w(u) h_n h_m / (reduced parts); divide h products back out
        return np.mean(np.abs(ov) ** 2, axis=1) / _rule_density(family, u)

    vals, _, _ = radial_integral(family, integrand, order)
    return float(vals)


def _rule_density(family, u):
    # what the family's radial rule absorbs beyond the reduced functions
    if isinstance(family, GlauberFamily):
        return np.exp(-u)
    return (1 - u) ** (2 * family.kappa)


def radial_section(family, alpha, n_points: int = 4000, radius: float | None = None):
    """Density along the ray ``arg beta = arg alpha`` at cell-centred radii."""
    family = as_family(family)
    alpha = family.check_amplitude(_alpha(alpha))
    if radius is None:
        radius = 1.0 if isinstance(family, SU11Family) else max(4.0, 2 * abs(alpha) + 4.0)
    r = (np.arange(n_points) + 0.5) * radius / n_points
    ov, _ = _overlap_rows(family, alpha, r ** 2, np.array([cmath.phase(alpha)]))
    return r, family.weight(r ** 2) * np.abs(ov[:, 0]) ** 2


def count_crests(values, rel_floor: float = 1e-12) -> int:
    """Interior strict local maxima of a 1-D profile, not counting the global one.

    Maxima below ``rel_floor`` times the global maximum are rounding noise in
    the far tail and are ignored.
    """
    v = np.asarray(values, dtype=float)
    if v.size < 3:
        return 0
    top = v.max()
    inner = (v[1:-1] > v[:-2]) & (v[1:-1] >= v[2:]) & (v[1:-1] > rel_floor * top)
    idx = np.flatnonzero(inner) + 1
    return int(np.sum(idx != int(np.argmax(v))))


def peak_cell(p: PortraitDensity) -> tuple[int, int]:
    j, k = np.unravel_index(int(np.argmax(p.grid)), p.grid.shape)
    return int(j), int(k)


def alpha_cell(p: PortraitDensity) -> tuple[int, int]:
    """Grid cell containing ``alpha``: radial bin and nearest angle node."""
    dr = p.radii[1] - p.radii[0]
    j = min(int(abs(p.alpha) // dr), p.radii.size - 1)
    na = p.angles.size
    k = int(round(cmath.phase(p.alpha) % (2 * np.pi) / (2 * np.pi / na))) % na
    return j, k


def corrective_weight(label: RepresentationLabel):
    """Radial constant and pole order of ``2 kappa (kappa-1) / ((kappa+s)(1-u))``."""
    k, s = label.kappa, label.s
    const = 2 * k * (k - 1) / (k + s)
    return (lambda u: np.full_like(np.asarray(u, dtype=float), const)), 1.0


def _offdiag_exponents(n, s):
    # u-power of the (n-1, n) element for the alpha class
    n = np.asarray(n)
    return np.where(n > s, n - s, s - n + 1)


def quantize_radial_function(family, monomial: Monomial | str = Monomial.ONE,
                             radial: Callable | None = None, pole_order: float = 0.0,
                             n_max: int = 20, u_max: float | None = None,
                             order: int | None = None) -> TruncatedOperator:
    """Operator of the symbol ``radial(u) (1-u)^(-pole_order) * monomial`` on levels ``0..n_max``.

    ``radial`` defaults to 1. The ``alpha`` class fills the superdiagonal
    ``(n-1, n)``; the ``conj(alpha)`` class is its transpose (all elements are real).
    ``u_max`` restricts the symbol to ``u < u_max`` (radial Heaviside factor).
    Raises :class:`DomainError` if the integrand is not integrable at ``u = 1``.
    """
    family = as_family(family)
    monomial = Monomial(monomial)
    s = family.s
    f = radial or (lambda u: np.ones_like(np.asarray(u, dtype=float)))
    order = order or n_max + s + 4
    if monomial is Monomial.ONE:
        n = np.arange(n_max + 1)
        lo, hi, exps = n, n, _diag_exponents(n, s)
    else:
        n = np.arange(1, n_max + 1)
        lo, hi, exps = n - 1, n, _offdiag_exponents(n, s)

    def integrand(u, _m):
        return _pair_values(family, u, lo, hi, exps) * f(u)[None, :]

    vals, _, _ = radial_integral(family, integrand, order, pole_order, u_max)
    mat = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    if monomial is Monomial.ONE:
        mat[n, n] = vals
        role = OperatorRole.DIAGONAL
    elif monomial is Monomial.ALPHA:
        mat[lo, hi] = vals
        role = OperatorRole.ANNIHILATION
    else:
        mat[hi, lo] = np.conj(vals)
        role = OperatorRole.CREATION
    return TruncatedOperator(mat, role, _family_key(family), n_max)


def k_minus_quantization_check(label: RepresentationLabel, n_check: int = 20,
                               corrected: bool = True) -> float:
    """Max deviation of quantized ``alpha`` from the ``K-`` ladder, levels ``1..n_check``.

    With ``corrected=True`` the symbol carries the corrective weight and the
    target is ``sqrt(n (2 kappa + n - 1))``; otherwise the symbol is
    ``2 alpha / (1-u)`` and the target is scaled by ``(kappa+s)/(kappa(kappa-1))``.
    Only defined for ``kappa > 1``.
    """
    if not label.kappa > 1:
        raise DomainError(f"the K- quantization formula needs kappa > 1, got {label.kappa}")
    k, s = label.kappa, label.s
    if corrected:
        radial, pole = corrective_weight(label)
        scale = 1.0
    else:
        radial, pole = (lambda u: np.full_like(np.asarray(u, dtype=float), 2.0)), 1.0
        scale = (k + s) / (k * (k - 1))
    op = quantize_radial_function(label, Monomial.ALPHA, radial, pole, n_max=n_check)
    n = np.arange(1, n_check + 1)
    target = scale * np.sqrt(n * (2 * k + n - 1))
    return float(np.max(np.abs(op.matrix[n - 1, n] - target)))


def lower_symbol(family, operator: TruncatedOperator, amp) -> complex:
    """``<alpha| A |alpha>`` by contracting the coefficients on the operator's levels.

    ``operator.label`` must match the family (``None`` marks family-free operators).
    """
    family = as_family(family)
    key = _family_key(family)
    if operator.label is not None and operator.label != key:
        raise LabelMismatchError(f"operator built for {operator.label!r}, state family is {key!r}")
    c = family.coefficients(family.check_amplitude(_alpha(amp)), operator.truncation_n)
    return complex(np.vdot(c, operator.matrix @ c))


def tau_series(family, operator: TruncatedOperator, u) -> np.ndarray:
    """``tau(u) = sum_n A_{n,n+1} h_n(u) h_{n+1}(u) u^{e_n}`` for a superdiagonal ``A``.

    ``e_n = n - s`` for ``n >= s`` and ``s - n - 1`` below; for such ``A`` the
    lower symbol is ``alpha * tau(|alpha|^2)``.
    """
    family = as_family(family)
    u = np.atleast_1d(np.asarray(u, dtype=float))
    s = family.s
    n = np.arange(operator.truncation_n)
    e = np.where(n >= s, n - s, s - n - 1)
    a = operator.matrix[n, n + 1].real
    vals = _pair_values(family, u, n, n + 1, e) * (_rule_density(family, u))[None, :]
    return a @ vals


def displacement_from_quantized(family, breve_alpha: complex, n_max: int,
                                radial: Callable | None = None, pole_order: float | None = None,
                                leak_tol: float = DISPLACEMENT_LEAK_TOL) -> StateCoefficients:
    """``exp(b A^dagger - conj(b) A) |0>`` with ``A`` the quantized ``alpha``.

    Defaults: weight 1 for Glauber states (``A = a``) and the corrective weight
    for the SU(1,1) family (``A = K-``, needs ``kappa > 1``). The top coupling
    ``A_{N, N+1}`` certifies the cut as in the SU(1,1) displacement.
    """
    family = as_family(family)
    b = complex(breve_alpha)
    if radial is None and pole_order is None:
        if isinstance(family, SU11Family):
            if not family.kappa > 1:
                raise DomainError("the corrective weight needs kappa > 1; pass radial/pole_order")
            radial, pole_order = corrective_weight(family.label)
        else:
            pole_order = 0.0
    pole_order = pole_order or 0.0
    op = quantize_radial_function(family, Monomial.ALPHA, radial, pole_order, n_max=n_max + 1)
    a_full = op.matrix
    a = a_full[: n_max + 1, : n_max + 1]
    u = expm(b * a.conj().T - b.conjugate() * a)
    col = u[:, 0]
    flux = truncation_flux_bound(abs(a_full[n_max, n_max + 1]), abs(b), col[n_max])
    if flux > leak_tol:
        raise TruncationError(f"displaced vacuum leaks {flux:.2e} past level {n_max}; "
                              f"increase the truncation")
    return StateCoefficients(col, n_max, max(0.0, 1.0 - float(np.vdot(col, col).real)), family, b)
