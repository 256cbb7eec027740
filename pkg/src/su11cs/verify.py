"""Invariant suites behind ``su11 verify``.

Each check returns the largest error it observed; a row passes when that
error does not exceed the check's tolerance. Tolerances can be overridden by
name, which is also how the harness is tested against a broken threshold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quantization import (
    Monomial, identity_resolution_check, k_minus_quantization_check, orthonormality_matrix,
    portrait_normalization, quantize_radial_function, displacement_from_quantized,
)
from .squeezing import (
    build_generators, displacement_operator, even_odd_generators, numeric_moments,
    quadrature_generators, squeezing_inequality_surfaces, squeezing_report, uncertainty_slack,
)
from .states import (
    DiskAmplitude, GlauberFamily, RepresentationLabel, SU11Family, build_state, matrix_element,
    nonlinear_factorization_check,
)
from .statistics import (
    crossover_by_bisection, distribution, gscs_distribution, mandel_q, mandel_q_limit_kappa_infinity,
    mandel_q_rsu, mean_photon_number, negative_binomial_pmf, poisson_crossover,
)

__all__ = ["Check", "ReportRow", "SUITES", "run_verify", "format_report"]


@dataclass(frozen=True)
class Check:
    name: str
    tolerance: float
    run: Callable[[], float]


@dataclass(frozen=True)
class ReportRow:
    suite: str
    name: str
    max_error: float
    tolerance: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.suite},{self.name},{self.max_error:.3e},{self.tolerance:.3e},{status}"


L = RepresentationLabel


def _normalization():
    err = 0.0
    for k in (0.75, 1.0, 3.0, 10.0):
        for s in (0, 1, 2, 5):
            for u in (0.0, 0.3, 0.6, 0.9):
                d = distribution(L(k, s), u, 1e-12)
                err = max(err, abs(d.total() + d.tail_mass - 1), abs(d.total() - 1))
    return err


def _negative_binomial():
    err = 0.0
    n = np.arange(101)
    for k in (0.75, 1.0, 2.5, 7.0):
        for u in (0.1, 0.5, 0.8):
            p = np.abs(SU11Family(L(k)).coefficients(math.sqrt(u), 100)) ** 2
            err = max(err, float(np.max(np.abs(p - negative_binomial_pmf(k, u, n)))))
    return err


def _nonlinear():
    return max(nonlinear_factorization_check(L(k), a) for k in (0.75, 2.0, 6.0)
               for a in (0.2, 0.5j, 0.7 * np.exp(1j)))


def _matrix_element_vs_state():
    err = 0.0
    for k, s in ((1.0, 1), (3.0, 2), (0.8, 4)):
        amp = DiskAmplitude(0.6 * np.exp(0.4j))
        st = build_state(L(k, s), amp, 1e-13)
        for n in range(0, 12):
            err = max(err, abs(matrix_element(L(k, s), n, amp) - st.coeffs[n]))
    return err


def _tail_bounds():
    # certified tail minus the true tail (computed far past the cut): must not be negative
    worst = 0.0
    for k, s, u in ((1.0, 0, 0.5), (3.0, 2, 0.7), (10.0, 5, 0.3), (0.75, 1, 0.9)):
        fam = SU11Family(L(k, s))
        n, bound = fam.truncation(u, 1e-10)
        p = np.abs(fam.coefficients(math.sqrt(u), 4 * n + 200)) ** 2
        worst = max(worst, float(np.sum(p[n + 1:]) - bound))
    return max(worst, 0.0)


def _moments():
    err = 0.0
    for k, s, u in ((1.0, 0, 0.5), (2.0, 1, 0.3), (0.75, 3, 0.6), (5.0, 2, 0.8)):
        d = distribution(L(k, s), u, 1e-13)
        m = d.moments()
        err = max(err, abs(m.mean_n - mean_photon_number(L(k, s), u)),
                  abs(m.mandel_q - mandel_q(L(k, s), u)))
    return err


def _q_forms():
    err = 0.0
    for k in (0.75, 1.0, 5.0, 50.0):
        for s in (0, 1, 3):
            for u in (0.05, 0.4, 0.9):
                err = max(err, abs(mandel_q(L(k, s), u) - mandel_q_rsu(L(k, s), u)))
    return err


def _q_kappa_free():
    us = np.linspace(0, 0.95, 20)
    return max(abs(mandel_q(L(k), u) - u / (1 - u)) for k in (0.75, 1, 5, 50) for u in us)


def _crossover():
    return max(abs(poisson_crossover(L(k, s)) - crossover_by_bisection(L(k, s)))
               for k in (0.75, 1, 2, 10) for s in (1, 2, 5))


def _kappa_limit():
    # Q(kappa) - Q(inf) = -s (2s + 1 + u) / ((1-u)(s + (s + 2 kappa) u)): the limit is not
    # uniform near u = 0, so the check is on this gap rather than on a fixed threshold
    err = 0.0
    for k in (1e3, 1e6, 1e8):
        for s in (0, 1, 2, 5):
            for u in np.linspace(0, 0.9, 10):
                gap = -s * (2 * s + 1 + u) / ((1 - u) * (s + (s + 2 * k) * u)) if s or u else 0.0
                q = mandel_q(L(k, s), u)
                err = max(err, abs(q - mandel_q_limit_kappa_infinity(s, u) - gap) / max(1.0, abs(q)))
    return err


def _gscs_q():
    return max(abs(gscs_distribution(a, 1e-13).moments().mandel_q) for a in (0.5, 1.0, 2.0))


def _commutators():
    err = 0.0
    for k in (0.75, 2.0):
        n = 30
        kp, km, k0 = build_generators(L(k), n)
        k1, k2 = quadrature_generators(L(k), n)
        c = km.matrix @ kp.matrix - kp.matrix @ km.matrix - 2 * k0.matrix
        d = k1.matrix @ k2.matrix - k2.matrix @ k1.matrix + 1j * k0.matrix
        err = max(err, float(np.max(np.abs(c[:n, :n]))), float(np.max(np.abs(d[:n, :n]))))
    return err


def _closed_vs_contraction():
    err = 0.0
    for k, s, a in ((1.0, 0, 0.5), (2.0, 1, 0.3j), (0.75, 2, 0.6 * np.exp(2j)), (4.0, 3, -0.4)):
        r1 = squeezing_report(L(k, s), a)
        r2 = numeric_moments(L(k, s), a)
        for f in ("mean_k0", "mean_k1", "mean_k2", "delta_k1", "delta_k2"):
            err = max(err, abs(getattr(r1, f) - getattr(r2, f)))
    return err


def _uncertainty():
    worst = 0.0
    for k in (0.75, 1.0, 3.0):
        for s in (0, 1, 4):
            for r in np.linspace(0, 0.95, 12):
                for ph in np.linspace(0, 2 * np.pi, 13):
                    a = r * np.exp(1j * ph)
                    rep = squeezing_report(L(k, s), a)
                    worst = max(worst, rep.bound - rep.uncertainty_product,
                                -uncertainty_slack(L(k, s), a))
    return max(worst, 0.0)


def _surface_sign():
    # mismatches between the surface sign and the direct predicate, as a count
    bad = 0
    rho = np.linspace(0, 2, 41)
    phi = np.linspace(0, 2 * np.pi, 41)
    for k, s in ((1.0, 0), (1.0, 1), (3.0, 2)):
        delta = squeezing_inequality_surfaces(L(k, s), rho, phi)
        for i, r in enumerate(rho):
            for j, p in enumerate(phi):
                rep = squeezing_report(L(k, s), math.tanh(r) * np.exp(1j * p))
                margin = 0.5 * rep.mean_k0 - rep.delta_k1
                if abs(delta[i, j]) > 1e-9 and abs(margin) > 1e-9:
                    bad += (delta[i, j] >= 0) != (margin >= 0)
    return float(bad)


def _displacement():
    err = 0.0
    for k, s, rho in ((1.0, 0, 0.5), (3.0, 2, 0.4 * np.exp(1j * np.pi / 4)), (0.75, 1, 1.2j)):
        u = displacement_operator(L(k, s), rho, 200)
        c = SU11Family(L(k, s)).coefficients(DiskAmplitude.from_rapidity(rho).alpha, 200)
        err = max(err, float(np.max(np.abs(u.matrix[:, s] - c))))
    return err


def _even_odd():
    err = 0.0
    for parity in ("even", "odd"):
        ops, gens = even_odd_generators(parity, 20)
        for a, b in zip(ops, gens):
            err = max(err, float(np.max(np.abs(a - b))))
    return err


def _identity():
    err = 0.0
    for k in (1.0, 2.0, 3.0):
        for s in (0, 2):
            err = max(err, float(np.max(np.abs(identity_resolution_check(L(k, s), range(11)) - 1))))
    return err


def _orthonormality():
    return max(float(np.max(np.abs(orthonormality_matrix(L(k, s), 10) - np.eye(11))))
               for k in (1.0, 2.0, 3.0) for s in (0, 2))


def _k_minus():
    return max(k_minus_quantization_check(L(k, s)) for k in (1.5, 2.0, 4.0) for s in (0, 1))


def _conjugate_pair():
    lab = L(2.0, 1)
    a = quantize_radial_function(lab, Monomial.ALPHA, n_max=15)
    b = quantize_radial_function(lab, Monomial.ALPHA_BAR, n_max=15)
    return float(np.max(np.abs(b.matrix - a.matrix.conj().T)))


def _portrait_norm():
    return max(abs(portrait_normalization(L(k, s), 0.1) - 1) for k, s in ((5, 0), (5, 1), (10, 2), (10, 5)))


def _gscs_displacement():
    err = 0.0
    fam = GlauberFamily()
    for b in (0.5, 1.0 + 0.5j, -1.5j):
        st = displacement_from_quantized(fam, b, 80)
        err = max(err, float(np.max(np.abs(st.coeffs - fam.coefficients(b, 80)))))
    return err


SUITES: dict[str, list[Check]] = {
    "states": [
        Check("normalization_grid", 1e-9, _normalization),
        Check("negative_binomial", 1e-11, _negative_binomial),
        Check("nonlinear_factorization", 1e-12, _nonlinear),
        Check("matrix_element_vs_state", 1e-12, _matrix_element_vs_state),
        Check("tail_bound_dominates", 0.0, _tail_bounds),
    ],
    "statistics": [
        Check("moments_vs_closed_form", 1e-8, _moments),
        Check("mandel_two_forms", 1e-12, _q_forms),
        Check("mandel_kappa_independence", 1e-12, _q_kappa_free),
        Check("crossover_bisection", 1e-10, _crossover),
        Check("mandel_kappa_limit_gap", 1e-9, _kappa_limit),
        Check("gscs_poissonian", 1e-10, _gscs_q),
    ],
    "squeezing": [
        Check("commutators", 1e-10, _commutators),
        Check("closed_vs_contraction", 1e-7, _closed_vs_contraction),
        Check("uncertainty_bound", 1e-10, _uncertainty),
        Check("surface_sign_mismatches", 0.0, _surface_sign),
        Check("displacement_duality", 1e-8, _displacement),
        Check("even_odd_correspondence", 1e-12, _even_odd),
    ],
    "quantization": [
        Check("identity_resolution", 1e-8, _identity),
        Check("orthonormality", 1e-8, _orthonormality),
        Check("k_minus_quantization", 1e-7, _k_minus),
        Check("conjugate_pair", 1e-12, _conjugate_pair),
        Check("portrait_normalization", 1e-6, _portrait_norm),
        Check("gscs_displacement", 1e-9, _gscs_displacement),
    ],
}


def run_verify(suite: str = "all", tolerance_overrides: dict[str, float] | None = None) -> list[ReportRow]:
    """Run one suite (or ``all``); a check that raises is reported as failed with infinite error."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose all, {', '.join(SUITES)}")
    overrides = dict(tolerance_overrides or {})
    unknown = set(overrides) - {c.name for cs in SUITES.values() for c in cs}
    if unknown:
        raise ValueError(f"unknown check names: {', '.join(sorted(unknown))}")
    rows = []
    names = list(SUITES) if suite == "all" else [suite]
    for name in names:
        for check in SUITES[name]:
            tol = overrides.get(check.name, check.tolerance)
            try:
                err = float(check.run())
            except Exception:  # noqa: BLE001 - a crashing check is a failing check
                err = math.inf
            rows.append(ReportRow(name, check.name, err, tol, bool(err <= tol)))
    return rows


def format_report(rows: list[ReportRow]) -> str:
    return "\n".join(["suite,check,max_error,tolerance,status"] + [r.line() for r in rows])
