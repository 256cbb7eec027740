import cmath
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from su11cs.errors import DomainError, LabelMismatchError, QuadratureWarning, TruncationError
from su11cs.quantization import (
    Monomial, alpha_cell, as_family, corrective_weight, count_crests, displacement_from_quantized,
    identity_resolution_check, k_minus_quantization_check, lower_symbol, orthonormality_matrix,
    overlap, peak_cell, portrait_density, portrait_normalization, quantize_radial_function,
    radial_integral, radial_section, tau_series,
)
from su11cs.squeezing import build_generators, displacement_operator
from su11cs.states import DiskAmplitude, GlauberFamily, RepresentationLabel, SU11Family, gscs_state

L = RepresentationLabel


class TestIdentity:
    @pytest.mark.parametrize("kappa,s,n", [(1.0, 0, 0), (2.0, 0, 3), (3.0, 2, 5)])
    def test_examples(self, kappa, s, n):
        assert identity_resolution_check(L(kappa, s), [n])[0] == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("kappa", [0.55, 0.75, 1.0, 4.2, 30.0])
    @pytest.mark.parametrize("s", [0, 1, 6])
    def test_many_levels(self, kappa, s):
        vals = identity_resolution_check(L(kappa, s), list(range(0, 41)))
        assert np.max(np.abs(vals - 1)) <= 1e-8

    def test_glauber(self):
        vals = identity_resolution_check("gscs", list(range(30)))
        assert np.max(np.abs(vals - 1)) <= 1e-8

    @pytest.mark.parametrize("family", [L(1.0), L(2.5, 3), L(0.6, 1), "gscs"])
    def test_orthonormality(self, family):
        g = orthonormality_matrix(family, 10)
        np.testing.assert_allclose(g, np.eye(11), atol=1e-8)


class TestQuadratureRefinement:
    def test_converged_integral(self):
        fam = SU11Family(L(2.0))
        vals, change, order = radial_integral(fam, lambda u, m: u ** 3, 2)
        # int_0^1 3 (1-u)^2 u^3 du = 3 B(4, 3) = 1/20
        assert float(vals) == pytest.approx(0.05, rel=1e-13)
        assert change <= 1e-10

    def test_warning_on_unresolved_integrand(self):
        fam = SU11Family(L(1.0))
        with pytest.warns(QuadratureWarning):
            radial_integral(fam, lambda u, m: np.abs(np.sin(1 / (1.0001 - u))), 4)

    def test_warn_tol(self):
        fam = SU11Family(L(1.0))
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            radial_integral(fam, lambda u, m: u, 2, warn_tol=1e-8)


class TestOverlap:
    def test_self_overlap(self):
        a = 0.7 * cmath.exp(0.3j)
        assert overlap(L(2.0, 3), a, a) == pytest.approx(1.0, abs=1e-10)

    def test_vacuum_overlap(self):
        assert abs(overlap(L(1.0), 0, 0.5)) ** 2 == pytest.approx(0.75 ** 2, abs=1e-14)

    @given(r1=st.floats(0, 0.9), r2=st.floats(0, 0.9), p=st.floats(-3, 3), shift=st.floats(-3, 3))
    def test_phase_covariance(self, r1, r2, p, shift):
        lab = L(1.5, 2)
        a = abs(overlap(lab, cmath.rect(r1, p), cmath.rect(r2, p + 0.4)))
        b = abs(overlap(lab, cmath.rect(r1, p + shift), cmath.rect(r2, p + shift + 0.4)))
        assert a == pytest.approx(b, abs=1e-12)

    def test_glauber_overlap(self):
        a, b = 1 + 0.5j, -0.3 + 2j
        assert abs(overlap("gscs", a, b)) ** 2 == pytest.approx(math.exp(-abs(a - b) ** 2), rel=1e-12)


class TestPortrait:
    @pytest.mark.parametrize("kappa,s", [(5.0, 0), (5.0, 1), (10.0, 2), (10.0, 5)])
    def test_structure(self, kappa, s):
        p = portrait_density(L(kappa, s), 0.1)
        assert np.all(p.grid >= 0)
        j, k = peak_cell(p)
        ja, ka = alpha_cell(p)
        assert abs(j - ja) <= 1 and min(abs(k - ka), p.angles.size - abs(k - ka)) <= 1
        _, prof = radial_section(L(kappa, s), 0.1)
        assert count_crests(prof) == s

    def test_no_crests_s0(self):
        _, prof = radial_section(L(5.0), 0.1)
        assert count_crests(prof) == 0

    @pytest.mark.parametrize("family,alpha", [(L(5.0, 1), 0.1), (L(1.0, 3), 0.6j), ("gscs", 1 - 1j)])
    def test_normalization(self, family, alpha):
        assert portrait_normalization(family, alpha) == pytest.approx(1.0, abs=1e-6)

    def test_grid_resolution(self):
        with pytest.raises(DomainError):
            portrait_density(L(5.0), 0.1, n_radial=32)

    def test_read_only(self):
        p = portrait_density(L(5.0), 0.1)
        with pytest.raises(ValueError):
            p.grid[0, 0] = 1.0

    def test_crest_counter(self):
        assert count_crests([0, 1, 0, 3, 0, 2, 0]) == 2
        assert count_crests([0, 1]) == 0


class TestQuantizedOperators:
    def test_identity(self):
        op = quantize_radial_function(L(2.0, 1), Monomial.ONE, n_max=15)
        np.testing.assert_allclose(op.matrix, np.eye(16), atol=1e-8)

    def test_glauber_annihilation(self):
        op = quantize_radial_function("gscs", "alpha", n_max=25)
        n = np.arange(1, 26)
        assert np.max(np.abs(op.matrix[n - 1, n] - np.sqrt(n))) <= 1e-9

    def test_corrected_first_element(self):
        radial, pole = corrective_weight(L(2.0))
        op = quantize_radial_function(L(2.0), Monomial.ALPHA, radial, pole, n_max=3)
        assert op.matrix[0, 1].real == pytest.approx(2.0, abs=1e-8)

    @pytest.mark.parametrize("kappa,s", [(2.0, 0), (1.5, 1), (4.0, 3), (1.1, 0)])
    def test_k_minus_check(self, kappa, s):
        assert k_minus_quantization_check(L(kappa, s)) <= 1e-7
        assert k_minus_quantization_check(L(kappa, s), corrected=False) <= 1e-7

    def test_k_minus_matches_generator(self):
        lab = L(2.5, 1)
        radial, pole = corrective_weight(lab)
        op = quantize_radial_function(lab, Monomial.ALPHA, radial, pole, n_max=12)
        _, km, _ = build_generators(lab, 12)
        np.testing.assert_allclose(op.matrix, km.matrix, atol=1e-8)

    def test_k_minus_validity_range(self):
        with pytest.raises(DomainError):
            k_minus_quantization_check(L(0.9))
        with pytest.raises(DomainError):
            k_minus_quantization_check(L(1.0))

    def test_divergent_symbol(self):
        with pytest.raises(DomainError):
            quantize_radial_function(L(0.9), Monomial.ALPHA, pole_order=1.0)

    def test_heaviside_cut(self):
        full = quantize_radial_function(L(1.0), Monomial.ONE, n_max=5)
        cut = quantize_radial_function(L(1.0), Monomial.ONE, n_max=5, u_max=0.5)
        d = np.real(np.diag(cut.matrix))
        # vacuum: int_0^0.5 (1-u)^0 du with the kappa = 1 weight
        assert d[0] == pytest.approx(0.5, rel=1e-12)
        assert np.all(d < np.real(np.diag(full.matrix)))

    @pytest.mark.parametrize("family", [L(1.7, 2), "gscs"])
    def test_conjugate_pair(self, family):
        a = quantize_radial_function(family, Monomial.ALPHA, n_max=10)
        ab = quantize_radial_function(family, Monomial.ALPHA_BAR, n_max=10)
        assert np.max(np.abs(ab.matrix - a.matrix.conj().T)) <= 1e-12


class TestLowerSymbol:
    def test_identity(self):
        op = quantize_radial_function(L(1.0), Monomial.ONE, n_max=120)
        assert lower_symbol(L(1.0), op, 0.5) == pytest.approx(1.0, abs=1e-8)

    def test_k0(self):
        _, _, k0 = build_generators(L(1.0), 200)
        assert lower_symbol(L(1.0), k0, 0.5) == pytest.approx(5 / 3, abs=1e-12)

    def test_glauber_annihilation_symbol(self):
        op = quantize_radial_function("gscs", Monomial.ALPHA, n_max=80)
        a = 0.8 - 0.6j
        assert lower_symbol("gscs", op, a) == pytest.approx(a, abs=1e-9)
        np.testing.assert_allclose(tau_series("gscs", op, [0.1, 1.0, 2.0]), 1.0, atol=1e-9)

    @pytest.mark.parametrize("lab", [L(1.0), L(2.0, 1), L(0.75, 3)])
    def test_factorization(self, lab):
        op = quantize_radial_function(lab, Monomial.ALPHA, n_max=200)
        for a in (0.3, 0.5 * cmath.exp(1.1j), -0.4j):
            u = abs(a) ** 2
            sym = lower_symbol(lab, op, a)
            tau = tau_series(lab, op, u)[0]
            assert sym == pytest.approx(a * tau, abs=1e-8)
            # tau is real: the symbol keeps the phase of alpha
            if abs(a) > 0:
                assert abs((sym / a).imag) <= 1e-12

    def test_corrected_symbol_is_k_minus_symbol(self):
        lab = L(3.0, 1)
        radial, pole = corrective_weight(lab)
        op = quantize_radial_function(lab, Monomial.ALPHA, radial, pole, n_max=200)
        a = 0.4 * cmath.exp(0.7j)
        expected = 2 * (lab.kappa + lab.s) * a / (1 - abs(a) ** 2)
        assert lower_symbol(lab, op, a) == pytest.approx(expected, abs=1e-8)

    def test_label_mismatch(self):
        _, km, _ = build_generators(L(2.0), 10)
        with pytest.raises(LabelMismatchError):
            lower_symbol(L(3.0), km, 0.2)
        op = quantize_radial_function("gscs", Monomial.ALPHA, n_max=5)
        with pytest.raises(LabelMismatchError):
            lower_symbol(L(1.0), op, 0.2)


class TestDisplacementFromQuantized:
    def test_zero_is_vacuum(self):
        st_ = displacement_from_quantized(L(2.0), 0, 30)
        np.testing.assert_allclose(st_.coeffs, np.eye(31)[0], atol=1e-15)

    @pytest.mark.parametrize("b", [0.5, 1 + 1j, -2.0 + 0.3j])
    def test_glauber_self_duality(self, b):
        got = displacement_from_quantized("gscs", b, 120).coeffs
        ref = GlauberFamily().coefficients(b, 120)
        assert np.max(np.abs(got - ref)) <= 1e-9
        ref_state = gscs_state(b, 1e-13)
        assert np.max(np.abs(got[: ref_state.truncation_n + 1] - ref_state.coeffs)) <= 1e-9

    def test_su11_kappa2(self):
        # at kappa = 2, s = 0 the rescaling (kappa+s)/(kappa(kappa-1)) equals 1
        b = 0.4 + 0.2j
        got = displacement_from_quantized(L(2.0), b, 200).coeffs
        ref = SU11Family(L(2.0)).coefficients(DiskAmplitude.from_rapidity(b).alpha, 200)
        assert np.max(np.abs(got - ref)) <= 1e-7

    @pytest.mark.parametrize("kappa", [1.5, 3.0, 6.0])
    def test_corrective_weight_gives_unit_rapidity(self, kappa):
        b = 0.35 * cmath.exp(0.4j)
        got = displacement_from_quantized(L(kappa), b, 200).coeffs
        ref = displacement_operator(L(kappa), b, 200).matrix[:, 0]
        assert np.max(np.abs(got - ref)) <= 1e-9

    def test_uncorrected_weight_rescales(self):
        kappa, b = 3.0, 0.3
        two = lambda u: np.full_like(np.asarray(u, dtype=float), 2.0)  # noqa: E731
        got = displacement_from_quantized(L(kappa), b, 200, radial=two, pole_order=1.0).coeffs
        rho = b * kappa / (kappa * (kappa - 1))
        ref = SU11Family(L(kappa)).coefficients(DiskAmplitude.from_rapidity(rho).alpha, 200)
        assert np.max(np.abs(got - ref)) <= 1e-9

    def test_truncation_leak(self):
        with pytest.raises(TruncationError):
            displacement_from_quantized("gscs", 4.0, 10)

    def test_corrective_weight_needs_kappa_above_one(self):
        with pytest.raises(DomainError):
            displacement_from_quantized(L(1.0), 0.2, 20)


def test_family_coercion():
    assert isinstance(as_family("gscs"), GlauberFamily)
    assert as_family(L(1.0)).label == L(1.0)
    with pytest.raises(DomainError):
        as_family(3)
