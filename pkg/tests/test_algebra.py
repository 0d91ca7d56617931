import random
from fractions import Fraction

import pytest

from capelli.algebra import (DELTA, F, THETA, AElement, APresentation, a_add, a_mul,
                             a_neg, a_pow, a_sub, confluence_exhaustive,
                             confluence_fuzz, from_word, graded_components)
from capelli.bfunction import presentation_for
from capelli.catalog import instantiate
from capelli.poly import UniPoly, upoly_shift


@pytest.fixture(scope="module")
def pres4():
    return presentation_for(instantiate(4, 2))


@pytest.fixture(scope="module")
def pres1():
    return presentation_for(instantiate(1, 2))


def random_element(rng, pres, span=2, max_deg=2):
    parts = {}
    for key in range(-span, span + 1):
        if rng.random() < 0.5:
            coeffs = [Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(1, max_deg + 1))]
            p = UniPoly(THETA, coeffs)
            if not p.is_zero():
                parts[key] = p
    return AElement(pres, parts)


class TestPresentation:
    def test_from_b_checks_degree(self):
        with pytest.raises(ValueError):
            APresentation.from_b(3, 1, UniPoly.from_offsets("s", [1, 2]))

    def test_from_b_checks_constant(self):
        with pytest.raises(ValueError):
            APresentation.from_b(2, -1, UniPoly.from_offsets("s", [1, 2]))

    def test_relation_needs_root_at_minus_one(self):
        # without the factor (s+1), B(-d) != 0
        with pytest.raises(ValueError):
            APresentation.from_b(2, 1, UniPoly.from_offsets("s", [2, 3]))

    def test_b_data_roundtrip(self, pres4):
        rebuilt = APresentation(d=pres4.d, B=pres4.B)
        assert rebuilt.b_monic == pres4.b_monic
        assert rebuilt.c == pres4.c


class TestFromWord:
    def test_euler_commutator(self, pres4):
        got = a_sub(from_word(pres4, [THETA, F]), from_word(pres4, [F, THETA]))
        expected = a_mul(AElement.scalar(pres4, pres4.d), from_word(pres4, [F]))
        assert got == expected

    def test_delta_f_contracts(self, pres4):
        assert from_word(pres4, [DELTA, F]) == AElement(pres4, {0: pres4.B})

    def test_f_delta_contracts_shifted(self, pres4):
        got = from_word(pres4, [F, DELTA])
        assert got == AElement(pres4, {0: upoly_shift(pres4.B, -pres4.d)})

    def test_sandwich_word(self, pres4):
        got = from_word(pres4, [DELTA, F, DELTA])
        assert got == AElement(pres4, {-1: pres4.B})

    def test_scalar_tokens(self, pres4):
        got = from_word(pres4, [Fraction(3, 2), F, Fraction(2)])
        expected = a_mul(AElement.scalar(pres4, 3), from_word(pres4, [F]))
        assert got == expected


class TestArithmetic:
    def test_mul_matches_from_word(self, pres4):
        assert a_mul(from_word(pres4, [F]), from_word(pres4, [DELTA])) == \
            from_word(pres4, [F, DELTA])

    def test_two_rewriting_routes(self, pres4):
        got = a_mul(from_word(pres4, [DELTA]), from_word(pres4, [F, F]))
        assert got == from_word(pres4, [DELTA, F, F])

    def test_unit(self, pres4):
        one = AElement.scalar(pres4, 1)
        x = from_word(pres4, [F, THETA, DELTA])
        assert a_mul(one, x) == x
        assert a_mul(x, one) == x

    def test_add_zero(self, pres4):
        x = from_word(pres4, [F, THETA])
        assert a_add(x, AElement.zero(pres4)) == x

    def test_add_cancellation(self, pres4):
        x = from_word(pres4, [F, THETA])
        assert a_add(x, a_neg(x)).is_zero()

    def test_relation_as_identity(self, pres4):
        # Delta f - B(theta) = 0 in the algebra
        diff = a_sub(from_word(pres4, [DELTA, F]), AElement(pres4, {0: pres4.B}))
        assert diff.is_zero()

    def test_presentation_mismatch(self, pres4, pres1):
        with pytest.raises(ValueError):
            a_mul(from_word(pres4, [F]), from_word(pres1, [F]))

    def test_associativity_random(self, pres4):
        rng = random.Random(1234)
        for _ in range(40):
            x = random_element(rng, pres4)
            y = random_element(rng, pres4)
            z = random_element(rng, pres4)
            assert a_mul(a_mul(x, y), z) == a_mul(x, a_mul(y, z))
            assert a_mul(x, a_add(y, z)) == a_add(a_mul(x, y), a_mul(x, z))

    def test_power(self, pres4):
        w = from_word(pres4, [F, DELTA])
        assert a_pow(w, 2) == a_mul(w, w)
        assert a_pow(w, 0) == AElement.scalar(pres4, 1)


class TestGrading:
    def test_component_degrees(self, pres4):
        x = a_add(a_add(from_word(pres4, [F, F, THETA]),
                        from_word(pres4, [THETA, THETA, THETA])),
                  from_word(pres4, [DELTA]))
        comps = graded_components(x)
        assert sorted(comps) == [-pres4.d, 0, 2 * pres4.d]

    def test_contraction_is_degree_zero(self, pres4):
        comps = graded_components(from_word(pres4, [DELTA, F]))
        assert list(comps) == [0]

    def test_graded_ring_axiom_random(self, pres4):
        rng = random.Random(555)
        for _ in range(20):
            u = random_element(rng, pres4)
            v = random_element(rng, pres4)
            cu = graded_components(u)
            cv = graded_components(v)
            product = graded_components(a_mul(u, v))
            for k in set(product):
                total = AElement.zero(pres4)
                for i, ui in cu.items():
                    for j, vj in cv.items():
                        if i + j == k:
                            total = a_add(total, a_mul(ui, vj))
                assert product[k] == total

    def test_adjoint_theta_eigenvalue(self, pres4):
        # [theta, x_k] = k * x_k for a homogeneous component of degree k
        theta = from_word(pres4, [THETA])
        x = a_add(from_word(pres4, [F, F]), from_word(pres4, [DELTA, THETA]))
        for k, comp in graded_components(x).items():
            bracket = a_sub(a_mul(theta, comp), a_mul(comp, theta))
            assert bracket == a_mul(AElement.scalar(pres4, k), comp)


class TestConfluence:
    def test_fuzz_clean(self, pres4):
        report = confluence_fuzz(pres4, trials=300, seed=42)
        assert report.passed
        assert report.trials == 300

    def test_exhaustive_small(self, pres1):
        report = confluence_exhaustive(pres1, 4)
        assert report.passed
        assert report.words_checked == 3 + 9 + 27 + 81

    def test_overlap_word_two_routes(self, pres4):
        # Delta f Delta f reduced either way gives B(theta)^2
        left = a_mul(from_word(pres4, [DELTA, F]), from_word(pres4, [DELTA, F]))
        whole = from_word(pres4, [DELTA, F, DELTA, F])
        assert left == whole == AElement(pres4, {0: pres4.B * pres4.B})

    def test_trials_validated(self, pres4):
        with pytest.raises(ValueError):
            confluence_fuzz(pres4, trials=0, seed=1)
