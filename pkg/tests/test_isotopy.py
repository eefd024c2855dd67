from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from design_forge import (
    Isotopism,
    PreconditionError,
    StructuralError,
    apply,
    are_isotopic,
    autotopism_order,
    autotopisms,
    brute_autotopism_order,
    canonical_form,
    canonical_with_aut,
    conjugate,
    develop,
    is_normalized,
    is_self_conjugate,
    normalize,
)
from design_forge.oracle import AUT_MAX_K
from figures import NYR_4x6, TDA_3x7, YR_4x7_SESQUI, YR_4x13, YR_5x11_B, YR_6x11, rect
from strategies import isotopisms, latin_rectangles

FIGURES = [NYR_4x6, TDA_3x7, YR_4x7_SESQUI, YR_4x13, YR_6x11]


class TestIsotopism:
    def test_validation(self):
        with pytest.raises(StructuralError):
            Isotopism((0, 0), (0, 1, 2), (0, 1, 2))
        with pytest.raises(StructuralError):
            Isotopism((0, 1), (0, 1, 2), (0, 1))

    def test_apply_moves_cells(self):
        R = rect((0, 1, 2), (1, 2, 0))
        g = Isotopism((1, 0), (2, 0, 1), (0, 2, 1))
        # cell (0, 0) holding 0 lands at (1, 2) holding 0
        assert apply(g, R).rows[1][2] == 0
        assert apply(Isotopism.identity(2, 3), R) == R
        with pytest.raises(StructuralError):
            apply(Isotopism.identity(3, 3), R)

    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_group_laws(self, data):
        R = data.draw(latin_rectangles(max_n=7))
        g = data.draw(isotopisms(R.k, R.n))
        h = data.draw(isotopisms(R.k, R.n))
        assert apply(g @ h, R) == apply(g, apply(h, R))
        assert apply(g.inverse(), apply(g, R)) == R
        assert g @ g.inverse() == Isotopism.identity(R.k, R.n)


class TestNormalize:
    @pytest.mark.parametrize("R", FIGURES)
    def test_normal_and_isotopic(self, R):
        N = normalize(R)
        assert is_normalized(N)
        assert are_isotopic(N, R)

    def test_cyclic_development(self):
        # a developed rectangle whose first column is not already in order
        assert is_normalized(normalize(develop([0, 1, 3], 7)))

    def test_needs_latin(self):
        with pytest.raises(PreconditionError):
            normalize(rect((0, 1, 2), (0, 2, 1)))

    @settings(max_examples=60, deadline=None)
    @given(latin_rectangles())
    def test_random(self, R):
        assert is_normalized(normalize(R))


class TestCanonical:
    @pytest.mark.parametrize("R", FIGURES)
    def test_idempotent_and_normalized(self, R):
        C = canonical_form(R).rect
        assert is_normalized(C)
        assert canonical_form(C).rect == C

    @pytest.mark.parametrize("R", FIGURES)
    def test_orbit_constancy(self, R):
        rng = random.Random(7)
        target = canonical_form(R)
        for _ in range(100):
            g = Isotopism.random(R.k, R.n, rng)
            assert canonical_form(apply(g, R)) == target

    def test_shape_mismatch(self):
        with pytest.raises(StructuralError):
            are_isotopic(YR_4x13, NYR_4x6)

    def test_non_isotopic(self):
        assert not are_isotopic(TDA_3x7, develop([0, 1, 3], 7))

    def test_k_one(self):
        C, aut = canonical_with_aut(rect((2, 0, 1)))
        assert C == rect((0, 1, 2))
        assert aut == 6


class TestAutotopisms:
    @pytest.mark.parametrize(
        "R, order",
        [(develop([0, 1, 3], 7), 21), (YR_4x13, 39), (YR_6x11, 55), (YR_5x11_B, 60), (NYR_4x6, 36)],
    )
    def test_known_orders(self, R, order):
        N = normalize(R)
        assert autotopism_order(N) == order
        assert canonical_with_aut(R)[1] == order

    @pytest.mark.parametrize("R", [develop([0, 1, 3], 7), NYR_4x6, TDA_3x7, YR_4x7_SESQUI])
    def test_three_methods_agree(self, R):
        N = normalize(R)
        listed = autotopisms(N)
        assert len(listed) == autotopism_order(N) == brute_autotopism_order(N)
        assert all(apply(g, N) == N for g in listed)
        assert len(set(listed)) == len(listed)

    def test_needs_normalized(self):
        R = apply(Isotopism((0, 1, 2), (1, 0, 2, 3, 4, 5, 6), tuple(range(7))), develop([0, 1, 3], 7))
        assert not is_normalized(R)
        with pytest.raises(PreconditionError):
            autotopism_order(R)

    @settings(max_examples=40, deadline=None)
    @given(latin_rectangles(max_n=7, max_k=AUT_MAX_K))
    def test_kernel_matches_brute_force(self, R):
        N = normalize(R)
        assert autotopism_order(N) == brute_autotopism_order(N)


class TestConjugate:
    @settings(max_examples=60, deadline=None)
    @given(latin_rectangles())
    def test_involution(self, R):
        assert conjugate(conjugate(R)) == R

    def test_cyclic_is_self_conjugate(self):
        assert is_self_conjugate(develop([0, 1, 3], 7))

    def test_conjugate_respects_isotopy(self):
        # conjugating isotopic rectangles gives isotopic results
        g = Isotopism.random(NYR_4x6.k, NYR_4x6.n, random.Random(3))
        assert are_isotopic(conjugate(NYR_4x6), conjugate(apply(g, NYR_4x6)))
