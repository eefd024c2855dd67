from __future__ import annotations

import random
from itertools import combinations

import numpy as np
import pytest

from design_forge import (
    ArrayLabel,
    BoundsError,
    ClassificationError,
    GridArray,
    ParameterError,
    PreconditionError,
    RectangleKind,
    StructuralError,
    array_autotopism_order,
    array_canonical_form,
    build_3lambda_from_triple,
    classify_array,
    classify_rectangle,
    develop,
    remove_and_swap,
    rl_form,
    scan_catalog,
    scan_compatibility,
    summarize_scan,
)
from design_forge.arrays import classify_many, parse_target, remove_and_swap_many
from figures import (
    DOUBLE_4x3,
    DOUBLE_5x6_A,
    DOUBLE_5x6_B1,
    DOUBLE_5x6_B2,
    DOUBLE_6x5,
    NYR_4x6,
    RL_4x9,
    SESQUI_S1,
    SESQUI_S2,
    SESQUI_T_4x3,
    SESQUI_T_S1,
    SESQUI_T_S2,
    TDA_3x7,
    TDA_4x7,
    THREE_LAMBDA_4x13,
    TRIPLE_4x9,
    TSA_3x7_S1,
    TSA_3x7_S2,
    TSA_4x7,
    YR_4x7_DOUBLE,
    YR_4x7_SESQUI,
    YR_4x13,
    YR_5x11_A,
    YR_5x11_B,
    YR_5x11_TD,
    YR_6x11,
    YR_6x11_TD,
    rect,
)

T, D, S, ST, N = (
    ArrayLabel.TRIPLE,
    ArrayLabel.PROPER_DOUBLE,
    ArrayLabel.PROPER_SESQUI,
    ArrayLabel.TRANSPOSE_OF_PROPER_SESQUI,
    ArrayLabel.NONE,
)


def scramble(A: GridArray, rng: random.Random) -> GridArray:
    rows = rng.sample(range(A.r), A.r)
    cols = rng.sample(range(A.c), A.c)
    syms = rng.sample(range(A.v), A.v)
    return GridArray.from_rows([[syms[A.cells[i][j]] for j in cols] for i in rows], A.v)


class TestGridArray:
    def test_basics(self):
        A = GridArray.from_rows([[0, None], [-1, 1]])
        assert (A.r, A.c, A.v) == (2, 2, 2)
        assert not A.filled
        assert A.to_array().tolist() == [[0, -1], [-1, 1]]
        assert A.transpose().transpose() == A

    def test_validation(self):
        with pytest.raises(StructuralError):
            GridArray.from_rows([[0, 1], [2]], 3)
        with pytest.raises(StructuralError):
            GridArray.from_rows([[0, 5]], 3)


@pytest.mark.parametrize(
    "A, label, e, lrr, lcc, lrc",
    [
        (TRIPLE_4x9, T, 3, 6, 1, 3),
        (DOUBLE_4x3, D, 2, 1, 2, None),
        (DOUBLE_6x5, D, 3, 2, 3, None),
        (SESQUI_S1, S, 2, 2, None, 2),
        (SESQUI_T_4x3, ST, 2, None, 2, 2),
    ],
)
def test_classify_figures(A, label, e, lrr, lcc, lrc):
    cl = classify_array(A)
    assert cl.label is label
    assert (cl.e, cl.lambda_rr, cl.lambda_cc, cl.lambda_rc) == (e, lrr, lcc, lrc)


def test_classify_flags_and_failures():
    assert classify_array(TRIPLE_4x9).flags == (True,) * 5
    # a repeated symbol in a row breaks TA1
    cl = classify_array(GridArray.from_rows([[0, 0], [1, 2]], 3))
    assert not cl.ta1 and cl.label is N
    with pytest.raises(ClassificationError):
        classify_array(RL_4x9)


def test_transpose_swaps_sesqui_labels():
    assert classify_array(SESQUI_T_S1.transpose()).label is S
    assert classify_array(SESQUI_S2.transpose()).label is ST


class TestConstruction:
    def test_remove_and_swap_gives_triple(self):
        assert remove_and_swap(THREE_LAMBDA_4x13, 0) == TRIPLE_4x9

    def test_rl_form(self):
        assert rl_form(TRIPLE_4x9) == RL_4x9
        with pytest.raises(ClassificationError):
            rl_form(GridArray.from_rows([[0, 0], [1, 2]], 3))

    def test_rl_form_sum_constant(self):
        e = classify_array(TRIPLE_4x9).e
        rl = rl_form(TRIPLE_4x9)
        cols = list(zip(*rl.cells))
        for a, b in combinations(cols, 2):
            rows = sum(1 for x, y in zip(a, b) if x is not None and y is not None)
            syms = len({x for x in a if x is not None} & {y for y in b if y is not None})
            assert rows + syms == e

    def test_build_3lambda(self):
        R = build_3lambda_from_triple(TRIPLE_4x9)
        assert R == THREE_LAMBDA_4x13
        assert classify_rectangle(R) is RectangleKind.THREE_LAMBDA
        assert remove_and_swap(R, 0) == TRIPLE_4x9

    def test_build_needs_triple(self):
        with pytest.raises(ParameterError):
            build_3lambda_from_triple(DOUBLE_4x3)

    def test_bounds_and_latin(self):
        with pytest.raises(BoundsError):
            remove_and_swap(YR_4x13, 13)
        with pytest.raises(PreconditionError):
            remove_and_swap(rect((0, 1, 2), (0, 2, 1)), 0)

    def test_batch_matches_single(self):
        stack = np.array([YR_5x11_TD.rows, YR_5x11_A.rows], dtype=np.int8)
        arrays = remove_and_swap_many(stack)
        for q, Y in enumerate((YR_5x11_TD, YR_5x11_A)):
            for c in range(11):
                single = remove_and_swap(Y, c)
                assert arrays[q * 11 + c].tolist() == [list(row) for row in single.cells]
        labels = [cl.label for cl in classify_many(arrays, 10)]
        assert labels[:11] == [cl.label for cl in scan_compatibility(YR_5x11_TD)]


@pytest.mark.parametrize(
    "Y, labels",
    [
        (YR_5x11_TD, [N, T, D, N, D, N, D, N, N, N, D]),
        (YR_6x11_TD, [N, N, N, D, N, N, N, N, N, T, N]),
        (YR_4x7_SESQUI, [N, ST, ST, N, N, D, ST]),
        (TDA_4x7, [N, N, ST, D, D, N, N]),
        (TDA_3x7, [N, N, N, N, D, D, N]),
        (TSA_3x7_S1, [N] * 6 + [S]),
        (TSA_3x7_S2, [N, N, N, S, N, N, N]),
        (TSA_4x7, [N, N, N, N, ST, ST, ST]),
        (THREE_LAMBDA_4x13, [T] + [N] * 12),
    ],
)
def test_scan_compatibility_of_figures(Y, labels):
    per_column = scan_compatibility(Y)
    assert [cl.label for cl in per_column] == labels
    summary = summarize_scan(per_column)
    assert summary.by_label[T] == labels.count(T)
    assert summary.columns_with(D) == [j for j, lab in enumerate(labels) if lab is D]


def test_scan_needs_youden_or_three_lambda():
    with pytest.raises(PreconditionError):
        scan_compatibility(NYR_4x6)


@pytest.mark.parametrize("Y", [develop([0, 1, 3], 7), YR_4x7_DOUBLE, YR_4x13, YR_5x11_A, YR_5x11_TD, YR_6x11])
def test_youden_outputs_meet_ta1_ta2_ta4(Y):
    lam = int(Y.params.lam)
    for cl in scan_compatibility(Y):
        assert cl.ta1 and cl.ta2 and cl.ta4
        assert cl.e == Y.k - lam and cl.lambda_cc == lam
        assert cl.label is not S


@pytest.mark.parametrize("Y", [develop([0, 1, 3], 7), YR_4x13, develop([0, 1, 3, 9], 13)])
def test_lambda_one_gives_double_everywhere(Y):
    assert all(cl.label is D for cl in scan_compatibility(Y))


class TestArrayCanonical:
    @pytest.mark.parametrize(
        "A, aut",
        [
            (TRIPLE_4x9, 3),
            (DOUBLE_4x3, 3),
            (DOUBLE_5x6_A, 5),
            (DOUBLE_5x6_B1, 12),
            (DOUBLE_5x6_B2, 10),
            (DOUBLE_6x5, 5),
            (SESQUI_S1, 4),
            (SESQUI_S2, 12),
            (SESQUI_T_S2, 12),
        ],
    )
    def test_autotopism_orders(self, A, aut):
        assert array_autotopism_order(A) == aut

    @pytest.mark.parametrize("A", [TRIPLE_4x9, DOUBLE_5x6_B1, SESQUI_T_4x3])
    def test_orbit_constancy(self, A):
        rng = random.Random(11)
        form = array_canonical_form(A)
        for _ in range(20):
            assert array_canonical_form(scramble(A, rng)) == form

    def test_idempotent(self):
        form = array_canonical_form(DOUBLE_5x6_A)
        assert array_canonical_form(form) == form

    def test_folding_transposes(self):
        assert array_canonical_form(SESQUI_S1) != array_canonical_form(SESQUI_T_S1)
        assert array_canonical_form(SESQUI_S1, True) == array_canonical_form(SESQUI_T_S1, True)
        assert array_canonical_form(SESQUI_S2, True) == array_canonical_form(SESQUI_T_S2, True)

    def test_needs_filled(self):
        with pytest.raises(ClassificationError):
            array_canonical_form(RL_4x9)

    def test_distinct_classes(self):
        forms = {array_canonical_form(A) for A in (DOUBLE_5x6_A, DOUBLE_5x6_B1, DOUBLE_5x6_B2)}
        assert len(forms) == 3


class TestFiguresAgainstArrays:
    def test_every_column_of_the_4x7_gives_one_class(self):
        target = array_canonical_form(DOUBLE_4x3)
        assert {array_canonical_form(remove_and_swap(YR_4x7_DOUBLE, c)) for c in range(7)} == {target}

    def test_every_column_of_the_6x11_gives_one_class(self):
        target = array_canonical_form(DOUBLE_6x5)
        assert {array_canonical_form(remove_and_swap(YR_6x11, c)) for c in range(11)} == {target}

    def test_5x11_b_splits_between_two_classes(self):
        got = {array_canonical_form(remove_and_swap(YR_5x11_B, c)) for c in range(11)}
        assert got == {array_canonical_form(DOUBLE_5x6_B1), array_canonical_form(DOUBLE_5x6_B2)}

    def test_sesqui_transpose_column(self):
        assert array_canonical_form(remove_and_swap(YR_4x7_SESQUI, 1)) == array_canonical_form(SESQUI_T_4x3)


class TestScanCatalog:
    def test_small_youden(self, small_catalogs):
        reps = small_catalogs(7, 4, "youden").reps
        double = scan_catalog(reps, "double")
        assert (double.compatible_rectangles, double.compatible_columns, double.distinct_arrays) == (6, 18, 2)
        assert sum(c.columns for c in double.classes) == 18
        st = scan_catalog(reps, ArrayLabel.TRANSPOSE_OF_PROPER_SESQUI)
        assert (st.compatible_rectangles, st.compatible_columns, st.distinct_arrays) == (1, 3, 1)
        assert scan_catalog(reps, "triple").distinct_arrays == 0
        assert scan_catalog(reps, "sesqui").compatible_columns == 0

    def test_stack_input(self, small_catalogs):
        reps = small_catalogs(7, 4, "youden").reps
        stack = np.array([R.rows for R in reps], dtype=np.int8)
        assert scan_catalog(stack, "double") == scan_catalog(reps, "double")

    def test_empty_and_bad_input(self):
        assert scan_catalog([], "double").compatible_rectangles == 0
        with pytest.raises(PreconditionError):
            scan_catalog([NYR_4x6], "double")
        with pytest.raises(ParameterError):
            parse_target("quadruple")
