"""Published example rectangles and arrays used as fixtures."""

from __future__ import annotations

from design_forge.arrays import GridArray
from design_forge.core import Rectangle

_ = None


def rect(*rows: tuple[int, ...]) -> Rectangle:
    return Rectangle.from_rows(rows)


# 4x6 near Youden rectangle
NYR_4x6 = rect(
    (0, 1, 2, 3, 4, 5),
    (1, 0, 5, 4, 3, 2),
    (2, 4, 0, 5, 1, 3),
    (3, 5, 4, 0, 2, 1),
)

# 4x13 Youden rectangle with |Aut| = 39
YR_4x13 = rect(
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12),
    (1, 4, 5, 6, 2, 9, 10, 11, 0, 7, 8, 12, 3),
    (2, 5, 7, 8, 9, 11, 0, 3, 4, 12, 1, 6, 10),
    (3, 6, 8, 9, 10, 0, 7, 4, 12, 1, 11, 2, 5),
)

# 4x9 triple array on 12 symbols, its RL-form and the 3-lambda rectangle built from it
TRIPLE_4x9 = GridArray.from_rows(
    [
        (0, 2, 1, 4, 5, 6, 8, 7, 10),
        (11, 3, 8, 5, 6, 7, 9, 1, 2),
        (5, 7, 4, 9, 3, 11, 0, 10, 8),
        (1, 0, 3, 2, 10, 4, 6, 9, 11),
    ],
    12,
)
RL_4x9 = GridArray.from_rows(
    [
        (0, 2, 1, _, 3, 4, 5, 7, 6, _, 8, _),
        (_, 7, 8, 1, _, 3, 4, 5, 2, 6, _, 0),
        (6, _, _, 4, 2, 0, _, 1, 8, 3, 7, 5),
        (1, 0, 3, 2, 5, _, 6, _, _, 7, 4, 8),
    ],
    9,
)
THREE_LAMBDA_4x13 = rect(
    (9, 0, 2, 1, 10, 3, 4, 5, 7, 6, 11, 8, 12),
    (10, 9, 7, 8, 1, 11, 3, 4, 5, 2, 6, 12, 0),
    (11, 6, 9, 10, 4, 2, 0, 12, 1, 8, 3, 7, 5),
    (12, 1, 0, 3, 2, 5, 9, 6, 10, 11, 7, 4, 8),
)

# the 4x7 Youden rectangle compatible with a transposed sesqui array
# (columns 1, 2, 6) and a double array (column 5), plus that sesqui array
YR_4x7_SESQUI = rect(
    (0, 1, 2, 3, 4, 5, 6),
    (1, 2, 3, 4, 6, 0, 5),
    (2, 4, 5, 6, 0, 3, 1),
    (3, 5, 6, 1, 2, 4, 0),
)
SESQUI_T_4x3 = GridArray.from_rows([(0, 1, 4), (1, 4, 2), (2, 3, 5), (3, 5, 0)], 6)

# 5x11 Youden rectangle: column 1 gives a triple array, 2, 4, 6, 10 double arrays
YR_5x11_TD = rect(
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10),
    (1, 0, 3, 7, 6, 8, 9, 10, 5, 2, 4),
    (2, 5, 7, 9, 0, 3, 1, 8, 10, 4, 6),
    (3, 6, 8, 10, 9, 1, 2, 4, 0, 7, 5),
    (4, 7, 6, 0, 8, 9, 10, 1, 2, 5, 3),
)

# 6x11 Youden rectangle: column 9 gives a triple array, column 3 a double array
YR_6x11_TD = rect(
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10),
    (1, 0, 4, 10, 5, 7, 8, 2, 3, 6, 9),
    (2, 3, 6, 9, 7, 8, 0, 10, 1, 5, 4),
    (3, 6, 9, 5, 10, 0, 4, 1, 2, 8, 7),
    (4, 7, 3, 6, 8, 9, 2, 5, 10, 1, 0),
    (5, 8, 7, 0, 3, 2, 10, 6, 9, 4, 1),
)

# 4x7 Youden rectangle with |Aut| = 21: every column gives this double array
YR_4x7_DOUBLE = rect(
    (0, 1, 2, 3, 4, 5, 6),
    (1, 2, 4, 5, 3, 6, 0),
    (2, 4, 3, 6, 5, 0, 1),
    (3, 5, 6, 1, 0, 2, 4),
)
DOUBLE_4x3 = GridArray.from_rows([(0, 1, 3), (1, 2, 5), (2, 4, 0), (3, 5, 4)], 6)

# the two 5x11 Youden rectangles where every column gives a double array
YR_5x11_A = rect(
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10),
    (1, 2, 5, 6, 7, 3, 8, 9, 4, 10, 0),
    (2, 5, 3, 8, 9, 6, 4, 10, 7, 0, 1),
    (3, 6, 8, 7, 0, 4, 9, 1, 10, 2, 5),
    (4, 7, 9, 0, 5, 10, 1, 3, 2, 6, 8),
)
YR_5x11_B = rect(
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10),
    (1, 0, 5, 6, 7, 3, 4, 2, 9, 10, 8),
    (2, 5, 0, 8, 9, 4, 10, 6, 1, 3, 7),
    (3, 6, 8, 0, 10, 7, 2, 9, 4, 5, 1),
    (4, 7, 9, 10, 0, 8, 5, 3, 6, 1, 2),
)
DOUBLE_5x6_A = GridArray.from_rows(
    [(0, 1, 2, 3, 4, 6), (1, 2, 5, 6, 7, 8), (2, 5, 3, 8, 9, 4), (3, 6, 8, 7, 0, 9), (4, 7, 9, 0, 5, 1)], 10
)
DOUBLE_5x6_B1 = GridArray.from_rows(
    [(0, 1, 2, 5, 6, 9), (1, 5, 4, 0, 3, 7), (2, 3, 6, 4, 0, 8), (3, 6, 8, 7, 9, 1), (4, 7, 5, 9, 8, 2)], 10
)
DOUBLE_5x6_B2 = GridArray.from_rows(
    [(0, 1, 2, 3, 7, 8), (1, 0, 3, 4, 9, 5), (2, 5, 6, 9, 8, 0), (3, 6, 5, 7, 2, 4), (4, 7, 8, 6, 1, 9)], 10
)

# the 6x11 Youden rectangle (|Aut| = 55) where every column gives one double array
YR_6x11 = rect(
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10),
    (1, 2, 6, 4, 7, 8, 3, 5, 9, 10, 0),
    (2, 6, 3, 7, 5, 9, 4, 8, 10, 0, 1),
    (3, 4, 7, 8, 9, 0, 5, 10, 1, 2, 6),
    (4, 7, 5, 9, 10, 1, 8, 0, 2, 6, 3),
    (5, 8, 9, 0, 1, 6, 10, 2, 3, 4, 7),
)
DOUBLE_6x5 = GridArray.from_rows(
    [(0, 1, 2, 3, 5), (1, 2, 6, 4, 8), (2, 6, 3, 7, 9), (3, 4, 7, 8, 0), (4, 7, 5, 9, 1), (5, 8, 9, 0, 6)], 10
)

# 3-lambda rectangles with two columns giving non-isotopic double arrays
TDA_4x7 = rect(
    (0, 1, 2, 3, 4, 5, 6),
    (1, 2, 0, 5, 3, 6, 4),
    (2, 3, 4, 6, 0, 1, 5),
    (3, 4, 5, 2, 6, 0, 1),
)
TDA_3x7 = rect(
    (0, 1, 2, 3, 4, 5, 6),
    (1, 0, 3, 5, 6, 4, 2),
    (2, 3, 4, 6, 0, 1, 5),
)

# 3x7 3-lambda rectangles giving proper sesqui arrays, with the arrays
TSA_3x7_S1 = rect((0, 1, 2, 3, 4, 5, 6), (1, 2, 0, 4, 5, 6, 3), (2, 3, 4, 5, 6, 1, 0))
SESQUI_S1 = GridArray.from_rows([(0, 1, 3, 4), (1, 2, 4, 5), (2, 3, 5, 0)], 6)
TSA_3x7_S2 = rect((0, 1, 2, 3, 4, 5, 6), (1, 2, 4, 0, 5, 6, 3), (2, 3, 1, 4, 6, 0, 5))
SESQUI_S2 = GridArray.from_rows([(0, 1, 3, 4), (1, 2, 4, 5), (2, 0, 5, 3)], 6)

# 4x7 3-lambda rectangle with three columns giving transposed sesqui arrays
TSA_4x7 = rect(
    (0, 1, 2, 3, 4, 5, 6),
    (1, 0, 3, 4, 5, 6, 2),
    (2, 3, 5, 6, 0, 1, 4),
    (3, 4, 6, 5, 2, 0, 1),
)
SESQUI_T_S1 = GridArray.from_rows([(0, 1, 4), (1, 4, 2), (2, 3, 5), (3, 5, 0)], 6)
SESQUI_T_S2 = GridArray.from_rows([(0, 1, 4), (1, 4, 0), (2, 3, 5), (3, 5, 2)], 6)
