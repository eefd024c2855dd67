"""Enumeration and analysis of Youden rectangles and their relatives.

The package lists isotopism classes of Youden, near Youden and 3-lambda
rectangles with an orderly column-by-column search, computes canonical forms
and autotopism groups, and finds triple, double and sesqui arrays obtained by
deleting one column of a rectangle.
"""

from __future__ import annotations

from .arrays import (
    ArrayClass,
    ArrayLabel,
    Classification,
    GridArray,
    ScanReport,
    array_autotopism_order,
    array_canonical_form,
    build_3lambda_from_triple,
    classify_array,
    remove_and_swap,
    rl_form,
    scan_catalog,
    scan_compatibility,
    summarize_scan,
)
from .core import (
    CoverageTable,
    IntersectionProfile,
    Params,
    Rectangle,
    RectangleKind,
    classify_rectangle,
    column_intersection,
    covering_table,
    intersection_distribution,
    intersection_profile,
    is_latin,
    lambda_bounds,
    lambda_exact,
    lambda_value,
    nyr_split,
    tsuji_sides,
)
from .enumeration import (
    ClassCatalog,
    CountReport,
    PartialRectangle,
    SearchConfig,
    accepts_prefix,
    count_by_aut,
    count_self_conjugate,
    develop,
    enumerate_classes,
    extend_column,
    is_difference_set,
)
from .errors import (
    BoundsError,
    ClassificationError,
    DesignForgeError,
    GuardError,
    ParameterError,
    ParseError,
    PreconditionError,
    StructuralError,
    TrivialParametersError,
)
from .isotopy import (
    CanonicalForm,
    Isotopism,
    apply,
    are_isotopic,
    autotopism_order,
    autotopisms,
    canonical_form,
    canonical_with_aut,
    conjugate,
    is_normalized,
    is_self_conjugate,
    normalize,
)
from .oracle import brute_autotopism_order, brute_enumerate
from .rectfile import format_arrays, format_rectangles, parse_arrays, parse_rectangles, read_rectangles, write_rectangles

__version__ = "0.1.0"
