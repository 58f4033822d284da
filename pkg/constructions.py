"""
Constructions Module
Explicit induced matchings for the grid families with a closed-form MIM:
even row counts, three rows and five rows with odd column counts, and paths.

Every generator checks its own output against the closed-form target and
raises ConstructionFailure rather than return a short certificate.
"""

from typing import List, Tuple

from grid_core import GridSpec, make_grid, transpose, transpose_edge
from matching import Matching, is_induced, make_matching
from formulas import mim_exact_formula, path_value


class ConstructionFailure(ValueError):
    """Raised when no generator covers a grid or a generator misses its target."""


# One period of the three-row pattern as (kind, offset) pairs; V23 and V12 are
# vertical edges between rows 2-3 and 1-2, H1 and H3 horizontal edges in rows
# 1 and 3 starting at the offset.
THREE_ROW_PERIOD = 8
THREE_ROW_PATTERN = (
    ('V23', 0),
    ('H1', 1),
    ('H3', 2),
    ('V12', 4),
    ('H3', 5),
    ('H1', 6),
)

# Reference G_{4,7} optimum: rows 1-2 on even columns, rows 3-4 on odd ones
REFERENCE_4X7_EDGES = (
    ((1, 2), (2, 2)), ((1, 4), (2, 4)), ((1, 6), (2, 6)),
    ((3, 1), (4, 1)), ((3, 3), (4, 3)), ((3, 5), (4, 5)), ((3, 7), (4, 7)),
)


def construction_target(n: int, m: int) -> int:
    """Closed-form MIM a generator for G_{n,m} has to reach."""
    if min(n, m) == 1:
        return path_value(max(n, m))
    target = mim_exact_formula(n, m)
    if target is None:
        raise ConstructionFailure(f"No closed-form MIM for ({n}, {m})")
    return target


def verify_construction(m: Matching, target: int) -> bool:
    """True iff m is induced and has exactly target edges."""
    return len(m) == target and is_induced(m)


def _checked(m: Matching, target: int) -> Matching:
    if not verify_construction(m, target):
        raise ConstructionFailure(
            f"Generator produced {len(m)} edges on {m.grid} "
            f"(induced: {is_induced(m)}), target is {target}"
        )
    return m


def _transposed(m: Matching) -> Matching:
    return make_matching(transpose(m.grid), [transpose_edge(e) for e in m.edges])


def build_path(length: int) -> Matching:
    """Every third edge of G_{1,length}: (1,1)-(1,2), (1,4)-(1,5), ..."""
    g = make_grid(1, length)
    pairs = [((1, c), (1, c + 1)) for c in range(1, length, 3)]
    return _checked(make_matching(g, pairs), path_value(length))


def build_even_rows(n: int, m: int) -> Matching:
    """
    Vertical dominoes on row pairs (2t+1, 2t+2).

    The bottom pair uses odd columns and the parity alternates going up, so
    an odd number of pairs puts the ceil(m/2) layout on both outer pairs.
    For (4, 7) this is REFERENCE_4X7_EDGES.

    Raises:
        ConstructionFailure: If n is odd or the pattern misses ceil(mn/4)
    """
    if n < 2 or m < 1 or n % 2 == 1:
        raise ConstructionFailure(f"build_even_rows needs even n >= 2, got ({n}, {m})")
    g = make_grid(n, m)
    pair_count = n // 2
    pairs = []
    for t in range(pair_count):
        first_col = 1 if (pair_count - 1 - t) % 2 == 0 else 2
        top = 2 * t + 1
        for c in range(first_col, m + 1, 2):
            pairs.append(((top, c), (top + 1, c)))
    return _checked(make_matching(g, pairs), (m * n + 3) // 4)


def _three_row_pairs(m: int) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    pairs = []
    for start in range(1, m + 1, THREE_ROW_PERIOD):
        for kind, offset in THREE_ROW_PATTERN:
            c = start + offset
            if kind == 'V23' and c <= m:
                pairs.append(((2, c), (3, c)))
            elif kind == 'V12' and c <= m:
                pairs.append(((1, c), (2, c)))
            elif kind in ('H1', 'H3') and c + 1 <= m:
                row = 1 if kind == 'H1' else 3
                pairs.append(((row, c), (row, c + 1)))
    return pairs


def build_3_rows(m: int) -> Matching:
    """
    Period-8 pattern on G_{3,m} for odd m >= 3, truncated at column m.

    Each period holds six edges in eight columns. The truncated
    pattern reaches (3(m-1)+2)/4 for m = 3 (mod 4) and 3(m-1)/4 + 1 for
    m = 1 (mod 4).

    Raises:
        ConstructionFailure: If m is even or below 3, or the target is missed
    """
    if m < 3 or m % 2 == 0:
        raise ConstructionFailure(f"build_3_rows needs odd m >= 3, got m = {m}")
    g = make_grid(3, m)
    return _checked(make_matching(g, _three_row_pairs(m)), construction_target(3, m))


def build_5_rows(m: int) -> Matching:
    """
    Horizontal dominoes on G_{5,m}, m = 3 (mod 4).

    Odd rows take (4j+1, 4j+2), even rows (4j+3, 4j+4), so vertically
    adjacent rows never share a saturated column; this gives 5(m-3)/4 + 3
    edges. m = 3 is the transpose of the three-row pattern on five columns
    (MIM(G_{5,3}) = MIM(G_{3,5}) = 4).

    Raises:
        ConstructionFailure: If m is not 3 (mod 4) or the target is missed
    """
    if m < 3 or m % 4 != 3:
        raise ConstructionFailure(f"build_5_rows needs m = 3 (mod 4), got m = {m}")
    if m == 3:
        return _checked(_transposed(build_3_rows(5)), construction_target(5, 3))
    g = make_grid(5, m)
    pairs = []
    for r in range(1, 6):
        first_col = 1 if r % 2 == 1 else 3
        for c in range(first_col, m, 4):
            pairs.append(((r, c), (r, c + 1)))
    return _checked(make_matching(g, pairs), construction_target(5, m))


def reference_4x7_matching() -> Matching:
    """The seven-edge reference optimum of G_{4,7}."""
    return make_matching(GridSpec(4, 7), REFERENCE_4X7_EDGES)


def construct(n: int, m: int) -> Matching:
    """
    Dispatch to the generator covering G_{n,m}, transposing when needed.

    Raises:
        ConstructionFailure: If no generator covers the grid
    """
    make_grid(n, m)
    if n == 1:
        return build_path(m)
    if m == 1:
        return _transposed(build_path(n))
    if n % 2 == 0:
        return build_even_rows(n, m)
    if m % 2 == 0:
        return _transposed(build_even_rows(m, n))
    if n == 3:
        return build_3_rows(m)
    if m == 3:
        return _transposed(build_3_rows(n))
    if n == 5 and m % 4 == 3:
        return build_5_rows(m)
    if m == 5 and n % 4 == 3:
        return _transposed(build_5_rows(n))
    raise ConstructionFailure(f"No construction for G_{{{n},{m}}}")
