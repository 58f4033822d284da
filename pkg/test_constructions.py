"""
Tests for constructions: every generator reaches its closed-form target,
the dispatcher covers the documented families, and failure is loud.
"""

import pytest

from constructions import (
    ConstructionFailure,
    build_3_rows,
    build_5_rows,
    build_even_rows,
    build_path,
    construct,
    construction_target,
    reference_4x7_matching,
    verify_construction,
)
from formulas import mim_exact_formula
from grid_core import GridSpec, make_edge, make_grid
from matching import is_induced, make_matching
from solver import solve_mim


def test_reference_4x7_matching():
    m = reference_4x7_matching()
    assert m.grid == GridSpec(4, 7)
    assert verify_construction(m, 7)


def test_build_even_rows_4_7_is_reference_pattern():
    assert build_even_rows(4, 7) == reference_4x7_matching()


@pytest.mark.parametrize("n, m, size", [(2, 2, 1), (2, 5, 3), (4, 7, 7)])
def test_build_even_rows_examples(n, m, size):
    assert len(build_even_rows(n, m)) == size


def test_build_even_rows_all_targets():
    for n in range(2, 13, 2):
        for m in range(1, 52):
            built = build_even_rows(n, m)
            assert verify_construction(built, (m * n + 3) // 4)


@pytest.mark.parametrize("m, size", [(23, 17), (3, 2), (19, 14), (5, 4), (9, 7)])
def test_build_3_rows_examples(m, size):
    built = build_3_rows(m)
    assert len(built) == size
    assert is_induced(built)


def test_build_3_rows_all_targets():
    for m in range(3, 52, 2):
        assert verify_construction(build_3_rows(m), mim_exact_formula(3, m))


@pytest.mark.parametrize("m, size", [(23, 28), (7, 8), (3, 4), (11, 13)])
def test_build_5_rows_examples(m, size):
    built = build_5_rows(m)
    assert len(built) == size
    assert is_induced(built)


def test_build_5_rows_all_targets():
    for m in range(3, 52, 4):
        assert verify_construction(build_5_rows(m), mim_exact_formula(5, m))


def test_build_path():
    assert build_path(5).edges == (make_edge((1, 1), (1, 2)), make_edge((1, 4), (1, 5)))
    assert len(build_path(1)) == 0


@pytest.mark.parametrize("builder, arg", [
    (build_3_rows, 4),
    (build_3_rows, 1),
    (build_5_rows, 5),
    (build_5_rows, 9),
])
def test_generators_reject_uncovered_parameters(builder, arg):
    with pytest.raises(ConstructionFailure):
        builder(arg)


def test_build_even_rows_rejects_odd_n():
    with pytest.raises(ConstructionFailure):
        build_even_rows(3, 4)


def test_verify_construction():
    single = make_matching(make_grid(3, 3), [((1, 1), (1, 2))])
    assert not verify_construction(single, 2)
    assert verify_construction(single, 1)
    not_induced = make_matching(make_grid(2, 2), [((1, 1), (1, 2)), ((2, 1), (2, 2))])
    assert not verify_construction(not_induced, 2)


@pytest.mark.parametrize("n, m", [(2, 2), (7, 4), (1, 9), (9, 1), (3, 23), (23, 3), (5, 7), (7, 5), (6, 9)])
def test_construct_dispatch(n, m):
    built = construct(n, m)
    assert built.grid == GridSpec(n, m)
    assert verify_construction(built, construction_target(n, m))


@pytest.mark.parametrize("n, m", [(7, 9), (5, 9), (9, 23)])
def test_construct_uncovered(n, m):
    with pytest.raises(ConstructionFailure):
        construct(n, m)


@pytest.mark.parametrize("n, m", [(2, 7), (3, 11), (4, 5), (5, 7), (3, 9)])
def test_constructions_are_optimal(n, m):
    assert len(construct(n, m)) == solve_mim(make_grid(n, m)).size
