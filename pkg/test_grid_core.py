"""
Tests for grid_core: dimensions, adjacency, edge canonicalization, windows
and the transpose / reflection maps.
"""

import pytest

from grid_core import (
    ColumnRange,
    Edge,
    GridError,
    GridSpec,
    InvalidDimensionError,
    InvalidRangeError,
    OutOfBoundsError,
    Vertex,
    column_set,
    degree,
    edges,
    is_adjacent,
    make_edge,
    make_grid,
    neighbors,
    reflect_edge,
    row_set,
    shift_edge,
    subgrid_columns,
    to_networkx,
    transpose,
    transpose_edge,
    vertices,
)


def test_make_grid_valid():
    g = make_grid(3, 5)
    assert g == GridSpec(3, 5)
    assert g.vertex_count == 15
    assert str(g) == "G_{3,5}"


@pytest.mark.parametrize("rows, cols", [(0, 3), (3, 0), (-1, 2)])
def test_make_grid_rejects_non_positive(rows, cols):
    with pytest.raises(InvalidDimensionError):
        make_grid(rows, cols)


def test_make_grid_rejects_non_integer():
    with pytest.raises(InvalidDimensionError):
        make_grid(2.5, 3)


@pytest.mark.parametrize("rows, cols", [(True, 3), (3, True), (True, True)])
def test_make_grid_rejects_bool(rows, cols):
    with pytest.raises(InvalidDimensionError):
        make_grid(rows, cols)


def test_edge_count_matches_listing():
    for n, m in [(1, 1), (1, 4), (2, 3), (4, 7)]:
        g = make_grid(n, m)
        assert len(edges(g)) == g.edge_count == n * (m - 1) + m * (n - 1)


def test_degree_sum_is_twice_edge_count():
    for n in range(1, 8):
        for m in range(1, 8):
            g = make_grid(n, m)
            assert sum(degree(g, v) for v in vertices(g)) == 2 * len(edges(g))


def test_column_and_row_sets_partition_vertices():
    for n, m in [(1, 1), (1, 5), (3, 4), (5, 2)]:
        g = make_grid(n, m)
        everything = set(vertices(g))
        for part in ([column_set(g, c) for c in range(1, m + 1)],
                     [row_set(g, r) for r in range(1, n + 1)]):
            assert sum(len(block) for block in part) == len(everything)
            assert set().union(*map(set, part)) == everything


def test_is_adjacent():
    assert is_adjacent(Vertex(1, 1), Vertex(1, 2))
    assert is_adjacent(Vertex(2, 3), Vertex(1, 3))
    assert not is_adjacent(Vertex(1, 1), Vertex(2, 2))
    assert not is_adjacent(Vertex(1, 1), Vertex(1, 1))


def test_neighbors_and_degree():
    g = make_grid(3, 3)
    assert neighbors(g, Vertex(1, 1)) == {Vertex(1, 2), Vertex(2, 1)}
    assert degree(g, Vertex(2, 2)) == 4
    assert degree(g, Vertex(1, 2)) == 3
    assert neighbors(make_grid(1, 1), Vertex(1, 1)) == set()


def test_neighbors_out_of_bounds():
    with pytest.raises(OutOfBoundsError):
        neighbors(make_grid(2, 2), Vertex(3, 1))


def test_make_edge_is_canonical():
    assert make_edge((2, 1), (1, 1)) == Edge(Vertex(1, 1), Vertex(2, 1))
    assert make_edge((1, 3), (1, 2)) == Edge(Vertex(1, 2), Vertex(1, 3))


def test_make_edge_rejects_non_adjacent():
    with pytest.raises(GridError):
        make_edge((1, 1), (2, 2))


def test_vertices_order():
    assert list(vertices(make_grid(2, 2))) == [Vertex(1, 1), Vertex(1, 2), Vertex(2, 1), Vertex(2, 2)]


def test_column_and_row_sets():
    g = make_grid(3, 4)
    assert column_set(g, 2) == [Vertex(1, 2), Vertex(2, 2), Vertex(3, 2)]
    assert row_set(g, 3) == [Vertex(3, c) for c in range(1, 5)]
    with pytest.raises(OutOfBoundsError):
        column_set(g, 5)
    with pytest.raises(OutOfBoundsError):
        row_set(g, 0)


def test_subgrid_columns_and_shift():
    g = make_grid(5, 23)
    sub, offset = subgrid_columns(g, ColumnRange(9, 14))
    assert sub == GridSpec(5, 6)
    assert offset == 8
    assert shift_edge(make_edge((1, 1), (2, 1)), offset) == make_edge((1, 9), (2, 9))


@pytest.mark.parametrize("first, last", [(0, 3), (4, 3), (20, 24)])
def test_subgrid_columns_invalid(first, last):
    with pytest.raises(InvalidRangeError):
        subgrid_columns(make_grid(5, 23), ColumnRange(first, last))


def test_transpose_round_trip():
    g = make_grid(3, 7)
    assert transpose(g) == GridSpec(7, 3)
    e = make_edge((1, 2), (1, 3))
    assert transpose_edge(e) == make_edge((2, 1), (3, 1))
    assert transpose_edge(transpose_edge(e)) == e


def test_reflect_edge():
    g = make_grid(3, 5)
    assert reflect_edge(g, make_edge((1, 1), (1, 2)), 'horizontal') == make_edge((1, 4), (1, 5))
    assert reflect_edge(g, make_edge((1, 1), (2, 1)), 'vertical') == make_edge((2, 1), (3, 1))
    with pytest.raises(ValueError):
        reflect_edge(g, make_edge((1, 1), (2, 1)), 'diagonal')


def test_to_networkx():
    graph = to_networkx(make_grid(2, 3))
    assert graph.number_of_nodes() == 6
    assert graph.number_of_edges() == 7
    assert graph.has_edge(Vertex(1, 1), Vertex(2, 1))
