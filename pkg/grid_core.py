"""
Grid Core Module
Grid graph model for P_n x P_m: vertex/edge indexing, adjacency, row/column
slices and column-range subgrids.
This subroutine works independently and can be tested in isolation.

Conventions (see GRID_RULES.md):
- 1-based (row, col) indexing; Vertex(row=i, col=j) is u_i v_j.
- Edges are stored in canonical orientation (a precedes b lexicographically).
- Grids are dimensions only; adjacency is computed, never materialized.
"""

from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Set, Tuple

import networkx as nx


class GridError(ValueError):
    """Base error for grid model violations."""


class InvalidDimensionError(GridError):
    """Raised when a grid dimension is zero or negative."""


class OutOfBoundsError(GridError):
    """Raised when a vertex or index lies outside the grid."""


class InvalidRangeError(GridError):
    """Raised when a column range is empty or exceeds the grid."""


class Vertex(NamedTuple):
    row: int
    col: int


class Edge(NamedTuple):
    a: Vertex
    b: Vertex


@dataclass(frozen=True)
class GridSpec:
    """Dimensions of a P_n x P_m grid (rows = n, cols = m)."""

    rows: int
    cols: int

    @property
    def vertex_count(self) -> int:
        return self.rows * self.cols

    @property
    def edge_count(self) -> int:
        return self.rows * (self.cols - 1) + self.cols * (self.rows - 1)

    def contains(self, v: Vertex) -> bool:
        return 1 <= v.row <= self.rows and 1 <= v.col <= self.cols

    def __str__(self) -> str:
        return f"G_{{{self.rows},{self.cols}}}"


@dataclass(frozen=True)
class ColumnRange:
    """Inclusive, 1-based column range [first, last]."""

    first: int
    last: int

    @property
    def width(self) -> int:
        return self.last - self.first + 1


def make_grid(rows: int, cols: int) -> GridSpec:
    """
    Build a validated grid.

    Args:
        rows: Number of rows (n), at least 1
        cols: Number of columns (m), at least 1

    Returns:
        GridSpec

    Raises:
        InvalidDimensionError: If either dimension is below 1 or not an int
    """
    if isinstance(rows, bool) or isinstance(cols, bool):
        raise InvalidDimensionError(f"Grid dimensions must be integers, got {rows!r} x {cols!r}")
    if not isinstance(rows, int) or not isinstance(cols, int):
        raise InvalidDimensionError(f"Grid dimensions must be integers, got {rows!r} x {cols!r}")
    if rows < 1 or cols < 1:
        raise InvalidDimensionError(f"Grid dimensions must be positive, got {rows} x {cols}")
    return GridSpec(rows, cols)


def _check_vertex(g: GridSpec, v: Vertex) -> None:
    if not g.contains(v):
        raise OutOfBoundsError(f"Vertex {tuple(v)} is outside {g}")


def is_adjacent(u: Vertex, v: Vertex) -> bool:
    return abs(u.row - v.row) + abs(u.col - v.col) == 1


def neighbors(g: GridSpec, v: Vertex) -> Set[Vertex]:
    """
    Grid neighbors of a vertex (Manhattan distance 1).

    Raises:
        OutOfBoundsError: If v is not in the grid
    """
    _check_vertex(g, v)
    r, c = v
    candidates = (Vertex(r - 1, c), Vertex(r + 1, c), Vertex(r, c - 1), Vertex(r, c + 1))
    return {u for u in candidates if g.contains(u)}


def degree(g: GridSpec, v: Vertex) -> int:
    return len(neighbors(g, v))


def vertices(g: GridSpec) -> Iterator[Vertex]:
    """All vertices in (row, col) order."""
    for r in range(1, g.rows + 1):
        for c in range(1, g.cols + 1):
            yield Vertex(r, c)


def make_edge(u: Vertex, v: Vertex) -> Edge:
    """
    Build a canonical edge from two adjacent vertices.

    Raises:
        GridError: If the vertices are not grid-adjacent
    """
    u, v = Vertex(*u), Vertex(*v)
    if not is_adjacent(u, v):
        raise GridError(f"Vertices {tuple(u)} and {tuple(v)} are not adjacent")
    return Edge(u, v) if u < v else Edge(v, u)


def edges(g: GridSpec) -> List[Edge]:
    """All edges in canonical order."""
    result = []
    for v in vertices(g):
        if v.col < g.cols:
            result.append(Edge(v, Vertex(v.row, v.col + 1)))
        if v.row < g.rows:
            result.append(Edge(v, Vertex(v.row + 1, v.col)))
    result.sort()
    return result


def column_set(g: GridSpec, i: int) -> List[Vertex]:
    """V_i: the n vertices of column i, top to bottom."""
    if not 1 <= i <= g.cols:
        raise OutOfBoundsError(f"Column {i} is outside {g}")
    return [Vertex(r, i) for r in range(1, g.rows + 1)]


def row_set(g: GridSpec, i: int) -> List[Vertex]:
    """U_i: the m vertices of row i, left to right."""
    if not 1 <= i <= g.rows:
        raise OutOfBoundsError(f"Row {i} is outside {g}")
    return [Vertex(i, c) for c in range(1, g.cols + 1)]


def subgrid_columns(g: GridSpec, col_range: ColumnRange) -> Tuple[GridSpec, int]:
    """
    Subgrid G^{|k|} induced by a consecutive column range.

    Args:
        g: Parent grid
        col_range: Columns first..last (inclusive)

    Returns:
        Tuple[GridSpec, int]: (subgrid, column offset); sub column c is
        parent column c + offset.

    Raises:
        InvalidRangeError: If the range is empty or leaves the grid
    """
    if not 1 <= col_range.first <= col_range.last <= g.cols:
        raise InvalidRangeError(
            f"Column range {col_range.first}..{col_range.last} is invalid for {g}"
        )
    return GridSpec(g.rows, col_range.width), col_range.first - 1


def shift_vertex(v: Vertex, offset: int) -> Vertex:
    """Map a subgrid vertex back to parent coordinates."""
    return Vertex(v.row, v.col + offset)


def shift_edge(e: Edge, offset: int) -> Edge:
    return Edge(shift_vertex(e.a, offset), shift_vertex(e.b, offset))


def transpose(g: GridSpec) -> GridSpec:
    return GridSpec(g.cols, g.rows)


def transpose_vertex(v: Vertex) -> Vertex:
    return Vertex(v.col, v.row)


def transpose_edge(e: Edge) -> Edge:
    return make_edge(transpose_vertex(e.a), transpose_vertex(e.b))


def reflect_vertex(g: GridSpec, v: Vertex, axis: str) -> Vertex:
    """Mirror a vertex: axis 'horizontal' flips columns (left-right), 'vertical' flips rows."""
    if axis == 'horizontal':
        return Vertex(v.row, g.cols + 1 - v.col)
    if axis == 'vertical':
        return Vertex(g.rows + 1 - v.row, v.col)
    raise ValueError(f"Unknown reflection axis: {axis}")


def reflect_edge(g: GridSpec, e: Edge, axis: str) -> Edge:
    return make_edge(reflect_vertex(g, e.a, axis), reflect_vertex(g, e.b, axis))


def to_networkx(g: GridSpec) -> nx.Graph:
    """The grid as a networkx Graph whose nodes are Vertex tuples."""
    graph = nx.Graph()
    graph.add_nodes_from(vertices(g))
    graph.add_edges_from(edges(g))
    return graph
