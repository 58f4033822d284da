"""
Matching Module
Matching values, the induced-matching predicate and the saturation vocabulary
(saturated / free saturable / saturable vertices), plus the certificate JSON
and ASCII forms used by the CLI.
This subroutine works independently and can be tested in isolation.
"""

import json
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple

import networkx as nx

from grid_core import (
    Edge,
    GridError,
    GridSpec,
    Vertex,
    make_edge,
    make_grid,
    neighbors,
    vertices,
)

SATURATED_GLYPH = '●'
UNSATURATED_GLYPH = '○'
H_EDGE, H_MATCHED = '─', '═'
V_EDGE, V_MATCHED = '│', '║'


class MatchingError(ValueError):
    """Base error for matching values."""


class NotAMatchingError(MatchingError):
    """Raised when an edge set is not vertex-disjoint or leaves the grid."""


class NotInducedError(MatchingError):
    """Raised when an operation requires an induced matching and gets another."""


class CertificateFormatError(MatchingError):
    """Raised when a certificate (JSON or ASCII) is malformed."""


@dataclass(frozen=True)
class Matching:
    """A vertex-disjoint edge set of a grid, edges kept in canonical order."""

    grid: GridSpec
    edges: Tuple[Edge, ...]

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    @property
    def saturated(self) -> FrozenSet[Vertex]:
        return frozenset(v for e in self.edges for v in e)


@dataclass(frozen=True)
class SaturationReport:
    """V_st, FSV and V_sb of an induced matching."""

    saturated: FrozenSet[Vertex]
    free_saturable: FrozenSet[Vertex]
    saturable: FrozenSet[Vertex]


def make_matching(grid: GridSpec, edges: Iterable) -> Matching:
    """
    Validate and freeze an edge set as a Matching.

    Args:
        grid: The grid the edges live in
        edges: Edge objects or (vertex, vertex) pairs, in any orientation

    Returns:
        Matching with canonical, sorted edges

    Raises:
        NotAMatchingError: If an edge leaves the grid, is not a grid edge,
            or two edges share a vertex
    """
    canonical = set()
    for e in edges:
        try:
            edge = make_edge(Vertex(*e[0]), Vertex(*e[1]))
        except GridError as exc:
            raise NotAMatchingError(str(exc)) from exc
        if not (grid.contains(edge.a) and grid.contains(edge.b)):
            raise NotAMatchingError(f"Edge {_edge_label(edge)} is outside {grid}")
        canonical.add(edge)

    seen = {}
    for edge in sorted(canonical):
        for v in edge:
            if v in seen:
                raise NotAMatchingError(
                    f"Edges {_edge_label(seen[v])} and {_edge_label(edge)} share vertex {tuple(v)}"
                )
            seen[v] = edge
    return Matching(grid, tuple(sorted(canonical)))


def _edge_label(e: Edge) -> str:
    return f"({e.a.row},{e.a.col})-({e.b.row},{e.b.col})"


def is_induced(m: Matching) -> bool:
    """
    True iff no endpoint of one matching edge is adjacent to an endpoint of another.

    Equivalently every saturated vertex has exactly one saturated neighbor.
    """
    saturated = m.saturated
    for v in saturated:
        if sum(1 for u in neighbors(m.grid, v) if u in saturated) != 1:
            return False
    return True


def is_induced_in_graph(graph: nx.Graph, edges: Iterable[Tuple]) -> bool:
    """Induced-matching predicate for an arbitrary networkx graph."""
    edge_list = list(edges)
    saturated = set()
    for u, v in edge_list:
        if not graph.has_edge(u, v):
            return False
        if u in saturated or v in saturated:
            return False
        saturated.update((u, v))
    for v in saturated:
        if sum(1 for u in graph.neighbors(v) if u in saturated) != 1:
            return False
    return True


def classify_saturation(m: Matching) -> SaturationReport:
    """
    Partition the relevant vertices of the grid for an induced matching.

    free_saturable holds exactly the unsaturated vertices with no saturated
    neighbor (distance at least 2 from V_st).

    Raises:
        NotInducedError: If m is not induced
    """
    if not is_induced(m):
        raise NotInducedError("classify_saturation requires an induced matching")
    saturated = m.saturated
    free = frozenset(
        v for v in vertices(m.grid)
        if v not in saturated and not any(u in saturated for u in neighbors(m.grid, v))
    )
    return SaturationReport(saturated=saturated, free_saturable=free, saturable=saturated | free)


def to_certificate(m: Matching) -> Dict:
    """Certificate schema: {"rows", "cols", "edges": [[r1, c1, r2, c2], ...]}."""
    return {
        'rows': m.grid.rows,
        'cols': m.grid.cols,
        'edges': [[e.a.row, e.a.col, e.b.row, e.b.col] for e in m.edges],
    }


def certificate_json(m: Matching) -> str:
    return json.dumps(to_certificate(m))


def from_certificate(obj: Dict) -> Matching:
    """
    Parse a certificate dict back into a Matching.

    Raises:
        CertificateFormatError: If fields are missing or malformed
        NotAMatchingError: If the edges do not form a matching of the grid
    """
    try:
        rows, cols, raw_edges = obj['rows'], obj['cols'], obj['edges']
    except (KeyError, TypeError) as exc:
        raise CertificateFormatError(f"Certificate is missing field: {exc}") from exc
    try:
        grid = make_grid(rows, cols)
    except GridError as exc:
        raise CertificateFormatError(str(exc)) from exc
    parsed = []
    for item in raw_edges:
        if not (isinstance(item, (list, tuple)) and len(item) == 4
                and all(isinstance(x, int) and not isinstance(x, bool) for x in item)):
            raise CertificateFormatError(f"Edge entry must be [r1, c1, r2, c2], got {item!r}")
        parsed.append(((item[0], item[1]), (item[2], item[3])))
    return make_matching(grid, parsed)


def render_ascii(m: Matching) -> str:
    """
    Deterministic drawing: ● saturated, ○ unsaturated, ═/║ matched edges,
    ─/│ other grid edges. Row 1 is the top line.
    """
    saturated = m.saturated
    matched = m.edge_set
    lines = []
    for r in range(1, m.grid.rows + 1):
        parts = []
        for c in range(1, m.grid.cols + 1):
            v = Vertex(r, c)
            parts.append(SATURATED_GLYPH if v in saturated else UNSATURATED_GLYPH)
            if c < m.grid.cols:
                parts.append(H_MATCHED if Edge(v, Vertex(r, c + 1)) in matched else H_EDGE)
        lines.append(''.join(parts))
        if r < m.grid.rows:
            glyphs = [
                V_MATCHED if Edge(Vertex(r, c), Vertex(r + 1, c)) in matched else V_EDGE
                for c in range(1, m.grid.cols + 1)
            ]
            lines.append(' '.join(glyphs))
    return '\n'.join(lines) + '\n'


def parse_ascii(text: str) -> Matching:
    """
    Inverse of render_ascii.

    Raises:
        CertificateFormatError: If the drawing is ragged, uses unknown glyphs,
            or marks a vertex saturated that no matched edge covers
    """
    lines = text.rstrip('\n').split('\n')
    if not lines or not lines[0] or len(lines) % 2 == 0:
        raise CertificateFormatError("Drawing must have an odd number of non-empty lines")
    rows = (len(lines) + 1) // 2
    width = len(lines[0])
    if width % 2 == 0:
        raise CertificateFormatError("Vertex lines must have odd length")
    cols = (width + 1) // 2
    grid = make_grid(rows, cols)

    filled = set()
    found: List[Tuple[Vertex, Vertex]] = []
    for idx, line in enumerate(lines):
        if len(line) != width:
            raise CertificateFormatError(f"Line {idx + 1} has length {len(line)}, expected {width}")
        if idx % 2 == 0:
            r = idx // 2 + 1
            for pos, ch in enumerate(line):
                c = pos // 2 + 1
                if pos % 2 == 0:
                    if ch == SATURATED_GLYPH:
                        filled.add(Vertex(r, c))
                    elif ch != UNSATURATED_GLYPH:
                        raise CertificateFormatError(f"Unknown vertex glyph {ch!r} at line {idx + 1}")
                elif ch == H_MATCHED:
                    found.append((Vertex(r, c), Vertex(r, c + 1)))
                elif ch != H_EDGE:
                    raise CertificateFormatError(f"Unknown edge glyph {ch!r} at line {idx + 1}")
        else:
            r = idx // 2 + 1
            for pos, ch in enumerate(line):
                if pos % 2 == 1:
                    if ch != ' ':
                        raise CertificateFormatError(f"Unexpected glyph {ch!r} at line {idx + 1}")
                    continue
                c = pos // 2 + 1
                if ch == V_MATCHED:
                    found.append((Vertex(r, c), Vertex(r + 1, c)))
                elif ch != V_EDGE:
                    raise CertificateFormatError(f"Unknown edge glyph {ch!r} at line {idx + 1}")

    m = make_matching(grid, found)
    if m.saturated != frozenset(filled):
        raise CertificateFormatError("Filled vertices do not match the drawn matched edges")
    return m
