"""
Solver Module
Exact maximum induced matching (MIM) of grids.

- solve_mim: column-profile dynamic programming over the set S of saturated
  vertices. A vertex set is the saturated set of an induced matching iff every
  vertex of S has exactly one neighbor in S, and that rule only ever looks at
  the current cell, its left neighbor and its upper neighbor. The frontier
  keeps one state per row: UNSATURATED, SATURATED_PENDING (in S, partner not
  yet seen) or SATURATED_MATCHED (in S, partner seen). At a column boundary a
  pending vertex can only be matched to the right.
- brute_force_mim: oracle through maximum independent set of the square of
  the line graph (networkx).
- enumerate_induced_matchings / enumerate_optimal_matchings / max_saturable:
  exhaustive utilities for small grids.

Polynomial only for a fixed number of rows: the frontier has 3^rows states.
"""

import json
import sys
import time
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

import networkx as nx

from grid_core import (
    Edge,
    GridSpec,
    OutOfBoundsError,
    Vertex,
    edges as grid_edges,
    is_adjacent,
    make_edge,
    to_networkx,
)
from matching import (
    Matching,
    classify_saturation,
    is_induced,
    make_matching,
)

UNSATURATED = 0
SATURATED_PENDING = 1
SATURATED_MATCHED = 2

DEFAULT_MAX_ROWS = 10
DEFAULT_ORACLE_MAX_EDGES = 40
DEFAULT_ENUMERATE_MAX_VERTICES = 20


class SolverError(ValueError):
    """Base error for exact solves."""


class CapacityError(SolverError):
    """Raised when an instance exceeds the configured solver capacity."""


class InfeasibleConstraintsError(SolverError):
    """Raised when no induced matching satisfies the constraints."""


class BudgetExceededError(SolverError):
    """Raised when a solve passes its deadline."""


@dataclass(frozen=True)
class SolverConstraints:
    """
    Side conditions for an exact solve.

    row_saturation_cap / row_saturation_floor are (row, count) pairs; when both
    are given they must name the same row.
    """

    forced_edges: FrozenSet[Edge] = frozenset()
    forbidden_vertices: FrozenSet[Vertex] = frozenset()
    forbidden_edges: FrozenSet[Edge] = frozenset()
    row_saturation_cap: Optional[Tuple[int, int]] = None
    row_saturation_floor: Optional[Tuple[int, int]] = None

    @classmethod
    def build(cls, forced_edges: Iterable = (), forbidden_vertices: Iterable = (),
              forbidden_edges: Iterable = (), row_saturation_cap=None,
              row_saturation_floor=None) -> 'SolverConstraints':
        """Canonicalize raw tuples into a constraints value."""
        return cls(
            forced_edges=frozenset(make_edge(Vertex(*a), Vertex(*b)) for a, b in forced_edges),
            forbidden_vertices=frozenset(Vertex(*v) for v in forbidden_vertices),
            forbidden_edges=frozenset(make_edge(Vertex(*a), Vertex(*b)) for a, b in forbidden_edges),
            row_saturation_cap=tuple(row_saturation_cap) if row_saturation_cap else None,
            row_saturation_floor=tuple(row_saturation_floor) if row_saturation_floor else None,
        )

    @classmethod
    def from_dict(cls, data: Dict) -> 'SolverConstraints':
        """
        Read the constraints-file schema:
        {"forced_edges": [[r1,c1,r2,c2], ...], "forbidden_vertices": [[r,c], ...],
         "forbidden_edges": [...], "row_saturation_cap": [row, k],
         "row_saturation_floor": [row, k]}
        """
        unknown = set(data) - {'forced_edges', 'forbidden_vertices', 'forbidden_edges',
                               'row_saturation_cap', 'row_saturation_floor'}
        if unknown:
            raise ValueError(f"Unknown constraint fields: {sorted(unknown)}")
        return cls.build(
            forced_edges=[((e[0], e[1]), (e[2], e[3])) for e in data.get('forced_edges', [])],
            forbidden_vertices=[tuple(v) for v in data.get('forbidden_vertices', [])],
            forbidden_edges=[((e[0], e[1]), (e[2], e[3])) for e in data.get('forbidden_edges', [])],
            row_saturation_cap=data.get('row_saturation_cap'),
            row_saturation_floor=data.get('row_saturation_floor'),
        )

    def to_dict(self) -> Dict:
        return {
            'forced_edges': [[e.a.row, e.a.col, e.b.row, e.b.col] for e in sorted(self.forced_edges)],
            'forbidden_vertices': [[v.row, v.col] for v in sorted(self.forbidden_vertices)],
            'forbidden_edges': [[e.a.row, e.a.col, e.b.row, e.b.col] for e in sorted(self.forbidden_edges)],
            'row_saturation_cap': list(self.row_saturation_cap) if self.row_saturation_cap else None,
            'row_saturation_floor': list(self.row_saturation_floor) if self.row_saturation_floor else None,
        }

    def fingerprint(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @property
    def counted_row(self) -> Optional[int]:
        for pair in (self.row_saturation_cap, self.row_saturation_floor):
            if pair:
                return pair[0]
        return None


NO_CONSTRAINTS = SolverConstraints()


@dataclass
class SolveResult:
    size: int
    certificate: Matching
    optimal: bool = True
    states_explored: int = 0
    elapsed_seconds: float = 0.0
    transposed: bool = False


def edges_conflict(e1: Edge, e2: Edge) -> bool:
    """True if two distinct edges cannot both be in an induced matching."""
    return any(u == v or is_adjacent(u, v) for u in e1 for v in e2)


def check_constraints(g: GridSpec, c: SolverConstraints) -> None:
    """
    Validate constraints against a grid.

    Raises:
        OutOfBoundsError: If a constraint names something outside the grid
        InfeasibleConstraintsError: If the constraints contradict each other
    """
    for e in c.forced_edges | c.forbidden_edges:
        if not (g.contains(e.a) and g.contains(e.b)):
            raise OutOfBoundsError(f"Constraint edge {tuple(e.a)}-{tuple(e.b)} is outside {g}")
    for v in c.forbidden_vertices:
        if not g.contains(v):
            raise OutOfBoundsError(f"Forbidden vertex {tuple(v)} is outside {g}")

    forced = sorted(c.forced_edges)
    for i, e1 in enumerate(forced):
        for e2 in forced[i + 1:]:
            if edges_conflict(e1, e2):
                raise InfeasibleConstraintsError(
                    f"Forced edges {tuple(e1.a)}-{tuple(e1.b)} and {tuple(e2.a)}-{tuple(e2.b)} conflict"
                )
        if e1.a in c.forbidden_vertices or e1.b in c.forbidden_vertices:
            raise InfeasibleConstraintsError(f"Forced edge {tuple(e1.a)}-{tuple(e1.b)} touches a forbidden vertex")
        if e1 in c.forbidden_edges:
            raise InfeasibleConstraintsError(f"Edge {tuple(e1.a)}-{tuple(e1.b)} is both forced and forbidden")

    cap, floor = c.row_saturation_cap, c.row_saturation_floor
    for label, pair in (('cap', cap), ('floor', floor)):
        if pair is None:
            continue
        row, count = pair
        if not 1 <= row <= g.rows:
            raise OutOfBoundsError(f"Row saturation {label} names row {row}, outside {g}")
        if count < 0:
            raise InfeasibleConstraintsError(f"Row saturation {label} must be non-negative, got {count}")
    if cap and floor:
        if cap[0] != floor[0]:
            raise ValueError("Row saturation cap and floor must name the same row")
        if floor[1] > cap[1]:
            raise InfeasibleConstraintsError(f"Row floor {floor[1]} exceeds row cap {cap[1]}")
    if floor and floor[1] > g.cols:
        raise InfeasibleConstraintsError(f"Row floor {floor[1]} exceeds the row length {g.cols}")
    if cap:
        forced_in_row = sum(1 for e in c.forced_edges for v in e if v.row == cap[0])
        if forced_in_row > cap[1]:
            raise InfeasibleConstraintsError(
                f"Forced edges saturate {forced_in_row} vertices of row {cap[0]}, cap is {cap[1]}"
            )


def satisfies_constraints(m: Matching, c: SolverConstraints) -> bool:
    edge_set = m.edge_set
    saturated = m.saturated
    if not c.forced_edges <= edge_set:
        return False
    if saturated & c.forbidden_vertices:
        return False
    if edge_set & c.forbidden_edges:
        return False
    row = c.counted_row
    if row is not None:
        count = sum(1 for v in saturated if v.row == row)
        if c.row_saturation_cap and count > c.row_saturation_cap[1]:
            return False
        if c.row_saturation_floor and count < c.row_saturation_floor[1]:
            return False
    return True


class _ProfileSweep:
    """
    Column-by-column sweep of one grid orientation.

    Cells are (ri, c), 0-based, ri < width (profile width) and c < length.
    A frontier key packs the base-3 profile and the row-saturation counter:
    key = profile * counter_width + count.
    """

    def __init__(self, width: int, length: int, forced: Set, forbidden: Set,
                 forbidden_pairs: Set, counted: Set, cap: Optional[int],
                 floor: Optional[int], deadline: Optional[float]):
        self.width = width
        self.length = length
        self.forced = forced
        self.forbidden = forbidden
        self.forbidden_pairs = forbidden_pairs
        self.counted = counted
        self.cap = cap
        self.floor = floor
        self.deadline = deadline
        self.pw = [3 ** i for i in range(width + 1)]
        if cap is not None:
            self.counter_width = cap + 1
        elif floor is not None:
            self.counter_width = floor + 1
        else:
            self.counter_width = 1
        self.states_explored = 0

    def _step(self, values: Dict[int, int], ri: int, c: int,
              trace: bool) -> Tuple[Dict[int, int], Optional[Dict[int, Tuple[int, int]]]]:
        if self.deadline is not None and time.monotonic() >= self.deadline:
            raise BudgetExceededError("Solve exceeded its time budget")

        cell = (ri, c)
        allow_empty = cell not in self.forced
        allow_full = cell not in self.forbidden
        counted = cell in self.counted
        left_pair_forbidden = frozenset({(ri, c - 1), cell}) in self.forbidden_pairs
        up_pair_forbidden = frozenset({(ri - 1, c), cell}) in self.forbidden_pairs
        pw_r = self.pw[ri]
        pw_u = self.pw[ri - 1] if ri > 0 else 0
        cw = self.counter_width
        cap_active = self.cap is not None

        new: Dict[int, int] = {}
        back: Optional[Dict[int, Tuple[int, int]]] = {} if trace else None

        for key, val in values.items():
            p, cnt = divmod(key, cw)
            left = (p // pw_r) % 3
            up = (p // pw_u) % 3 if ri > 0 else UNSATURATED
            base = p - left * pw_r

            # cell stays out of S; a pending left neighbor would be stranded
            if allow_empty and left != SATURATED_PENDING:
                nk = base * cw + cnt
                if nk not in new or val > new[nk]:
                    new[nk] = val
                    if trace:
                        back[nk] = (key, 0)

            # cell joins S
            if not allow_full or left == SATURATED_MATCHED or up == SATURATED_MATCHED:
                continue
            left_pending = left == SATURATED_PENDING
            up_pending = up == SATURATED_PENDING
            if left_pending and up_pending:
                continue
            if (left_pending and left_pair_forbidden) or (up_pending and up_pair_forbidden):
                continue
            ncnt = cnt
            if counted:
                ncnt = cnt + 1
                if ncnt >= cw:
                    if cap_active:
                        continue
                    ncnt = cw - 1
            if left_pending:
                np_ = base + SATURATED_MATCHED * pw_r
                gain = 1
            elif up_pending:
                np_ = base + SATURATED_MATCHED * pw_r + (SATURATED_MATCHED - SATURATED_PENDING) * pw_u
                gain = 1
            else:
                np_ = base + SATURATED_PENDING * pw_r
                gain = 0
            nk = np_ * cw + ncnt
            nv = val + gain
            if nk not in new or nv > new[nk]:
                new[nk] = nv
                if trace:
                    back[nk] = (key, 1)

        self.states_explored += len(new)
        return new, back

    def _column(self, values: Dict[int, int], c: int, trace: bool):
        backs = []
        for ri in range(self.width):
            values, back = self._step(values, ri, c, trace)
            backs.append(back)
        return values, backs

    def _is_final(self, key: int) -> bool:
        p, cnt = divmod(key, self.counter_width)
        if self.floor is not None and cnt < self.floor:
            return False
        for ri in range(self.width):
            if (p // self.pw[ri]) % 3 == SATURATED_PENDING:
                return False
        return True

    def run(self) -> Tuple[int, Set[Tuple[int, int]]]:
        """
        Returns:
            Tuple[int, Set]: (optimum edge count, saturated cells of one optimum)

        Raises:
            InfeasibleConstraintsError: If no final state is valid
        """
        boundaries = [{0: 0}]
        values = boundaries[0]
        for c in range(self.length):
            values, _ = self._column(values, c, trace=False)
            boundaries.append(values)

        best_key, best_val = None, -1
        for key, val in values.items():
            if val > best_val and self._is_final(key):
                best_key, best_val = key, val
        if best_key is None:
            raise InfeasibleConstraintsError("No induced matching satisfies the constraints")

        cells = set()
        key = best_key
        for c in range(self.length - 1, -1, -1):
            _, backs = self._column(boundaries[c], c, trace=True)
            for ri in range(self.width - 1, -1, -1):
                key, chosen = backs[ri][key]
                if chosen:
                    cells.add((ri, c))
        return best_val, cells


def solve_mim(g: GridSpec, constraints: Optional[SolverConstraints] = None,
              max_rows: int = DEFAULT_MAX_ROWS, deadline: Optional[float] = None,
              verify: bool = True, verbose: bool = False) -> SolveResult:
    """
    Exact MIM of a grid under optional constraints.

    The sweep runs along the longer dimension, so the profile width is
    min(rows, cols); the certificate is always reported in g's orientation.
    Ties between optima are broken by the sweep's fixed transition order
    (first optimum found wins), so results are reproducible.

    Args:
        g: Grid
        constraints: Forced/forbidden edges, forbidden vertices, row cap/floor
        max_rows: Largest profile width accepted
        deadline: time.monotonic() value after which the solve aborts
        verify: Re-check the certificate before returning
        verbose: Print statistics to stderr

    Returns:
        SolveResult

    Raises:
        CapacityError: If min(rows, cols) exceeds max_rows
        InfeasibleConstraintsError: If the constraints admit no induced matching
        BudgetExceededError: If the deadline passes
    """
    c = constraints or NO_CONSTRAINTS
    check_constraints(g, c)
    width = min(g.rows, g.cols)
    if width > max_rows:
        raise CapacityError(f"{g} needs profile width {width}, capacity is {max_rows}")

    start = time.monotonic()
    transposed = g.rows > g.cols

    def to_cell(v: Vertex) -> Tuple[int, int]:
        return (v.col - 1, v.row - 1) if transposed else (v.row - 1, v.col - 1)

    forced = {to_cell(v) for e in c.forced_edges for v in e}
    forbidden = {to_cell(v) for v in c.forbidden_vertices}
    forbidden_pairs = {frozenset({to_cell(e.a), to_cell(e.b)}) for e in c.forbidden_edges}
    counted = set()
    row = c.counted_row
    if row is not None:
        counted = {to_cell(Vertex(row, col)) for col in range(1, g.cols + 1)}
    cap = c.row_saturation_cap[1] if c.row_saturation_cap else None
    floor = c.row_saturation_floor[1] if c.row_saturation_floor else None

    sweep = _ProfileSweep(
        width=width,
        length=max(g.rows, g.cols),
        forced=forced,
        forbidden=forbidden,
        forbidden_pairs=forbidden_pairs,
        counted=counted,
        cap=cap,
        floor=floor,
        deadline=deadline,
    )
    size, cells = sweep.run()

    if transposed:
        saturated = {Vertex(c_ + 1, ri + 1) for ri, c_ in cells}
    else:
        saturated = {Vertex(ri + 1, c_ + 1) for ri, c_ in cells}
    pairs = [
        (v, u) for v in saturated for u in (Vertex(v.row + 1, v.col), Vertex(v.row, v.col + 1))
        if u in saturated
    ]
    certificate = make_matching(g, pairs)

    if verify:
        if len(certificate) != size or not is_induced(certificate) or not satisfies_constraints(certificate, c):
            raise SolverError(f"Certificate for {g} failed verification")

    elapsed = time.monotonic() - start
    if verbose:
        print(f"  solved {g}: size {size}, {sweep.states_explored:,} states, {elapsed:.2f}s",
              file=sys.stderr)
    return SolveResult(size=size, certificate=certificate, states_explored=sweep.states_explored,
                       elapsed_seconds=elapsed, transposed=transposed)


def max_induced_matching_of_graph(graph: nx.Graph) -> List[Tuple]:
    """
    One maximum induced matching of an arbitrary small graph: a maximum
    independent set of the square of its line graph, found as a maximum
    clique of the complement.

    Returns:
        List of edges as (u, v) node pairs, sorted
    """
    if graph.number_of_edges() == 0:
        return []
    conflict = nx.power(nx.line_graph(graph), 2)
    clique, _ = nx.max_weight_clique(nx.complement(conflict), weight=None)
    return sorted(tuple(sorted(e)) for e in clique)


def mim_of_graph(graph: nx.Graph) -> int:
    return len(max_induced_matching_of_graph(graph))


def brute_force_mim(g: GridSpec, max_edges: int = DEFAULT_ORACLE_MAX_EDGES) -> int:
    """
    Oracle MIM by exhaustive maximum independent set search.

    Raises:
        CapacityError: If the grid has more than max_edges edges
    """
    if g.edge_count > max_edges:
        raise CapacityError(f"{g} has {g.edge_count} edges, oracle capacity is {max_edges}")
    return mim_of_graph(to_networkx(g))


def enumerate_induced_matchings(g: GridSpec, constraints: Optional[SolverConstraints] = None,
                                maximum_only: bool = True,
                                max_vertices: int = DEFAULT_ENUMERATE_MAX_VERTICES,
                                deadline: Optional[float] = None) -> Iterator[Matching]:
    """
    Yield induced matchings satisfying the constraints, each exactly once.

    Args:
        g: Grid
        constraints: Optional constraints
        maximum_only: Only yield matchings of the constrained maximum size
        max_vertices: Capacity on rows * cols
        deadline: time.monotonic() value after which enumeration aborts

    Raises:
        CapacityError: If the grid is larger than max_vertices
        BudgetExceededError: If the deadline passes
    """
    if g.vertex_count > max_vertices:
        raise CapacityError(f"{g} has {g.vertex_count} vertices, enumeration capacity is {max_vertices}")
    c = constraints or NO_CONSTRAINTS
    check_constraints(g, c)

    forced = sorted(c.forced_edges)
    candidates = [
        e for e in grid_edges(g)
        if e not in c.forced_edges
        and e not in c.forbidden_edges
        and e.a not in c.forbidden_vertices
        and e.b not in c.forbidden_vertices
        and not any(edges_conflict(e, f) for f in forced)
    ]
    count = len(candidates)
    conflict_masks = []
    for i, e1 in enumerate(candidates):
        mask = 1 << i
        for j, e2 in enumerate(candidates):
            if i != j and edges_conflict(e1, e2):
                mask |= 1 << j
        conflict_masks.append(mask)
    suffix_masks = [((1 << count) - 1) ^ ((1 << i) - 1) for i in range(count + 1)]

    target = None
    if maximum_only:
        target = solve_mim(g, c, max_rows=max(g.rows, g.cols), deadline=deadline).size - len(forced)

    chosen: List[Edge] = []

    def backtrack(idx: int, blocked: int) -> Iterator[List[Edge]]:
        if deadline is not None and time.monotonic() >= deadline:
            raise BudgetExceededError("Enumeration exceeded its time budget")
        if target is not None:
            available = (suffix_masks[idx] & ~blocked).bit_count()
            if len(chosen) + available < target:
                return
        if idx == count:
            if target is None or len(chosen) == target:
                yield list(chosen)
            return
        if not blocked >> idx & 1:
            chosen.append(candidates[idx])
            yield from backtrack(idx + 1, blocked | conflict_masks[idx])
            chosen.pop()
        yield from backtrack(idx + 1, blocked)

    for picked in backtrack(0, 0):
        m = make_matching(g, forced + picked)
        if satisfies_constraints(m, c):
            yield m


def enumerate_optimal_matchings(g: GridSpec,
                                max_vertices: int = DEFAULT_ENUMERATE_MAX_VERTICES) -> Iterator[Matching]:
    """Every maximum induced matching of g, each exactly once."""
    return enumerate_induced_matchings(g, None, maximum_only=True, max_vertices=max_vertices)


def saturable_extremum(g: GridSpec, constraints: Optional[SolverConstraints] = None,
                       count_within: Optional[FrozenSet[Vertex]] = None,
                       optimal_only: bool = True,
                       max_vertices: int = DEFAULT_ENUMERATE_MAX_VERTICES,
                       deadline: Optional[float] = None) -> Tuple[int, Optional[Matching]]:
    """
    Largest saturable-vertex count over (optimal) constrained induced matchings.

    Args:
        count_within: Only count saturable vertices in this set (default: all)

    Returns:
        Tuple[int, Optional[Matching]]: (count, a matching attaining it)
    """
    best, witness = -1, None
    for m in enumerate_induced_matchings(g, constraints, maximum_only=optimal_only,
                                         max_vertices=max_vertices, deadline=deadline):
        saturable = classify_saturation(m).saturable
        if count_within is not None:
            saturable = saturable & count_within
        if len(saturable) > best:
            best, witness = len(saturable), m
    return max(best, 0), witness


def max_saturable(g: GridSpec, max_vertices: int = DEFAULT_ENUMERATE_MAX_VERTICES) -> int:
    """
    Max |V_sb| over the maximum induced matchings of g.

    Agrees with formulas.vsb_value on G_{3,3} and G_{3,6}; on G_{3,5} it is 9
    against the formula's 8 (see GRID_RULES.md).
    """
    return saturable_extremum(g, max_vertices=max_vertices)[0]
