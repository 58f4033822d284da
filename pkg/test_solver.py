"""
Tests for solver: the profile DP against closed forms and the networkx
oracle, constraints, capacities, budgets and the exhaustive enumerator.
"""

import time

import networkx as nx
import pytest

from formulas import mim_exact_formula, vsb_value
from grid_core import OutOfBoundsError, Vertex, edges, make_grid, reflect_edge, transpose, vertices
from matching import classify_saturation, is_induced, make_matching
from solver import (
    NO_CONSTRAINTS,
    BudgetExceededError,
    CapacityError,
    InfeasibleConstraintsError,
    SolverConstraints,
    brute_force_mim,
    check_constraints,
    enumerate_induced_matchings,
    enumerate_optimal_matchings,
    max_induced_matching_of_graph,
    max_saturable,
    mim_of_graph,
    satisfies_constraints,
    saturable_extremum,
    solve_mim,
)

SMALL_GRIDS = [(n, m) for n in range(1, 25) for m in range(n, 25) if n * m <= 24]


def test_trivial_grids():
    assert solve_mim(make_grid(1, 1)).size == 0
    assert solve_mim(make_grid(1, 2)).size == 1
    assert solve_mim(make_grid(2, 2)).size == 1


@pytest.mark.parametrize("n, m", [(2, 3), (3, 3), (2, 5), (3, 4), (1, 7)])
def test_dp_matches_oracle_quick(n, m):
    assert solve_mim(make_grid(n, m)).size == brute_force_mim(make_grid(n, m))


@pytest.mark.slow
@pytest.mark.parametrize("n, m", SMALL_GRIDS)
def test_dp_matches_oracle_all_small(n, m):
    g = make_grid(n, m)
    result = solve_mim(g)
    assert result.size == brute_force_mim(g)
    assert is_induced(result.certificate)
    assert len(result.certificate) == result.size


@pytest.mark.parametrize("n", [2, 4, 6])
def test_even_rows_match_closed_form(n):
    for m in range(2, 13):
        assert solve_mim(make_grid(n, m)).size == (m * n + 3) // 4


@pytest.mark.parametrize("m", range(3, 24, 2))
def test_three_rows_match_closed_form(m):
    assert solve_mim(make_grid(3, m)).size == mim_exact_formula(3, m)


@pytest.mark.slow
@pytest.mark.parametrize("m", range(3, 16, 2))
def test_five_rows_match_closed_form(m):
    assert solve_mim(make_grid(5, m)).size == mim_exact_formula(5, m)


def test_reference_values():
    assert solve_mim(make_grid(3, 23)).size == 17
    assert solve_mim(make_grid(3, 19)).size == 14


@pytest.mark.slow
def test_five_by_twenty_three():
    assert solve_mim(make_grid(5, 23)).size == 28


@pytest.mark.slow
@pytest.mark.parametrize("n", [3, 5, 7])
def test_odd_grids_respect_odd_bound(n):
    for m in range(3, 14, 2):
        assert solve_mim(make_grid(n, m)).size <= (m * n + 1) // 4


@pytest.mark.slow
def test_seven_by_eleven_below_new_bound():
    assert solve_mim(make_grid(7, 11)).size <= 18


def test_certificate_orientation_follows_input():
    tall = solve_mim(make_grid(7, 3))
    assert tall.transposed
    assert tall.certificate.grid == make_grid(7, 3)
    assert tall.size == solve_mim(transpose(make_grid(7, 3))).size == 5


def test_reflection_preserves_size():
    g = make_grid(3, 7)
    result = solve_mim(g)
    mirrored = make_matching(g, [reflect_edge(g, e, 'horizontal') for e in result.certificate.edges])
    assert is_induced(mirrored)
    assert len(mirrored) == result.size


@pytest.mark.parametrize("n", range(1, 7))
def test_transpose_invariance_small(n):
    for m in range(1, 7):
        wide = solve_mim(make_grid(n, m))
        tall = solve_mim(make_grid(m, n))
        assert wide.size == tall.size
        assert wide.certificate.grid == make_grid(n, m)
        assert tall.certificate.grid == make_grid(m, n)


def test_forbidden_vertex_never_increases_size():
    g = make_grid(4, 5)
    unconstrained = solve_mim(g).size
    for v in vertices(g):
        c = SolverConstraints.build(forbidden_vertices=[tuple(v)])
        result = solve_mim(g, c)
        assert result.size <= unconstrained
        assert v not in result.certificate.saturated


def test_added_forbidden_vertex_is_monotone():
    g = make_grid(3, 6)
    base = SolverConstraints.build(forbidden_vertices=[(2, 2)])
    base_size = solve_mim(g, base).size
    for v in vertices(g):
        if v == Vertex(2, 2):
            continue
        more = SolverConstraints.build(forbidden_vertices=[(2, 2), tuple(v)])
        assert solve_mim(g, more).size <= base_size


def test_forced_edge_never_increases_size():
    g = make_grid(3, 4)
    unconstrained = solve_mim(g).size
    for e in edges(g):
        c = SolverConstraints.build(forced_edges=[(tuple(e.a), tuple(e.b))])
        result = solve_mim(g, c)
        assert result.size <= unconstrained
        assert e in result.certificate.edge_set


def test_solve_is_deterministic():
    g = make_grid(4, 6)
    assert solve_mim(g).certificate == solve_mim(g).certificate


def test_forced_edge_is_honored():
    g = make_grid(3, 5)
    c = SolverConstraints.build(forced_edges=[((1, 3), (2, 3))])
    result = solve_mim(g, c)
    assert satisfies_constraints(result.certificate, c)
    assert result.size <= solve_mim(g).size


def test_forbidden_vertices_shrink_to_path():
    g = make_grid(2, 4)
    c = SolverConstraints.build(forbidden_vertices=[(1, col) for col in range(1, 5)])
    assert solve_mim(g, c).size == 1


def test_forbidden_edge_is_avoided():
    g = make_grid(1, 2)
    c = SolverConstraints.build(forbidden_edges=[((1, 1), (1, 2))])
    assert solve_mim(g, c).size == 0


def test_row_cap_and_floor():
    g = make_grid(2, 4)
    capped = SolverConstraints.build(row_saturation_cap=(1, 0))
    result = solve_mim(g, capped)
    assert result.size == 1
    assert not any(v.row == 1 for v in result.certificate.saturated)

    # four consecutive saturated vertices cannot be induced, three can
    floored = SolverConstraints.build(row_saturation_floor=(1, 3))
    result = solve_mim(g, floored)
    assert result.size == 2
    assert sum(1 for v in result.certificate.saturated if v.row == 1) == 3
    with pytest.raises(InfeasibleConstraintsError):
        solve_mim(g, SolverConstraints.build(row_saturation_floor=(1, 4)))


def test_conflicting_forced_edges_are_infeasible():
    c = SolverConstraints.build(forced_edges=[((1, 1), (1, 2)), ((2, 1), (2, 2))])
    with pytest.raises(InfeasibleConstraintsError):
        solve_mim(make_grid(2, 2), c)


def test_floor_beyond_row_length_is_infeasible():
    with pytest.raises(InfeasibleConstraintsError):
        solve_mim(make_grid(2, 3), SolverConstraints.build(row_saturation_floor=(1, 4)))


def test_unreachable_floor_is_infeasible():
    # a single row of three vertices saturates at most two
    with pytest.raises(InfeasibleConstraintsError):
        solve_mim(make_grid(1, 3), SolverConstraints.build(row_saturation_floor=(1, 3)))


def test_constraints_outside_grid():
    with pytest.raises(OutOfBoundsError):
        check_constraints(make_grid(2, 2), SolverConstraints.build(forbidden_vertices=[(3, 1)]))


def test_constraints_from_dict():
    c = SolverConstraints.from_dict({
        'forced_edges': [[2, 1, 1, 1]],
        'forbidden_vertices': [[3, 3]],
        'row_saturation_cap': [1, 2],
    })
    assert c.to_dict()['forced_edges'] == [[1, 1, 2, 1]]
    assert c.counted_row == 1
    with pytest.raises(ValueError):
        SolverConstraints.from_dict({'forced': []})


def test_fingerprint_is_order_independent():
    a = SolverConstraints.build(forbidden_vertices=[(1, 1), (2, 2)])
    b = SolverConstraints.build(forbidden_vertices=[(2, 2), (1, 1)])
    assert a.fingerprint() == b.fingerprint()
    assert a.fingerprint() != NO_CONSTRAINTS.fingerprint()


def test_capacity_error():
    with pytest.raises(CapacityError):
        solve_mim(make_grid(11, 11), max_rows=10)
    with pytest.raises(CapacityError):
        brute_force_mim(make_grid(5, 6), max_edges=40)


def test_expired_deadline_raises():
    with pytest.raises(BudgetExceededError):
        solve_mim(make_grid(3, 5), deadline=time.monotonic() - 1)


def test_graph_oracle_on_non_grid():
    assert mim_of_graph(nx.path_graph(5)) == 2
    assert mim_of_graph(nx.cycle_graph(6)) == 2
    assert mim_of_graph(nx.empty_graph(3)) == 0
    assert len(max_induced_matching_of_graph(nx.star_graph(4))) == 1


def test_enumerate_optimal_matchings_2x2():
    found = list(enumerate_optimal_matchings(make_grid(2, 2)))
    assert len(found) == 4
    assert all(len(m) == 1 and is_induced(m) for m in found)


def test_enumerate_all_induced_matchings_path():
    found = list(enumerate_induced_matchings(make_grid(1, 4), maximum_only=False))
    # empty set plus the three single edges
    assert sorted(len(m) for m in found) == [0, 1, 1, 1]


def test_enumerate_respects_constraints():
    c = SolverConstraints.build(forced_edges=[((1, 1), (2, 1))])
    found = list(enumerate_induced_matchings(make_grid(2, 4), c))
    assert found
    assert all(satisfies_constraints(m, c) and len(m) == 2 for m in found)


def test_enumerate_capacity():
    with pytest.raises(CapacityError):
        next(enumerate_induced_matchings(make_grid(5, 5), max_vertices=20))


@pytest.mark.parametrize("n, m, expected", [(3, 3, 5), (3, 6, 10)])
def test_max_saturable(n, m, expected):
    assert max_saturable(make_grid(n, m)) == expected


def test_max_saturable_3x5_exceeds_formula():
    # four row edges leave (2,3) free saturable: 8 saturated + 1
    g = make_grid(3, 5)
    witness = make_matching(g, [((1, 1), (1, 2)), ((1, 4), (1, 5)), ((3, 1), (3, 2)), ((3, 4), (3, 5))])
    assert is_induced(witness)
    assert len(witness) == solve_mim(g).size == 4
    report = classify_saturation(witness)
    assert report.free_saturable == frozenset({Vertex(2, 3)})
    assert len(report.saturable) == 9
    assert max_saturable(g) == 9
    assert vsb_value(3, 5) == 8


def test_saturable_extremum_witness():
    count, witness = saturable_extremum(make_grid(3, 3))
    assert count == 5
    assert len(classify_saturation(witness).saturable) == 5


def test_saturable_extremum_count_within():
    within = frozenset({Vertex(3, c) for c in range(1, 4)})
    count, _ = saturable_extremum(make_grid(3, 3), count_within=within)
    assert 0 < count <= 3
