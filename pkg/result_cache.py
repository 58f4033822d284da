"""
Result Cache
Local DuckDB store of exact solves keyed by (n, m, constraints fingerprint),
so repeated `compute --cache` runs and sweeps skip the profile DP.
"""

import json
import os
import sys
from datetime import datetime, timezone
from typing import Optional, Tuple

import duckdb
import pandas as pd

from grid_core import GridSpec
from matching import certificate_json, from_certificate, is_induced
from solver import NO_CONSTRAINTS, SolveResult, SolverConstraints, satisfies_constraints, solve_mim

DB_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "mim_cache.duckdb")


def connect(path: Optional[str] = None):
    return duckdb.connect(path or DB_PATH)


def _ensure_table(con):
    con.execute("""
        CREATE TABLE IF NOT EXISTS mim_solves (
            n INTEGER,
            m INTEGER,
            constraints TEXT,
            size INTEGER,
            certificate TEXT,
            states_explored BIGINT,
            solved_at TEXT,
            PRIMARY KEY (n, m, constraints)
        )
    """)


def lookup(g: GridSpec, constraints: Optional[SolverConstraints] = None,
           path: Optional[str] = None) -> Optional[SolveResult]:
    """
    Cached solve for g under constraints, or None.

    A cached certificate that no longer verifies is treated as a miss.
    """
    c = constraints or NO_CONSTRAINTS
    con = connect(path)
    _ensure_table(con)
    row = con.execute(
        "SELECT size, certificate, states_explored FROM mim_solves WHERE n = ? AND m = ? AND constraints = ?",
        [g.rows, g.cols, c.fingerprint()],
    ).fetchone()
    con.close()
    if row is None:
        return None
    size, certificate, states = row
    matching = from_certificate(json.loads(certificate))
    if len(matching) != size or not is_induced(matching) or not satisfies_constraints(matching, c):
        return None
    return SolveResult(size=size, certificate=matching, states_explored=states)


def store(result: SolveResult, constraints: Optional[SolverConstraints] = None,
          path: Optional[str] = None) -> None:
    c = constraints or NO_CONSTRAINTS
    g = result.certificate.grid
    con = connect(path)
    _ensure_table(con)
    con.execute(
        "INSERT OR REPLACE INTO mim_solves VALUES (?, ?, ?, ?, ?, ?, ?)",
        [g.rows, g.cols, c.fingerprint(), result.size, certificate_json(result.certificate),
         result.states_explored, datetime.now(timezone.utc).isoformat()],
    )
    con.close()


def cached_solve(g: GridSpec, constraints: Optional[SolverConstraints] = None,
                 path: Optional[str] = None, verbose: bool = False, **solve_kwargs) -> Tuple[SolveResult, bool]:
    """
    solve_mim through the cache.

    Returns:
        Tuple[SolveResult, bool]: (result, True if served from the cache)
    """
    cached = lookup(g, constraints, path)
    if cached is not None:
        if verbose:
            print(f"  {g} served from cache", file=sys.stderr)
        return cached, True
    result = solve_mim(g, constraints, verbose=verbose, **solve_kwargs)
    store(result, constraints, path)
    return result, False


def query(sql: str, path: Optional[str] = None) -> pd.DataFrame:
    con = connect(path)
    _ensure_table(con)
    result = con.execute(sql).df()
    con.close()
    return result


def status(path: Optional[str] = None) -> None:
    con = connect(path)
    _ensure_table(con)
    rows = con.execute(
        "SELECT n, m, constraints, size, solved_at FROM mim_solves ORDER BY n, m, constraints"
    ).fetchall()
    con.close()
    if not rows:
        print("No cached solves yet. Run: python main.py compute -n N -m M --cache")
        return
    print(f"\n{'Grid':<12} {'Size':>6}  {'Constrained':<12} {'Solved At'}")
    print("-" * 80)
    for n, m, constraints, size, solved_at in rows:
        constrained = 'no' if constraints == NO_CONSTRAINTS.fingerprint() else 'yes'
        print(f"{f'G_{{{n},{m}}}':<12} {size:>6}  {constrained:<12} {solved_at}")
    print()
