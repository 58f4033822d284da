"""
Report Generator Module
Builds bound sweep tables and formats text reports for sweeps and lemma runs.
This subroutine works independently and can be tested in isolation.
"""

from collections import Counter
from typing import Dict, List, Optional

import pandas as pd

from export_handler import TABLE_COLUMNS
from formulas import bounds
from grid_core import GridSpec
from solver import solve_mim

CROSS_CHECK_MAX_CELLS = 24


class ReportGenerator:
    """
    Generates sweep tables from formulas.bounds and formatted reports from
    tables and lemma-check results.
    """

    def __init__(self, config: Dict = None):
        """
        Initialize the ReportGenerator.

        Args:
            config: Effective configuration (max_rows, table_max_cells)
        """
        self.config = config or {}
        self.reports = {}
        self.tables = {}

    def build_bounds_table(self, rows: range, cols: range, cross_check: bool = False,
                           solve: bool = False) -> pd.DataFrame:
        """
        Sweep bounds() over rows x cols, ordered by (n, m).

        Args:
            rows: Row counts n
            cols: Column counts m
            cross_check: Add a dp column with the exact solver value for
                cells with nm <= 24
            solve: Let bounds() call the solver where no closed form applies

        Returns:
            pd.DataFrame with columns n, m, exact, lower, upper, tags[, dp]

        Raises:
            ValueError: If the sweep has more cells than table_max_cells
        """
        max_cells = self.config.get('table_max_cells', 2000)
        max_rows = self.config.get('max_rows', 10)
        cells = len(rows) * len(cols)
        if cells > max_cells:
            raise ValueError(f"Table has {cells} cells, maximum is {max_cells}")

        records = []
        for n in rows:
            for m in cols:
                result = bounds(n, m, solve=solve, max_rows=max_rows)
                record = {
                    'n': n,
                    'm': m,
                    'exact': result.exact,
                    'lower': result.lower,
                    'upper': result.upper,
                    'tags': ';'.join(result.provenance),
                }
                if cross_check:
                    record['dp'] = (solve_mim(GridSpec(n, m), max_rows=max_rows).size
                                    if n * m <= CROSS_CHECK_MAX_CELLS else None)
                records.append(record)

        columns = TABLE_COLUMNS + (['dp'] if cross_check else [])
        table = pd.DataFrame(records, columns=columns)
        for col in ('n', 'm', 'exact', 'lower', 'upper') + (('dp',) if cross_check else ()):
            table[col] = table[col].astype('Int64')
        self.tables['bounds'] = table
        return table

    def cross_check_mismatches(self, table: pd.DataFrame) -> pd.DataFrame:
        """Rows whose exact value disagrees with the solver column."""
        if 'dp' not in table.columns:
            return table.iloc[0:0]
        checked = table[table['exact'].notna() & table['dp'].notna()]
        return checked[checked['exact'] != checked['dp']]

    def generate_bounds_report(self, table: pd.DataFrame, title: str = "MIM Bounds Sweep") -> str:
        """
        Summary of a sweep: how many cells are exact, how many are intervals,
        and the widest interval.
        """
        exact = int(table['exact'].notna().sum())
        open_cells = table[table['exact'].isna()]
        report = f"""
{'=' * 60}
{title.upper()}
{'=' * 60}

  Cells:                 {len(table):,}
  Exact:                 {exact:,}
  Intervals:             {len(open_cells):,}
"""
        if len(open_cells):
            widths = open_cells['upper'] - open_cells['lower']
            widest = open_cells.loc[widths.idxmax()]
            report += f"  Widest interval:       G_{{{widest['n']},{widest['m']}}} [{widest['lower']}, {widest['upper']}]\n"
        if 'dp' in table.columns:
            mismatches = self.cross_check_mismatches(table)
            report += f"  Solver mismatches:     {len(mismatches):,}\n"
        report += f"\n{'=' * 60}\n"
        self.reports['bounds'] = report
        return report

    def generate_lemma_report(self, results: List, title: str = "Lemma Checks") -> str:
        """
        Text report of lemma-check results in run order.

        Args:
            results: LemmaCheckResult list from lemma_lab.run_all
        """
        if not results:
            return "No lemma checks were run."

        counts = Counter(r.verdict for r in results)
        report = f"""
{'=' * 80}
{title.upper()}
{'=' * 80}

  Confirmed:     {counts.get('Confirmed', 0)}
  Refuted:       {counts.get('Refuted', 0)}
  Inconclusive:  {counts.get('Inconclusive', 0)}

"""
        for r in results:
            observed = ', '.join(f"{k}={v}" for k, v in sorted(r.observed.items()))
            instance = ', '.join(f"{k}={v}" for k, v in r.instance.items()
                                 if k not in ('forced', 'constraints'))
            report += f"""
{r.lemma_id} [{instance}]
{'-' * (len(r.lemma_id) + len(instance) + 3)}
  Claim:     {r.claimed or '(not reached)'}
  Observed:  {observed or '-'}
  Verdict:   {r.verdict}
"""
            for note in r.notes:
                report += f"  Note:      {note}\n"

        report += f"\n{'=' * 80}\n"
        self.reports['lemmas'] = report
        return report

    def get_report(self, report_name: str) -> Optional[str]:
        return self.reports.get(report_name)
