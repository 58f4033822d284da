"""
Export Handler Module
Writes bound tables, certificates and lemma verdicts to files or stdout.
This subroutine works independently and can be tested in isolation.

Progress lines ("Exported CSV: ...") go to stderr; stdout carries only the
requested payload so repeated runs are byte-identical.
"""

import json
import os
import sys
from datetime import datetime
from typing import Dict, Iterable, List, Optional, Union

import pandas as pd

TABLE_COLUMNS = ['n', 'm', 'exact', 'lower', 'upper', 'tags']


class ExportHandler:
    """
    Exports tables (CSV / JSON), certificates (JSON / ASCII) and verdict
    streams (JSON lines).
    """

    def __init__(self, output_dir: str = None, quiet: bool = False):
        """
        Initialize the ExportHandler.

        Args:
            output_dir: Directory for output files (default: ./reports)
            quiet: Suppress the per-file progress lines
        """
        self.output_dir = output_dir or os.path.join(os.getcwd(), 'reports')
        self.quiet = quiet
        self.exported_files = []

        if not os.path.exists(self.output_dir):
            os.makedirs(self.output_dir)
            self._log(f"Created output directory: {self.output_dir}")

    def _log(self, message: str) -> None:
        if not self.quiet:
            print(message, file=sys.stderr)

    def _generate_filename(self, base_name: str, extension: str) -> str:
        """Timestamped path inside output_dir."""
        timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
        return os.path.join(self.output_dir, f"{base_name}_{timestamp}.{extension}")

    def _target(self, filename: Optional[str], base_name: str, extension: str) -> str:
        if filename:
            return os.path.join(self.output_dir, filename)
        return self._generate_filename(base_name, extension)

    def _record(self, filepath: str, label: str) -> str:
        self.exported_files.append(filepath)
        self._log(f"Exported {label}: {filepath}")
        return filepath

    def export_table_csv(self, table: pd.DataFrame, filename: str = None,
                         base_name: str = "bounds") -> str:
        """
        Export a bounds table to CSV with header n,m,exact,lower,upper,tags
        (plus dp when cross-checked).

        Returns:
            str: Path to exported file
        """
        filepath = self._target(filename, base_name, 'csv')
        with open(filepath, 'w', encoding='utf-8', newline='') as f:
            f.write(table_to_csv(table))
        return self._record(filepath, 'CSV')

    def export_to_json(self, data: Union[Dict, List, pd.DataFrame], filename: str = None,
                       base_name: str = "data") -> str:
        """
        Export data to JSON.

        Args:
            data: Dict, list, or DataFrame (written as records)
            filename: Specific filename (optional)
            base_name: Base name for auto-generated filename

        Returns:
            str: Path to exported file
        """
        if isinstance(data, pd.DataFrame):
            data = table_records(data)
        filepath = self._target(filename, base_name, 'json')
        with open(filepath, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=2, sort_keys=True, ensure_ascii=False)
            f.write('\n')
        return self._record(filepath, 'JSON')

    def export_json_lines(self, lines: Iterable[str], filename: str = None,
                          base_name: str = "verdicts") -> str:
        """Write pre-serialized JSON lines, one per line."""
        filepath = self._target(filename, base_name, 'jsonl')
        with open(filepath, 'w', encoding='utf-8') as f:
            for line in lines:
                f.write(line + '\n')
        return self._record(filepath, 'JSON lines')

    def export_to_txt(self, content: str, filename: str = None,
                      base_name: str = "report") -> str:
        filepath = self._target(filename, base_name, 'txt')
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(content)
        return self._record(filepath, 'TXT')

    def display_table(self, data: pd.DataFrame, title: str = None,
                      max_rows: int = 20) -> None:
        """
        Print a DataFrame as a fixed-width table on stderr.

        Args:
            data: DataFrame to display
            title: Optional title
            max_rows: Maximum rows to display
        """
        if title:
            print(f"\n{title}", file=sys.stderr)
            print("-" * len(title), file=sys.stderr)
        shown = data.head(max_rows) if len(data) > max_rows else data
        print(shown.to_string(index=False), file=sys.stderr)
        if len(data) > max_rows:
            print(f"\n... and {len(data) - max_rows} more rows", file=sys.stderr)
        print(file=sys.stderr)

    def get_exported_files(self) -> List[str]:
        return self.exported_files


def table_to_csv(table: pd.DataFrame) -> str:
    """CSV text of a bounds table: integers stay integers, missing values are empty."""
    return table.to_csv(index=False, lineterminator='\n')


def table_records(table: pd.DataFrame) -> List[Dict]:
    """Rows as JSON-ready dicts: <NA> becomes None, tags become lists."""
    records = []
    for row in table.to_dict(orient='records'):
        clean = {}
        for key, value in row.items():
            if key == 'tags':
                clean[key] = value.split(';') if value else []
            elif pd.isna(value):
                clean[key] = None
            else:
                clean[key] = int(value)
        records.append(clean)
    return records
