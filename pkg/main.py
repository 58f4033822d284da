"""
Grid MIM - Main CLI Entry Point
Command-line interface for exact maximum induced matching values, bounds,
constructions, certificate checks, lemma checks and sweep tables on grid graphs.

stdout carries only the requested payload; progress lines and errors go to
stderr, so two runs of the same command print identical stdout.

Exit codes:
    0  success
    2  invalid input (arguments, dimensions, constraints file, certificate)
    3  capacity exceeded
    4  infeasible constraints
    5  no closed form for the grid (--method formula)
    6  construction failure
    7  certificate failed verification
    8  budget exhausted
"""

import argparse
import json
import sys
import time
from typing import Dict, List, Optional

from config_loader import load_config
from constructions import ConstructionFailure, construct, construction_target, verify_construction
from export_handler import ExportHandler, table_records, table_to_csv
from formulas import InapplicableFormulaError, bounds, mim_exact_formula, path_value
from grid_core import GridError, make_grid, to_networkx
from lemma_lab import (INCONCLUSIVE, LemmaGuardError, check_by_id, result_to_json, run_all)
from matching import (MatchingError, from_certificate, is_induced, make_matching, render_ascii,
                      to_certificate)
from report_generator import ReportGenerator
from solver import (BudgetExceededError, CapacityError, InfeasibleConstraintsError, SolverConstraints,
                    SolverError, brute_force_mim, max_induced_matching_of_graph, solve_mim)

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_CAPACITY = 3
EXIT_INFEASIBLE = 4
EXIT_FORMULA_SILENT = 5
EXIT_CONSTRUCTION_FAILURE = 6
EXIT_VERIFY_FAILED = 7
EXIT_BUDGET = 8


class _ArgumentError(ValueError):
    """argparse usage errors, reported with exit code 2 instead of SystemExit."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


def parse_range(text: str) -> range:
    """
    Parse an inclusive 'a..b' range (or a single 'a').

    Raises:
        ValueError: If the text is malformed or a > b or a < 1
    """
    parts = text.split('..')
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise ValueError(f"Range must look like 'a..b', got {text!r}")
    if lo < 1 or lo > hi:
        raise ValueError(f"Range {text!r} must satisfy 1 <= a <= b")
    return range(lo, hi + 1)


def parse_args(argv: Optional[List[str]] = None):
    """Parse command line arguments."""
    common = _Parser(add_help=False)
    common.add_argument('--config', help='JSON config file (default: mim_config.json or $MIM_CONFIG)')
    common.add_argument('--quiet', '-q', action='store_true', help='Suppress progress output on stderr')
    common.add_argument('--verbose', action='store_true', help='Show solver statistics and progress')

    parser = _Parser(
        description='Grid MIM - exact values, bounds and lemma checks for induced matchings of grid graphs',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py compute -n 3 -m 23
  python main.py compute -n 2 -m 3 --method brute --emit json
  python main.py bounds -n 9 -m 23
  python main.py construct -n 5 -m 7 --verify --emit ascii
  python main.py verify --certificate cert.json --target 17
  python main.py lemma L3.3 -n 5 -m 23 -i 9
  python main.py lemma --all --report
  python main.py table --rows 2..6 --cols 2..13 --cross-check
  python main.py cache --status
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    compute = sub.add_parser('compute', parents=[common], help='Exact MIM of G_{n,m}')
    compute.add_argument('-n', '--rows', type=int, required=True)
    compute.add_argument('-m', '--cols', type=int, required=True)
    compute.add_argument('--method', choices=['dp', 'brute', 'formula'], default='dp')
    compute.add_argument('--constraints', metavar='FILE', help='Constraints JSON (dp only)')
    compute.add_argument('--emit', choices=['size', 'json', 'ascii'], default='size')
    compute.add_argument('--cache', action='store_true', help='Serve/store dp solves from the duckdb cache')
    compute.add_argument('--budget-ms', type=int, help='Abort the solve after this many milliseconds')
    compute.add_argument('--max-rows', type=int, help='Largest profile width for dp')
    compute.add_argument('--oracle-max-edges', type=int, help='Largest edge count for brute')

    bound = sub.add_parser('bounds', parents=[common], help='Exact value or interval with provenance')
    bound.add_argument('-n', '--rows', type=int, required=True)
    bound.add_argument('-m', '--cols', type=int, required=True)
    bound.add_argument('--solve', action='store_true', help='Use the solver where no closed form applies')
    bound.add_argument('--max-rows', type=int)

    build = sub.add_parser('construct', parents=[common], help='Explicit optimal induced matching')
    build.add_argument('-n', '--rows', type=int, required=True)
    build.add_argument('-m', '--cols', type=int, required=True)
    build.add_argument('--verify', action='store_true', help='Check the certificate against the closed form')
    build.add_argument('--emit', choices=['json', 'ascii', 'size'], default='json')

    check = sub.add_parser('verify', parents=[common], help='Check a certificate file')
    check.add_argument('--certificate', required=True, metavar='FILE')
    check.add_argument('--target', type=int, help='Required number of edges')

    lemma = sub.add_parser('lemma', parents=[common], help='Run lemma checks')
    lemma.add_argument('lemma_id', nargs='?', help='Check id, e.g. L3.3, R3.16, NewBound-n5')
    lemma.add_argument('--all', action='store_true', help='Run the registered suite')
    lemma.add_argument('--report', action='store_true', help='Print a text summary instead of JSON lines')
    lemma.add_argument('--budget-ms', type=int, help='Per-check budget in milliseconds')
    lemma.add_argument('--output-dir', help='Also write verdicts to a .jsonl file here')
    lemma.add_argument('-n', type=int)
    lemma.add_argument('-m', type=int)
    lemma.add_argument('-i', type=int)
    lemma.add_argument('-j', type=int)
    lemma.add_argument('-p', type=int)
    lemma.add_argument('--variant', choices=['left', 'right'])
    lemma.add_argument('--case', type=int, choices=[1, 2, 3])
    lemma.add_argument('--window', type=int, help='n_window for R3.16')

    table = sub.add_parser('table', parents=[common], help='Sweep bounds over ranges')
    table.add_argument('--rows', required=True, help='Row range a..b')
    table.add_argument('--cols', required=True, help='Column range a..b')
    table.add_argument('--format', choices=['csv', 'json'], default='csv')
    table.add_argument('--cross-check', action='store_true', help='Add a dp column for cells with nm <= 24')
    table.add_argument('--solve', action='store_true', help='Solve cells without a closed form')
    table.add_argument('--output-dir', help='Write the table to a file here instead of stdout')

    cache = sub.add_parser('cache', parents=[common], help='Inspect the solve cache')
    cache.add_argument('--status', action='store_true', help='List cached solves')

    return parser.parse_args(argv)


def _effective_config(args) -> Dict:
    """Config file and environment, then flags."""
    config = load_config(args.config)
    for flag, key in (('max_rows', 'max_rows'), ('oracle_max_edges', 'oracle_max_edges'),
                      ('budget_ms', 'lemma_budget_ms')):
        value = getattr(args, flag, None)
        if value is not None:
            config[key] = value
    return config


def _progress(args, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


def _load_constraints(path: str) -> SolverConstraints:
    with open(path, encoding='utf-8') as f:
        return SolverConstraints.from_dict(json.load(f))


def _deadline(budget_ms: Optional[int]) -> Optional[float]:
    return None if budget_ms is None else time.monotonic() + budget_ms / 1000


def _emit_matching(matching, emit: str) -> None:
    if emit == 'size':
        print(len(matching))
    elif emit == 'ascii':
        sys.stdout.write(render_ascii(matching))
    else:
        print(json.dumps({'size': len(matching), 'certificate': to_certificate(matching)}, sort_keys=True))


def run_compute(args, config: Dict) -> int:
    g = make_grid(args.rows, args.cols)
    if args.constraints and args.method != 'dp':
        raise ValueError("--constraints is only supported with --method dp")

    if args.method == 'formula':
        if args.emit != 'size':
            raise ValueError("--method formula only emits a size")
        value = path_value(max(g.rows, g.cols)) if min(g.rows, g.cols) == 1 else mim_exact_formula(g.rows, g.cols)
        if value is None:
            raise InapplicableFormulaError(f"No closed form for {g}; use --method dp or the bounds command")
        print(value)
        return EXIT_OK

    if args.method == 'brute':
        size = brute_force_mim(g, max_edges=config['oracle_max_edges'])
        if args.emit == 'size':
            print(size)
            return EXIT_OK
        matching = make_matching(g, max_induced_matching_of_graph(to_networkx(g)))
        _emit_matching(matching, args.emit)
        return EXIT_OK

    constraints = _load_constraints(args.constraints) if args.constraints else None
    solve_kwargs = {
        'max_rows': config['max_rows'],
        'deadline': _deadline(args.budget_ms),
        'verify': config['verify_certificates'],
    }
    if args.cache or config['use_cache']:
        from result_cache import cached_solve
        result, hit = cached_solve(g, constraints, path=config['cache_path'], verbose=args.verbose,
                                   **solve_kwargs)
        _progress(args, f"✓ {g}: {'cache hit' if hit else 'solved and cached'}")
    else:
        result = solve_mim(g, constraints, verbose=args.verbose, **solve_kwargs)
    _emit_matching(result.certificate, args.emit)
    return EXIT_OK


def run_bounds(args, config: Dict) -> int:
    result = bounds(args.rows, args.cols, solve=args.solve, max_rows=config['max_rows'])
    print(json.dumps(result.to_dict(), sort_keys=True, ensure_ascii=False))
    return EXIT_OK


def run_construct(args, config: Dict) -> int:
    matching = construct(args.rows, args.cols)
    if args.verify:
        target = construction_target(args.rows, args.cols)
        if not verify_construction(matching, target):
            print(f"ERROR: construction for {matching.grid} failed verification", file=sys.stderr)
            return EXIT_VERIFY_FAILED
        _progress(args, f"✓ {matching.grid}: {len(matching)} edges, induced, target {target}")
    _emit_matching(matching, args.emit)
    return EXIT_OK


def run_verify(args, config: Dict) -> int:
    with open(args.certificate, encoding='utf-8') as f:
        matching = from_certificate(json.load(f))
    induced = is_induced(matching)
    verified = induced and (args.target is None or len(matching) == args.target)
    print(json.dumps({
        'edges': len(matching),
        'induced': induced,
        'target': args.target,
        'verified': verified,
    }, sort_keys=True))
    if not verified:
        reason = 'not induced' if not induced else f"{len(matching)} edges, target {args.target}"
        print(f"ERROR: certificate failed verification ({reason})", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    _progress(args, f"✓ certificate verified on {matching.grid}")
    return EXIT_OK


def run_lemma(args, config: Dict) -> int:
    budget_ms = config['lemma_budget_ms']
    if args.all:
        results = run_all(budget_ms=budget_ms, config=config, verbose=not args.quiet)
    elif args.lemma_id:
        params = {'n': args.n, 'm': args.m, 'i': args.i, 'j': args.j, 'p': args.p,
                  'variant': args.variant, 'case': args.case, 'window': args.window}
        results = [check_by_id(args.lemma_id, params, config=config, budget_ms=budget_ms)]
    else:
        raise ValueError("Give a lemma id or --all")

    lines = [result_to_json(r) for r in results]
    report = ReportGenerator(config).generate_lemma_report(results) if args.report else None
    if report is not None:
        sys.stdout.write(report)
    else:
        for line in lines:
            print(line)
    if args.output_dir:
        exporter = ExportHandler(args.output_dir, quiet=args.quiet)
        exporter.export_json_lines(lines, filename='verdicts.jsonl')
        if report is not None:
            exporter.export_to_txt(report, filename='lemma_report.txt')

    if not args.all and results[0].verdict == INCONCLUSIVE and any('budget' in n for n in results[0].notes):
        print(f"ERROR: budget of {budget_ms} ms exhausted for {args.lemma_id}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def run_table(args, config: Dict) -> int:
    generator = ReportGenerator(config)
    table = generator.build_bounds_table(parse_range(args.rows), parse_range(args.cols),
                                         cross_check=args.cross_check, solve=args.solve)
    if args.verbose:
        print(generator.generate_bounds_report(table), file=sys.stderr)
    if args.cross_check:
        mismatches = generator.cross_check_mismatches(table)
        if len(mismatches):
            print(f"ERROR: {len(mismatches)} cells disagree with the solver", file=sys.stderr)

    if args.output_dir:
        exporter = ExportHandler(args.output_dir, quiet=args.quiet)
        if args.verbose:
            exporter.display_table(table, title=f"Bounds table ({len(table)} cells)")
        if args.format == 'csv':
            exporter.export_table_csv(table)
        else:
            exporter.export_to_json(table, base_name='bounds')
    elif args.format == 'csv':
        sys.stdout.write(table_to_csv(table))
    else:
        print(json.dumps(table_records(table), sort_keys=True))
    return EXIT_OK


def run_cache(args, config: Dict) -> int:
    from result_cache import status
    if not args.status:
        raise ValueError("Nothing to do; use cache --status")
    status(config['cache_path'])
    return EXIT_OK


COMMANDS = {
    'compute': run_compute,
    'bounds': run_bounds,
    'construct': run_construct,
    'verify': run_verify,
    'lemma': run_lemma,
    'table': run_table,
    'cache': run_cache,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point. Returns the process exit code."""
    try:
        args = parse_args(argv)
        config = _effective_config(args)
        return COMMANDS[args.command](args, config)
    except BudgetExceededError as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CapacityError as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InfeasibleConstraintsError as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SolverError as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    except InapplicableFormulaError as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return EXIT_FORMULA_SILENT
    except ConstructionFailure as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION_FAILURE
    except (_ArgumentError, GridError, MatchingError, LemmaGuardError, ValueError, FileNotFoundError) as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == '__main__':
    sys.stdout.reconfigure(encoding='utf-8')
    sys.stderr.reconfigure(encoding='utf-8')
    sys.exit(main())
