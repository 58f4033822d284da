"""
Tests for the command-line surface: payloads on stdout, exit codes and
determinism across runs.
"""

import json

import pytest

from main import (
    EXIT_BUDGET,
    EXIT_CAPACITY,
    EXIT_CONSTRUCTION_FAILURE,
    EXIT_FORMULA_SILENT,
    EXIT_INFEASIBLE,
    EXIT_INVALID_INPUT,
    EXIT_OK,
    EXIT_VERIFY_FAILED,
    main,
    parse_range,
)


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    monkeypatch.delenv('MIM_CONFIG', raising=False)
    monkeypatch.setenv('MIM_CACHE_PATH', str(tmp_path / "cache.duckdb"))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_dp(capsys):
    assert run(capsys, 'compute', '-n', '3', '-m', '23') == (EXIT_OK, "17\n", "")


def test_compute_single_vertex(capsys):
    code, out, _ = run(capsys, 'compute', '-n', '1', '-m', '1')
    assert (code, out) == (EXIT_OK, "0\n")


def test_compute_brute_matches_dp(capsys):
    code, out, _ = run(capsys, 'compute', '-n', '2', '-m', '3', '--method', 'brute')
    assert (code, out) == (EXIT_OK, "2\n")
    code, out, _ = run(capsys, 'compute', '-n', '2', '-m', '3', '--method', 'brute', '--emit', 'json')
    assert json.loads(out)['size'] == 2


def test_compute_formula(capsys):
    assert run(capsys, 'compute', '-n', '4', '-m', '7', '--method', 'formula')[:2] == (EXIT_OK, "7\n")
    code, out, err = run(capsys, 'compute', '-n', '7', '-m', '11', '--method', 'formula')
    assert code == EXIT_FORMULA_SILENT
    assert out == ""
    assert err.startswith("ERROR:")


def test_compute_emit_json_and_ascii(capsys):
    code, out, _ = run(capsys, 'compute', '-n', '2', '-m', '3', '--emit', 'json')
    data = json.loads(out)
    assert data['size'] == 2
    assert data['certificate']['rows'] == 2
    code, out, _ = run(capsys, 'compute', '-n', '2', '-m', '3', '--emit', 'ascii')
    assert out.count('●') == 4


def test_compute_capacity(capsys):
    assert run(capsys, 'compute', '-n', '11', '-m', '11')[0] == EXIT_CAPACITY
    assert run(capsys, 'compute', '-n', '5', '-m', '6', '--method', 'brute')[0] == EXIT_CAPACITY
    assert run(capsys, 'compute', '-n', '4', '-m', '4', '--max-rows', '3')[0] == EXIT_CAPACITY


def test_compute_invalid_input(capsys):
    assert run(capsys, 'compute', '-n', '0', '-m', '3')[0] == EXIT_INVALID_INPUT
    assert run(capsys, 'compute', '-n', 'x', '-m', '3')[0] == EXIT_INVALID_INPUT
    assert run(capsys, 'frobnicate')[0] == EXIT_INVALID_INPUT


def test_compute_constraints_file(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({'forbidden_vertices': [[1, c] for c in range(1, 5)]}))
    assert run(capsys, 'compute', '-n', '2', '-m', '4', '--constraints', str(path))[:2] == (EXIT_OK, "1\n")

    path.write_text(json.dumps({'forced_edges': [[1, 1, 1, 2], [2, 1, 2, 2]]}))
    assert run(capsys, 'compute', '-n', '2', '-m', '2', '--constraints', str(path))[0] == EXIT_INFEASIBLE

    path.write_text(json.dumps({'forced': []}))
    assert run(capsys, 'compute', '-n', '2', '-m', '2', '--constraints', str(path))[0] == EXIT_INVALID_INPUT
    assert run(capsys, 'compute', '-n', '2', '-m', '2', '--constraints', str(tmp_path / "none.json"))[0] \
        == EXIT_INVALID_INPUT


def test_compute_budget(capsys):
    assert run(capsys, 'compute', '-n', '3', '-m', '23', '--budget-ms', '0')[0] == EXIT_BUDGET


def test_compute_cache(capsys):
    first = run(capsys, 'compute', '-n', '3', '-m', '7', '--cache')
    second = run(capsys, 'compute', '-n', '3', '-m', '7', '--cache')
    assert first[1] == second[1] == "5\n"
    assert "solved and cached" in first[2]
    assert "cache hit" in second[2]
    code, out, _ = run(capsys, 'cache', '--status')
    assert code == EXIT_OK
    assert "G_{3,7}" in out


def test_bounds(capsys):
    code, out, _ = run(capsys, 'bounds', '-n', '9', '-m', '23')
    data = json.loads(out)
    assert code == EXIT_OK
    assert data['upper'] == 48
    assert data['exact'] is None
    assert data['tags'] == ['Thm2.4', 'NewBound-1mod4']
    assert json.loads(run(capsys, 'bounds', '-n', '4', '-m', '7')[1])['exact'] == 7
    assert json.loads(run(capsys, 'bounds', '-n', '7', '-m', '11')[1])['upper'] == 18


def test_construct(capsys):
    code, out, err = run(capsys, 'construct', '-n', '3', '-m', '23', '--verify')
    assert code == EXIT_OK
    assert json.loads(out)['size'] == 17
    assert "✓" in err
    assert run(capsys, 'construct', '-n', '2', '-m', '2', '--emit', 'size')[1] == "1\n"
    assert run(capsys, 'construct', '-n', '5', '-m', '7', '--verify', '--emit', 'size')[1] == "8\n"
    assert run(capsys, 'construct', '-n', '7', '-m', '9')[0] == EXIT_CONSTRUCTION_FAILURE


def test_verify_round_trip(tmp_path, capsys):
    _, out, _ = run(capsys, 'construct', '-n', '3', '-m', '23')
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(json.loads(out)['certificate']))

    code, out, _ = run(capsys, 'verify', '--certificate', str(path), '--target', '17')
    assert code == EXIT_OK
    assert json.loads(out) == {'edges': 17, 'induced': True, 'target': 17, 'verified': True}
    assert run(capsys, 'verify', '--certificate', str(path), '--target', '18')[0] == EXIT_VERIFY_FAILED


def test_verify_rejects_bad_certificates(tmp_path, capsys):
    path = tmp_path / "cert.json"
    path.write_text(json.dumps({'rows': 2, 'cols': 2, 'edges': [[1, 1, 1, 2], [2, 1, 2, 2]]}))
    code, out, _ = run(capsys, 'verify', '--certificate', str(path))
    assert code == EXIT_VERIFY_FAILED
    assert json.loads(out)['induced'] is False

    path.write_text(json.dumps({'rows': 2, 'edges': []}))
    assert run(capsys, 'verify', '--certificate', str(path))[0] == EXIT_INVALID_INPUT
    path.write_text("not json")
    assert run(capsys, 'verify', '--certificate', str(path))[0] == EXIT_INVALID_INPUT


def test_lemma_single(capsys):
    code, out, _ = run(capsys, 'lemma', 'G3-pair', '-n', '3', '-m', '11', '-i', '3')
    assert code == EXIT_OK
    data = json.loads(out)
    assert data['lemma_id'] == 'G3-pair'
    assert data['verdict'] == 'Confirmed'


def test_lemma_errors(capsys):
    assert run(capsys, 'lemma')[0] == EXIT_INVALID_INPUT
    assert run(capsys, 'lemma', 'L0.0')[0] == EXIT_INVALID_INPUT
    assert run(capsys, 'lemma', 'L3.3', '-n', '5', '-m', '23', '-i', '4')[0] == EXIT_INVALID_INPUT
    assert run(capsys, 'lemma', 'G3-pair', '-n', '3', '-m', '11', '-i', '3', '--budget-ms', '0')[0] == EXIT_BUDGET


def test_lemma_all_zero_budget(tmp_path, capsys):
    code, out, _ = run(capsys, 'lemma', '--all', '--budget-ms', '0', '--quiet', '--output-dir', str(tmp_path))
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines
    assert all(json.loads(line)['verdict'] == 'Inconclusive' for line in lines)
    with open(tmp_path / "verdicts.jsonl", encoding='utf-8') as f:
        assert f.read().splitlines() == lines


def test_lemma_report(capsys):
    code, out, _ = run(capsys, 'lemma', 'G3-pair', '-n', '3', '-m', '11', '-i', '3', '--report')
    assert code == EXIT_OK
    assert "Confirmed:     1" in out


def test_lemma_report_to_file(tmp_path, capsys):
    code, out, _ = run(capsys, 'lemma', 'G3-pair', '-n', '3', '-m', '11', '-i', '3', '--report',
                       '--quiet', '--output-dir', str(tmp_path))
    assert code == EXIT_OK
    assert (tmp_path / "lemma_report.txt").read_text(encoding='utf-8') == out
    lines = (tmp_path / "verdicts.jsonl").read_text(encoding='utf-8').splitlines()
    assert json.loads(lines[0])['verdict'] == 'Confirmed'


def test_table_single_cell(capsys):
    code, out, _ = run(capsys, 'table', '--rows', '3..3', '--cols', '3..3')
    assert code == EXIT_OK
    assert out == "n,m,exact,lower,upper,tags\n3,3,2,2,2,Thm2.2\n"


def test_table_json_and_cross_check(capsys):
    code, out, err = run(capsys, 'table', '--rows', '2..3', '--cols', '2..4', '--format', 'json', '--cross-check')
    rows = json.loads(out)
    assert code == EXIT_OK
    assert len(rows) == 6
    assert all(r['exact'] == r['dp'] for r in rows)
    assert "ERROR" not in err


def test_table_to_file(tmp_path, capsys):
    code, out, _ = run(capsys, 'table', '--rows', '2..2', '--cols', '2..3', '--output-dir', str(tmp_path))
    assert code == EXIT_OK
    assert out == ""
    assert len(list(tmp_path.glob("bounds_*.csv"))) == 1


def test_table_to_file_verbose_preview(tmp_path, capsys):
    code, out, err = run(capsys, 'table', '--rows', '2..2', '--cols', '2..3', '--verbose',
                         '--output-dir', str(tmp_path))
    assert code == EXIT_OK
    assert out == ""
    assert "Bounds table (2 cells)" in err
    assert "tags" in err


def test_table_bad_range(capsys):
    assert run(capsys, 'table', '--rows', '3..2', '--cols', '1..2')[0] == EXIT_INVALID_INPUT
    assert run(capsys, 'table', '--rows', 'a..b', '--cols', '1..2')[0] == EXIT_INVALID_INPUT


def test_parse_range():
    assert parse_range("2..6") == range(2, 7)
    assert parse_range("4") == range(4, 5)
    with pytest.raises(ValueError):
        parse_range("0..3")


def test_config_file_flag(tmp_path, capsys):
    path = tmp_path / "mim.json"
    path.write_text(json.dumps({'max_rows': 2}))
    assert run(capsys, 'compute', '-n', '3', '-m', '3', '--config', str(path))[0] == EXIT_CAPACITY
    assert run(capsys, 'compute', '-n', '3', '-m', '3', '--config', str(path), '--max-rows', '3')[0] == EXIT_OK
    assert run(capsys, 'compute', '-n', '3', '-m', '3', '--config', str(tmp_path / "x.json"))[0] \
        == EXIT_INVALID_INPUT


@pytest.mark.parametrize("argv", [
    ('compute', '-n', '4', '-m', '6', '--emit', 'json'),
    ('construct', '-n', '3', '-m', '11', '--emit', 'ascii'),
    ('lemma', 'R3.16', '--window', '4'),
])
def test_outputs_are_deterministic(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == EXIT_OK
    assert first[1] == second[1]
