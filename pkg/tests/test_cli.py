import json
import os
from pathlib import Path

import pytest

from linfty_cwl import cli
from linfty_cwl import gallery as G

GOLDEN = Path(__file__).parent / "golden"
GOLDEN_NAMES = list(G.GALLERY)
UPDATE = os.environ.get("LINFTY_CWL_UPDATE_GOLDEN") == "1"

BAD_JACOBI = {
    "format": 1,
    "name": "bad",
    "spaces": {"V": [["a", 0], ["b", 0], ["c", 0]]},
    "algebras": {"g": {"space": "V", "brackets": [[["a", "b"], {"a": 1}], [["b", "c"], {"b": 1}],
                                                    [["a", "c"], {"c": 1}]]}},
    "queries": [{"command": "validate-algebra", "algebra": "g"}],
}


def _golden(path: Path, text: str):
    if UPDATE:
        path.write_text(text)
    assert path.exists(), f"missing golden file {path.name}; regenerate with LINFTY_CWL_UPDATE_GOLDEN=1"
    assert text == path.read_text()


@pytest.mark.parametrize("name", GOLDEN_NAMES)
def test_export_and_reports_match_golden_files(name, tmp_path):
    text = cli.export_gallery(name)
    _golden(GOLDEN / f"{name}.json", text)
    doc = cli.parse_text(text)
    report = cli.run(doc)
    assert report["status"] == "pass"
    _golden(GOLDEN / f"{name}.report.txt", cli.render_text(report))
    _golden(GOLDEN / f"{name}.report.json", cli.render_json(report))


@pytest.mark.parametrize("name", list(G.GALLERY) + ["random_strict_2term:5"])
def test_round_trip_is_exact(name):
    text = cli.export_gallery(name)
    again = cli.export_document(cli.parse_text(text))
    assert again == text


def test_heisenberg_report_contents():
    report = cli.run(cli.parse_text(cli.export_gallery("heisenberg")))
    cw = [q for q in report["queries"] if q["command"] == "cwl"]
    assert cw and all(q["status"] == "pass" for q in cw)
    first = next(q for q in cw if q["params"].get("extension") == "E")
    assert first["results"]["classes"][0]["coordinates"] == [1]


def _write(tmp_path, data, name="doc.json"):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data, indent=1))
    return str(p)


def test_empty_query_list_exits_zero(tmp_path, capsys):
    doc = dict(BAD_JACOBI, queries=[])
    assert cli.main(["run", _write(tmp_path, doc)]) == 0


def test_jacobi_violation_exits_one_with_witness(tmp_path, capsys):
    assert cli.main(["run", _write(tmp_path, BAD_JACOBI)]) == 1
    out = capsys.readouterr().out
    assert "fail" in out and "violation" in out
    assert cli.main(["run", "--json", _write(tmp_path, BAD_JACOBI)]) == 1
    rep = json.loads(capsys.readouterr().out)
    assert rep["queries"][0]["violations"]


def test_syntax_error_reports_line(tmp_path, capsys):
    bad = '{\n "format": 1,\n "spaces": {\n  "V": [["a", 0],]\n }\n}\n'
    assert cli.main(["run", _write(tmp_path, bad)]) == 2
    err = capsys.readouterr().err
    assert "line 4" in err


def test_unknown_reference_is_an_input_error(tmp_path, capsys):
    doc = dict(BAD_JACOBI, queries=[{"command": "validate-algebra", "algebra": "missing"}])
    assert cli.main(["run", _write(tmp_path, doc)]) == 2
    assert "missing" in capsys.readouterr().err


def test_rationals_parse_and_format():
    from fractions import Fraction
    assert cli.parse_rational("3/6") == Fraction(1, 2)
    assert cli.parse_rational(-4) == -4
    assert cli.format_rational(Fraction(-2, 4)) == "-1/2"
    assert cli.format_rational(Fraction(4, 2)) == 2
    with pytest.raises(cli.InputError):
        cli.parse_rational(0.5)
    with pytest.raises(cli.InputError):
        cli.parse_rational("1/0")


def test_parallel_runs_are_deterministic(monkeypatch):
    doc = cli.parse_text(cli.export_gallery("central_r4"))
    serial = cli.render_json(cli.run(doc))
    monkeypatch.setenv("LINFTY_CWL_THREADS", "4")
    assert cli.render_json(cli.run(doc)) == serial


def test_options_change_cohomology_range(tmp_path, capsys):
    path = _write(tmp_path, cli.export_gallery("heisenberg"))
    assert cli.main(["run", "--degrees", "0..1", "--max-weight", "3", "--seed", "4", path]) == 0
    with pytest.raises(SystemExit):
        cli.main(["run", "--bogus", path])
    assert cli.main(["run", "--degrees", "x", path]) == 2


def test_list_and_export_commands(tmp_path, capsys):
    assert cli.main(["list"]) == 0
    assert "heisenberg" in capsys.readouterr().out.split()
    out = tmp_path / "e.json"
    assert cli.main(["export", "central_r4", str(out)]) == 0
    assert json.loads(out.read_text())["name"] == "central_r4"
    assert cli.main(["export", "nope"]) == 2
