import csv
import io
import json
import math
import subprocess
import sys

import pytest

from otarith import cli, document
from otarith.corpus import corpus, family_document
from otarith.document import dumps, parse_input
from otarith.errors import ParseError, ShapeError


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    for doc in corpus():
        (d / f"{doc.name}.json").write_text(dumps(doc.to_json()))
    return d


def test_parse_minimal():
    doc = parse_input('{"field": {"min_poly": ["-1", "1", "0", "1"]}}')
    assert doc.min_poly == [-1, 1, 0, 1]
    assert doc.options == document.DEFAULT_OPTIONS
    assert doc.units is None and doc.subgroup is None and doc.modulus is None


def test_round_trip():
    doc = family_document(2)
    again = parse_input(dumps(doc.to_json()))
    assert again.to_json() == doc.to_json()
    doc8 = family_document(8)
    assert parse_input(dumps(doc8.to_json())).integral_basis == doc8.integral_basis


def test_parse_errors():
    with pytest.raises(ShapeError):
        parse_input('{"field": {"min_poly": ["-1", "1", "0", "1"]}, "subgroup": {"generators": [["0", "1"]]}}')
    with pytest.raises(ParseError):
        parse_input('{"field": {"min_poly": [1.5, 0, 1]}}')
    with pytest.raises(ParseError):
        parse_input('{"field": {"min_poly": ["1", "0", "1"], "extra": 1}}')
    with pytest.raises(ParseError) as exc:
        parse_input('{"field": \n {"min_poly": [}')
    assert "line 2" in str(exc.value)


def test_big_integers_survive():
    big = str(2 ** 80 + 1)
    doc = parse_input('{"field": {"min_poly": ["%s", "0", "1"]}}' % big)
    assert doc.min_poly[0] == 2 ** 80 + 1
    assert json.loads(dumps(doc.to_json()))["field"]["min_poly"][0] == big


def test_corpus():
    docs = corpus()
    assert len(docs) == 11
    names = [d.name for d in docs]
    assert "cubic_m1" in names and "cubic_m2" in names and "quartic_2" in names


def test_aut_report(capsys, corpus_dir):
    code, out = run(capsys, "aut", str(corpus_dir / "cubic_m2.json"))
    assert code == 0
    res = json.loads(out)["result"]
    assert res["gr0"]["divisors"] == ["2"] and res["chi_f"] == "2"


def test_growth_csv(capsys, corpus_dir):
    code, out = run(capsys, "growth", "--horizon", "60", "--output", "csv", str(corpus_dir / "cubic_m1.json"))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["n", "torsion", "log_term_lo", "log_term_hi"]
    assert len(rows) == 60
    log_m = math.log(1.4655712318767682)
    assert abs(float(rows[-1]["log_term_lo"]) - log_m) < 0.02


def test_inequality_report(capsys, corpus_dir):
    code, out = run(capsys, "inequality", str(corpus_dir / "cubic_m2.json"))
    res = json.loads(out)["result"]
    assert code == 0 and res["lhs"] == "1" and res["rhs"] == "2" and res["holds"]


def test_byte_determinism(capsys, corpus_dir):
    path = str(corpus_dir / "cubic_m3.json")
    _, a = run(capsys, "field-info", path)
    _, b = run(capsys, "field-info", path)
    assert a == b


def test_refusal_exit_code(capsys, tmp_path):
    p = tmp_path / "q.json"
    p.write_text('{"field": {"min_poly": ["-2", "0", "0", "0", "1"]}}')
    code, out = run(capsys, "aut", str(p))
    assert code == 2
    assert json.loads(out)["error"]["code"] == "MissingUnitBasis"


def test_enum_cap_env_and_flag(capsys, corpus_dir, monkeypatch):
    path = str(corpus_dir / "cubic_m2.json")
    monkeypatch.setenv("OTARITH_ENUM_CAP", "1")
    code, out = run(capsys, "ray", path)
    assert code == 2 and json.loads(out)["error"]["code"] == "CapExceeded"
    code, out = run(capsys, "ray", "--enum-cap", "10", path)
    assert code == 0
    doc = parse_input(open(path).read())
    args = cli.build_parser().parse_args(["ray", path])
    assert cli._resolve_options(doc, args)[1] == 1
    args = cli.build_parser().parse_args(["ray", "--enum-cap", "77", path])
    assert cli._resolve_options(doc, args)[1] == 77


def test_verify_all_corpus(capsys, corpus_dir):
    for doc in corpus():
        code, out = run(capsys, "verify", str(corpus_dir / f"{doc.name}.json"))
        res = json.loads(out)["result"]
        assert code == 0 and res["all_ok"], (doc.name, res)


def test_console_script_entry(corpus_dir):
    out = subprocess.run([sys.executable, "-m", "otarith.cli", "h1", str(corpus_dir / "cubic_m2.json")],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["torsion"]["divisors"] == ["2"]
