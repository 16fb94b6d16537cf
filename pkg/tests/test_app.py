import json
import logging
import os

import pytest

from app import DegreeProgressFilter, main

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")
GENERATORS = "18,24,25,26,28,30,33"


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    for key in list(os.environ):
        if key.startswith("GORLAB_"):
            monkeypatch.delenv(key)
    monkeypatch.chdir(tmp_path)


def run_json(capsys, *argv):
    code = main(["--json", *argv])
    return code, json.loads(capsys.readouterr().out)


def test_semigroup_info(capsys):
    code, payload = run_json(capsys, "semigroup", "info", "--gens", GENERATORS)
    assert code == 0
    assert payload["frobenius"] == 65
    assert payload["pseudo_frobenius"] == [65, 45, 38, 34, 31]
    assert payload["symmetric"] is False


def test_semigroup_info_defaults_to_json(capsys):
    assert main(["semigroup", "info", "--gens", GENERATORS]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["frobenius"] == 65
    assert payload["gaps"][:3] == [1, 2, 3]
    assert payload["type"] == 5


def test_semigroup_info_text(capsys):
    assert main(["semigroup", "info", "--gens", GENERATORS, "--text"]) == 0
    assert "F(S) = 65" in capsys.readouterr().out


def test_symmetrize_text_output(capsys):
    assert main(["semigroup", "symmetrize", "--gens", GENERATORS, "--gbar", "197"]) == 0
    assert "✓ S̄_197 = (36, 48, 50, 52, 56, 60, 66, 67, 107, 121, 129, 135)" in capsys.readouterr().out


def test_bad_gbar_exits_nonzero(capsys):
    assert main(["semigroup", "symmetrize", "--gens", GENERATORS, "--gbar", "198"]) == 1
    assert "✗ SymmetrizationError" in capsys.readouterr().out


def test_presentation_hilbert(capsys):
    code, payload = run_json(capsys, "presentation", "hilbert", "--rels", os.path.join(DATA_DIR, "S.rel"))
    assert code == 0
    assert payload["hilbert_function"] == [1, 6, 10, 1, 0]


def test_pbw_invert(capsys):
    code, payload = run_json(capsys, "series", "pbw-invert", "--den", "1-2t", "-N", "3")
    assert code == 0
    assert payload["dims"] == [2, 3, 2]


def test_monomial_series(capsys):
    code, payload = run_json(capsys, "monomial", "series", "--alphabet", "C,D,G", "--forbidden", "CC,CDG", "-N", "5")
    assert code == 0
    assert payload["coefficients"] == [1, 3, 8, 21, 55, 144]


def test_lie_dims(capsys):
    code, payload = run_json(capsys, "lie", "dims", "--file", os.path.join(DATA_DIR, "eta.lie"), "--max", "3")
    assert code == 0
    assert payload["dims"] == [6, 11, 11]


def test_degree_cap_reported(capsys):
    code = main(["--max-degree", "2", "lie", "mult", "--file", os.path.join(DATA_DIR, "eta.lie"),
                 "--left", "modbas[2,1]", "--right", "b"])
    assert code == 1
    assert "raise --max-degree" in capsys.readouterr().out


def test_configuration_error_exit_code(capsys, tmp_path):
    config = tmp_path / "bad.env"
    config.write_text("FIELD=real\n")
    assert main(["--config", str(config), "lie", "lambda", "--max", "6"]) == 2
    assert "configuration error" in capsys.readouterr().err


def test_lambda_table_command(capsys):
    code, payload = run_json(capsys, "lie", "lambda", "--max", "10")
    assert code == 0
    assert payload["violations"] == []
    assert payload["values"]["1,2"] == "-1"


def test_progress_filter():
    progress = logging.LogRecord("LieManager", logging.INFO, __file__, 1, "eta_5", None, None)
    progress.degree_progress = True
    plain = logging.LogRecord("LieManager", logging.INFO, __file__, 1, "done", None, None)
    degree_filter = DegreeProgressFilter()
    assert not degree_filter.filter(progress)
    assert degree_filter.filter(plain)
