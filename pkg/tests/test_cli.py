import csv
import io
import json

import pytest

from symblob import __version__
from symblob.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse exits directly on bad usage
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dim(capsys):
    code, out, _ = run(capsys, "dim", "--n", "2")
    blob = json.loads(out)
    assert code == 0
    assert blob["schema"] == "symblob.report.v1" and blob["version"] == __version__
    assert blob["passed"] is True


def test_json_is_byte_identical(capsys):
    args = ("gram-det", "--n", "3", "--label", "-1")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    assert list(json.loads(first)) == sorted(json.loads(first))


def test_gram_det_csv(capsys):
    code, out, _ = run(capsys, "gram-det", "--n", "3", "--label", "-1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert list(rows[0]) == ["n", "label", "dim", "det", "matched-formula", "sign"]
    assert rows[0]["matched-formula"] == "gram.minus_n_minus_2.stated" and rows[0]["sign"] == "-"


def test_gram_det_strict_fails_on_mismatch(capsys):
    code, _, _ = run(capsys, "gram-det", "--n", "2", "--param", "generic6", "--strict")
    assert code == 1
    code, _, _ = run(capsys, "gram-det", "--n", "2", "--param", "generic6")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ("dim", "--n", "0"),
    ("gram", "--n", "3", "--label", "5"),
    ("mult", "--n", "2", "--a", "E7", "--b", "E"),
    ("nonsense",),
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_mult_words_and_diagrams(capsys):
    code, out, _ = run(capsys, "mult", "--n", "2", "--a", "E", "--b", "e", "--param", "generic6")
    rep = json.loads(out)["report"]
    assert code == 0 and rep["coefficient"] == "dL^1"
    code, out, _ = run(capsys, "mult", "--n", "2", "--a", rep["diagram"], "--b", "0", "--param", "generic6")
    assert json.loads(out)["report"]["coefficient"] == "dL^1"
    code, out, _ = run(capsys, "mult", "--n", "2", "--a", "EE1", "--b", "F", "--format", "text")
    assert out.strip() == "1 * 2|(1 2)(2' 1')|1:L,2':R"


def test_mult_cache(capsys, tmp_path):
    args = ("mult", "--n", "2", "--a", "E1", "--b", "E1", "--param", "generic6", "--cache-dir", str(tmp_path))
    _, first, _ = run(capsys, *args)
    assert any(tmp_path.iterdir())
    _, second, _ = run(capsys, *args)
    assert first == second


def test_cells_reports_printed_dimension(capsys):
    code, out, _ = run(capsys, "cells", "--n", "2")
    rep = json.loads(out)["report"]
    assert code == 0
    assert rep["printed_dimension"] == 10
    code, out, _ = run(capsys, "cells", "--n", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["cell_dim"]) for r in rows] == [1, 1, 4, 1]


@pytest.mark.parametrize("kind", ["tl", "blob+", "blob-", "symplectic"])
def test_oracle(capsys, kind):
    assert run(capsys, "oracle", "--kind", kind, "--n", "4")[0] == 0


def test_verify_presentation(capsys):
    code, out, _ = run(capsys, "verify-presentation", "--n", "2")
    assert code == 0 and json.loads(out)["passed"]


def test_config_recorded(capsys):
    _, out, _ = run(capsys, "basis", "--n", "1", "--seed", "3")
    cfg = json.loads(out)["config"]
    assert cfg["command"] == "basis" and cfg["n"] == 1 and cfg["seed"] == 3
    assert "cache_dir" not in cfg and "format" not in cfg
