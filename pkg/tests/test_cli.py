"""End-to-end tests of the spinlab command line"""

import json

import numpy as np
import pytest

from src.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main


def test_list(capsys):
    assert main(["list"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "rigidity" in out
    assert "requires: --n" in out


def test_run_writes_json(tmp_path):
    out = tmp_path / "clifford.json"
    assert main(["run", "--suite", "clifford", "--n", "4", "--out", str(out)]) == EXIT_PASS
    document = json.loads(out.read_text())
    assert document["suite"] == "clifford"
    assert document["pass"] is True
    assert document["params"]["n"] == 4


def test_run_csv_to_stdout(capsys):
    assert main(["run", "--suite", "clifford", "--n", "3", "--format", "csv"]) == EXIT_PASS
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "check,value,threshold,pass"
    assert all(line.endswith(",true") for line in lines[1:])


def test_spectrum_dump(tmp_path):
    dump = tmp_path / "spectrum.txt"
    code = main(
        ["run", "--suite", "spectrum", "--n", "3", "--radius", "1", "--out", str(tmp_path / "r.json"),
         "--dump-spectrum", str(dump)]
    )
    assert code == EXIT_PASS
    values = np.array([float(line.split()[1]) for line in dump.read_text().splitlines()])
    np.testing.assert_allclose(values[:5], [1.0, 1.0, 1.0, 1.0, 2.0], atol=1e-6)


@pytest.mark.parametrize("suite", ["rigidity", "hyperbolic-rigidity"])
def test_rigidity(tmp_path, suite):
    path = tmp_path / "r.json"
    assert main(["run", "--suite", suite, "--n", "2", "--radius", "1", "--out", str(path)]) == EXIT_PASS
    names = [check["name"] for check in json.loads(path.read_text())["checks"]]
    assert not [name for name in names if name.startswith("error.")]


def test_tight_tolerance_fails(tmp_path):
    code = main(["run", "--suite", "reilly", "--n", "2", "--tol", "1e-30", "--out", str(tmp_path / "r.json")])
    assert code == EXIT_FAIL


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--suite", "nope"],
        ["run", "--suite", "rigidity", "--n", "3"],
        ["run", "--n", "2"],
        ["run", "--suite", "clifford", "--radius", "-1"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert "spinlab: error:" in capsys.readouterr().err


def test_argparse_errors():
    with pytest.raises(SystemExit) as info:
        main(["run", "--n", "two"])
    assert info.value.code == 2
