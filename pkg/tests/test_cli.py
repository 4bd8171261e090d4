"""Command-line interface: outputs, schemas, exit codes, CSV/JSON agreement."""

import csv
import io
import json
import subprocess
import sys

import pytest

from permix.cli import main


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    return code


def read_csv_rows(text: str, skip_meta: bool) -> tuple[list[str], list[dict]]:
    lines = text.splitlines()
    if skip_meta:
        lines = lines[1:]
    reader = csv.DictReader(io.StringIO("\n".join(lines)))
    return reader.fieldnames, list(reader)


class TestMatrixCommand:
    def test_reduced_matrix_csv(self, capsys):
        assert main(["matrix", "--kind", "A", "--signature", "+-", "--N", "3"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines() == ["n=3,rowsum=2", "1,1,0", "0,0,2", "1,1,0"]

    def test_structured_kinds(self, capsys):
        assert main(["matrix", "--kind", "J", "--N", "3"]) == 0
        assert capsys.readouterr().out.splitlines()[1:] == ["0,0,1", "0,1,0", "1,0,0"]
        assert main(["matrix", "--kind", "C", "--m", "2", "--N", "3"]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "n=3,rowsum=2"

    def test_json_mirror(self, capsys):
        assert main(["matrix", "--kind", "A", "--signature", "+-", "--N", "3",
                     "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["n"] == 3 and payload["rowsum"] == 2
        assert payload["rows"][1] == [0, 0, 2]

    def test_coprimality_gives_exit_two(self, capsys):
        assert main(["matrix", "--kind", "C", "--m", "2", "--N", "4"]) == 2


class TestRateCommand:
    def test_not_mixing_composition(self, capsys):
        assert main(["rate", "--m", "2", "--N", "3", "--signature", "+-",
                     "--perm", "1,3,2"]) == 0
        out = capsys.readouterr().out
        assert "tau = 1" in out
        assert "not topologically mixing" in out

    def test_mixing_composition(self, capsys):
        assert main(["rate", "--signature", "+-", "--N", "3"]) == 0
        out = capsys.readouterr().out
        assert "tau = 0.5" in out
        assert "not topologically mixing" not in out


class TestWorstCommand:
    def test_prints_value_and_prediction(self, capsys):
        assert main(["worst", "--m", "3", "--N", "5", "--signature", "+-+",
                     "--mode", "all", "--strategy", "exhaustive"]) == 0
        out = capsys.readouterr().out
        assert "value = 0.87267799625" in out
        assert "predicted = 0.87267799625" in out

    def test_csv_and_json_values_agree(self, capsys):
        args = ["worst", "--m", "2", "--N", "5", "--signature", "+-",
                "--mode", "mixing_only", "--strategy", "exhaustive"]
        assert main(args) == 0
        text = capsys.readouterr().out
        value_text = [l for l in text.splitlines() if l.startswith("value")][0].split(" = ")[1]
        assert main(args + ["--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["value"] == float(value_text)

    def test_capacity_exit_code(self, capsys):
        assert main(["worst", "--N", "10", "--signature", "+-",
                     "--strategy", "exhaustive"]) == 3

    def test_usage_error_exit_code(self):
        assert main(["worst", "--strategy", "nonsense", "--signature", "+-", "--N", "4"]) == 2


class TestSurveyCommand:
    def test_schema_and_closed_form_rows(self, capsys):
        assert main(["survey", "--m", "2", "--N", "3:5", "--signatures", "canonical"]) == 0
        header, rows = read_csv_rows(capsys.readouterr().out, skip_meta=False)
        assert header == ["m", "N", "signature", "mode", "strategy", "value",
                          "argmax", "evaluated", "wall_ms"]
        strategies = {r["strategy"] for r in rows}
        assert "closed_form" in strategies
        searched = [r for r in rows if r["strategy"] != "closed_form"]
        predicted = [r for r in rows if r["strategy"] == "closed_form"]
        assert len(searched) == len(predicted) == 6
        for s, p in zip(searched, predicted):
            assert s["value"] == p["value"]


class TestRegionCommand:
    def test_schema_and_membership(self, capsys):
        assert main(["region", "--N", "5"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "N=5"
        header, rows = read_csv_rows(out, skip_meta=True)
        assert header == ["N", "sigma", "re", "im", "modulus", "in_region", "active_constraint"]
        assert len(rows) == 80 * 4  # mixing exchanges times nonleading count
        assert all(r["in_region"] == "true" for r in rows if float(r["modulus"]) > 0.5)

    def test_even_cells_rejected(self, capsys):
        assert main(["region", "--N", "4"]) == 2


class TestCorrelateCommand:
    def test_schema(self, capsys):
        assert main(["correlate", "--signature", "+-", "--N", "3", "--nmax", "6",
                     "--samples", "2000", "--seed", "5"]) == 0
        out = capsys.readouterr().out
        meta = out.splitlines()[0]
        assert meta.startswith("g=sig=+- perm=1-2-3 N=3,phi=")
        assert "fitted_rate=" in meta
        header, rows = read_csv_rows(out, skip_meta=True)
        assert header == ["n", "C_exact", "C_mc", "mc_se"]
        assert len(rows) == 7

    def test_reproducible(self, capsys):
        args = ["correlate", "--signature", "+-", "--N", "3", "--nmax", "4",
                "--samples", "1000", "--seed", "9"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        assert capsys.readouterr().out == first

    def test_indicator_observable(self, capsys):
        assert main(["correlate", "--signature", "++", "--N", "2", "--nmax", "5",
                     "--samples", "500", "--seed", "3",
                     "--observable", "indicator:1"]) == 0
        _, rows = read_csv_rows(capsys.readouterr().out, skip_meta=True)
        exact = [float(r["C_exact"]) for r in rows]
        assert exact[0] == pytest.approx(0.25, abs=1e-12)
        assert all(abs(v) < 1e-12 for v in exact[1:])


class TestVerifyCommand:
    def test_single_suite(self, capsys):
        assert main(["verify", "--suite", "circulant"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("[PASS]")

    def test_json_output(self, capsys):
        assert main(["verify", "--suite", "circulant", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["passed"] is True
        assert payload["suites"][0]["key"] == "circulant"

    def test_unknown_suite(self, capsys):
        assert main(["verify", "--suite", "nope"]) == 2


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "permix.cli", "rate", "--signature", "+-", "--N", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "tau = 0.5" in proc.stdout
