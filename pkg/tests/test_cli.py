import json

import pytest

from capelli import bfunction
from capelli.cli import main
from capelli.poly import UniPoly


def run_cli(args):
    """Invoke the CLI in-process; argparse usage errors surface as SystemExit."""
    try:
        return main(args)
    except SystemExit as exc:
        return exc.code


class TestCatalogList:
    def test_table(self, capsys):
        assert run_cli(["catalog", "list"]) == 0
        out = capsys.readouterr().out
        assert "(GL(n) x SL(n), M_n(C))" in out
        assert out.count("disputed") == 2

    def test_json_roundtrip_is_byte_identical(self, capsys):
        assert run_cli(["catalog", "list", "--json"]) == 0
        out = capsys.readouterr().out
        doc = json.loads(out)
        assert len(doc) == 8
        assert json.dumps(doc, indent=2) == out.strip()


class TestBs:
    def test_compute_match(self, capsys):
        assert run_cli(["bs", "compute", "--case", "4", "--size", "2"]) == 0
        out = capsys.readouterr().out
        assert "(s+1)(s+2)" in out
        assert "verdict = match" in out

    def test_compute_json(self, capsys):
        assert run_cli(["bs", "compute", "--case", "2", "--size", "2", "--json"]) == 0
        out = capsys.readouterr().out
        doc = json.loads(out)
        assert doc["b_monic"] == ["3/2", "5/2", "1/1"]
        assert doc["verdict"] == "match"
        assert json.dumps(doc, indent=2) == out.strip()

    def test_verify_all_min_soft_exit(self, capsys):
        assert run_cli(["bs", "verify-all", "--sizes", "min"]) == 0
        out = capsys.readouterr().out
        assert out.count("verdict = match") == 7
        assert out.count("mismatch-disputed-row") == 2
        assert "warning" in out
        assert "0 hard mismatches" in out

    def test_verify_all_json(self, capsys):
        assert run_cli(["bs", "verify-all", "--sizes", "min", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc) == 9
        assert {row["verdict"] for row in doc} == {"match", "mismatch-disputed-row"}

    def test_hard_mismatch_exits_one(self, capsys, monkeypatch):
        wrong = UniPoly.from_offsets("s", [1, 5])

        def fake_compute_b(inst):
            return wrong, bfunction.Fraction(1)

        monkeypatch.setattr(bfunction, "compute_b", fake_compute_b)
        assert run_cli(["bs", "compute", "--case", "4", "--size", "2"]) == 1
        assert run_cli(["bs", "verify-all", "--sizes", "min"]) == 1


class TestAlgebra:
    def test_nf_contraction(self, capsys):
        assert run_cli(["algebra", "nf", "--case", "4", "--size", "2", "delta*f"]) == 0
        out = capsys.readouterr().out.strip()
        assert out == "1/4*theta^2 + 3/2*theta + 2"

    def test_nf_bad_expression_is_usage_error(self, capsys):
        assert run_cli(["algebra", "nf", "--case", "4", "--size", "2", "f + + 2"]) == 2

    def test_fuzz(self, capsys):
        assert run_cli(["algebra", "fuzz", "--case", "4", "--size", "2",
                        "--trials", "50", "--seed", "3"]) == 0
        assert "0 discrepancies" in capsys.readouterr().out


class TestModule:
    def test_ladder_json_roundtrip(self, capsys):
        assert run_cli(["module", "ladder", "--case", "4", "--size", "2",
                        "--lambda", "0", "--window", "0:3", "--json"]) == 0
        out = capsys.readouterr().out
        doc = json.loads(out)
        assert doc["weights"] == ["0/1", "2/1", "4/1", "6/1"]
        assert json.dumps(doc, indent=2) == out.strip()

    def test_psi_witness(self, capsys):
        assert run_cli(["module", "psi", "--case", "1", "--size", "2",
                        "--lambda", "1/2", "--window", "-2:2"]) == 0
        assert "equivalence witness: pass" in capsys.readouterr().out

    def test_psi_json(self, capsys):
        assert run_cli(["module", "psi", "--case", "1", "--size", "2",
                        "--lambda", "1/2", "--window", "-2:2", "--json"]) == 0
        out = capsys.readouterr().out
        doc = json.loads(out)
        assert doc["witness"]["passed"] is True
        assert json.dumps(doc, indent=2) == out.strip()

    def test_breaks_formatting(self, capsys):
        assert run_cli(["module", "breaks", "--case", "4", "--size", "2",
                        "--lambda", "0", "--window", "-4:4"]) == 0
        assert capsys.readouterr().out.strip() == "{-1, 0}"

    def test_breaks_multiplicity(self, capsys):
        assert run_cli(["module", "breaks", "--case", "1", "--size", "2",
                        "--lambda", "0", "--window", "-3:3"]) == 0
        assert capsys.readouterr().out.strip() == "{0 (multiplicity 2)}"


class TestExitCodes:
    @pytest.mark.parametrize("args", [
        ["bs", "compute", "--case", "9", "--size", "2"],
        ["bs", "compute", "--case", "3", "--size", "5"],
        ["bs", "compute", "--case", "6", "--size", "7"],
        ["module", "ladder", "--case", "4", "--size", "2",
         "--lambda", "0", "--window", "4:-4"],
        ["module", "ladder", "--case", "4", "--size", "2",
         "--lambda", "x", "--window", "0:3"],
    ])
    def test_usage_errors(self, args, capsys):
        assert run_cli(args) == 2

    def test_missing_subcommand(self, capsys):
        assert run_cli(["bs"]) == 2

    def test_unknown_flag(self, capsys):
        assert run_cli(["catalog", "list", "--frobnicate"]) == 2
