"""Command-line interface tests: exit codes, printed values, determinism."""

import json

import pytest

from skewlab.cli import load_default_config, main

QUARTER = json.dumps({
    "f": {"kind": "power", "p": 0.25},
    "g": {"kind": "power", "p": 0.25},
    "h": {"kind": "power", "p": 0.5},
    "eps": 1e-6,
})


def small_config_doc():
    return {
        "seed": 42,
        "dims": [2],
        "samples_per_dim": 20,
        "inequalities": [{"id": "HEISENBERG_21"}, {"id": "LUO_23"}],
    }


def write_config(tmp_path, doc, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def parsed_values(out):
    values = {}
    for line in out.splitlines():
        if " = " in line:
            key, _, val = line.partition(" = ")
            values[key.strip()] = val.strip()
    return values


class TestVerify:
    def test_clean_campaign_exit_zero(self, tmp_path, capsys):
        path = write_config(tmp_path, small_config_doc())
        out_path = tmp_path / "report.json"
        assert main(["verify", path, "--out", str(out_path)]) == 0
        report = json.loads(out_path.read_text())
        assert report["config_hash"]
        assert len(report["inequalities"]) == 2
        assert all(s["violations"] == 0 for s in report["inequalities"])

    def test_violation_exit_one(self, tmp_path):
        doc = small_config_doc()
        doc["inequalities"] = [{"id": "NAIVE_WY_SHOULD_FAIL", "assert_pass": True}]
        path = write_config(tmp_path, doc)
        assert main(["verify", path]) == 1

    def test_informational_naive_exit_zero(self, tmp_path):
        doc = small_config_doc()
        doc["inequalities"].append({"id": "NAIVE_WY_SHOULD_FAIL"})
        path = write_config(tmp_path, doc)
        assert main(["verify", path]) == 0

    def test_malformed_json_exit_two(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"seed": ')
        assert main(["verify", str(path)]) == 2
        assert "error:" in capsys.readouterr().err

    def test_unknown_key_exit_two_no_partial_report(self, tmp_path):
        doc = small_config_doc()
        doc["bogus"] = 1
        path = write_config(tmp_path, doc)
        out_path = tmp_path / "report.json"
        assert main(["verify", path, "--out", str(out_path)]) == 2
        assert not out_path.exists()

    def test_csv_report(self, tmp_path):
        path = write_config(tmp_path, small_config_doc())
        out_path = tmp_path / "report.csv"
        assert main(["verify", path, "--out", str(out_path), "--format", "csv"]) == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "id,n,lhs,rhs,margin,pass"
        assert len(lines) == 1 + 2 * 20

    def test_missing_file_exit_two(self):
        assert main(["verify", "/nonexistent/config.json"]) == 2

    def test_default_config_is_loadable(self):
        doc = load_default_config()
        ids = [e["id"] for e in doc["inequalities"]]
        assert "THM31_FGH" in ids and "NAIVE_WY_SHOULD_FAIL" in ids
        assert doc["dims"] == [2, 3, 4, 8]
        assert doc["samples_per_dim"] == 1000


class TestBeta:
    def test_power_triple(self, capsys):
        assert main(["beta", "--triple", QUARTER]) == 0
        vals = parsed_values(capsys.readouterr().out)
        assert float(vals["beta"]) == pytest.approx(0.0625, abs=1e-15)
        assert float(vals["m_g"]) == 1.0
        assert float(vals["m_h"]) == 2.0
        assert vals["assumption"] == "I"

    def test_constant_h_shows_alternative(self, capsys):
        triple = json.dumps({
            "f": {"kind": "power", "p": 0.3},
            "g": {"kind": "power", "p": 0.6},
            "h": {"kind": "const", "c": 1.0},
        })
        assert main(["beta", "--triple", triple]) == 0
        vals = parsed_values(capsys.readouterr().out)
        # uniform formula: k/(1+k)^2 with k = 2; alternative: min{k,k}/(2k)^2
        assert float(vals["beta"]) == pytest.approx(2 / 9, rel=1e-12)
        assert float(vals["beta_pair_alternative"]) == pytest.approx(1 / 8, rel=1e-12)

    def test_negative_h_assumption_two(self, capsys):
        triple = json.dumps({
            "f": {"kind": "power", "p": 1.0},
            "g": {"kind": "power", "p": 1.0},
            "h": {"kind": "power", "p": -0.5},
        })
        assert main(["beta", "--triple", triple]) == 0
        vals = parsed_values(capsys.readouterr().out)
        assert float(vals["beta"]) == pytest.approx(4 / 9, rel=1e-12)
        assert vals["assumption"] == "II"

    def test_neither_triple_warns(self, capsys):
        triple = json.dumps({
            "f": {"kind": "power", "p": 1.0},
            "g": {"kind": "power", "p": 1.0},
            "h": {"kind": "power", "p": 1.5},
        })
        assert main(["beta", "--triple", triple]) == 0
        err = capsys.readouterr().err
        assert "neither" in err

    def test_bad_triple_exit_two(self, capsys):
        assert main(["beta", "--triple", '{"f": {"kind": "nope"}}']) == 2

    def test_triple_from_file(self, tmp_path, capsys):
        path = tmp_path / "triple.json"
        path.write_text(QUARTER)
        assert main(["beta", "--triple", f"@{path}"]) == 0
        vals = parsed_values(capsys.readouterr().out)
        assert float(vals["beta"]) == pytest.approx(0.0625)


class TestPairs:
    def test_classification_output(self, capsys):
        triple = json.dumps({
            "f": {"kind": "power", "p": 1.0},
            "g": {"kind": "power", "p": 1.0},
            "h": {"kind": "power", "p": -0.5},
        })
        assert main(["pairs", "--triple", triple]) == 0
        out = capsys.readouterr().out
        assert "(f,g): monotone" in out
        assert "(f,h): anti-monotone" in out
        assert "assumption = II" in out


class TestScanL:
    def test_power_triple_passes(self, capsys):
        assert main(["scan-l", "--triple", QUARTER, "--grid", "100"]) == 0
        out = capsys.readouterr().out
        assert "PASS: min L >= 16*beta" in out
        assert "argmin" in out

    def test_neither_triple_no_bound(self, capsys):
        triple = json.dumps({
            "f": {"kind": "power", "p": 1.0},
            "g": {"kind": "power", "p": 1.0},
            "h": {"kind": "power", "p": 1.5},
        })
        assert main(["scan-l", "--triple", triple, "--grid", "50"]) == 0
        assert "no bound asserted" in capsys.readouterr().out

    def test_coarse_grid(self, capsys):
        assert main(["scan-l", "--triple", QUARTER, "--grid", "2"]) == 0


class TestLemma41:
    def test_pass_exit_zero(self, capsys):
        assert main(["lemma41", "--a", "0.5", "--b", "0.5", "--c", "1",
                     "--rmax", "10", "--steps", "1000"]) == 0
        out = capsys.readouterr().out
        assert "violations = 0" in out
        assert out.count("\n") > 1000  # margin table printed

    def test_second_regime_exit_zero(self):
        assert main(["lemma41", "--a", "1", "--b", "1", "--c", "-0.5",
                     "--steps", "200"]) == 0

    def test_regime_violation_exit_two(self, capsys):
        assert main(["lemma41", "--a", "1", "--b", "1", "--c", "0.5"]) == 2
        assert "regime" in capsys.readouterr().err


class TestCounterexample:
    def test_finds_violation(self, capsys):
        code = main(["counterexample", "--id", "NAIVE_WY_SHOULD_FAIL",
                     "--budget", "200", "--seed", "5"])
        assert code == 0
        out = capsys.readouterr().out
        assert "violation at index" in out
        assert '"rho"' in out

    def test_exhausted_exit_one(self, capsys):
        code = main(["counterexample", "--id", "THM21_WYD",
                     "--budget", "50", "--seed", "5"])
        assert code == 1
        assert "exhausted" in capsys.readouterr().out

    def test_seed_determines_output(self, capsys):
        args = ["counterexample", "--id", "NAIVE_WY_SHOULD_FAIL",
                "--budget", "100", "--seed", "9"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        second = capsys.readouterr().out
        assert first == second


class TestUsage:
    def test_no_command_exits_two(self, capsys):
        assert main([]) == 2

    def test_unknown_command_exits_two(self, capsys):
        assert main(["frobnicate"]) == 2
