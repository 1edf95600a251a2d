"""CLI: exit codes, JSON envelopes, determinism, generation round trips."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from cswitch.cli import EXIT_INDETERMINATE, EXIT_INVALID, EXIT_OK, main
from cswitch.io import load_system

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
EX1 = str(FIXTURES / "example1.json")
EX2 = str(FIXTURES / "example2.json")
WEAK = str(FIXTURES / "ex-weakness.json")
VEHICLE = str(FIXTURES / "vehicle.json")
CERNY = str(FIXTURES / "cerny-2-3.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


class TestExitCodes:
    def test_true_verdict_exits_zero(self, capsys):
        code, doc = run_json(capsys, "deadbeat", EX2)
        assert code == EXIT_OK
        assert doc["exit_code"] == 0
        assert doc["report"]["is_deadbeat"] is True
        assert doc["report"]["minimal_horizon"] == 2

    def test_false_verdict_also_exits_zero(self, capsys):
        code, doc = run_json(capsys, "deadbeat", EX1)
        assert code == EXIT_OK
        assert doc["report"]["is_deadbeat"] is False
        assert doc["report"]["witness"]["length"] == doc["report"]["horizon_bound"]

    def test_cap_exceeded_is_indeterminate(self, capsys):
        code, doc = run_json(capsys, "cjsr-bounds", EX1, "--max-depth", "8", "--cap", "5")
        assert code == EXIT_INDETERMINATE
        assert doc["report"]["error"] == "cap-exceeded"
        assert doc["report"]["required"] > 5

    def test_missing_file_is_invalid(self, capsys):
        code, doc = run_json(capsys, "deadbeat", str(FIXTURES / "nope.json"))
        assert code == EXIT_INVALID

    def test_malformed_json_reports_position(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"n": 1,\n  "oops"\n}')
        code, doc = run_json(capsys, "validate", str(bad))
        assert code == EXIT_INVALID
        assert doc["report"]["error"] == "ParseError"
        assert doc["report"]["line"] >= 2

    def test_float_to_rational_refused(self, capsys, tmp_path):
        code, out = run(capsys, "gen", "example", "--id", "ex1", "--out", str(tmp_path / "s.json"))
        assert code == EXIT_OK
        # rewrite as floats, then ask for exact analysis
        doc = json.loads((tmp_path / "s.json").read_text())
        doc["scalar"] = "float"
        doc["matrices"] = [[[float(x) if not isinstance(x, str) else 0.5 for x in row] for row in m] for m in doc["matrices"]]
        f = tmp_path / "f.json"
        f.write_text(json.dumps(doc))
        code, rep = run_json(capsys, "deadbeat", str(f), "--field", "rational")
        assert code == EXIT_INVALID
        assert rep["report"]["error"] == "FieldMismatch"

    def test_unknown_example_id(self, capsys):
        code, _ = run(capsys, "gen", "example", "--id", "ex9")
        assert code == EXIT_INVALID

    def test_node_out_of_range(self, capsys):
        code, doc = run_json(capsys, "irreducible-node", EX1, "--node", "5")
        assert code == EXIT_INVALID
        assert doc["report"]["error"] == "ValueError"

    def test_bad_subspace_rejected(self, capsys):
        code, doc = run_json(
            capsys, "escape-length", EX1, "--node", "0", "--subspace", "[[1,0,0]]"
        )
        assert code == EXIT_INVALID
        assert doc["report"]["error"] == "BadSubspaceDim"

    def test_not_strongly_connected_is_invalid(self, capsys, tmp_path):
        doc = {
            "n": 1,
            "scalar": "rational",
            "matrices": [[[1]]],
            "edges": [[0, 0, 1], [0, 1, 1]],
        }
        f = tmp_path / "line.json"
        f.write_text(json.dumps(doc))
        code, rep = run_json(capsys, "boundedness", str(f))
        assert code == EXIT_INVALID
        assert rep["report"]["error"] == "NotStronglyConnected"


class TestReports:
    def test_validate_report(self, capsys):
        code, doc = run_json(capsys, "validate", VEHICLE)
        assert code == EXIT_OK
        r = doc["report"]
        assert r["ok"] and r["n"] == 2 and r["node_count"] == 4 and r["edge_count"] == 8
        assert r["strongly_connected"]

    def test_boundedness_report(self, capsys):
        code, doc = run_json(capsys, "boundedness", WEAK)
        assert code == EXIT_OK
        r = doc["report"]
        assert r["conditions_hold"] is True
        assert r["irreducible_node_names"] == ["left"]
        assert len(r["statements"]) == 2

    def test_irreducible_node_with_enumeration(self, capsys):
        code, doc = run_json(capsys, "irreducible-node", WEAK, "--node", "0", "--enumerate")
        assert code == EXIT_OK
        assert doc["report"]["status"] == "irreducible"

    def test_lift_analyze(self, capsys):
        code, doc = run_json(capsys, "lift", WEAK, "--analyze")
        assert code == EXIT_OK
        r = doc["report"]
        assert r["dimension"] == 6 and r["matrix_count"] == 5
        assert r["status"] == "reducible"
        assert r["witness"]["ambient_dim"] == 6

    def test_escape_length_report(self, capsys):
        code, doc = run_json(
            capsys, "escape-length", CERNY, "--node", "0", "--subspace", "[[1,0]]"
        )
        assert code == EXIT_OK
        assert doc["report"]["escape_length"] == 5
        assert doc["report"]["escapes"] is True

    def test_cjsr_bounds_report(self, capsys):
        code, doc = run_json(capsys, "cjsr-bounds", EX1, "--max-depth", "6")
        assert code == EXIT_OK
        r = doc["report"]
        assert r["lower"] == 1.0
        assert r["lower"] <= r["upper"]
        assert r["depth"] == 6

    def test_text_format(self, capsys):
        code, out = run(capsys, "deadbeat", EX2)
        assert code == EXIT_OK
        assert "is_deadbeat: true" in out


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ("boundedness", WEAK),
            ("deadbeat", EX1),
            ("irreducible-node", EX1, "--node", "0"),
            ("cjsr-bounds", EX1, "--max-depth", "5"),
        ],
    )
    def test_json_identical_modulo_elapsed(self, capsys, argv):
        _, a = run_json(capsys, *argv)
        _, b = run_json(capsys, *argv)
        a.pop("elapsed_ms")
        b.pop("elapsed_ms")
        assert json.dumps(a) == json.dumps(b)


class TestGeneration:
    def test_gen_then_analyze_round_trip(self, capsys, tmp_path):
        out = tmp_path / "cerny.json"
        code, _ = run(capsys, "gen", "cerny", "--n", "2", "--m", "4", "--out", str(out))
        assert code == EXIT_OK
        code, doc = run_json(
            capsys, "escape-length", str(out), "--node", "0", "--subspace", "[[1,0]]"
        )
        assert code == EXIT_OK
        assert doc["report"]["escape_length"] == 1 + 2 * (4 - 1)

    def test_gen_stdout_is_loadable(self, capsys, tmp_path):
        code, out = run(capsys, "gen", "vehicle", "--a1", "2/5", "--a2", "1/7")
        assert code == EXIT_OK
        f = tmp_path / "v.json"
        f.write_text(out)
        s = load_system(str(f))
        assert s.name == "vehicle-left-inverter"

    def test_lift_emission_is_loadable(self, capsys, tmp_path):
        code, out = run(capsys, "lift", EX1)
        assert code == EXIT_OK
        f = tmp_path / "lifted.json"
        f.write_text(out)
        s = load_system(str(f))
        assert s.num_nodes == 1
        assert s.n == 4
        assert len(s.graph.edges) == 3

    def test_gen_vehicle_zero_parameter(self, capsys):
        code, _ = run(capsys, "gen", "vehicle", "--a1", "0")
        assert code == EXIT_INVALID


@pytest.fixture(scope="module")
def validator():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(
        (Path(__file__).resolve().parent.parent / "docs" / "report.schema.json").read_text()
    )
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


class TestReportSchema:
    """Every JSON envelope the CLI can emit validates against the published schema."""

    @pytest.mark.parametrize(
        "argv",
        [
            ("validate", VEHICLE),
            ("deadbeat", EX2),
            ("deadbeat", EX1),
            ("boundedness", WEAK),
            ("boundedness", VEHICLE),
            ("irreducible-node", EX1, "--node", "0"),
            ("lift", WEAK, "--analyze"),
            ("cjsr-bounds", EX1, "--max-depth", "5"),
            ("cjsr-bounds", EX1, "--max-depth", "8", "--cap", "5"),
            ("escape-length", CERNY, "--node", "0", "--subspace", "[[1,0]]"),
            ("escape-length", EX1, "--node", "0", "--subspace", "[[1,0,0]]"),
            ("deadbeat", str(FIXTURES / "missing.json")),
        ],
    )
    def test_envelope_conforms(self, capsys, validator, argv):
        _, doc = run_json(capsys, *argv)
        errors = list(validator.iter_errors(doc))
        assert not errors, errors[0].message if errors else ""


class TestEntryPoint:
    def test_console_script(self, tmp_path):
        proc = subprocess.run(
            ["cswitch", "deadbeat", EX2, "--format", "json"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["command"] == "deadbeat"
        assert doc["report"]["is_deadbeat"] is True

    def test_no_arguments_is_usage_error(self):
        proc = subprocess.run(["cswitch"], capture_output=True, text=True)
        assert proc.returncode == 2
