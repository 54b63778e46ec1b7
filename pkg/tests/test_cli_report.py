import json
import subprocess
import sys

import pytest

from koszulkit.cli import main
from koszulkit.report import RunConfig, render, run


def _strip_timings(doc):
    doc = dict(doc)
    doc.pop("timings", None)
    return doc


def test_report_deterministic_modulo_timings():
    cfg = RunConfig(preset="A3", field_tag="Q",
                    analyses=("calculus", "higher", "duality"))
    first = render(_strip_timings(run(cfg)))
    second = render(_strip_timings(run(cfg)))
    assert first == second


def test_a3_report_contents(tmp_path):
    out = tmp_path / "a3.json"
    code = main(["calculus", "--preset", "A3", "--field", "Q",
                 "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["status"] == "ok"
    assert doc["calculus"]["cohomology"]["dims"][:3] == [2, 1, 3]
    assert doc["calculus"]["homology"]["dims"][:3] == [3, 1, 2]
    assert doc["duality"]["ok"] is True
    assert doc["fundamental_cocycle"]["class"] == ["2"]
    assert doc["schema"] == "koszulkit-report/1"
    # rational scalars are serialized as integer or n/d strings
    flat = json.dumps(doc)
    assert "Fraction" not in flat


def test_e6_f3_has_the_extra_degree1_class(tmp_path):
    out = tmp_path / "e6.json"
    code = main(["calculus", "--preset", "E6", "--field", "F:3",
                 "--analyses", "calculus", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["calculus"]["cohomology"]["dims"][:3] == [5, 4, 7]
    # the weight-5 slot carries the extra class
    assert doc["calculus"]["cohomology"]["bigraded"]["1"]["5"] == 1


def test_koszulity_on_graph_file(tmp_path):
    graph = {"vertices": ["0", "1", "2"],
             "edges": [["0", "1"], ["1", "2"], ["0", "2"]]}
    path = tmp_path / "triangle.json"
    path.write_text(json.dumps(graph))
    out = tmp_path / "report.json"
    code = main(["koszulity", "--file", str(path), "--weight-cutoff", "8",
                 "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["koszulity"]["koszul_up_to_cutoff"] is True
    assert doc["status"] == "warning"  # cutoff reached without vanishing


def test_presentation_file_input(tmp_path):
    data = {
        "vertices": ["0"],
        "arrows": [{"name": "x", "src": "0", "tgt": "0"},
                   {"name": "y", "src": "0", "tgt": "0"}],
        "relations": [[{"coeff": "1", "path": ["x", "y"]},
                       {"coeff": "-1", "path": ["y", "x"]}]],
    }
    path = tmp_path / "poly.json"
    path.write_text(json.dumps(data))
    out = tmp_path / "report.json"
    code = main(["koszulity", "--file", str(path), "--weight-cutoff", "6",
                 "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    # the commuting-variables algebra is Koszul in the computed range
    assert doc["koszulity"]["koszul_up_to_cutoff"] is True


def test_dualize_and_hochschild_subcommands(tmp_path):
    out = tmp_path / "d.json"
    assert main(["dualize", "--preset", "A4", "--field", "F:2",
                 "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["duality"]["ok"] is True
    out2 = tmp_path / "h.json"
    assert main(["hochschild2", "--preset", "A3", "--field", "Q",
                 "--out", str(out2)]) == 0
    doc2 = json.loads(out2.read_text())
    assert doc2["hochschild2"]["hh2_dim"] == 1
    assert doc2["hochschild2"]["bar_oracle"] == {"hh0_dim": 2, "hh1_dim": 1}


def test_verify_ade_subcommand(tmp_path):
    out = tmp_path / "v.json"
    code = main(["verify-ade", "--types", "A3,A4", "--chars", "0,2",
                 "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["ok"] is True and doc["checks"] > 100


def test_rational_e8_guard():
    assert main(["calculus", "--preset", "E8", "--field", "Q"]) == 3


def test_bad_preset_exit_code():
    assert main(["calculus", "--preset", "Z9"]) == 3


def test_ae_coefficients_route(tmp_path):
    out = tmp_path / "ae.json"
    code = main(["calculus", "--preset", "A3", "--coefficients", "Ae",
                 "--analyses", "koszulity", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    env = doc["enveloping_coefficients"]
    assert env["hk_dims"]["2"] == 10 and env["hk_dims"]["1"] == 0
    assert env["hk2_equals_dim_A"] is True and env["kc_calabi_yau_2"] is True


def test_cli_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "koszulkit.cli", "--version"],
        capture_output=True, text=True)
    assert proc.returncode == 0
