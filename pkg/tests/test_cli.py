import io
import json
import sys

import pytest

from torsig.cli import main
from torsig.fan import normal_fan
from torsig.generators import cube, polygon
from torsig.polytope import Polytope, product


def run_cli(capsys, monkeypatch, args, stdin_obj=None):
    if stdin_obj is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(stdin_obj)))
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_and_analyze_roundtrip(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, monkeypatch, ["gen", "triangle"])
    assert code == 0
    data = json.loads(out)
    code, out, _ = run_cli(capsys, monkeypatch, ["analyze"], stdin_obj=data)
    assert code == 0
    report = json.loads(out)
    assert report["f"] == [3, 3, 1]
    assert report["sigma"] == 1
    assert report["convexity"] == "NotLocallyConvex"
    assert report["flag"] is False
    assert report["bounds"]["theorem_case"] == "none"


def test_analyze_hexagon_with_chow(capsys, monkeypatch):
    data = polygon("delzant-hexagon").to_json_dict()
    code, out, _ = run_cli(capsys, monkeypatch, ["analyze", "--chow"], stdin_obj=data)
    assert code == 0
    report = json.loads(out)
    assert report["sigma"] == -2
    assert report["chow_sigma"] == "-2"
    assert report["agreement"] is True
    assert report["convexity"] == "LocallyStronglyConvex"
    assert report["m"] == 1
    assert report["h"] == [1, 4, 1]


def test_analyze_permutohedron_in_hyperplane(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, monkeypatch, ["gen", "permutohedron", "--n", "4"])
    assert code == 0
    code, out, _ = run_cli(
        capsys, monkeypatch, ["analyze"], stdin_obj=json.loads(out)
    )
    assert code == 0
    report = json.loads(out)
    assert report["sigma"] == 0
    assert report["h"] == [1, 11, 11, 1]
    assert "bounds" not in report  # odd dimension
    assert report["convexity"] == "LocallyPointedConvex"


def test_analyze_chow_warns_in_odd_dim(capsys, monkeypatch):
    data = cube(3).to_json_dict()
    code, out, err = run_cli(capsys, monkeypatch, ["analyze", "--chow"], stdin_obj=data)
    assert code == 0
    report = json.loads(out)
    assert "chow_sigma" not in report
    assert "warning" in err


def test_analyze_non_simple_exit_3(capsys, monkeypatch):
    pyramid = Polytope.from_vertices(
        [(1, 1, 0), (1, -1, 0), (-1, 1, 0), (-1, -1, 0), (0, 0, 1)]
    )
    code, out, _ = run_cli(capsys, monkeypatch, ["analyze"], stdin_obj=pyramid.to_json_dict())
    assert code == 3
    report = json.loads(out)
    assert report["simple"] is False
    assert "convexity" not in report and "m" not in report and "bounds" not in report


def test_analyze_invalid_input_exit_2(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("not json"))
    code = main(["analyze"])
    captured = capsys.readouterr()
    assert code == 2
    assert captured.out == ""
    assert "error" in captured.err


def test_bounds_hexagon_tight(capsys, monkeypatch):
    data = polygon("delzant-hexagon").to_json_dict()
    code, out, _ = run_cli(capsys, monkeypatch, ["bounds"], stdin_obj=data)
    assert code == 0
    report = json.loads(out)
    assert report["theorem_case"] == "iii"
    assert report["lhs"] == 2 and report["rhs"] == "2"
    assert report["satisfied"] is True


def test_bounds_square_case_i_and_refusal(capsys, monkeypatch):
    data = polygon("square").to_json_dict()
    code, out, _ = run_cli(capsys, monkeypatch, ["bounds"], stdin_obj=data)
    report = json.loads(out)
    assert code == 0
    assert report["theorem_case"] == "i"
    assert report["lhs"] == 0 and report["rhs"] == "0" and report["satisfied"]
    code, out, _ = run_cli(
        capsys, monkeypatch, ["bounds", "--case", "ii"], stdin_obj=data
    )
    report = json.loads(out)
    assert report["theorem_case"] == "none"


def test_bounds_product_case_i_only(capsys, monkeypatch):
    hexa = polygon("delzant-hexagon")
    data = product(hexa, hexa).to_json_dict()
    code, out, _ = run_cli(capsys, monkeypatch, ["bounds"], stdin_obj=data)
    report = json.loads(out)
    assert report["theorem_case"] == "i"
    assert report["lhs"] == 4 and report["rhs"] == "0"


def test_bounds_odd_dimension_exit_4(capsys, monkeypatch):
    code, _, err = run_cli(
        capsys, monkeypatch, ["bounds"], stdin_obj=cube(3).to_json_dict()
    )
    assert code == 4
    assert "even" in err


def test_mirror(capsys, monkeypatch):
    for name, chi in (("square", 0), ("obtuse-pentagon", -8), ("delzant-hexagon", -32)):
        data = polygon(name).to_json_dict()
        code, out, _ = run_cli(capsys, monkeypatch, ["mirror"], stdin_obj=data)
        assert code == 0
        report = json.loads(out)
        assert report["chi"] == chi
        assert report["d"] == 2


def test_chow_signature_on_fan_json(capsys, monkeypatch):
    fan_data = {
        "dim": 2,
        "rays": [["1", "0"], ["0", "1"], ["-1", "-2"]],
        "max_cones": [[0, 1], [1, 2], [0, 2]],
    }
    code, out, _ = run_cli(capsys, monkeypatch, ["chow-signature"], stdin_obj=fan_data)
    assert code == 0
    report = json.loads(out)
    assert report["sigma"] == "1"
    assert report["h_sigma"] == 1
    assert report["agreement"] is True
    code, out, _ = run_cli(
        capsys, monkeypatch, ["chow-signature", "--terms"], stdin_obj=fan_data
    )
    report = json.loads(out)
    assert len(report["terms"]) == 3
    assert {t["value"] for t in report["terms"]} == {"1/2", "2"}


def test_chow_signature_on_polytope_json(capsys, monkeypatch):
    data = polygon("triangle").to_json_dict()
    code, out, _ = run_cli(capsys, monkeypatch, ["chow-signature"], stdin_obj=data)
    report = json.loads(out)
    assert report["sigma"] == "1"


def test_chow_signature_reports_orbifold_disagreement(capsys, monkeypatch):
    data = polygon("obtuse-pentagon").to_json_dict()
    code, out, _ = run_cli(capsys, monkeypatch, ["chow-signature"], stdin_obj=data)
    assert code == 0
    report = json.loads(out)
    assert report["sigma"] == "-19/36"
    assert report["h_sigma"] == -1
    assert report["agreement"] is False


def test_gen_names_and_errors(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, monkeypatch, ["gen", "cube", "--d", "4"])
    assert code == 0
    assert json.loads(out)["dim"] == 4
    code, _, err = run_cli(capsys, monkeypatch, ["gen", "dodecahedron"])
    assert code == 2
    assert "unknown generator" in err


def test_output_is_deterministic(capsys, monkeypatch):
    data = polygon("delzant-hexagon").to_json_dict()
    _, out1, _ = run_cli(capsys, monkeypatch, ["analyze", "--chow"], stdin_obj=data)
    _, out2, _ = run_cli(capsys, monkeypatch, ["analyze", "--chow"], stdin_obj=data)
    assert out1 == out2
    _, pretty, _ = run_cli(
        capsys, monkeypatch, ["analyze", "--pretty"], stdin_obj=data
    )
    assert "\n" in pretty and json.loads(pretty)["sigma"] == -2
