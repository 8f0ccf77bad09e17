import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from _fixtures import C1
from epstein_action.boundary import pushforward_metric
from epstein_action.cli import EXIT_BAD_INPUT, EXIT_OK, EXIT_TOLERANCE, main
from epstein_action.descriptors import SCHEMA, Scenario, load_descriptor, load_scenario, parse_t_range
from epstein_action.epstein import epstein_curve
from epstein_action.errors import DescriptorError
from epstein_action.render import read_csv, render_epstein, totals_from_csv, write_csv

FIX = Path(__file__).resolve().parents[1] / "fixtures"


def fixture(name):
    return str(FIX / name)


# descriptors

def test_every_fixture_loads():
    for path in FIX.glob("*.json"):
        s = load_descriptor(str(path))
        assert s.kind


def test_descriptor_errors():
    with pytest.raises(DescriptorError):
        load_descriptor({"kind": "nope"})
    with pytest.raises(DescriptorError):
        load_descriptor({"coeffs": []})
    with pytest.raises(DescriptorError):
        load_descriptor({"kind": "lift_sine", "amp": 2.0})
    with pytest.raises(DescriptorError):
        load_descriptor("{not json")
    with pytest.raises(DescriptorError):
        load_descriptor(str(FIX / "missing.json"))


def test_inline_descriptor_matches_file():
    a = load_descriptor('{"kind": "lift_sine", "amp": 0.5}').diffeo
    b = load_descriptor(fixture("sine_half.json")).diffeo
    th = np.linspace(0, 6, 11)
    assert np.array_equal(a.lift(th), b.lift(th))


def test_t_ranges():
    assert np.allclose(parse_t_range("0:1:0.25"), [0, 0.25, 0.5, 0.75, 1.0])
    assert parse_t_range("0:5:0.1").size == 51
    assert parse_t_range(2.5).tolist() == [2.5]
    with pytest.raises(DescriptorError):
        parse_t_range("1:0:0.1")
    with pytest.raises(DescriptorError):
        parse_t_range("a:b")


def test_scenario_validation():
    with pytest.raises(DescriptorError):
        Scenario("action", {"kind": "lift_sine"}, grid=1000)
    with pytest.raises(DescriptorError):
        Scenario("teleport", {"kind": "lift_sine"})
    with pytest.raises(DescriptorError):
        load_scenario({"operation": "action", "input": {}})
    with pytest.raises(DescriptorError):
        load_scenario({"schema": SCHEMA, "input": {}})


def test_scenario_json_round_trip():
    sc = Scenario("foliate", {"kind": "lift_sine", "amp": 0.5}, grid=256, t="0:1:0.5", tol=1e-3)
    again = load_scenario(json.dumps(sc.to_json()))
    assert again.to_json() == sc.to_json()


# rendering

def test_round_metric_svg_has_horocycles_and_marker():
    h = load_descriptor(fixture("round.json")).metric
    canvas = render_epstein(h, 256, 80)
    assert canvas.paths == 80 and canvas.markers == 1
    text = canvas.to_string()
    assert text.startswith("<svg") and 'viewBox="0 0 1000 1000"' in text


def test_csv_round_trip(tmp_path):
    h = pushforward_metric(load_descriptor(fixture("sine_half.json")).diffeo)
    curve = epstein_curve(h, 512)
    path = tmp_path / "curve.csv"
    write_csv(curve, path)
    cols = read_csv(path)
    assert list(cols) == ["theta", "x", "y", "nx", "ny", "dl", "kdl", "kstar"]
    assert np.max(np.abs(cols["x"] + 1j * cols["y"] - curve.point)) == 0.0
    length, curvature = totals_from_csv(path)
    assert length == pytest.approx(curve.total_length(), abs=1e-12)
    assert curvature == pytest.approx(curve.total_curvature(), abs=1e-12)


# command line

def test_action_command(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert main(["action", "--input", fixture("sine_half.json"), "--json", str(out)]) == EXIT_OK
    text = capsys.readouterr().out
    assert "check" in text and "ok" in text
    payload = json.loads(out.read_text())
    assert payload["schema"] == SCHEMA and payload["status"] == 0
    assert payload["results"]["direct"] == pytest.approx(C1, abs=1e-14)
    assert payload["discrepancy"] < 1e-7


def test_epstein_command_writes_svg(tmp_path, capsys):
    svg = tmp_path / "round.svg"
    assert main(["epstein", "--input", fixture("round.json"), "--svg", str(svg), "--grid", "256"]) == EXIT_OK
    text = svg.read_text()
    assert text.count("<path") == 80
    assert text.count('class="marker"') == 1
    assert "degenerate" in capsys.readouterr().out


def test_foliate_command_writes_one_path_per_leaf(tmp_path):
    svg = tmp_path / "leaves.svg"
    argv = ["foliate", "--input", fixture("sine_half.json"), "--t", "0:5:0.1", "--grid", "512", "--svg", str(svg)]
    assert main(argv) == EXIT_OK
    assert svg.read_text().count("<path") == 51


def test_epstein_command_writes_csv(tmp_path):
    csv = tmp_path / "c.csv"
    assert main(["epstein", "--input", fixture("sine_half.json"), "--csv", str(csv), "--grid", "512"]) == EXIT_OK
    length, _ = totals_from_csv(csv)
    assert length == pytest.approx(C1, abs=1e-8)


@pytest.mark.parametrize("argv", [
    ["action", "--input", '{"kind": "nope"}'],
    ["action", "--input", "does-not-exist.json"],
    ["action", "--input", fixture("sine_half.json"), "--grid", "1000"],
    ["epstein", "--input", fixture("blaschke2.json")],
    ["action", "--input", fixture("blaschke2.json")],
    ["distort", "--input", fixture("sine_half.json")],
    ["piecewise", "--input", fixture("sine_half.json")],
    ["nfold", "--input", fixture("sine_half.json"), "--n", "two"],
])
def test_bad_input_exit_code(argv, capsys):
    assert main(argv) == EXIT_BAD_INPUT
    assert "error" in capsys.readouterr().err


def test_tolerance_exit_code(capsys):
    assert main(["action", "--input", fixture("sine_half.json"), "--tol", "1e-20"]) == EXIT_TOLERANCE
    assert "FAILED" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["excess", "--input", fixture("sine_half.json")],
    ["bilocal", "--input", fixture("sine_half.json"), "--depth", "3"],
    ["reconstruct", "--input", fixture("sine_half.json"), "--depth", "5"],
    ["nfold", "--input", fixture("sine_half.json")],
    ["dual", "--input", fixture("sine_half.json")],
    ["distort", "--input", fixture("exp_odd.json")],
    ["distort", "--input", fixture("square.json")],
    ["piecewise", "--input", fixture("piecewise4.json")],
    ["action", "--input", fixture("piecewise4_pieces.json")],
    ["action", "--input", fixture("moebius.json")],
    ["action", "--input", fixture("sigma_two_modes.json")],
])
def test_operations_pass_their_checks(argv, capsys):
    assert main(argv) == EXIT_OK, capsys.readouterr()


def test_run_scenario(tmp_path, capsys):
    out = tmp_path / "res.json"
    sc = {"schema": SCHEMA, "operation": "nfold", "input": {"kind": "lift_sine", "amp": 0.5},
          "n": [2], "outputs": {"json": str(out)}}
    path = tmp_path / "sc.json"
    path.write_text(json.dumps(sc))
    assert main(["run", str(path)]) == EXIT_OK
    res = json.loads(out.read_text())["results"]
    assert res["n=2 action"] == pytest.approx(C1 - 27 * np.pi / 8, abs=1e-10)


def test_run_rejects_unversioned_scenario(tmp_path):
    path = tmp_path / "sc.json"
    path.write_text(json.dumps({"operation": "action", "input": {"kind": "lift_sine"}}))
    assert main(["run", str(path)]) == EXIT_BAD_INPUT


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "epstein_action", "action", "--input", fixture("round.json"),
                          "--grid", "256"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "max_discrepancy" in res.stdout
