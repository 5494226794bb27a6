import json

import jsonschema
import pytest
from click.testing import CliRunner

from quivtrunc import __version__, cli
from quivtrunc.components import SamplerExhausted
from quivtrunc.tilting import TiltingError


def run(*args):
    return CliRunner().invoke(cli.main, [str(a) for a in args])


def run_json(*args):
    res = run(*args, "--json")
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    jsonschema.validate(doc, cli.schema(doc["command"]))
    return doc


def test_version():
    res = run("--version")
    assert res.exit_code == 0 and __version__ in res.output


def test_components_example():
    doc = run_json("components", "--quiver", "alpha_beta_beta", "--L", 3, "--dim", "2,2", "--field", "p101")
    assert len(doc["result"]["components"]) == 4
    assert doc["config"]["dim"] == [2, 2] and doc["field"] == "p101" and doc["version"] == __version__
    table = run("components", "--quiver", "alpha_beta_beta", "--L", 3, "--dim", "2,2", "--field", "p101")
    assert table.output.startswith("4 component(s)")


def test_components_zero_dimension():
    doc = run_json("components", "--quiver", "two_cycle", "--L", 2, "--dim", "0,0")
    (row,) = doc["result"]["components"]
    assert row["sequence"] == [[0, 0], [0, 0]]


def test_local_formula_matches_search():
    closed = run_json("components", "--quiver", "two_loops", "--L", 4, "--dim", 5, "--local-formula")
    searched = run_json("components", "--quiver", "two_loops", "--L", 4, "--dim", 5, "--field", "p101")
    assert closed["result"]["closed_form"] is True
    assert {r["evidence"] for r in closed["result"]["components"]} == {"closed_form"}
    assert sorted(r["sequence"] for r in closed["result"]["components"]) == \
        sorted(r["sequence"] for r in searched["result"]["components"])


def test_quiver_file_input(tmp_path):
    path = tmp_path / "q.json"
    path.write_text(json.dumps({"vertices": 2, "arrows": [{"id": "a", "from": 1, "to": 2},
                                                          {"id": "b", "from": 2, "to": 1}]}))
    doc = run_json("components", "--quiver", path, "--L", 2, "--dim", "1,1", "--field", "p101")
    assert len(doc["result"]["components"]) == 2


@pytest.mark.parametrize("args", [
    ("components", "--quiver", "no_such_quiver", "--L", 2, "--dim", "1"),
    ("components", "--quiver", "two_cycle", "--L", 2, "--dim", "1"),
    ("components", "--quiver", "two_cycle", "--L", 2, "--dim", "1,x"),
    ("components", "--quiver", "two_cycle", "--L", 0, "--dim", "1,1"),
    ("components", "--quiver", "two_cycle", "--L", 2, "--dim", "1,1", "--field", "p6"),
    ("components", "--quiver", "two_cycle", "--L", 2, "--dim", "1,1", "--local-formula"),
    ("hierarchy", "--quiver", "two_loops", "--L-range", "4..2", "--dim", 3),
    ("tilt", "--quiver", "single_loop", "--L", 3, "--ratios", 1),
    ("graph", "--quiver", "two_cycle", "--L", 2),
])
def test_input_errors_exit_2(args):
    assert run(*args).exit_code == 2


def test_malformed_quiver_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run("components", "--quiver", path, "--L", 2, "--dim", "1").exit_code == 2


def test_sampler_exhaustion_exit_3(monkeypatch):
    def boom(*a, **k):
        raise SamplerExhausted("no luck")
    monkeypatch.setattr(cli, "classify_components", boom)
    res = run("components", "--quiver", "two_cycle", "--L", 2, "--dim", "1,1")
    assert res.exit_code == 3


def test_verification_failure_exit_4(monkeypatch):
    def boom(*a, **k):
        raise TiltingError("summands collide")
    monkeypatch.setattr(cli, "strong_tilting_module", boom)
    assert run("tilt", "--quiver", "single_loop", "--L", 3).exit_code == 4


def test_hierarchy_single_level_has_no_edges():
    doc = run_json("hierarchy", "--quiver", "two_loops", "--L-range", "3..3", "--dim", 3, "--field", "p101")
    assert doc["result"]["edges"] == []


def test_tilt_report(tmp_path):
    doc = run_json("tilt", "--quiver", "tilt_illustration", "--L", 3, "--out", tmp_path)
    assert doc["result"]["loewy_length_tilt"] == 7
    assert (tmp_path / "tilt.json").exists()
    assert any(p.suffix == ".dot" for p in tmp_path.iterdir())


def test_tilt_single_loop_ratios():
    doc = run_json("tilt", "--quiver", "single_loop", "--L", 3, "--ratios", 6)
    assert {r["ratio"] for r in doc["result"]["ratios"]} == {"1"}
    assert doc["result"]["accumulation"]["points"] == ["1"]


@pytest.mark.parametrize("name,verdicts", [
    ("loop_arrow", ("finite", "finite")),
    ("two_loops_sink", ("finite", "tame")),
    ("loop_fork", ("finite", "unknown")),
])
def test_reptype_reports(name, verdicts):
    doc = run_json("reptype", "--quiver", name, "--L", 2, "--tilt")
    assert (doc["result"]["algebra"]["verdict"], doc["result"]["tilt"]["verdict"]) == verdicts


def test_realizable_and_graph(tmp_path):
    doc = run_json("realizable", "--quiver", "two_cycle", "--L", 2, "--dim", "1,1")
    assert [[1, 0], [0, 1]] in doc["result"]["sequences"]
    run_json("graph", "--quiver", "tilt_illustration", "--L", 3, "--tilt", "--out", tmp_path)
    run_json("graph", "--quiver", "alpha_beta_beta", "--L", 3, "--dim", "2,2", "--field", "p101")


def test_reports_are_byte_identical(tmp_path):
    args = ("components", "--quiver", "alpha_beta_beta", "--L", 3, "--dim", "2,2", "--seed", 7)
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(*args, "--out", a).exit_code == 0
    assert run(*args, "--out", b).exit_code == 0
    assert (a / "components.json").read_bytes() == (b / "components.json").read_bytes()
