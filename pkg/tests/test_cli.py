import io
import json
import subprocess
import sys

import pytest

from conftest import c4, k2m
from tropgenus.cli import RunConfig, main, relabel_for_trace, run
from tropgenus.document import (
    ParseError,
    check_document,
    curve_document,
    dumps_document,
    load_curve_document,
    parse_graph,
    parse_inline_edges,
)
from tropgenus.graph import GraphError
from tropgenus.seed import SeedConfig
from tropgenus.traversal import compute_genus

C4_TEXT = "1 2\n2 3\n3 4\n1 4\n"


def test_parse_text_and_json():
    g = parse_graph(C4_TEXT)
    assert g == c4()
    j = '{"vertices":4,"edges":[[1,2],[2,3],[3,4],[1,4]],"base":[1,2]}'
    assert parse_graph(j) == g
    assert parse_inline_edges("1-2,2-3,3-4,1-4") == g
    assert parse_graph("# comment\nbase 1 2\n1 2\n2 3\n\n3 4\n1 4") == g


def test_parse_base_line_moves_base():
    g = parse_graph("base 3 4\n1 2\n2 3\n3 4\n1 4")
    assert g.one_based_edges()[0] == (3, 4)


@pytest.mark.parametrize("text, fragment", [
    ("1 1", "loop"),
    ("1 2\n2 x", "line 2"),
    ("1 2 3", "line 1"),
    ("1 2\nbase 1 2", "first line"),
    ('{"edges": [[1, 2], [2]]}', "edges[1]"),
    ("", "no edges"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        parse_graph(text)


def test_duplicate_and_missing_base():
    with pytest.raises(GraphError):
        parse_graph("1 2\n2 3\n3 2")
    with pytest.raises(GraphError):
        parse_graph("2 3\n3 4\n2 4")


def _run(tmp_path, *argv, stdin=None):
    return subprocess.run([sys.executable, "-m", "tropgenus.cli", *argv], capture_output=True, text=True,
                          input=stdin, cwd=tmp_path)


def test_genus_command(tmp_path):
    (tmp_path / "c4.txt").write_text(C4_TEXT)
    r = _run(tmp_path, "genus", "c4.txt")
    assert r.returncode == 0
    assert "genus: 1" in r.stdout
    r = _run(tmp_path, "genus", "--format", "json", stdin=C4_TEXT)
    assert json.loads(r.stdout)["genus"] == 1


def test_validate_and_errors(tmp_path):
    r = _run(tmp_path, "validate", "--edges", "1-2,2-3,3-4,1-4")
    assert r.returncode == 0 and "{1, 3}" in r.stdout
    r = _run(tmp_path, "genus", "--edges", "1-2,2-3,1-3")
    assert r.returncode == 3
    assert json.loads(r.stderr)["error"] == "WrongCount"
    r = _run(tmp_path, "genus", stdin="1 1\n")
    assert r.returncode == 2 and json.loads(r.stderr)["error"] == "ParseError"
    r = _run(tmp_path, "genus", "--project", "pca", stdin=C4_TEXT)
    assert r.returncode == 2


def test_abort_reports_history(tmp_path):
    # a two-vertex budget makes every draw abort
    r = _run(tmp_path, "genus", "--vertex-budget", "2", "--max-restarts", "2", stdin=C4_TEXT)
    assert r.returncode == 4
    err = json.loads(r.stderr)
    assert err["error"] == "GenusComputationFailed"
    assert [h["kind"] for h in err["history"]] == ["VertexBudgetExceeded"] * 2


def test_curve_document(tmp_path):
    r = _run(tmp_path, "curve", "--seed", "3", stdin=C4_TEXT)
    doc = json.loads(r.stdout)
    assert (len(doc["vertices"]), len(doc["bounded_edges"]), len(doc["rays"])) == (6, 6, 6)
    assert all("/" in x for v in doc["vertices"] for x in v["coords"])
    again = _run(tmp_path, "curve", "--seed", "3", stdin=C4_TEXT)
    assert again.stdout == r.stdout


def test_trace_genus_command(tmp_path):
    r = _run(tmp_path, "trace-genus", "--edges", "1-2,2-3,3-4,1-4", "1", "2", "3")
    assert r.returncode == 0
    assert "circle (genus 0)" in r.stdout
    r = _run(tmp_path, "trace-genus", "--edges", "1-2,2-3,3-4,1-4,3-5,4-5", "--fixed", "1", "2", "--vertex", "5")
    assert "curve (genus 1)" in r.stdout


def test_trace_relabel():
    g, vmap = relabel_for_trace(c4(), 3, 4)
    assert g.one_based_edges()[0] == (1, 2)
    assert vmap[2] == 0 and vmap[3] == 1
    out = io.StringIO()
    run(RunConfig("trace-genus", edges="1-2,2-3,3-4,1-4", trace=(3, 4, 1)), stdout=out)
    assert out.getvalue().strip() == "circle (genus 0)"


def test_plot_writes_svg(tmp_path):
    for proj in (None, "pca", "random", "1,3"):
        out = tmp_path / f"c4_{proj}.svg"
        argv = ["plot", "--out", str(out)] + (["--project", proj] if proj else [])
        r = _run(tmp_path, *argv, stdin=C4_TEXT)
        assert r.returncode == 0, r.stderr
        text = out.read_text()
        assert text.lstrip().startswith("<?xml") and "<svg" in text
        assert "genus: 1" in r.stdout


@pytest.mark.parametrize("make", [c4, lambda: k2m(3), lambda: k2m(4)])
def test_document_round_trip(make):
    g = make()
    rep = compute_genus(g, SeedConfig(rng_seed=9))
    text = dumps_document(curve_document(g, rep))
    g2, w2, curve = load_curve_document(text)
    assert g2 == g and w2 == rep.weights
    assert curve.vertices == rep.curve.vertices
    assert curve.bounded_edges == rep.curve.bounded_edges
    assert curve.rays == rep.curve.rays
    assert check_document(text) == []
    assert dumps_document(curve_document(g2, rep)) == text


def test_document_check_catches_tampering():
    g = c4()
    doc = curve_document(g, compute_genus(g))
    doc["genus"] = 2
    doc["vertices"][0]["coords"][1] = "7/1"
    problems = check_document(doc)
    assert any("not on the curve" in p for p in problems)
    assert any("genus 2" in p for p in problems)


def test_main_in_process(capsys):
    assert main(["genus", "--edges", "1-2,2-3,3-4,1-4"]) == 0
    assert "genus: 1" in capsys.readouterr().out
