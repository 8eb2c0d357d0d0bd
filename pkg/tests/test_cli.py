import io
import json

import pytest

from advstd.cli import main
from advstd.figures import fig5_profile, fig7_graph, fishburn_profiles
from advstd.profiles import profile_to_json


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def fig5_file(tmp_path):
    path = tmp_path / "fig5.json"
    path.write_text(profile_to_json(fig5_profile()))
    return str(path)


def test_tally_ranked_pairs(fig5_file):
    code, text = run("tally", fig5_file, "--ccr", "ranked-pairs")
    assert code == 0
    assert "P: {aPb, bPc}" in text
    assert "advantage / standard:" in text


def test_tally_json(fig5_file):
    code, text = run("tally", fig5_file, "--ccr", "split-cycle", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["P"] == ["aPb", "bPc"]
    assert doc["edges"][0] == ["a", "b", "5"]


def test_tally_dot(fig5_file):
    code, text = run("tally", fig5_file, "--ccr", "majority", "--dot")
    assert code == 0 and "digraph" in text


def test_tally_graph_mode(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(fig7_graph().to_json())
    code, text = run("tally", str(path), "--ccr", "split-cycle", "--graph")
    assert code == 0 and "P: {aPc, cPb, dPb, dPc}" in text
    code, _ = run("tally", str(path), "--ccr", "dodgson", "--graph")
    assert code == 2


def test_tally_dodgson(tmp_path):
    path = tmp_path / "r.json"
    path.write_text(profile_to_json(fishburn_profiles()["R"]))
    code, text = run("tally", str(path), "--ccr", "dodgson")
    assert code == 0 and "xPz" in text and "x:3" in text and "z:4" in text


def test_tally_parse_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"candidates": ["a", "b"], "ballots": [{"count": 1, "ranking": [["a"]]}]}')
    assert run("tally", str(bad), "--ccr", "majority")[0] == 2
    weak = tmp_path / "weak.json"
    weak.write_text('{"candidates": ["a", "b"], "ballots": [{"count": 1, "ranking": [["a", "b"]]}]}')
    assert run("tally", str(weak), "--ccr", "dodgson")[0] == 2
    assert run("tally", str(tmp_path / "missing.json"), "--ccr", "majority")[0] == 2
    assert run("tally", str(weak), "--ccr", "borda")[0] == 2
    assert run("tally")[0] == 2


def test_axioms_exit_codes():
    code, text = run("axioms", "--ccr", "majority", "--X", "3", "--V", "2", "--axiom", "IIA")
    assert code == 0 and "ok   IIA" in text
    code, text = run("axioms", "--ccr", "copeland", "--X", "3", "--V", "2",
                     "--axiom", "weak-IIA", "--axiom", "orderability")
    assert code == 1 and "FAIL weak_IIA" in text and "ok   orderability" in text


def test_axioms_json_and_powers():
    code, text = run("axioms", "--ccr", "unanimity", "--X", "3", "--V", "2",
                     "--axiom", "transitivity", "--powers", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["power_holders"]["vetoer"] == [0, 1]


def test_axioms_bounds():
    assert run("axioms", "--ccr", "majority", "--X", "4", "--V", "6")[0] == 3
    assert run("axioms", "--ccr", "majority", "--X", "1", "--V", "2")[0] == 3
    assert run("axioms", "--ccr", "majority", "--X", "3", "--V", "2", "--axiom", "nope")[0] == 2


def test_rationalize(tmp_path):
    out = tmp_path / "r.json"
    code, text = run("rationalize", "--ccr", "split-cycle", "--X", "3", "--V", "2",
                     "--closed-form", "--measure", "ratio", "--output", str(out))
    assert code == 0 and "verification: holds" in text and out.exists()
    code, text = run("rationalize", "--ccr", "copeland", "--X", "3", "--V", "2")
    assert code == 1 and "weak_IIA" in text
    assert run("rationalize", "--ccr", "copeland", "--X", "3", "--V", "2", "--closed-form")[0] == 2


def test_search():
    code, text = run("search", "--ccr", "majority", "--axiom", "transitivity", "--X", "3", "--V", "3")
    # with ties allowed, two voters already break transitivity
    assert code == 0 and "at |X|=3, |V|=2" in text
    code, text = run("search", "--ccr", "majority", "--axiom", "IIA", "--X", "3", "--V", "2")
    assert code == 1


def test_figures(tmp_path):
    code, text = run("figures", "fig3")
    assert code == 0 and "P: {aPb}" in text
    assert run("figures", "list")[1].split() == ["fig1", "fig3", "fig4", "fig5", "fig6", "fig7",
                                                 "ex3.8", "ex3.9"]
    assert run("figures", "all", "--output-dir", str(tmp_path))[0] == 0
    assert len(list(tmp_path.glob("*.txt"))) == 8
    assert run("figures", "fig2")[0] == 4
