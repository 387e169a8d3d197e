import io
import json
import subprocess
import sys

import pydot
import pytest

from helpers import CIRCUITS, GOLDEN
from qkont.cli import EXIT_IO, EXIT_LIMIT, EXIT_PARSE, EXIT_VALIDATION, main, render_text


def run(argv, stdin=None, monkeypatch=None):
    """Invoke the CLI in-process and return (exit code, stdout)."""
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv, out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("name", ["bell", "hxh", "simon"])
@pytest.mark.parametrize("collector", ["list", "hash"])
def test_golden_text(name, collector):
    code, text = run(["run", "--collector", collector, str(CIRCUITS / f"{name}.qc")])
    assert code == 0
    assert text.encode() == (GOLDEN / f"{name}.{collector}.txt").read_bytes()


def test_hash_simon_with_init():
    code, text = run(["run", "--collector", "hash", "--init", "0000", str(CIRCUITS / "simon.qc")])
    assert code == 0
    assert text.splitlines() == ["(+0.50|0000⟩)", "(+0.50|1100⟩)", "(+0.50|0011⟩)", "(-0.50|1111⟩)"]


def test_width_mismatch(capsys):
    code, _ = run(["run", "--collector", "hash", "--init", "000", str(CIRCUITS / "simon.qc")])
    assert code == EXIT_VALIDATION
    assert "4 qubits" in capsys.readouterr().err


def test_error_codes(tmp_path):
    bad = tmp_path / "bad.qc"
    bad.write_text("qubits 2\nfoo 1\n")
    assert run(["run", str(bad)])[0] == EXIT_PARSE
    bad.write_text("qubits 2\ncx 0 5\n")
    assert run(["run", str(bad)])[0] == EXIT_VALIDATION
    assert run(["run", str(tmp_path / "missing.qc")])[0] == EXIT_IO
    assert run(["tree", "--max-h", "3", str(CIRCUITS / "simon.qc")])[0] == EXIT_LIMIT
    assert len({EXIT_PARSE, EXIT_VALIDATION, EXIT_LIMIT, EXIT_IO, 0}) == 5


def test_ascii():
    _, text = run(["run", "--ascii", "--collector", "hash", str(CIRCUITS / "hxh.qc")])
    assert text == "(+1.00|0>)\n"


def test_stdin(monkeypatch):
    code, text = run(["run", "--collector", "hash", "-"], stdin="qubits 1\nh 0\nx 0\nh 0\n", monkeypatch=monkeypatch)
    assert code == 0 and text == "(+1.00|0⟩)\n"


@pytest.mark.parametrize("collector", ["list", "hash", "prob", "dense"])
def test_json_round_trip(collector):
    path = str(CIRCUITS / "simon.qc")
    _, js = run(["run", "--collector", collector, "--format", "json", path])
    _, text = run(["run", "--collector", collector, path])
    entries = json.loads(js)
    assert render_text(entries) == text
    if collector in ("list", "hash"):
        assert {"state", "amplitude", "numerator", "half_exp"} <= entries[0].keys()


def test_dense_matches_hash_text():
    path = str(CIRCUITS / "simon.qc")
    _, dense = run(["run", "--collector", "dense", path])
    _, hashed = run(["run", "--collector", "hash", path])
    assert sorted(dense.splitlines()) == sorted(hashed.splitlines())


def test_prob_run_shape():
    _, text = run(["run", "--collector", "prob", str(CIRCUITS / "simon.qc")])
    lines = text.splitlines()
    assert len(lines) == 16
    assert all(l[1:6] in ("+0.25", "-0.25") for l in lines)


def parse_dot(text):
    graphs = pydot.graph_from_dot_data(text)
    assert graphs and len(graphs) == 1
    return graphs[0]


def test_tree_simon():
    code, text = run(["tree", str(CIRCUITS / "simon.qc")])
    assert code == 0
    g = parse_dot(text)
    leaves = [n for n in g.get_nodes() if n.get("leaf") == "true"]
    assert len(leaves) == 16
    pairs = [e.get("pair") for e in g.get_edges() if e.get("pair")]
    assert pairs.count("annihilate") == 4 and pairs.count("reinforce") == 4


def test_tree_one_h(tmp_path):
    f = tmp_path / "h.qc"
    f.write_text("qubits 1\nh 0\n")
    _, text = run(["tree", str(f)])
    g = parse_dot(text)
    nodes = [n for n in g.get_nodes() if n.get_name() not in ("node", "edge", "graph")]
    assert len(nodes) == 3
    assert [e.get("label") for e in g.get_edges()] == ['"+0.7071067811865475"'] * 2


def test_tree_leaves_match_list():
    from qkont.circuit import parse_circuit
    from qkont.interpreter import run_list, trace_tree
    from qkont.amplitudes import format_amplitude

    circ = parse_circuit((CIRCUITS / "simon.qc").read_text())
    _, text = run(["tree", str(CIRCUITS / "simon.qc")])
    g = parse_dot(text)
    incoming = {e.get_destination(): e.get("label").strip('"') for e in g.get_edges() if not e.get("pair")}
    leaves = [n for n in g.get_nodes() if n.get("leaf") == "true"]
    leaves.sort(key=lambda n: int(n.get_name()[1:]))
    got = [(incoming[n.get_name()], n.get("label").strip('"').split(" → ")[-1]) for n in leaves]
    expected = [(format_amplitude(w.amp), "|" + "".join(map(str, w.state)) + "⟩") for w in run_list(circ, (0, 0, 0, 0))]
    assert got == expected


def test_measure_simon():
    code, text = run(["measure", "--qubits", "0,1", str(CIRCUITS / "simon.qc")])
    assert code == 0
    assert text == "qubits 0,1\n00 1/2\n11 1/2\n"


def test_measure_bell_shots():
    args = ["measure", "--qubits", "0,1", "--shots", "10000", "--seed", "42", str(CIRCUITS / "bell.qc")]
    _, text = run(args)
    lines = text.splitlines()
    assert lines[3] == "shots 10000 seed 42"
    counts = {l.split()[0]: int(l.split()[1]) for l in lines[4:]}
    assert sum(counts.values()) == 10000
    assert run(args)[1] == text
    _, js = run(args + ["--format", "json"])
    assert json.loads(js)["counts"] == counts


def test_measure_deterministic(tmp_path):
    f = tmp_path / "x.qc"
    f.write_text("qubits 2\nx 1\n")
    _, text = run(["measure", str(f)])
    assert text == "qubits 0,1\n01 1\n"


def test_measure_bad_qubit():
    assert run(["measure", "--qubits", "7", str(CIRCUITS / "bell.qc")])[0] == EXIT_VALIDATION


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "qkont", "run", "--collector", "hash", str(CIRCUITS / "hxh.qc")],
        capture_output=True, text=True, encoding="utf-8",
    )
    assert r.returncode == 0 and r.stdout == "(+1.00|0⟩)\n"
