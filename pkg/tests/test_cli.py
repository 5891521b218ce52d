import json

import pytest

from flipcycles import serialize, subsets, triangulations
from flipcycles.cli import (
    EXIT_INCONCLUSIVE,
    EXIT_NOINPUT,
    EXIT_NONE,
    EXIT_OK,
    EXIT_PARITY,
    EXIT_USAGE,
    main,
)
from flipcycles.core import verify_rainbow


def run(argv):
    try:
        return main(argv)
    except SystemExit as exc:  # argparse usage errors
        return exc.code


def test_triang_rainbow_json_round_trip(tmp_path, capsys):
    out = tmp_path / "cycle.json"
    assert run(["triang", "rainbow", "--n", "6", "--r", "1", "--json", str(out)]) == EXIT_OK
    assert "verified" in capsys.readouterr().out
    cyc = serialize.loads(out.read_text())
    assert verify_rainbow(cyc).is_rainbow_r
    assert run(["verify", str(out)]) == EXIT_OK


def test_verify_rejects_tampered_cycle(tmp_path, capsys):
    out = tmp_path / "cycle.json"
    run(["triang", "rainbow", "--n", "6", "--json", str(out)])
    data = json.loads(out.read_text())
    data["states"][2], data["states"][4] = data["states"][4], data["states"][2]
    out.write_text(json.dumps(data))
    assert run(["verify", str(out)]) == EXIT_NONE
    assert "NOT rainbow" in capsys.readouterr().out


def test_verify_missing_file():
    assert run(["verify", "/nonexistent/cycle.json"]) == EXIT_NOINPUT


def test_perm_parity_refusal(capsys):
    assert run(["perm", "rainbow", "--n", "6"]) == EXIT_PARITY
    assert "refused" in capsys.readouterr().out
    assert run(["perm", "rainbow", "--n", "4"]) == EXIT_OK


def test_comb_even_refusal():
    assert run(["comb", "rainbow", "--n", "6", "--k", "2"]) == EXIT_PARITY
    assert run(["comb", "rainbow", "--n", "7", "--k", "2"]) == EXIT_OK


def test_match_search_exit_codes():
    assert run(["match", "search", "--m", "5"]) == EXIT_PARITY
    assert run(["match", "search", "--m", "6"]) == EXIT_NONE
    assert (
        run(["match", "search", "--m", "6", "--budget-nodes", "10"])
        == EXIT_INCONCLUSIVE
    )


def test_match_hm_report(capsys):
    assert run(["match", "hm", "--m", "6", "--classes", "--check-narayana"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "8 components over 132 matchings" in out
    assert "Narayana expression: True" in out


def test_dot_export_counts(tmp_path):
    out = tmp_path / "cycle.dot"
    assert run(["comb", "rainbow", "--n", "5", "--k", "2", "--dot", str(out)]) == EXIT_OK
    text = out.read_text()
    assert text.count("[label=\"{") == 10  # ten labeled arcs
    assert text.count("shape=box") == 1 and text.count(" -> ") == 10


def test_trees_cli_with_point_file(tmp_path):
    pts = tmp_path / "points.txt"
    pts.write_text("# square plus center\n0 0\n4 0\n4 4\n0 4\n1 2\n")
    assert run(["trees", "canon", "--points", str(pts)]) == EXIT_OK
    out = tmp_path / "cycle.json"
    assert run(["trees", "rainbow", "--points", str(pts), "--r", "3", "--json", str(out)]) == EXIT_OK
    cyc = serialize.loads(out.read_text())
    assert cyc.r == 3 and verify_rainbow(cyc).is_rainbow_r


def test_generic_search_command():
    assert run(["search", "--family", "perm", "--n", "3", "--r", "1"]) == EXIT_NONE
    assert run(["search", "--family", "comb", "--n", "5", "--k", "2", "--r", "1"]) == EXIT_OK


def test_usage_errors():
    assert run(["triang", "rainbow"]) == EXIT_USAGE  # missing --n
    assert run(["nosuchcommand"]) == EXIT_USAGE


def test_states_serialize_schema():
    state = triangulations.star(6, 1)
    doc = serialize.state_to_json("triangulation", {"n": 6}, state)
    assert doc == {"family": "triangulation", "n": 6, "state": [[1, 3], [1, 4], [1, 5]]}
    cyc = subsets.hamilton_k2(5)
    doc = serialize.cycle_to_json(cyc)
    assert doc["family"] == "ksubset" and doc["r"] == 1
    assert doc["states"][0] == [1, 5]
    assert all(len(step) == 1 and len(step[0]) == 2 for step in doc["labels"])
