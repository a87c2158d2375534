import json

import pytest

from sepexp.cli import main
from sepexp.expanders import expander_separator_experiment, random_regular
from sepexp.graph import (graph_stats, k1t_graph, parse_edge_list, petersen_graph,
                          strong_product_cube, write_edge_list)
from sepexp.minors import nabla_brute


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, G in [("pet", petersen_graph()), ("k3", k1t_graph(3)), ("r3", strong_product_cube(3))]:
        p = tmp_path / f"{name}.el"
        p.write_text(write_edge_list(G))
        paths[name] = str(p)
    return paths


def test_gen_grid3(tmp_path, capsys):
    out = tmp_path / "r4.el"
    assert run(capsys, "gen", "grid3", "--n", 4, "-o", out)[0] == 0
    G = parse_edge_list(out.read_text())
    assert graph_stats(G).n == 64 and G == strong_product_cube(4)


def test_pack_grid(tmp_path, capsys):
    out = tmp_path / "pack.json"
    assert run(capsys, "pack", "grid", "--n", 4, "--eps", 1, "-o", out)[0] == 0
    doc = json.loads(out.read_text())
    assert doc["thickness"] == 1.0 and doc["bound"] == 8
    assert set(doc) == {"entries", "meta", "thickness", "thickness_exact", "bound"}
    assert set(doc["entries"][0]) == {"set", "weight"}


def test_expander_verify(capsys):
    code, out, _ = run(capsys, "expander-verify", "--n", 8, "--m", 1, "--seed", 3)
    header, row = out.strip().splitlines()
    assert code == 0 and header == "n,d,alpha,m,n_prime,separator_found,bound"
    fields = dict(zip(header.split(","), row.split(",")))
    assert int(fields["separator_found"]) >= float(fields["bound"])
    assert row == expander_separator_experiment(8, 1, 3).csv_row()


def test_exit_codes(capsys, files):
    code, _, err = run(capsys, "separate", "exact", "--input", files["r3"])
    assert code == 0
    code, _, err = run(capsys, "separate", "exact", "--input", files["r3"], "--limit", 20)
    assert code == 3 and json.loads(err)["error"] == "refusal"
    code, _, err = run(capsys, "gen", "regular", "--n", 8)
    assert code == 2 and json.loads(err)["error"] == "argument"
    code, _, err = run(capsys, "separate", "exact", "--input", "/nonexistent.el")
    assert code == 2
    code, _, _ = run(capsys, "nabla", "brute", "--input", files["r3"], "--k", 0)
    assert code == 3


def test_randomized_commands_require_seed(capsys, files):
    assert run(capsys, "densify", "--input", files["pet"], "--t", 2, "--eps", ".5")[0] == 2
    assert run(capsys, "pack", "iterated", "--input", files["pet"], "--eps", 1,
               "--delta", ".5", "--iota", ".25", "--mode", "sample")[0] == 2


def test_thin_wrappers(capsys, files):
    code, out, _ = run(capsys, "gen", "regular", "--n", 10, "--seed", 4)
    assert parse_edge_list(out) == random_regular(10, 3, 4)
    code, out, _ = run(capsys, "nabla", "brute", "--input", files["pet"], "--k", 1)
    assert json.loads(out)["density"] == str(nabla_brute(petersen_graph(), 1).density)


def test_report_schemas(capsys, files):
    schemas = {
        ("separate", "heuristic", "--input", files["pet"]):
            {"side_a", "side_b", "size", "balanced", "separator"},
        ("decompose", "--input", files["pet"], "--tw-budget", 0): {"nodes", "root", "report"},
        ("ptas", "--input", files["pet"], "--eps", "1/2"): {"vertices", "size", "support_index"},
        ("subgraph", "--input", files["pet"], "--pattern", files["k3"]): {"contains"},
        ("nabla", "greedy", "--input", files["pet"], "--k", 1):
            {"k", "vertices", "edges", "density", "certificate"},
        ("shallow-clique", "--input", files["pet"], "--eps", 1, "--seed", 1): {"m", "t", "d", "outcome"},
        ("params", "iter3", "--k", 16, "--delta", "3/4"): {"eps", "m", "t", "in_regime"},
        ("params", "expansion-bound", "--k", 0, "--g-power", 1): {"k", "f", "g_const", "g_power"},
        ("params", "split-constants", "--c", 1, "--delta", ".5", "--iota", ".25", "--max-deg", 3):
            {"c1", "c2", "c2prime", "c3", "c4", "c5", "b", "delta", "iota", "max_deg", "log_c5", "log_b"},
        ("pack", "layered", "--input", files["pet"], "--tw-budget", 0, "--k", 2):
            {"entries", "meta", "thickness", "thickness_exact", "bound"},
        ("pack", "iterated", "--input", files["pet"], "--eps", 1, "--delta", ".5", "--iota", ".25"):
            {"entries", "meta", "thickness", "thickness_exact", "bound"},
    }
    for argv, keys in schemas.items():
        code, out, err = run(capsys, *argv)
        assert code == 0, (argv, err)
        assert set(json.loads(out)) == keys, argv
        # same inputs, same bytes
        assert run(capsys, *argv)[1] == out


OUTCOME_KEYS = {
    "dense": {"kind", "diagnostics", "certificate", "model"},
    "clique": {"kind", "diagnostics", "certificate", "t"},
    "failed": {"kind", "diagnostics", "stage"},
}


@pytest.mark.parametrize("c", [".01", "1"])
def test_densify_schema(capsys, files, c):
    argv = ("densify", "--input", files["pet"], "--t", 2, "--eps", ".1", "--c", c, "--seed", 1)
    code, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    assert code == 0 and set(doc) == OUTCOME_KEYS[doc["kind"]]
    assert run(capsys, *argv)[1] == out


def test_params_values(capsys):
    doc = json.loads(run(capsys, "params", "iter3", "--k", 16, "--delta", "3/4")[1])
    assert (doc["m"], doc["t"]) == (72, 3)
    doc = json.loads(run(capsys, "params", "expansion-bound", "--k", 0, "--g-power", 1)[1])
    assert doc["f"] == 8


def test_profile_csv(capsys, files):
    code, out, _ = run(capsys, "profile", "--input", files["pet"], "--K", 2, "--method", "brute")
    lines = out.strip().splitlines()
    assert lines[0] == "k,nabla,reference" and len(lines) == 4
    assert lines[1].split(",")[1] == "1.5" and lines[2].split(",")[1] == "2.0"


def test_gen_other_kinds(tmp_path, capsys, files):
    code, out, _ = run(capsys, "gen", "k1t", "--t", 4)
    assert parse_edge_list(out) == k1t_graph(4)
    code, out, _ = run(capsys, "gen", "subdivide", "--input", files["pet"], "--reps", 2)
    assert parse_edge_list(out).n == 10 + 30
