import json

import pytest

from hullcover import cli


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


def run(args):
    return cli.main([str(a) for a in args])


def load(path):
    return json.loads(path.read_text())


@pytest.fixture
def vec_spec(tmp_path):
    return write_json(tmp_path / "vec.json", {"kind": "vector_fp", "p": 2, "dim": 2})


@pytest.fixture
def intsub_spec(tmp_path):
    return write_json(tmp_path / "intsub.json", {"kind": "integer_subgroup", "window": 5})


# --- partition -----------------------------------------------------------------


def test_partition_vector_fp(tmp_path, vec_spec):
    out = tmp_path / "part.json"
    assert run(["partition", vec_spec, "--out", out]) == 0
    doc = load(out)
    assert doc["manifest"]["subcommand"] == "partition"
    classes = doc["partition"]["classes"]
    assert [c["labels"] for c in classes] == [["(0,1)", "(1,0)"], ["(1,1)"]]
    assert doc["partition"]["verification"]["ok"]
    assert all(c["independent"] for c in classes)


def test_partition_complete_graph(tmp_path):
    spec = write_json(tmp_path / "k4.json", {"kind": "graphic", "complete": 4})
    out = tmp_path / "part.json"
    assert run(["partition", spec, "--out", out]) == 0
    doc = load(out)
    assert [len(c["elements"]) for c in doc["partition"]["classes"]] == [3, 2, 1]


def test_partition_subgroup_window_reflects_verification(tmp_path, intsub_spec):
    out = tmp_path / "part.json"
    # default greedy basis gives singleton classes, which all certify
    assert run(["partition", intsub_spec, "--out", out]) == 0
    # a spanning but dependent-class-producing basis fails certification
    out2 = tmp_path / "part2.json"
    assert run(["partition", intsub_spec, "--basis", "3,5", "--out", out2]) == 3
    doc = load(out2)
    assert not doc["partition"]["verification"]["ok"]
    assert not doc["manifest"]["verdicts"]["all_certificates_pass"]


def test_partition_rejects_dependent_basis(tmp_path):
    spec = write_json(tmp_path / "k3.json", {"kind": "graphic", "complete": 3})
    assert run(["partition", spec, "--basis", "0,1,2", "--out", tmp_path / "x.json"]) == 2


# --- check-axioms ----------------------------------------------------------------


def test_check_axioms_reports_exchange_witness(tmp_path, intsub_spec):
    out = tmp_path / "ax.json"
    assert run(["check-axioms", intsub_spec, "--out", out]) == 3
    doc = load(out)
    by_axiom = {r["axiom"]: r for r in doc["axioms"]["reports"]}
    assert by_axiom["hull-operator"]["verdict"] == "holds-on-budget"
    assert by_axiom["idempotent"]["verdict"] == "holds-on-budget"
    exchange = by_axiom["exchange"]
    assert exchange["verdict"] == "violated"
    assert exchange["witness"]["A"] == []
    assert exchange["witness"]["x_label"] == "2"
    assert exchange["witness"]["y_label"] == "1"
    assert exchange["witness_reverified"] is True


def test_check_axioms_passes_on_matroids(tmp_path, vec_spec):
    out = tmp_path / "ax.json"
    assert run(["check-axioms", vec_spec, "--budget", "exhaustive:2", "--out", out]) == 0
    assert load(out)["axioms"]["all_hold"]


def test_check_axioms_sampled_budget(tmp_path, vec_spec):
    out = tmp_path / "ax.json"
    assert run(
        ["check-axioms", vec_spec, "--budget", "sampled:50", "--seed", "9", "--out", out]
    ) == 0
    doc = load(out)
    assert doc["manifest"]["parameters"]["budget"]["seed"] == 9
    assert "sampled(seed=9" in doc["axioms"]["reports"][0]["budget"]


# --- rectangle ----------------------------------------------------------------------


def test_rectangle_from_formula(tmp_path):
    coloring = write_json(
        tmp_path / "col.json", {"x_size": 3, "y_size": 6, "colors": 2, "formula": "mod"}
    )
    out = tmp_path / "rect.json"
    assert run(["rectangle", coloring, "--size", "2", "--out", out]) == 0
    doc = load(out)
    assert doc["rectangle"]["A"] == [0, 2]
    assert doc["rectangle"]["Z"] == [0, 2, 4]
    assert doc["rectangle"]["verified"]


def test_rectangle_from_table(tmp_path):
    coloring = write_json(
        tmp_path / "col.json", {"colors": 2, "table": [[0, 0, 1], [0, 0, 1], [1, 1, 0]]}
    )
    out = tmp_path / "rect.json"
    assert run(["rectangle", coloring, "--size", "2", "--out", out]) == 0
    doc = load(out)
    assert doc["rectangle"]["A"] == [0, 1]
    assert doc["rectangle"]["Z"] == [0, 1]


def test_rectangle_premise_error_exits_2(tmp_path):
    coloring = write_json(
        tmp_path / "col.json", {"x_size": 2, "y_size": 5, "colors": 2, "formula": "constant"}
    )
    assert run(["rectangle", coloring, "--size", "2", "--out", tmp_path / "x.json"]) == 2


# --- quad ---------------------------------------------------------------------------


def test_quad_constant_on_z101(tmp_path):
    group = write_json(tmp_path / "g.json", {"cyclic": 101})
    out = tmp_path / "quad.json"
    assert run(["quad", group, "--colors", "1", "--out", out]) == 0
    doc = load(out)
    assert doc["quad"]["element_labels"] == ["4", "5", "6", "7"]
    assert doc["quad"]["relation_verified"]


def test_quad_seeded_on_tuple_group(tmp_path):
    group = write_json(tmp_path / "g.json", {"orders": [3, 11]})
    out = tmp_path / "quad.json"
    assert (
        run(["quad", group, "--colors", "2", "--formula", "seeded-uniform", "--seed", "4", "--out", out])
        == 0
    )
    doc = load(out)
    assert doc["manifest"]["parameters"]["coloring"]["seed"] == 4
    assert doc["quad"]["distinct"] and doc["quad"]["monochrome"]


def test_quad_premise_error_exits_2(tmp_path):
    group = write_json(tmp_path / "g.json", {"cyclic": 8})
    assert run(["quad", group, "--colors", "1", "--out", tmp_path / "x.json"]) == 2


# --- prefix-color and group -----------------------------------------------------------


def test_prefix_color_with_verification(tmp_path):
    out = tmp_path / "pc.json"
    assert run(["prefix-color", 2, "--verify", "--out", out]) == 0
    doc = load(out)
    assert doc["prefix_coloring"]["vertices"] == 4
    assert doc["prefix_coloring"]["colors"] == 2
    assert doc["prefix_coloring"]["odd_cycle_check"]["ok"]
    assert len(doc["prefix_coloring"]["edges"]) == 6


def test_group_torsion(tmp_path):
    out = tmp_path / "t.json"
    assert run(["group", "torsion", "--orders", "2,4", "--n", "2", "--out", out]) == 0
    assert load(out)["torsion"]["elements"] == [[0, 0], [0, 2], [1, 0], [1, 2]]


def test_group_decompose(tmp_path):
    out = tmp_path / "d.json"
    assert run(["group", "decompose", "--orders", "6", "--out", out]) == 0
    doc = load(out)
    assert doc["decomposition"]["direct_sum_verified"]
    assert doc["decomposition"]["sizes"] == {"2": 2, "3": 3}


def test_group_independence(tmp_path):
    out = tmp_path / "i.json"
    assert run(["group", "independence", "--orders", "4", "--elements", "1;3", "--out", out]) == 0
    doc = load(out)
    assert doc["independence"]["independent"] is False
    assert doc["independence"]["hull_route_agrees"]

    out2 = tmp_path / "i2.json"
    assert (
        run(["group", "independence", "--orders", "2,3", "--elements", "1,0;0,1", "--out", out2])
        == 0
    )
    assert load(out2)["independence"]["independent"] is True


def test_group_argument_validation(tmp_path):
    assert run(["group", "torsion", "--orders", "4", "--out", tmp_path / "x.json"]) == 2
    assert run(["group", "independence", "--orders", "4", "--out", tmp_path / "x.json"]) == 2


# --- manifests and determinism ----------------------------------------------------------


def test_parse_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert run(["partition", bad, "--out", tmp_path / "x.json"]) == 2
    unknown = write_json(tmp_path / "unknown.json", {"kind": "banana"})
    assert run(["partition", unknown, "--out", tmp_path / "y.json"]) == 2
    missing = write_json(tmp_path / "missing.json", {"kind": "vector_fp"})
    assert run(["partition", missing, "--out", tmp_path / "z.json"]) == 2


GOLDEN_RUNS = [
    (["partition", "SPEC:vector"], {"kind": "vector_fp", "p": 2, "dim": 2}),
    (["check-axioms", "SPEC:intsub"], {"kind": "integer_subgroup", "window": 5}),
    (["rectangle", "SPEC:mod", "--size", "2"], {"x_size": 3, "y_size": 6, "colors": 2, "formula": "mod"}),
    (["quad", "SPEC:group", "--colors", "1"], {"cyclic": 101}),
    (["prefix-color", "2", "--verify"], None),
    (["group", "independence", "--orders", "4", "--elements", "1;3"], None),
]


@pytest.mark.parametrize("template,spec", GOLDEN_RUNS, ids=lambda t: t[0] if isinstance(t, list) else "")
def test_golden_outputs_are_reproducible(tmp_path, template, spec):
    args = list(template)
    if spec is not None:
        args[1] = write_json(tmp_path / "input.json", spec)
    first, second, third = (tmp_path / n for n in ("a.json", "b.json", "c.json"))

    code = run(args + ["--out", first])
    assert code in (0, 3)
    assert run(args + ["--out", second]) == code
    assert first.read_bytes() == second.read_bytes()

    # re-running the embedded manifest reproduces the document byte for byte
    assert run(["rerun", first, "--out", third]) == code
    assert first.read_bytes() == third.read_bytes()


def test_rerun_rejects_foreign_documents(tmp_path):
    bad = write_json(tmp_path / "m.json", {"manifest": {"subcommand": "nope", "parameters": {}}})
    assert run(["rerun", bad, "--out", tmp_path / "x.json"]) == 2
    empty = write_json(tmp_path / "n.json", {"some": "thing"})
    assert run(["rerun", empty, "--out", tmp_path / "y.json"]) == 2


def test_stdout_output_when_no_out_given(capsys, tmp_path):
    spec = write_json(tmp_path / "vec.json", {"kind": "vector_fp", "p": 2, "dim": 2})
    assert run(["partition", spec]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "manifest" in payload and "partition" in payload
