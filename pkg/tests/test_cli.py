import json

import pytest

from cologic.cli import run
from cologic.fraisse import FraisseSequence
from cologic.graphs import linear_graph


@pytest.fixture()
def graphs(tmp_path):
    paths = {}
    for name, n in (("path1", 1), ("path2", 2), ("path3", 3)):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(linear_graph(n).to_json_dict()))
        paths[name] = str(path)
    return paths


def test_mc_true_exit_zero(graphs, capsys):
    code = run(
        [
            "mc",
            "--model",
            graphs["path3"],
            "--tuple",
            "[[0],[1],[2]]",
            "--formula",
            "graph{3; 0-1,1-2}",
        ]
    )
    assert code == 0
    assert "verdict: True" in capsys.readouterr().out


def test_mc_false_exit_one(graphs):
    assert (
        run(
            [
                "mc",
                "--model",
                graphs["path3"],
                "--tuple",
                "[[0],[2],[1]]",
                "--formula",
                "graph{3; 0-1,1-2}",
            ]
        )
        == 1
    )


def test_mc_defaults_to_singleton_tuple(graphs):
    assert run(["mc", "--model", graphs["path1"], "--formula", "!false@1"]) == 0


def test_mc_bad_formula_exit_two(graphs, capsys):
    assert run(["mc", "--model", graphs["path1"], "--formula", "false@"]) == 2
    assert "error" in capsys.readouterr().err


def test_mc_bad_model_file_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": 2, "edges": [[1, 0]]}')
    assert run(["mc", "--model", str(bad), "--formula", "!false@1"]) == 2
    err = capsys.readouterr().err
    assert "0 <= i < j" in err


def test_sat_search_finds_path2(capsys):
    code = run(["sat-search", "--formula", "some[0,0]. graph{2; 0-1}"])
    assert code == 0
    out = capsys.readouterr().out
    assert '"edges": [[0, 1]]' in out or "[0, 1]" in out


def test_sat_search_unsatisfiable_exit_one():
    assert run(["sat-search", "--formula", "false@1", "--max-vertices", "2"]) == 1


def test_ef_inequivalent_names_challenge(graphs, capsys):
    code = run(
        [
            "ef",
            "--model-a",
            graphs["path1"],
            "--model-b",
            graphs["path2"],
            "--depth",
            "1",
        ]
    )
    assert code == 1
    out = capsys.readouterr().out
    assert "losing challenge" in out
    assert "[0, 0]" in out


def test_ef_equivalent_exit_zero(graphs):
    assert (
        run(
            [
                "ef",
                "--model-a",
                graphs["path2"],
                "--model-b",
                graphs["path2"],
                "--depth",
                "2",
            ]
        )
        == 0
    )


def test_tv_check_trivial_partition(graphs):
    assert (
        run(
            [
                "tv-check",
                "--model",
                graphs["path2"],
                "--blocks",
                "[[0],[1]]",
                "--bound",
                "2",
            ]
        )
        == 0
    )


def test_tv_check_coarse_partition_fails(graphs, capsys):
    code = run(
        [
            "tv-check",
            "--model",
            graphs["path2"],
            "--blocks",
            "[[0,1]]",
            "--bound",
            "2",
        ]
    )
    assert code == 1
    assert "violation" in capsys.readouterr().out


def test_epi_check(graphs):
    assert (
        run(
            [
                "epi-check",
                "--map",
                "[0,1,0]",
                "--source",
                graphs["path3"],
                "--target",
                graphs["path2"],
            ]
        )
        == 0
    )
    assert (
        run(
            [
                "epi-check",
                "--map",
                "[0,0,0]",
                "--source",
                graphs["path3"],
                "--target",
                graphs["path2"],
            ]
        )
        == 1
    )


def test_patterns_command(capsys):
    assert run(["patterns", "3", "2"]) == 0
    out = capsys.readouterr().out
    assert "count: 6" in out


def test_amalgamate_command(capsys):
    assert run(["amalgamate", "--f", "[0,0,1]", "--g", "[0,1,1]"]) == 0
    assert "size" in capsys.readouterr().out


def test_amalgamate_bound_exhausted_exit_one():
    assert run(["amalgamate", "--f", "[0,0,1]", "--g", "[0,1,1]", "--bound", "2"]) == 1


def test_fraisse_build_and_audit(tmp_path, capsys):
    out_file = tmp_path / "seq.json"
    assert (
        run(["fraisse", "build", "--stages", "3", "--bound", "3", "--out", str(out_file)])
        == 0
    )
    capsys.readouterr()
    sequence = FraisseSequence.from_json_dict(json.loads(out_file.read_text()))
    assert len(sequence.stage_sizes) == 3
    assert (
        run(["fraisse", "audit", str(out_file), "--stage", "0", "--bound", "3"]) == 0
    )
    out = capsys.readouterr().out
    assert "discharged" in out


def test_gn_command(capsys):
    assert run(["gn", "1"]) == 0
    assert '"vertices": 3' in capsys.readouterr().out
    assert run(["gn", "2", "--epi-to", "1"]) == 0


def test_verify_list_names_every_suite(capsys):
    assert run(["verify", "--list"]) == 0
    out = capsys.readouterr().out
    for name in (
        "contact-axioms",
        "duality",
        "refinement",
        "undo",
        "directed",
        "covering-walk",
        "pattern-epi",
        "amalgamation",
    ):
        assert name in out


def test_verify_unknown_suite_exit_two(capsys):
    assert run(["verify", "no-such-suite"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_verify_pattern_epi(capsys):
    assert run(["verify", "pattern-epi"]) == 0
    assert "0 violation" in capsys.readouterr().out or True


def test_reports_are_byte_identical(graphs, capsys):
    argv = [
        "--format",
        "json",
        "mc",
        "--model",
        graphs["path3"],
        "--tuple",
        "[[0],[1],[2]]",
        "--formula",
        "graph{3; 0-1,1-2}",
    ]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    second = capsys.readouterr().out
    assert first == second
    document = json.loads(first)
    assert document["verdict"] is True
    assert document["command"] == "mc"


def test_json_and_text_verdicts_agree(graphs, capsys):
    base = [
        "ef",
        "--model-a",
        graphs["path1"],
        "--model-b",
        graphs["path2"],
        "--depth",
        "1",
    ]
    run(base)
    text = capsys.readouterr().out
    run(["--format", "json"] + base)
    document = json.loads(capsys.readouterr().out)
    assert ("verdict: False" in text) and (document["verdict"] is False)


def test_chain_report_command(capsys):
    assert run(["chain-report", "--max-stage", "3"]) == 0
    assert "chain type report" in capsys.readouterr().out
