"""Command-line interface: outputs, exit codes, determinism."""

import json

import pytest

from topokit.cli import main
from topokit.datasets import data_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestHomologyCommand:
    def test_two_component_complex(self, capsys):
        doc = run_json(
            capsys, "homology", str(data_path("facets_two_components.txt"))
        )
        assert doc["betti"] == [2, 1, 0]
        assert doc["z_dims"] == [5, 2, 0]
        assert doc["b_dims"] == [3, 1, 0]

    def test_three_component_complex(self, capsys):
        doc = run_json(
            capsys, "homology", str(data_path("facets_three_components.txt"))
        )
        assert doc["betti"][:2] == [3, 1]

    def test_rational_field_flag(self, capsys):
        doc = run_json(
            capsys,
            "homology",
            str(data_path("facets_two_components.txt")),
            "--field",
            "q",
        )
        assert doc["betti"] == [2, 1, 0]

    def test_empty_file_is_parse_error(self, capsys, tmp_path):
        empty = tmp_path / "empty.txt"
        empty.write_text("", encoding="utf-8")
        code, _, err = run(capsys, "homology", str(empty))
        assert code == 2

    def test_missing_file_is_invalid_argument(self, capsys):
        code, _, _ = run(capsys, "homology", "/nonexistent/file.txt")
        assert code == 3


class TestDowkerCommand:
    def test_whole_relation_profile(self, capsys):
        code, out, err = run(
            capsys, "dowker", str(data_path("relation_two_components.csv"))
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "start_label,beta0,beta1,beta2,chi,chi_truncated"
        assert lines[1].startswith("1,2,1,0,")

    def test_windowed_code_profile(self, capsys):
        code, out, _ = run(
            capsys,
            "dowker",
            str(data_path("code_naive3x3_compiled.sl")),
            "--window",
            "8",
        )
        assert code == 0
        assert len(out.strip().splitlines()) == 1 + (45 - 8 + 1)

    def test_window_zero_is_invalid_argument(self, capsys):
        code, _, _ = run(
            capsys,
            "dowker",
            str(data_path("code_naive2x2.sl")),
            "--window",
            "0",
        )
        assert code == 3

    def test_bad_code_is_parse_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.sl"
        bad.write_text("x = \n", encoding="utf-8")
        code, _, err = run(capsys, "dowker", str(bad))
        assert code == 2


class TestPathCommand:
    def test_bundled_digraphs(self, capsys):
        doc1 = run_json(capsys, "path", str(data_path("digraph_split_square.edges")))
        doc2 = run_json(capsys, "path", str(data_path("digraph_diamond.edges")))
        assert doc1["betti"][1] == 1
        assert doc2["betti"][1] == 0
        assert doc2["omega_dims"] == [4, 4, 1]
        assert doc1["cyclomatic"] == 1

    def test_reduced_connected(self, capsys):
        doc = run_json(
            capsys,
            "path",
            str(data_path("digraph_diamond.edges")),
            "--reduced",
        )
        assert doc["reduced"][0] == 0
        assert doc["betti"] == doc["reduced"]

    def test_malformed_edge_line(self, capsys, tmp_path):
        bad = tmp_path / "bad.edges"
        bad.write_text("a b\nance is one field\n", encoding="utf-8")
        code, _, err = run(capsys, "path", str(bad))
        assert code == 2
        assert "line 2" in err

    def test_max_p_range(self, capsys):
        code, _, _ = run(
            capsys, "path", str(data_path("digraph_diamond.edges")), "--max-p", "9"
        )
        assert code == 3


class TestNetworkCommand:
    def test_sections_on_path3(self, capsys):
        doc = run_json(
            capsys, "network", str(data_path("network_path3.json")), "--sections"
        )
        assert doc["sections"]["count"] == 4
        assert doc["sections"]["transmitting_sets"] == [[], ["1"], ["2"], ["3"]]

    def test_cohomology_first_dim_is_node_count(self, capsys):
        doc = run_json(
            capsys,
            "network",
            str(data_path("network_dumbbell.json")),
            "--cohomology",
        )
        assert doc["cohomology"][0] == doc["nodes"] == 9
        assert all(d == 0 for d in doc["cohomology"][1:])

    def test_lh_table(self, capsys):
        doc = run_json(
            capsys,
            "network",
            str(data_path("network_dumbbell.json")),
            "--lh",
            "1",
        )
        rows = {tuple(r["simplex"]): r["lh"]["1"] for r in doc["lh"]["rows"]}
        assert rows[("m",)] == 1

    def test_interference_complex_choice(self, capsys):
        doc = run_json(
            capsys,
            "network",
            str(data_path("network_path3.json")),
            "--complex",
            "interference",
        )
        assert doc["complex"] == "interference"

    def test_bad_json_is_parse_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope}", encoding="utf-8")
        code, _, _ = run(capsys, "network", str(bad))
        assert code == 2

    def test_negative_traffic_is_invalid_argument(self, capsys):
        code, _, _ = run(
            capsys,
            "network",
            str(data_path("network_path3.json")),
            "--traffic",
            "-5",
        )
        assert code == 3


class TestTmeCommand:
    def test_bundled_bimodal(self, capsys, tmp_path):
        csv_out = tmp_path / "dec.csv"
        code, out, err = run(
            capsys,
            "tme",
            str(data_path("samples_bimodal.csv")),
            "--bandwidths",
            "24",
            "--bins",
            "256",
            "--csv",
            str(csv_out),
        )
        assert code == 0, err
        doc = json.loads(out)
        assert doc["modal_ucat"] == 2
        header = csv_out.read_text(encoding="utf-8").splitlines()[0]
        assert header == "x,f,component_1,component_2"

    def test_too_few_samples(self, capsys, tmp_path):
        p = tmp_path / "one.txt"
        p.write_text("1.0\n", encoding="utf-8")
        code, _, _ = run(capsys, "tme", str(p))
        assert code == 3

    def test_bad_sample_is_parse_error(self, capsys, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("1.0\nbroken\n", encoding="utf-8")
        code, _, _ = run(capsys, "tme", str(p))
        assert code == 2


class TestDeterminism:
    CASES = [
        ("homology", "facets_two_components.txt", []),
        ("dowker", "code_naive2x2_compiled.sl", ["--window", "4"]),
        ("path", "digraph_split_square.edges", ["--reduced"]),
        (
            "network",
            "network_path3.json",
            ["--sections", "--cohomology", "--lh", "1", "--traffic", "500", "--seed", "7"],
        ),
        ("tme", "samples_bimodal.csv", ["--bandwidths", "12", "--bins", "128"]),
    ]

    @pytest.mark.parametrize("command,fixture,extra", CASES)
    def test_identical_runs_are_byte_identical(
        self, tmp_path, command, fixture, extra
    ):
        outs = []
        for i in range(2):
            out = tmp_path / f"out{i}"
            argv = [command, str(data_path(fixture)), *extra, "--output", str(out)]
            assert main(argv) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0


def test_unknown_command_is_invalid_argument(capsys):
    assert main(["frobnicate"]) == 3
