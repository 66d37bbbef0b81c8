import json

import pytest

from conftest import a_n_text
from stringcoh.cli import main
from stringcoh.generate import generate_dsl


@pytest.fixture
def a_file(tmp_path):
    def write(n):
        path = tmp_path / f"two_lane_{n}.quiver"
        path.write_text(a_n_text(n))
        return str(path)

    return write


def test_validate_ok(a_file, capsys):
    assert main(["validate", a_file(3)]) == 0
    out = capsys.readouterr().out
    assert "S2: ok" in out


def test_validate_failure_exit_code_names_arrow(tmp_path, capsys):
    bad = tmp_path / "bad.quiver"
    bad.write_text("vertex 0 1 2\narrow a 0 1\narrow b 1 2\narrow c 1 2\n")
    assert main(["validate", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "S2: FAIL" in out and "a has surviving continuations" in out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.quiver"
    bad.write_text("vertex 0 1\narrow a 0 1\nrelation a\n")
    assert main(["validate", str(bad)]) == 2
    assert "line 3" in capsys.readouterr().err


def test_hh_line_two_parallel(a_file, capsys):
    assert main(["hh", a_file(1)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "HH: 1 3 0"


def test_hh_line_five_steps(a_file, capsys):
    assert main(["hh", a_file(5)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "HH: 1 5 0 0 0 2 0"


def test_hh_json_agrees(a_file, capsys):
    assert main(["hh", a_file(4), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["hh"]["dims"] == [1, 4, 0, 0, 0]
    assert payload["hh"]["agree"] is True
    assert all(row["agree"] for row in payload["hh"]["rows"])


def test_hh_methods(a_file, capsys):
    assert main(["hh", a_file(3), "--method", "formula"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "HH: 1 3 0 2 0"
    assert main(["hh", a_file(3), "--method", "matrix"]) == 0


def test_ap_listing(a_file, capsys):
    assert main(["ap", a_file(3)]) == 0
    out = capsys.readouterr().out
    assert "degree 2: 4 element(s)" in out
    assert "degree 3: 2 element(s)" in out
    assert "dual construction matches: True" in out


def test_ap_no_relations(a_file, capsys):
    assert main(["ap", a_file(1)]) == 0
    out = capsys.readouterr().out
    assert "degree 1: 2 element(s)" in out
    assert "degree 2" not in out


def test_cup_three_steps(a_file, capsys):
    assert main(["cup", a_file(3)]) == 0
    assert "all cup products vanish (pairs checked: 25)" in capsys.readouterr().out


def test_cup_tree_vacuous(tmp_path, capsys):
    path = tmp_path / "tree.quiver"
    path.write_text("vertex 0 1 2\narrow a 0 1\narrow b 1 2\nrelation a b\n")
    assert main(["cup", str(path)]) == 0
    assert "no positive-degree classes" in capsys.readouterr().out


def test_check_all_pass(a_file, capsys):
    assert main(["check", a_file(3)]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "cup-vanishing: ok" in out


def test_check_degenerate_degrees(a_file, capsys):
    assert main(["check", a_file(1)]) == 0


def test_check_stops_on_invalid_presentation(tmp_path, capsys):
    path = tmp_path / "nonminimal.quiver"
    path.write_text(
        "vertex 0 1 2 3\narrow a 0 1\narrow b 1 2\narrow c 2 3\n"
        "relation a b\nrelation a b c\n"
    )
    assert main(["check", str(path)]) == 1
    assert "minimal-generators" in capsys.readouterr().err


def test_check_reports_formula_lift_gap(tmp_path, capsys):
    """A presentation with a long relation and a live interior diagonal
    class makes the literal lift formula fail its audit; the check
    command reports it and exits with the violation code."""
    path = tmp_path / "gap.quiver"
    path.write_text(generate_dsl(88))
    assert main(["check", str(path)]) == 3
    out = capsys.readouterr().out
    assert "chain-maps: FAIL" in out
    assert "cup-vanishing: ok" in out


def test_hh_max_degree_truncates_but_stays_exact(a_file, capsys):
    assert main(["hh", a_file(5), "--max-degree", "1"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "HH: 1 5 0"


def test_ap_max_degree(a_file, capsys):
    assert main(["ap", a_file(5), "--max-degree", "2"]) == 0
    out = capsys.readouterr().out
    assert "degree 2: 8 element(s)" in out
    assert "degree 3" not in out


def test_gen_roundtrip(tmp_path, capsys):
    assert main(["gen", "--seed", "5"]) == 0
    text = capsys.readouterr().out
    path = tmp_path / "gen.quiver"
    path.write_text(text)
    assert main(["validate", str(path)]) == 0


def test_gen_deterministic(capsys):
    assert main(["gen", "--seed", "9"]) == 0
    first = capsys.readouterr().out
    assert main(["gen", "--seed", "9"]) == 0
    assert capsys.readouterr().out == first


def test_json_deterministic_modulo_timing(a_file, capsys):
    assert main(["hh", a_file(2), "--json"]) == 0
    one = json.loads(capsys.readouterr().out)
    assert main(["hh", a_file(2), "--json"]) == 0
    two = json.loads(capsys.readouterr().out)
    one.pop("elapsed_ms")
    two.pop("elapsed_ms")
    assert one == two


def test_json_roundtrip(a_file, capsys):
    assert main(["check", a_file(2), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert json.loads(json.dumps(payload)) == payload
    assert set(payload) >= {"presentation", "validation", "ap", "hh", "cup",
                            "properties"}
