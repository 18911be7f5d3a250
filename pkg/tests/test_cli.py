import json
import subprocess
import sys

import pytest

from structura.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


# -- realize -----------------------------------------------------------------


def test_realize_powerset_golden(capsys):
    rc, out, _ = run(capsys, "realize", "P(pr1)@1", "--set", "{0,1}")
    assert rc == 0
    assert out == "{{},{0},{1},{0,1}}\n"


def test_realize_empty_carrier(capsys):
    rc, out, _ = run(capsys, "realize", "pr1@1", "--set", "{}")
    assert rc == 0
    assert out == "{}\n"


def test_realize_count_does_not_materialize(capsys):
    rc, out, _ = run(capsys, "realize", "P(pr1*pr1)@1", "--set", "{0..3}", "--count")
    assert rc == 0
    assert out == "65536\n"


def test_realize_json(capsys):
    rc, out, _ = run(capsys, "realize", "P(pr1)@1", "--set", "{0}", "--json")
    assert rc == 0
    data = json.loads(out)
    assert data["type"] == "P(pr1) @1"
    assert data["count"] == 2
    assert data["elements"] == ["{}", "{0}"]


def test_realize_carrier_count_mismatch(capsys):
    rc, _, err = run(capsys, "realize", "pr1*pr2@2", "--set", "{0}")
    assert rc == 2
    assert "carriers" in err


def test_realize_parse_error(capsys):
    rc, _, err = run(capsys, "realize", "P(pr1", "--set", "{0}")
    assert rc == 2
    assert "line 1" in err


def test_realize_size_guard(capsys):
    rc, _, err = run(capsys, "realize", "P(P(pr1*pr1))@1", "--set", "{0..3}")
    assert rc == 3
    assert "error" in err


def test_max_cells_env_override(capsys, monkeypatch):
    monkeypatch.setenv("STRUCTURA_MAX_CELLS", "10")
    rc, _, _ = run(capsys, "realize", "P(pr1)@1", "--set", "{0,1,2,3,4}")
    assert rc == 3
    monkeypatch.setenv("STRUCTURA_MAX_CELLS", "not-a-number")
    rc, _, err = run(capsys, "realize", "P(pr1)@1", "--set", "{0}")
    assert rc == 2
    assert "STRUCTURA_MAX_CELLS" in err


# -- transport ---------------------------------------------------------------


def test_transport_element_golden(capsys):
    rc, out, _ = run(
        capsys, "transport", "--type", "pr1@1",
        "--set", "{{}}", "--map", "{({},{{}})}", "{}",
    )
    assert rc == 0
    assert out == "{{}}\n"


def test_transport_subset_golden(capsys):
    rc, out, _ = run(
        capsys, "transport", "--type", "P(pr1)@1",
        "--set", "{{}}", "--map", "{({},{{}})}", "{}",
    )
    assert rc == 0
    assert out == "{}\n"


def test_transport_json_schema(capsys):
    rc, out, _ = run(
        capsys, "transport", "--type", "P(pr1)@1",
        "--set", "{0,1}", "--map", "{(0,1),(1,0)}", "{0}", "--json",
    )
    assert rc == 0
    data = json.loads(out)
    assert set(data) == {"input", "typification", "bijections", "output"}
    assert data["input"] == "{0}"
    assert data["output"] == "{1}"
    assert data["bijections"] == [[["0", "1"], ["1", "0"]]]


def test_transport_rejects_non_bijection(capsys):
    rc, _, _ = run(
        capsys, "transport", "--type", "P(pr1)@1",
        "--set", "{0,1}", "--map", "{(0,5),(1,5)}", "{0}",
    )
    assert rc == 5


def test_transport_rejects_partial_map(capsys):
    rc, _, err = run(
        capsys, "transport", "--type", "pr1@1",
        "--set", "{0,1}", "--map", "{(0,5)}", "1",
    )
    assert rc == 5
    assert "total" in err


def test_transport_rejects_double_assignment(capsys):
    rc, _, err = run(
        capsys, "transport", "--type", "pr1@1",
        "--set", "{0,1}", "--map", "{(0,5),(0,6),(1,7)}", "1",
    )
    assert rc == 5
    assert "twice" in err


def test_transport_rejects_ill_typed_structure(capsys):
    rc, _, _ = run(
        capsys, "transport", "--type", "pr1@1",
        "--set", "{0,1}", "--map", "{(0,1),(1,0)}", "3",
    )
    assert rc == 4


def test_transport_with_species_typification(capsys, data_dir):
    rc, out, _ = run(
        capsys, "transport", "--species", str(data_dir / "marked_pairs.species"),
        "--set", "{5,6}", "--map", "{(5,8),(6,7)}", "{(5,1),(6,0)}",
    )
    assert rc == 0
    assert out == "{(7,0),(8,1)}\n"


# -- check -------------------------------------------------------------------


def test_check_model(capsys, data_dir):
    f = str(data_dir / "partial_order.species")
    rc, out, _ = run(capsys, "check", f, "--set", "{0,1}", "{(0,0),(1,1),(0,1)}")
    assert rc == 0 and out == "model\n"
    rc, out, _ = run(capsys, "check", f, "--set", "{0,1}", "{(0,1)}")
    assert rc == 1 and out == "not a model\n"
    rc, _, _ = run(capsys, "check", f, "--set", "{0,1}", "{(0,9)}")
    assert rc == 4


def test_check_json(capsys, data_dir):
    f = str(data_dir / "partial_order.species")
    rc, out, _ = run(capsys, "check", f, "--set", "{0,1}", "{(0,1)}", "--json")
    assert rc == 1
    assert json.loads(out)["model"] is False


# -- models ------------------------------------------------------------------


def test_models_listing_and_count(capsys, data_dir):
    f = str(data_dir / "partial_order.species")
    rc, out, _ = run(capsys, "models", f, "--set", "{0,1}")
    assert rc == 0
    assert out.splitlines() == [
        "{(0,0),(1,1)}",
        "{(0,0),(0,1),(1,1)}",
        "{(0,0),(1,0),(1,1)}",
    ]
    rc, out, _ = run(capsys, "models", f, "--set", "{0,1}", "--count")
    assert rc == 0 and out == "3\n"


def test_models_json(capsys, data_dir):
    f = str(data_dir / "equivalence.species")
    rc, out, _ = run(capsys, "models", f, "--set", "{0,1}", "--json")
    assert rc == 0
    data = json.loads(out)
    assert data["count"] == 2
    assert len(data["models"]) == 2


def test_models_without_generator_hits_the_budget(capsys, data_dir):
    f = str(data_dir / "monoid.species")
    rc, _, _ = run(capsys, "models", f, "--set", "{0,1,2}")
    assert rc == 3


def test_models_with_aux(capsys, data_dir):
    f = str(data_dir / "marked_pairs.species")
    rc, out, _ = run(capsys, "models", f, "--set", "{0}", "--count")
    assert rc == 0 and out == "2\n"


# -- iso ---------------------------------------------------------------------

CYCLE1 = "{(0,1),(1,0),(1,2),(2,1),(2,3),(3,2),(3,0),(0,3)}"
CYCLE2 = "{(0,2),(2,0),(2,1),(1,2),(1,3),(3,1),(3,0),(0,3)}"
PATH = "{(0,1),(1,0),(1,2),(2,1),(2,3),(3,2)}"
STAR = "{(0,1),(1,0),(0,2),(2,0),(0,3),(3,0)}"


def test_iso_finds_witness(capsys, data_dir):
    f = str(data_dir / "graph.species")
    rc, out, _ = run(capsys, "iso", f, "--set", "{0..3}", CYCLE1, CYCLE2)
    assert rc == 0
    assert out.strip().startswith("{(0,")


def test_iso_none_vs_expect_none(capsys, data_dir):
    f = str(data_dir / "graph.species")
    rc, out, _ = run(capsys, "iso", f, "--set", "{0..3}", PATH, STAR)
    assert rc == 1 and out == "none\n"
    rc, _, _ = run(capsys, "iso", f, "--set", "{0..3}", PATH, STAR, "--expect-none")
    assert rc == 0
    rc, _, _ = run(capsys, "iso", f, "--set", "{0..3}", CYCLE1, CYCLE2, "--expect-none")
    assert rc == 1


def test_iso_json_witness_replays(capsys, data_dir):
    f = str(data_dir / "graph.species")
    rc, out, _ = run(capsys, "iso", f, "--set", "{0..3}", CYCLE1, CYCLE2, "--json")
    assert rc == 0
    data = json.loads(out)
    assert data["isomorphic"] is True
    assert len(data["witness"]) == 1
    assert len(data["witness"][0]) == 4


def test_iso_between_distinct_carriers(capsys, data_dir):
    f = str(data_dir / "partial_order.species")
    rc, out, _ = run(
        capsys, "iso", f, "--set", "{0,1}", "--set2", "{7,8}",
        "{(0,0),(1,1),(0,1)}", "{(7,7),(8,8),(8,7)}",
    )
    assert rc == 0
    assert out == "{(0,8),(1,7)}\n"


# -- transportable -----------------------------------------------------------


def test_transportable_verdict(capsys, data_dir):
    f = str(data_dir / "partial_order.species")
    rc, out, _ = run(capsys, "transportable", f, "--max-size", "2")
    assert rc == 0 and out == "verified_up_to(2)\n"


def test_transportable_counterexample(capsys, data_dir):
    f = str(data_dir / "contains_atom.species")
    rc, out, _ = run(capsys, "transportable", f, "--max-size", "2")
    assert rc == 6
    assert "counterexample" in out


def test_transportable_json(capsys, data_dir):
    f = str(data_dir / "contains_atom.species")
    rc, out, _ = run(capsys, "transportable", f, "--max-size", "2", "--json")
    assert rc == 6
    data = json.loads(out)
    assert data["transportable"] is False
    assert data["counterexample"]["structure"] == "{a0}"
    assert data["counterexample"]["transported"] == "{a1}"


# -- fmt ---------------------------------------------------------------------


def test_fmt_golden(capsys, data_dir):
    rc, out, _ = run(capsys, "fmt", str(data_dir / "contains_atom.species"))
    assert rc == 0
    assert out == (
        "species contains_atom {\n"
        "  mains 1;\n"
        "  typing s in P(pr1) @1;\n"
        "  axiom 'a0' in s;\n"
        "}\n"
    )


def test_fmt_output_reparses_to_the_same_species(capsys, data_dir):
    from structura import dsl

    for path in sorted(data_dir.glob("*.species")):
        rc, out, _ = run(capsys, "fmt", str(path))
        assert rc == 0
        assert dsl.parse_species(out) == dsl.parse_species(path.read_text())


# -- error paths -------------------------------------------------------------


def test_malformed_files_exit_2(capsys, data_dir):
    for path in sorted((data_dir / "malformed").glob("*.species")):
        rc, _, err = run(capsys, "fmt", str(path))
        assert rc == 2, path.name
        assert err.startswith("error:"), path.name


def test_missing_file_exits_2(capsys):
    rc, _, err = run(capsys, "fmt", "no/such/file.species")
    assert rc == 2
    assert "cannot read" in err


def test_bad_carrier_literal_exits_2(capsys):
    rc, _, _ = run(capsys, "realize", "P(pr1)@1", "--set", "{0,")
    assert rc == 2


def test_unknown_subcommand_exits_2(capsys):
    assert main(["frobnicate"]) == 2


def test_help_exits_0(capsys):
    assert main(["--help"]) == 0


def test_console_script_is_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "structura.cli", "realize", "P(pr1)@1", "--set", "{0,1}"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "{{},{0},{1},{0,1}}\n"
