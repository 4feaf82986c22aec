import json

import pytest

from freecat import catio
from freecat.cli import main
from freecat.fincat import (chain_lattice, initial_category,
                            pairs_of_sets_category, terminal_category,
                            walking_arrow)


@pytest.fixture(scope="module")
def cats(tmp_path_factory):
    d = tmp_path_factory.mktemp("cats")
    paths = {}
    for name, cat in (("one", terminal_category()),
                      ("arrow", walking_arrow()),
                      ("chain", chain_lattice(2)),
                      ("empty", initial_category()),
                      ("pairs", pairs_of_sets_category(1))):
        p = d / f"{name}.json"
        catio.save(cat, p)
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_passes_on_valid_category(cats, capsys):
    code, out, _ = run(capsys, "check", cats["arrow"])
    assert code == 0
    assert "result: ok" in out


def test_gallery_exits_zero(capsys):
    code, out, _ = run(capsys, "gallery")
    assert code == 0
    assert "result: ok" in out


def test_hom_counts_generator_square(cats, capsys):
    code, out, _ = run(capsys, "--format", "structured",
                       "hom", cats["arrow"], "y a", "y b")
    assert code == 0
    doc = json.loads(out)
    assert doc["checks"][0]["cardinalities"]["cardinality"] == 1


def test_hom_in_family_completion(cats, capsys):
    code, out, _ = run(capsys, "--format", "structured", "hom", cats["one"],
                       "fam[y pt; y pt]", "fam[y pt; y pt; y pt]")
    assert code == 0
    doc = json.loads(out)
    assert doc["checks"][0]["cardinalities"]["cardinality"] == 9


def test_limit_with_verify(cats, capsys):
    code, out, _ = run(capsys, "limit", cats["chain"],
                       "y 0", "y 1", "y a",
                       "--shape", "cospan", "--completion", "base", "--verify")
    assert code == 0
    assert "result: ok" in out


def test_exp_reports_sections(cats, capsys):
    code, out, _ = run(capsys, "--format", "structured",
                       "exp", cats["arrow"], "fam[y a]", "fam[y b]", "--verify")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "exp"
    assert all(c["status"] == "pass" for c in doc["checks"])


def test_verify_category_suite(cats, capsys):
    code, out, _ = run(capsys, "--testbed", "6", "verify", cats["arrow"],
                       "--suite", "category")
    assert code == 0


def test_verify_extensive_fails_on_lattice(cats, capsys):
    code, out, _ = run(capsys, "verify", cats["chain"], "--suite", "extensive")
    assert code == 1
    assert "FAIL" in out


def test_verify_extensive_fails_on_pairs(cats, capsys):
    code, out, _ = run(capsys, "verify", cats["pairs"], "--suite", "extensive")
    assert code == 1


def test_verify_distributive_passes_on_lattice(cats, capsys):
    code, out, _ = run(capsys, "--testbed", "4", "verify", cats["chain"],
                       "--suite", "distributive")
    assert code == 0


def test_verify_connected_suite(cats, capsys):
    code, out, _ = run(capsys, "--bound-index", "1", "--testbed", "4",
                       "verify", cats["arrow"], "--suite", "connected")
    assert code == 0


def test_verify_reflection_suite(cats, capsys):
    code, out, _ = run(capsys, "--testbed", "4", "verify", cats["arrow"],
                       "--suite", "reflection")
    assert code == 0


def test_parse_error_exits_two(cats, capsys):
    code, _, err = run(capsys, "hom", cats["arrow"], "y nosuch", "y b")
    assert code == 2
    assert "error" in err


def test_bad_grammar_exits_two(cats, capsys):
    code, _, err = run(capsys, "hom", cats["arrow"], "fam[y a", "y b")
    assert code == 2


def test_missing_file_exits_two(capsys):
    code, _, err = run(capsys, "check", "/nonexistent/cat.json")
    assert code == 2


def test_size_guard_exits_three(cats, capsys):
    code, _, err = run(capsys, "--guard", "1", "--bound-index", "2", "hom",
                       cats["arrow"], "fam[y a; y a]", "fam[y b; y b]")
    assert code == 3
    assert "error" in err


def test_structured_output_is_deterministic(cats, capsys):
    _, out1, _ = run(capsys, "--format", "structured", "hom", cats["arrow"],
                     "y a", "y b")
    _, out2, _ = run(capsys, "--format", "structured", "hom", cats["arrow"],
                     "y a", "y b")
    assert out1 == out2


def test_exp_only_in_famlim(cats, capsys):
    with pytest.raises(SystemExit):
        main(["exp", cats["arrow"], "y a", "y b", "--completion", "base"])
