import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detgb import experiments as ex
from detgb.cli import main
from detgb.determinantal import grid_symmetries
from detgb.errors import SchemaMismatch
from detgb.monideal import MonomialIdeal, hilbert_function
from detgb.poly import VariableGrid

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse rejects some input before main's handlers
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out), out


# ---------------------------------------------------------------------------
# gb
# ---------------------------------------------------------------------------


def test_gb_3x3_lex(capsys):
    code, rep, _ = run_json(capsys, "gb", "--grid", "3x3", "--minors", "2", "--order", "lex:rowmajor")
    assert code == 0 and rep["schema"] == ex.SCHEMA
    assert rep["details"]["basis_size"] == 9
    assert rep["details"]["initial_squarefree"]


def test_gb_2x2_grevlex(capsys):
    code, rep, _ = run_json(capsys, "gb", "--grid", "2x2", "--minors", "2", "--order", "grevlex:rowmajor")
    assert code == 0 and rep["details"]["basis_size"] == 1


def test_gb_weight_matches_lex_hilbert(capsys):
    _, w, _ = run_json(capsys, "gb", "--grid", "4x4", "--minors", "3", "--order", "weight:seed=7")
    _, lx, _ = run_json(capsys, "gb", "--grid", "4x4", "--minors", "3", "--order", "lex:rowmajor")
    for key in ("hilbert_function", "dimension", "degree", "h_vector"):
        assert w["details"][key] == lx["details"][key]


def test_gb_t_too_large(capsys):
    code, rep, _ = run_json(capsys, "gb", "--grid", "2x2", "--minors", "3")
    assert code == 0 and rep["details"]["basis_size"] == 0
    assert rep["details"]["dimension"] == 4


def test_gb_writes_out(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, text, _ = run(capsys, "gb", "--grid", "2x2", "--minors", "2", "--out", str(path))
    assert code == 0 and text.startswith("experiment")
    assert json.loads(path.read_text())["details"]["basis_size"] == 1


# ---------------------------------------------------------------------------
# usage errors
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["gb", "--grid", "3x3", "--minors", "2", "--order", "deglex"],
        ["gb", "--grid", "3by3", "--minors", "2"],
        ["gb", "--grid", "0x3", "--minors", "2"],
        ["gb", "--grid", "3x3"],
        ["gb", "--grid", "3x3", "--minors", "2", "--order", "lex:0,1"],
        ["gb", "--grid", "2x2", "--minors", "2", "--field", "p=9"],
        ["experiment", "no-such-thing"],
        ["experiment", "dilworth", "--seed", "abc"],
        ["frobnicate"],
        ["experiment", "dilworth", "--samples", "-3"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == ex.EXIT_USAGE


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    names = out.split()
    assert names == list(ex.EXPERIMENTS)
    assert "rsk-bijection" in names and "revlex-4x5x6-noncm" in names


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------


def test_determinism(capsys):
    argv = ["experiment", "revlex-3minors-sample", "--grid", "3x4", "--samples", "25", "--seed", "5", "--json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    rep = json.loads(a)
    assert rep["timings"] is None and rep["spec"]["seed"] == 5


def test_determinism_of_gb(capsys):
    argv = ["gb", "--grid", "3x4", "--minors", "3", "--order", "grevlex:seed=4", "--json"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_lex_nonradical_search(capsys):
    code, rep, _ = run_json(capsys, "experiment", "lex-3x4x4-nonradical", "--seed", "1", "--budget", "500")
    assert code == 0 and rep["status"] == ex.CONFIRMED
    order = rep["details"]["witness"]["order"]
    assert order.startswith("lex:")
    assert rep["details"]["witness"]["non_squarefree_generators"]


def test_secant_identity_3x3(capsys):
    code, rep, _ = run_json(capsys, "experiment", "secant-identity", "--grid", "3x3")
    assert code == 0 and rep["status"] == ex.CONFIRMED
    assert all(r["equal"] for r in rep["details"]["secants"])


def test_search_out_of_budget_is_incomplete(capsys):
    code, rep, _ = run_json(capsys, "experiment", "lex-3x4x4-nonradical", "--seed", "1", "--budget", "0")
    assert code == ex.EXIT_CODES[ex.INCOMPLETE] and rep["status"] == ex.INCOMPLETE


def test_timings_flag(capsys):
    _, rep, _ = run_json(capsys, "experiment", "dilworth", "--grid", "2x2", "--timings")
    assert rep["timings"]["seconds"] >= 0


# ---------------------------------------------------------------------------
# render
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["gb_3x3_lex", "secant_3x3", "revlex3_4x4"])
def test_render_golden(capsys, name):
    code, out, _ = run(capsys, "render", str(GOLDEN / f"{name}.json"))
    assert code == 0
    assert out == (GOLDEN / f"{name}.txt").read_text()


def test_golden_reports_reproduce(capsys):
    code, out, _ = run(capsys, "gb", "--grid", "3x3", "--minors", "2", "--order", "lex:rowmajor", "--json")
    assert out == (GOLDEN / "gb_3x3_lex.json").read_text()
    code, out, _ = run(capsys, "experiment", "secant-identity", "--grid", "3x3", "--json")
    assert out == (GOLDEN / "secant_3x3.json").read_text()


def test_render_schema_mismatch(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema": "something/9", "experiment": "x"}))
    assert run(capsys, "render", str(bad))[0] == ex.EXIT_USAGE
    bad.write_text("not json")
    assert run(capsys, "render", str(bad))[0] == ex.EXIT_USAGE
    with pytest.raises(SchemaMismatch):
        ex.render({"schema": ex.SCHEMA, "experiment": "x"})


# ---------------------------------------------------------------------------
# order specs and canonical forms
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("text", ["lex:rowmajor", "grevlex:colmajor", "lex:seed=3", "grevlex:perm=8,7,6,5,4,3,2,1,0", "weight:seed=7", "weight:w=1,2,3,4,5,6,7,8,9|lex:0,1,2,3,4,5,6,7,8"])
def test_parse_order_round_trip(text):
    g = VariableGrid(3, 3)
    order = ex.parse_order(text, g)
    assert ex.parse_order(order.describe(), g) == order


def test_colmajor_lex():
    g = VariableGrid(2, 3)
    assert ex.parse_order("lex:colmajor", g).perm == (0, 3, 1, 4, 2, 5)


GRID = VariableGrid(3, 3)
GROUP = grid_symmetries(GRID)


@settings(max_examples=40)
@given(
    st.lists(st.tuples(*[st.integers(0, 1)] * 9).filter(any), min_size=1, max_size=5),
    st.integers(0, len(GROUP) - 1),
)
def test_canonical_form_invariant(gens, k):
    M = MonomialIdeal(9, gens)
    g = GROUP[k]
    image = MonomialIdeal(9, [tuple(a[g.index(v)] for v in range(9)) for a in M.gens])
    assert ex.canonical_form(M, GROUP) == ex.canonical_form(image, GROUP)
    # relabeling does not change the Hilbert function either
    assert hilbert_function(M, 4).values == hilbert_function(image, 4).values
