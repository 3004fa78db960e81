import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from brauer_manin.descent import run_descent
from brauer_manin.pipeline import (
    Problem,
    ProblemError,
    emit_report,
    fixture_path,
    load_problem,
    parse_problem,
    parse_report,
    run_pipeline,
)
from brauer_manin.pipeline.cli import EXIT_INCONCLUSIVE, EXIT_INVALID, EXIT_OK, main
from brauer_manin.pipeline.problem import datum_to_dict

HEADER = {"format": "brauer-manin-problem", "version": 1}


def problem(**kw):
    return parse_problem({**HEADER, **kw})


def cli(*args):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(args))
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, raw, name="p.json"):
    p = tmp_path / name
    p.write_text(raw if isinstance(raw, str) else json.dumps(raw))
    return str(p)


def test_problem_round_trip():
    p = load_problem(fixture_path("iskovskikh"))
    q = parse_problem(json.loads(p.to_json()))
    assert p == q
    assert [c.name for c in q.charts] == [c.name for c in p.charts]


def test_explicit_descent_encoding_round_trips():
    p = load_problem(fixture_path("planted_v4"))
    encoded = datum_to_dict(p.descent)
    q = problem(
        group={"table": [list(r) for r in p.group.table]},
        pic={"action": [[list(r) for r in m] for m in p.pic.action]},
        descent=encoded,
    )
    assert run_descent(q.descent).verdict == run_descent(p.descent).verdict == "h3-obstructed"


def test_header_is_required():
    with pytest.raises(ProblemError) as exc:
        parse_problem({"version": 1})
    assert exc.value.where == "format"


def test_non_associative_group_names_the_triple():
    table = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(ProblemError) as exc:
        problem(group={"table": table})
    assert "(1, 1, 2)" in str(exc.value)


def test_bad_expression_is_located():
    with pytest.raises(ProblemError) as exc:
        problem(variety={"charts": [{"name": "a", "variables": ["x"], "equation": "x^2 = = 1"}]})
    assert exc.value.where == "variety.charts[0].equation"


def test_json_syntax_error_has_line_and_column(tmp_path):
    with pytest.raises(ProblemError) as exc:
        load_problem(write(tmp_path, '{\n  "format": \n}'))
    assert exc.value.where.startswith("line 3 column")


def test_group_and_pic_only():
    p = problem(group={"cyclic": 2}, pic={"action": [[[1]], [[-1]]]})
    r = run_pipeline(p)
    assert r.sections["algebraic"]["H1"] == [2]
    assert r.sections["algebraic"]["H2"] == []
    assert "verdict" not in r.sections
    assert r.provenance["skipped"]["verdict"]


def test_empty_class_list_is_vacuous():
    r = run_pipeline(problem(group={"cyclic": 1}, pic={"action": [[]]}, classes=[]))
    assert r.sections["verdict"]["vacuous"] is True
    assert r.verdict == "unobstructed-at-sampled-points"


def test_machine_report_round_trip():
    r = run_pipeline(load_problem(fixture_path("control_conic")))
    text = emit_report(r, "machine")
    back = parse_report(text)
    assert back.sections == r.sections and back.provenance == r.provenance
    assert emit_report(back, "machine") == text
    assert "[verdict]" in emit_report(r, "table")


def test_cli_exit_codes(tmp_path):
    code, out, _ = cli("verdict", "--problem", str(fixture_path("control_conic")), "--format", "machine")
    assert code == EXIT_OK and json.loads(out)["sections"]["verdict"]["verdict"] == "unobstructed-at-sampled-points"
    code, _, err = cli("all", "--problem", write(tmp_path, {"version": 1}))
    assert code == EXIT_INVALID and "format" in err
    code, _, _ = cli("all", "--problem", str(tmp_path / "missing.json"))
    assert code == EXIT_INVALID
    code, _, _ = cli("all", "--problem", str(fixture_path("control_conic")), "--precision", "0")
    assert code == EXIT_INVALID
    code, _, _ = cli("frobnicate", "--problem", "x")
    assert code == EXIT_INVALID


def test_strict_inconclusive(tmp_path):
    raw = json.loads(fixture_path("iskovskikh").read_text())
    path = write(tmp_path, raw)
    args = ("verdict", "--problem", path, "--places", "2,inf", "--precision", "2", "--budget", "50")
    code, out, _ = cli(*args, "--format", "machine")
    assert code == EXIT_OK
    assert json.loads(out)["sections"]["verdict"]["verdict"] == "inconclusive"
    code, _, _ = cli(*args, "--strict")
    assert code == EXIT_INCONCLUSIVE


def test_overrides_are_recorded():
    code, out, _ = cli(
        "local", "--problem", str(fixture_path("control_conic")), "--places", "3,5", "--seed", "4", "--format", "machine", "--oracle-mode"
    )
    prov = json.loads(out)["provenance"]
    assert code == EXIT_OK
    assert prov["places"] == ["3", "5"] and prov["seed"] == 4 and prov["oracle_mode"] is True


def test_cohomology_subcommand_on_planted_fixture():
    code, out, _ = cli("cohomology", "--problem", str(fixture_path("planted_v4")), "--format", "machine")
    assert code == EXIT_OK
    assert json.loads(out)["sections"]["algebraic"]["H2"] == [2, 2, 2, 2]
