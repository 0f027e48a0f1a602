"""Command-line front end: parsing, commands, exit codes, output formats."""

import io
import json
import sys
from fractions import Fraction

import pytest

from toricmaxent.cli import InputError, main, parse_problem
from toricmaxent.ratpoly import parse_poly, poly_to_text

DICE = {"m": 6, "constraints": [{"name": "mean", "values": [1, 2, 3, 4, 5, 6], "target": "9/2"}]}
QUAD = {"m": 3, "constraints": [{"name": "t", "values": [0, 1, 2], "target": "1"}]}
INDEPENDENCE = {
    "m": 4,
    "constraints": [
        {"name": "r1", "values": [1, 1, 0, 0]},
        {"name": "r2", "values": [0, 0, 1, 1]},
        {"name": "c1", "values": [1, 0, 1, 0]},
        {"name": "c2", "values": [0, 1, 0, 1]},
    ],
    "samples": [1],
}


def run(argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        code = main(argv, out=out, err=err)
    finally:
        sys.stdin = old
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write_json(tmp_path):
    counter = iter(range(1000))

    def _write(obj):
        path = tmp_path / f"in{next(counter)}.json"
        path.write_text(json.dumps(obj))
        return str(path)

    return _write


# --- problem parsing ---


def test_parse_rational_string_target():
    parsed = parse_problem(json.dumps(DICE))
    assert parsed.constraints[0].target == Fraction(9, 2)


def test_parse_decimal_target_is_exact():
    parsed = parse_problem('{"m":3,"constraints":[{"name":"t","values":[0,1,2],"target":0.1}]}')
    assert parsed.constraints[0].target == Fraction(1, 10)


def test_parse_sample_mode():
    parsed = parse_problem('{"m":2,"constraints":[{"name":"t","values":[0,1]}],"samples":[1,2]}')
    problem = parsed.to_problem()
    assert problem.samples.sums == (1,)
    assert problem.samples.count == 2


def test_parse_rejects_non_integer_constraint_values():
    text = '{"m":2,"constraints":[{"name":"t","values":[0.5,1]}],"samples":[1]}'
    with pytest.raises(InputError, match="integer-valued"):
        parse_problem(text)


def test_parse_rejects_unknown_fields():
    with pytest.raises(InputError, match="unknown field"):
        parse_problem('{"m":2,"constraints":[{"name":"t","values":[0,1]}],"samples":[1],"x":1}')


def test_parse_requires_exactly_one_of_targets_or_samples():
    with pytest.raises(InputError):
        parse_problem('{"m":2,"constraints":[{"name":"t","values":[0,1]}]}')
    both = {
        "m": 2,
        "constraints": [{"name": "t", "values": [0, 1], "target": "1/2"}],
        "samples": [1],
    }
    with pytest.raises(InputError):
        parse_problem(json.dumps(both))


def test_parse_error_messages_carry_field_paths():
    with pytest.raises(InputError, match=r"constraints\[0\]\.values"):
        parse_problem('{"m":2,"constraints":[{"name":"t","values":[0]}],"samples":[1]}')


def test_parse_rejects_nonpositive_prior():
    bad = {
        "m": 2,
        "constraints": [{"name": "t", "values": [0, 1], "target": "1/2"}],
        "prior": [1, 0],
    }
    with pytest.raises(InputError, match="prior"):
        parse_problem(json.dumps(bad))


# --- fit command ---


def test_fit_newton_json_output(write_json):
    code, out, err = run(["fit", write_json(DICE), "--format", "json"])
    assert code == 0 and err == ""
    result = json.loads(out)
    assert result["solver"] == "newton"
    assert result["residual"] <= 1e-10
    mean = sum(v * p for v, p in zip([1, 2, 3, 4, 5, 6], result["p"]))
    assert mean == pytest.approx(4.5, abs=1e-9)


def test_fit_gis_solver_flag(write_json):
    code, out, _ = run(["fit", write_json(DICE), "--solver", "gis", "--format", "json"])
    assert code == 0
    assert json.loads(out)["solver"] == "gis"


def test_fit_groebner_solver(write_json):
    path = write_json({"m": 3, "constraints": [{"name": "t", "values": [0, 1, 2], "target": "1"}]})
    code, out, _ = run(["fit", path, "--format", "json", "--solver", "groebner"])
    assert code == 0
    result = json.loads(out)
    assert result["solver"] == "groebner"
    assert result["iterations"] == 0
    assert result["p"] == pytest.approx([1 / 3] * 3, abs=1e-15)


def test_fit_groebner_falls_back_when_structure_unsupported(write_json):
    # constraint rows summing to a constant column make the direct system
    # scale-invariant, so its variety is a curve and the exact path bows out
    path = write_json({
        "m": 3,
        "constraints": [
            {"name": "a", "values": [2, 0, 1]},
            {"name": "b", "values": [0, 2, 1]},
        ],
        "samples": [1, 2, 3, 3],
    })
    code, out, err = run(["fit", path, "--solver", "groebner", "--format", "json"])
    assert code == 0
    assert "falling back to newton" in err
    assert json.loads(out)["solver"] == "newton"


def test_fit_text_format(write_json):
    code, out, _ = run(["fit", write_json(DICE)])
    assert code == 0
    assert out.startswith("solver: newton\n")
    assert "residual:" in out


def test_fit_sample_problem_reports_empirical_exponents(write_json):
    path = write_json({"m": 2, "constraints": [{"name": "t", "values": [0, 1]}], "samples": [1, 2]})
    code, out, _ = run(["fit", path, "--format", "json"])
    assert code == 0
    result = json.loads(out)
    assert result["xi_empirical"] == pytest.approx([0.0])
    assert result["p"] == pytest.approx([0.5, 0.5])


def test_fit_reads_problem_from_stdin():
    code, out, _ = run(["fit", "-", "--format", "json"], stdin=json.dumps(DICE))
    assert code == 0
    assert json.loads(out)["solver"] == "newton"


# --- system and dual commands ---


def test_system_command_emits_cleared_equation(write_json):
    code, out, _ = run(["system", write_json(QUAD)])
    assert code == 0
    assert out == "t1^2 - 1\n"


def test_system_json_lists_variables(write_json):
    code, out, _ = run(["system", write_json(QUAD), "--format", "json"])
    payload = json.loads(out)
    assert payload == {"provenance": "direct", "variables": ["t1"], "equations": ["t1^2 - 1"]}


def test_system_decimal_target(write_json):
    path = write_json({"m": 3, "constraints": [{"name": "t", "values": [0, 1, 2], "target": 0.5}]})
    code, out, _ = run(["system", path])
    assert code == 0
    assert out == "3/2*t1^2 + 1/2*t1 - 1/2\n"


def test_dual_command_integer_target(write_json):
    code, out, _ = run(["dual", write_json(QUAD)])
    assert code == 0
    assert out == "objective: t1 + 1 + t1^-1\ngradient: 1 - t1^-2\ncleared: t1^2 - 1\n"


def test_dual_command_empirical(write_json):
    path = write_json({"m": 2, "constraints": [{"name": "t", "values": [0, 1]}], "samples": [1, 2]})
    code, out, _ = run(["dual", path])
    assert code == 0
    assert out == "objective: t1 + t1^-1\ngradient: 1 - t1^-2\ncleared: t1^2 - 1\n"


def test_dual_rejects_fractional_targets(write_json):
    path = write_json({"m": 3, "constraints": [{"name": "t", "values": [0, 1, 2], "target": "1/2"}]})
    code, out, err = run(["dual", path])
    assert code == 2
    assert out == ""
    assert "integer targets" in err


# --- ideal command ---


def test_ideal_command_independence(write_json):
    code, out, _ = run(["ideal", write_json(INDEPENDENCE), "--order", "lex"])
    assert code == 0
    assert out == "p1*p4 - p2*p3\n"


def test_ideal_default_order_same_generator(write_json):
    code, out, _ = run(["ideal", write_json(INDEPENDENCE)])
    assert code == 0
    got = parse_poly(out.strip(), ("p1", "p2", "p3", "p4"))
    want = parse_poly("p1*p4 - p2*p3", ("p1", "p2", "p3", "p4"))
    assert got in (want, -want)


def test_ideal_size_limit_exit_code(write_json):
    wide = {
        "m": 11,
        "constraints": [{"name": "t", "values": list(range(1, 12))}],
        "samples": [1],
    }
    code, out, err = run(["ideal", write_json(wide)])
    assert code == 3
    assert "exceeds" in err


# --- check and entropy commands ---


def test_fit_then_check_round_trip(write_json):
    dice = write_json(DICE)
    code, out, _ = run(["fit", dice, "--format", "json"])
    dist = write_json({"p": json.loads(out)["p"]})
    code2, out2, err2 = run(["check", dice, "--dist", dist])
    assert code2 == 0, err2
    assert "passed: True" in out2


def test_check_rejects_off_model_distribution(write_json):
    ind = {
        "m": 4,
        "constraints": [
            {"name": "r1", "values": [1, 1, 0, 0], "target": "1/2"},
            {"name": "c1", "values": [1, 0, 1, 0], "target": "1/2"},
        ],
    }
    dist = write_json({"p": [0.4, 0.1, 0.1, 0.4]})
    code, out, err = run(["check", write_json(ind), "--dist", dist])
    assert code == 1
    assert "passed: False" in out
    assert "check failed" in err


def test_check_rejects_distribution_missing_targets(write_json):
    dice = write_json(DICE)
    uniform = write_json({"p": [1 / 6] * 6})
    code, out, _ = run(["check", dice, "--dist", uniform])
    assert code == 1
    assert "passed: False" in out


def test_check_accepts_bare_array_distribution(write_json):
    ind = {
        "m": 4,
        "constraints": [
            {"name": "r1", "values": [1, 1, 0, 0], "target": "1/2"},
            {"name": "c1", "values": [1, 0, 1, 0], "target": "1/2"},
        ],
    }
    dist = write_json([0.25, 0.25, 0.25, 0.25])
    code, _, err = run(["check", write_json(ind), "--dist", dist])
    assert code == 0, err


def test_entropy_command(write_json):
    import math

    dist = write_json({"p": [0.5, 0.25, 0.25]})
    path = write_json({"m": 3, "constraints": [{"name": "t", "values": [0, 1, 2], "target": "1"}]})
    code, out, _ = run(["entropy", path, "--dist", dist])
    assert code == 0
    lines = dict(line.split(": ") for line in out.strip().splitlines())
    expected = -(0.5 * math.log(0.5) + 0.5 * math.log(0.25))
    assert float(lines["entropy"]) == pytest.approx(expected)
    assert float(lines["kl_to_prior"]) == pytest.approx(math.log(3) - expected)


def test_entropy_uses_supplied_prior(write_json):
    dist = write_json({"p": [0.5, 0.5]})
    prob = {
        "m": 2,
        "constraints": [{"name": "t", "values": [0, 1], "target": "1/2"}],
        "prior": [1, 1],
    }
    code, out, _ = run(["entropy", write_json(prob), "--dist", dist])
    assert code == 0
    lines = dict(line.split(": ") for line in out.strip().splitlines())
    assert float(lines["kl_to_prior"]) == pytest.approx(0.0)


# --- exit codes and failure modes ---


def test_infeasible_fit_exits_one(write_json):
    bad = dict(DICE, constraints=[{"name": "mean", "values": [1, 2, 3, 4, 5, 6], "target": "13/2"}])
    for solver in ("newton", "gis"):
        code, out, err = run(["fit", write_json(bad), "--solver", solver])
        assert code == 1
        assert out == ""
        assert "error:" in err


def test_malformed_json_exits_two(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(["fit", str(path)])
    assert code == 2
    assert "error:" in err


def test_non_integer_constraint_exits_two(write_json):
    bad = {"m": 2, "constraints": [{"name": "t", "values": [0.5, 1]}], "samples": [1]}
    code, _, err = run(["fit", write_json(bad)])
    assert code == 2
    assert "integer-valued" in err


def test_missing_file_exits_two():
    code, _, err = run(["fit", "/no/such/file.json"])
    assert code == 2
    assert "cannot read" in err


def test_unknown_command_exits_two(capsys):
    assert run(["frobnicate"])[0] == 2
    capsys.readouterr()


def test_missing_required_flag_exits_two(write_json, capsys):
    assert run(["check", write_json(DICE)])[0] == 2
    capsys.readouterr()


# --- determinism and grammar round trips ---


def test_reruns_are_byte_identical(write_json):
    path = write_json(DICE)
    outputs = {run(["fit", path, "--format", "json"])[1] for _ in range(3)}
    assert len(outputs) == 1


def test_emitted_polynomials_reparse_equal(write_json):
    half = write_json({"m": 3, "constraints": [{"name": "t", "values": [0, 1, 2], "target": "1/2"}]})
    _, out, _ = run(["system", half, "--format", "json"])
    payload = json.loads(out)
    vars = tuple(payload["variables"])
    for text in payload["equations"]:
        f = parse_poly(text, vars)
        assert poly_to_text(f) == text


def test_module_entry_point(write_json):
    import subprocess

    path = write_json(QUAD)
    proc = subprocess.run(
        [sys.executable, "-m", "toricmaxent", "system", path],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "t1^2 - 1\n"
