"""End-to-end tests for the command line interface.

Each test invokes main() directly and checks stdout, stderr, and the
return code. Exit code conventions: 0 on success (including UNKNOWN
decisions), 1 on usage errors, 2 on invalid input files.
"""

import pytest

from steinkit.cli import main
from steinkit.front import parse_front
from steinkit.presentation import parse_surgery

TREFOIL = """\
front 1
handles 0
events L1 L3 X2 X2 X2 R2 R1
orient 1 +
coeff 1 stein
"""

# Two 0-framed unknots with a single l0 handle, theta = -2.
THETA_EXAMPLE = """\
surgery 1
components 2
coeff 1 0
coeff 2 0
rot 1 0
l0 2
"""

CHAIN = """\
surgery 1
components 1
coeff 1 -3
unknot 1
rot 1 0
tb 1 -1
"""


@pytest.fixture
def trefoil(tmp_path):
    path = tmp_path / "trefoil.front"
    path.write_text(TREFOIL)
    return str(path)


@pytest.fixture
def theta_example(tmp_path):
    path = tmp_path / "example.surgery"
    path.write_text(THETA_EXAMPLE)
    return str(path)


@pytest.fixture
def chain(tmp_path):
    path = tmp_path / "chain.surgery"
    path.write_text(CHAIN)
    return str(path)


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_stats_trefoil(capsys, trefoil):
    rc, out, _ = run(capsys, "stats", trefoil)
    assert rc == 0
    assert out.splitlines() == [
        "component: 1",
        "tb: 1",
        "r: 0",
        "w: 3",
        "lambda: 2",
    ]


def test_lint_trefoil(capsys, trefoil):
    rc, out, _ = run(capsys, "lint", trefoil)
    assert rc == 0
    lines = out.splitlines()
    assert "parity: ok" in lines
    assert lines[-1] == "ok: true"


def test_check_stein(capsys, trefoil):
    rc, out, _ = run(capsys, "check-stein", trefoil)
    assert rc == 0
    assert out.splitlines()[0] == "ok: true"


def test_surger_trefoil(capsys, trefoil):
    rc, out, _ = run(capsys, "surger", trefoil)
    assert rc == 0
    assert out == "surgery 1\ncomponents 1\ncoeff 1 0\nrot 1 0\ntb 1 1\n"
    p = parse_surgery(out)
    assert p.m == 1


def test_stabilize_preserves_rotation_parity(capsys, trefoil):
    rc, out, _ = run(capsys, "stabilize", "1", "up", trefoil)
    assert rc == 0
    d = parse_front(out)
    assert len(d.events) == 9


def test_move_output_reparses(capsys, trefoil):
    rc, out, _ = run(
        capsys, "move", "2", "--at", "6", "--variant", "birth-above", trefoil
    )
    assert rc == 0
    d = parse_front(out)
    assert len(d.events) == 9


def test_move_rejected_with_reason(capsys, trefoil):
    rc, out, err = run(capsys, "move", "1", "--at", "2", trefoil)
    assert rc == 2
    assert out == ""
    assert "not applicable" in err


def test_theta_example(capsys, theta_example):
    rc, out, _ = run(capsys, "theta", theta_example)
    assert rc == 0
    assert out == "theta: -2\n"


def test_gamma_all_sublinks(capsys, theta_example):
    rc, out, _ = run(capsys, "gamma", theta_example)
    assert rc == 0
    lines = out.splitlines()
    # four characteristic sublinks, two lines each
    assert len(lines) == 8
    assert lines[0] == "sublink: empty"
    assert lines[1] == "gamma: (0,0) mod im(Q*)"
    assert set(lines[::2]) == {"sublink: empty", "sublink: 1", "sublink: 2", "sublink: 1 2"}


def test_gamma_explicit_sublink(capsys, theta_example):
    rc, out, _ = run(capsys, "gamma", "--sublink", "1", theta_example)
    assert rc == 0
    assert out == "sublink: 1\ngamma: (0,0) mod im(Q*)\n"


def test_h1(capsys, theta_example):
    rc, out, _ = run(capsys, "h1", theta_example)
    assert rc == 0
    assert out == "h1: Z^2\n"


def test_twist(capsys, chain):
    rc, out, _ = run(capsys, "twist", "1", "1", chain)
    assert rc == 0
    assert "coeff 1 3/2" in out.splitlines()


def test_dunk_inverse(capsys, chain):
    rc, out, _ = run(capsys, "dunk", "1", "--inverse", "1/3", chain)
    assert rc == 0
    p = parse_surgery(out)
    assert p.m == 2
    assert "lk 1 2 1" in out.splitlines()


def test_dunk_requires_exactly_one_target(capsys, chain):
    rc, _, err = run(capsys, "dunk", "1", chain)
    assert rc == 1
    assert "usage error" in err


def test_expand_integer_presentation_is_fixed(capsys, chain):
    rc, out, _ = run(capsys, "expand", chain)
    assert rc == 0
    assert "coeff 1 -3" in out.splitlines()


def test_plan(capsys, chain):
    rc, out, _ = run(capsys, "plan", chain)
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "ok: true"
    assert "chain: -3" in lines
    assert "zigzags: 1" in lines


def test_blowdown_requires_unit_coefficient(capsys, chain):
    rc, _, err = run(capsys, "blowdown", "1", chain)
    assert rc == 2
    assert "+1 or -1" in err


def test_seifert_unknown_block(capsys):
    rc, out, _ = run(
        capsys,
        "seifert", "--base", "o0", "--coeff=-2", "--coeff=-3", "--coeff=5/4",
    )
    assert rc == 0
    assert out.splitlines() == [
        "base: o0",
        "e: 1/30",
        "e0: -1",
        "rprime: -2 -3 -5",
        "k0: 3",
        "decision: UNKNOWN",
        "detail: no sufficient condition applied",
    ]


def test_brieskorn_yes_block(capsys):
    rc, out, _ = run(capsys, "brieskorn", "2", "3", "7")
    assert rc == 0
    assert out.splitlines() == [
        "coeff: -2",
        "coeff: -3",
        "coeff: 7/6",
        "e: -1/42",
        "e0: -1",
        "rprime: -2 -3 -7",
        "k0: 3",
        "decision: YES(c)",
        "detail: pair (1, 2) bounds the rest",
        "pair: (1, 2)",
        "n: -5",
        "witness: [3 1; 2 1]",
    ]


def test_borromean_unknown(capsys):
    rc, out, _ = run(capsys, "borromean", "--", "1", "1", "1")
    assert rc == 0
    lines = out.splitlines()
    assert "decision: UNKNOWN" in lines
    assert "inA0: true" in lines
    assert "inA2: false" in lines
    assert "inA3: false" in lines


def test_borromean_twist_knot_flag(capsys):
    rc, out, _ = run(capsys, "borromean", "--twist-knot", "1 1 -8")
    assert rc == 0
    lines = out.splitlines()
    assert lines[:3] == ["coeff: -1", "coeff: -1", "coeff: -8"]
    assert "decision: YES" in lines


def test_borromean_wrong_arity(capsys):
    rc, _, err = run(capsys, "borromean", "--", "1", "1")
    assert rc == 1
    assert "three coefficients" in err


def test_missing_file_is_input_error(capsys, tmp_path):
    rc, _, err = run(capsys, "stats", str(tmp_path / "missing.front"))
    assert rc == 2
    assert "cannot read" in err


def test_unknown_verb_is_usage_error(capsys):
    rc, _, _ = run(capsys, "nonsense")
    assert rc == 1


def test_help_exits_zero(capsys):
    rc, _, _ = run(capsys, "--help")
    assert rc == 0


def test_parse_error_reports_line(capsys, tmp_path):
    path = tmp_path / "bad.front"
    path.write_text("front 1\nhandles 0\ncolor blue\n")
    rc, _, err = run(capsys, "stats", str(path))
    assert rc == 2
    assert "line 3" in err


def test_front_round_trip(capsys, trefoil, tmp_path):
    rc, out, _ = run(capsys, "stabilize", "1", "down", trefoil)
    assert rc == 0
    again = tmp_path / "again.front"
    again.write_text(out)
    rc2, out2, _ = run(capsys, "stats", str(again))
    assert rc2 == 0
    assert "tb: 0" in out2.splitlines()


def test_byte_determinism(capsys, theta_example):
    rc1, out1, _ = run(capsys, "gamma", theta_example)
    rc2, out2, _ = run(capsys, "gamma", theta_example)
    assert (rc1, out1) == (rc2, out2)
