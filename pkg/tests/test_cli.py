import io

import pytest

import kripkelam.encoding as encoding
from kripkelam import Abs, Lam, ParseError, Ref, Var
from kripkelam.cli import main, parse_named, render_named
from kripkelam.debruijn import db_to_named


def run_cli(monkeypatch, capsys, argv, stdin=""):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def chain(k, i):
    d = Var(i)
    for _ in range(k):
        d = Lam(d)
    return d


# ---------------------------------------------------------------- parser


def test_parse_named_two_binders():
    assert parse_named("\\x. \\y. x") == Abs("x", Abs("y", Ref("x")))


def test_parse_named_unicode_binder():
    assert parse_named("λx.x") == Abs("x", Ref("x"))


def test_parse_named_mixed_binders_and_whitespace():
    assert parse_named("  λ a .\n \\ b_2 . a ") == Abs("a", Abs("b_2", Ref("a")))


def test_parse_named_bare_variable():
    assert parse_named("x") == Ref("x")


def test_parse_named_rejects_parentheses():
    with pytest.raises(ParseError) as err:
        parse_named("\\x. (y)")
    assert err.value.line == 1
    assert err.value.column == 5


def test_parse_named_error_positions():
    with pytest.raises(ParseError) as err:
        parse_named("\\x.\n\\y infix")
    assert (err.value.line, err.value.column) == (2, 4)

    with pytest.raises(ParseError) as err:
        parse_named("\\. x")
    assert (err.value.line, err.value.column) == (1, 2)

    with pytest.raises(ParseError):
        parse_named("")
    with pytest.raises(ParseError):
        parse_named("\\x. x y")
    with pytest.raises(ParseError):
        parse_named("\\x.")
    with pytest.raises(ParseError):
        parse_named("\\1x. x")


def test_render_named_spacing():
    assert render_named(Abs("x", Abs("y", Ref("x")))) == "\\ x. \\ y. x"


def test_parse_render_is_idempotent():
    text = "\\ x1. \\ x2. x1"
    assert render_named(parse_named(text)) == text


# ---------------------------------------------------------------- commands


def test_cli_size_golden(monkeypatch, capsys):
    code, out, err = run_cli(monkeypatch, capsys, ["size"], "\\x.\\y.x")
    assert (code, out, err) == (0, "3\n", "")


def test_cli_print_golden(monkeypatch, capsys):
    code, out, err = run_cli(monkeypatch, capsys, ["print"], "\\x.\\y.x")
    assert (code, out, err) == (0, "\\ x1. \\ x2. x1\n", "")


def test_cli_to_db_golden(monkeypatch, capsys):
    code, out, err = run_cli(monkeypatch, capsys, ["to-db"], "\\x.\\y.x")
    assert (code, out, err) == (0, "Lam (Lam (Var 1))\n", "")


def test_cli_from_db(monkeypatch, capsys):
    code, out, err = run_cli(monkeypatch, capsys, ["from-db"], "Lam (Lam (Var 1))")
    assert (code, out, err) == (0, "\\ x1. \\ x2. x1\n", "")


def test_cli_parse_echoes_original_names(monkeypatch, capsys):
    code, out, _ = run_cli(monkeypatch, capsys, ["parse"], "λfoo. \\bar. foo")
    assert code == 0
    assert out == "\\ foo. \\ bar. foo\n"


def test_cli_unbound_variable_exits_one(monkeypatch, capsys):
    code, out, err = run_cli(monkeypatch, capsys, ["size"], "\\x.y")
    assert code == 1
    assert out == ""
    assert err.startswith("error:")
    assert "unbound variable y" in err


def test_cli_syntax_error_exits_one(monkeypatch, capsys):
    code, _, err = run_cli(monkeypatch, capsys, ["print"], "\\x. (y)")
    assert code == 1
    assert err.startswith("error:")


def test_cli_open_db_term_exits_one(monkeypatch, capsys):
    code, _, err = run_cli(monkeypatch, capsys, ["from-db"], "Lam (Var 1)")
    assert code == 1
    assert err.startswith("error:")


def test_cli_bad_db_syntax_exits_one(monkeypatch, capsys):
    code, _, err = run_cli(monkeypatch, capsys, ["from-db"], "Lam (Oops 1)")
    assert code == 1
    assert "error: syntax:" in err


def test_cli_depth_guard_exits_three(monkeypatch, capsys):
    monkeypatch.setattr(encoding, "DEFAULT_MAX_NESTING", 50)
    deep = render_named(db_to_named(chain(60, 0)))
    code, _, err = run_cli(monkeypatch, capsys, ["size"], deep)
    assert code == 3
    assert err.startswith("error:")
    assert "nesting" in err


def test_cli_reads_input_file(tmp_path, monkeypatch, capsys):
    src = tmp_path / "term.lam"
    src.write_text("\\x.\\y.y", encoding="utf-8")
    code, out, _ = run_cli(monkeypatch, capsys, ["to-db", str(src)])
    assert (code, out) == (0, "Lam (Lam (Var 0))\n")


def test_cli_missing_file_exits_one(monkeypatch, capsys):
    code, _, err = run_cli(monkeypatch, capsys, ["size", "/no/such/file"])
    assert code == 1
    assert err.startswith("error:")


def test_cli_double_dash_forces_stdin(monkeypatch, capsys):
    code, out, _ = run_cli(monkeypatch, capsys, ["size", "--"], "\\x.x")
    assert (code, out) == (0, "2\n")


# ---------------------------------------------------------------- pipelines


def test_print_output_reparses_to_itself(monkeypatch, capsys):
    _, first, _ = run_cli(monkeypatch, capsys, ["print"], "\\a. λb.\tb")
    code, second, _ = run_cli(monkeypatch, capsys, ["print"], first)
    assert code == 0
    assert second == first


def test_to_db_from_db_to_db_is_stable(monkeypatch, capsys):
    _, db1, _ = run_cli(monkeypatch, capsys, ["to-db"], "\\x. \\y. \\z. y")
    _, named, _ = run_cli(monkeypatch, capsys, ["from-db"], db1)
    code, db2, _ = run_cli(monkeypatch, capsys, ["to-db"], named)
    assert code == 0
    assert db2 == db1 == "Lam (Lam (Lam (Var 1)))\n"


# ---------------------------------------------------------------- batch cmds


def test_cli_roundtrip_reports_counts(monkeypatch, capsys):
    code, out, _ = run_cli(monkeypatch, capsys, ["roundtrip", "--max-depth", "16"])
    assert code == 0
    assert out == "roundtrip: 136 terms to depth 16, 0 mismatches\n"


def test_cli_gen_is_deterministic(monkeypatch, capsys):
    argv = ["gen", "--seed", "9", "--max-depth", "6", "--count", "4"]
    code, out1, _ = run_cli(monkeypatch, capsys, argv)
    _, out2, _ = run_cli(monkeypatch, capsys, argv)
    assert code == 0
    assert out1 == out2
    lines = out1.strip().split("\n")
    assert len(lines) == 4
    for line in lines:
        assert parse_named(line)  # every emitted term reparses


def test_cli_gen_single_term_matches_library(monkeypatch, capsys):
    from kripkelam import gen_term

    code, out, _ = run_cli(monkeypatch, capsys, ["gen", "--seed", "42", "--max-depth", "8"])
    assert code == 0
    assert out == render_named(db_to_named(gen_term(42, 8))) + "\n"


def test_cli_check_laws_green(monkeypatch, capsys):
    code, out, _ = run_cli(
        monkeypatch,
        capsys,
        ["check-laws", "--max-depth", "3", "--samples", "10", "--seed", "1"],
    )
    assert code == 0
    for suite in ("id_hom", "compose_hom", "fold_hom"):
        assert suite in out
    assert "FAIL" not in out


def test_cli_check_laws_output_one_line_per_suite(monkeypatch, capsys):
    code, out, _ = run_cli(
        monkeypatch,
        capsys,
        ["check-laws", "--max-depth", "2", "--samples", "5", "--seed", "0"],
    )
    assert code == 0
    assert len(out.strip().split("\n")) == 9


def test_cli_rejects_nonpositive_depth_bounds(monkeypatch, capsys):
    code, _, err = run_cli(monkeypatch, capsys, ["roundtrip", "--max-depth", "0"])
    assert code == 1
    assert err.startswith("error:")
    code, _, err = run_cli(monkeypatch, capsys, ["gen", "--max-depth", "-3"])
    assert code == 1
    assert err.startswith("error:")


def test_cli_check_laws_failure_exits_two(monkeypatch, capsys):
    import kripkelam.cli as cli
    from kripkelam.laws import BodySkeleton, Report, Slot, Witness

    def stub(max_binders, samples, seed):
        witness = Witness(BodySkeleton(0, Slot.FRESH), None, 1, 2)
        return [Report("id_hom[size]", checked=1, failures=[witness])]

    monkeypatch.setattr(cli, "run_all_laws", stub)
    code, out, _ = run_cli(monkeypatch, capsys, ["check-laws"])
    assert code == 2
    assert "FAIL" in out
    assert "counterexample" in out
