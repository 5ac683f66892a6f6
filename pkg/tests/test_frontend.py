import pytest
from hypothesis import given, settings, strategies as st

from tracematch.errors import LangSyntaxError, RoleViolation
from tracematch.frontend import (
    SourceUnit, is_three_address, load_program, parse, program_text, split_header,
)
from tracematch.frontend.lexer import tokenize
from tracematch.lang.ast import Assign, CoverFun, CoverVar, If, ObserveFun, While
from tracematch.runtime import Executor

from conftest import ANAGRAM_INPUT


def labels(p):
    return [str(s.loc) for s in p.statements()]


def test_tokenize_basic():
    kinds = [(t.kind, t.text) for t in tokenize("x := 'a' + \"bc\"; // c")]
    assert kinds[:5] == [("ident", "x"), ("sym", ":="), ("char", "'a'"), ("sym", "+"), ("str", '"bc"')]


def test_unterminated_string_is_a_syntax_error():
    with pytest.raises(LangSyntaxError):
        tokenize('x := "abc')


def test_header_does_not_shift_line_numbers():
    pragmas, body, n = split_header("#name X\n#input s=a\nP(s) {\n  x := 1; }")
    assert pragmas == [("name", "X"), ("input", "s=a")] and n == 2
    p = load_program("#name X\n#input s=a\nP(s) {\n  x := 1; }")
    assert p.name == "X"
    assert labels(p) == ["ℓ2"]


def test_multiple_statements_per_line_get_suffixes():
    p = load_program("P(s) {\n  i := 0; j := 1;\n  skip; }")
    assert labels(p) == ["ℓ2.1", "ℓ2.2", "ℓ3"]


def test_normalization_introduces_ordered_temporaries():
    p = load_program("P(s, t) {\n  x := |s| + |t| * 2; }")
    assert program_text(p).splitlines()[1:4] == [
        "  $t1 := |s|;  // ℓ2.1",
        "  $t2 := |t|;  // ℓ2.2",
        "  $t3 := $t2 * 2;  // ℓ2.3",
    ]
    assert is_three_address(p)


def test_short_circuit_becomes_branches():
    p = load_program("P(a, b) {\n  if (a && b) x := 1; }")
    assert is_three_address(p)
    assert sum(isinstance(s, If) for s in p.statements()) == 2


def test_while_condition_prelude_rerun_each_test():
    p = load_program("P(s) {\n  i := 0;\n  while (i < |s|) i := i + 1; }")
    loop = next(s for s in p.statements() if isinstance(s, While))
    assert len(loop.prelude) == 1
    trace = Executor(p, "implementation").run({"s": "ab"}).trace
    assert [e.render() for e in trace].count("ℓ3.2\t2") == 3


def test_assignment_needs_colon_equals():
    with pytest.raises(LangSyntaxError, match=":="):
        load_program("P(s) { x = 1; }")


def test_comparisons_do_not_chain():
    with pytest.raises(LangSyntaxError):
        load_program("P(a) { x := 1 < a < 3; }")


@pytest.mark.parametrize("stmt", ["observe(s);", "observeFun(Split());", "cover(3);"])
def test_spec_constructs_rejected_in_implementations(stmt):
    with pytest.raises(RoleViolation):
        load_program("P(s) { " + stmt + " }", "implementation")


def test_nondet_rejected_in_implementations():
    with pytest.raises(RoleViolation):
        load_program("P(s) nondet(a) { skip; }", "implementation")


def test_nondet_only_on_entry_function():
    with pytest.raises(LangSyntaxError):
        load_program("P(s) { skip; }\nQ(x) nondet(a) { skip; }", "specification")


def test_nondet_variables_are_read_only():
    with pytest.raises(LangSyntaxError, match="read-only"):
        load_program("P(s) nondet(a) {\n  a := false; }", "specification")


def test_cover_forms():
    p = load_program("P(s) {\n  cover(ToCharArray());\n  cover(|s|);\n  cover(Split(_, 'a')); }",
                     "specification")
    kinds = [type(s) for s in p.statements() if not isinstance(s, Assign)]
    assert kinds == [CoverFun, CoverVar, CoverFun]


def test_observe_fun_with_wildcards():
    p = load_program("P(s) {\n  observeFun(Split(_, 'a'), Eq); }", "specification")
    (s,) = list(p.statements())
    assert isinstance(s, ObserveFun) and s.fname == "Split" and s.eq == "Eq"


def test_entry_pragma_selects_main():
    p = parse(SourceUnit.from_text("#entry Main\nHelper(x) { return x; }\nMain(s) { skip; }",
                                   "implementation"))
    assert p.entry == "Main" and p.params == ("s",)


def test_negative_literal_folded():
    p = load_program("P(s) {\n  x := -3; }")
    (s,) = list(p.statements())
    assert isinstance(s, Assign) and s.expr.value == -3


# differential: normalization must not change what a program computes


def test_normalization_preserves_corpus_results(anagram_impls):
    from tracematch.bundle import corpus_path
    for name in anagram_impls:
        text = corpus_path("anagram", "impls", name + ".l").read_text()
        raw = parse(SourceUnit.from_text(text, "implementation"))
        norm = load_program(text)
        for inputs in (ANAGRAM_INPUT, {"s": "ab", "t": "bb"}, {"s": "", "t": ""}):
            a = Executor(raw, "silent").run(inputs)
            b = Executor(norm, "silent").run(inputs)
            assert a.returned == b.returned, (name, inputs)


def _expr(depth):
    leaf = st.one_of(st.integers(-9, 9).map(str), st.sampled_from(["a", "b", "c"]))
    if depth == 0:
        return leaf
    sub = _expr(depth - 1)
    return st.one_of(
        leaf,
        st.tuples(sub, st.sampled_from(["+", "-", "*", "/", "%"]), sub).map(lambda t: f"({t[0]} {t[1]} {t[2]})"),
        st.tuples(sub, st.sampled_from(["<", "==", "!="]), sub, sub, sub).map(
            lambda t: f"({t[0]} {t[1]} {t[2]} && {t[3]} != {t[4]} || {t[0]} == 0)"),
    )


def _py_div(a, b):
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b > 0) else -q


@settings(max_examples=150, deadline=None)
@given(_expr(3), st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_normalization_preserves_expression_values(expr, a, b, c):
    src = f"P(a, b, c) {{\n  x := {expr};\n  return x; }}"
    raw = parse(SourceUnit.from_text(src, "implementation"))
    norm = load_program(src)
    env = {"a": a, "b": b, "c": c}
    outcomes = []
    for prog in (raw, norm):
        try:
            outcomes.append(("ok", Executor(prog, "silent").run(env).returned))
        except Exception as exc:  # both must fail the same way
            outcomes.append(("err", type(exc).__name__))
    assert outcomes[0] == outcomes[1]
