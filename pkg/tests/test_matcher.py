import json

import pytest

from tracematch.embedding import Criterion
from tracematch.errors import ExecutionError
from tracematch.frontend import load_program
from tracematch.lang.ast import SPEC_ONLY, Assign
from tracematch.lang.equality import ComparisonFunction, lift_custom
from tracematch.matcher import (
    ImplementationRuns, Specification, erase_observations, grade, matches,
    nondet_assignments, self_match,
)

from conftest import TOY_INPUT


def spec_of(program, inputs=(TOY_INPUT,), criterion=Criterion.PARTIAL, **kw):
    return Specification(program.name, program, criterion, tuple(inputs), **kw)


def test_nondet_assignment_order():
    assert nondet_assignments(["a", "b"]) == [
        {"a": True, "b": True}, {"a": True, "b": False},
        {"a": False, "b": True}, {"a": False, "b": False},
    ]
    assert nondet_assignments([]) == [{}]


def test_toy_verdicts(toy):
    spec = spec_of(toy["c"])
    va = matches(spec, toy["a"])
    assert va.matched and va.nondet == {"nd1": True} and va.assignments_tried == 1
    assert {str(k): sorted(map(str, v)) for k, v in va.witness.items()} == {
        "ℓ6": ["ℓ5"], "ℓ12": ["ℓ9"], "ℓ20": ["ℓ16"]}
    vb = matches(spec, toy["b"])
    assert vb.matched and vb.nondet == {"nd1": False} and vb.assignments_tried == 2


def test_implementation_runs_once_per_input(toy):
    runs = ImplementationRuns(toy["b"])
    calls = []
    real = runs.executor.run
    runs.executor.run = lambda inputs, nondet=None: calls.append(1) or real(inputs, nondet)
    spec = spec_of(toy["c"], inputs=(TOY_INPUT, {"s": "ab", "t": "ba"}))
    assert matches(spec, runs).matched
    assert matches(spec, runs).matched
    assert len(calls) == 2


def test_nondet_completeness_against_exhaustive_rerun(anagram_bundle, anagram_impls):
    for spec in anagram_bundle:
        for name in ("c1", "s2", "r4", "novel"):
            impl = anagram_impls[name]
            v = matches(spec, impl)
            each = [matches(spec, impl, assignments=[nd]).matched
                    for nd in nondet_assignments(spec.program.nondet_vars)]
            assert v.matched == any(each)
            assert v.assignments_tried <= 2 ** len(spec.program.nondet_vars)
            if v.matched:
                assert v.assignments_tried == each.index(True) + 1


def test_grade_reports_all_specs(anagram_bundle, anagram_impls):
    r = grade(anagram_impls["c2"], anagram_bundle.specs)
    assert r.matched == ("CS",)
    assert [v.spec for v in r.verdicts] == ["CS", "ES", "RS", "SS"]
    assert r.feedback[0][0] == "CS" and "Counting" in r.feedback[0][1]
    e2 = grade(anagram_impls["e2"], anagram_bundle.specs)
    assert e2.matched == ("ES",)
    assert next(v for v in e2.verdicts if v.spec == "ES").criterion is Criterion.FULL
    novel = grade(anagram_impls["novel"], anagram_bundle.specs)
    assert novel.unmatched and novel.to_json()["status"] == "UNMATCHED"


def test_grade_is_reproducible(anagram_bundle, anagram_impls):
    a = json.dumps(grade(anagram_impls["r5"], anagram_bundle.specs).to_json())
    b = json.dumps(grade(anagram_impls["r5"], anagram_bundle.specs).to_json())
    assert a == b and "seconds" not in a


def test_grade_records_errors_per_spec(toy):
    crashing = load_program("P(s, t) {\n  c := s[10];\n  observe(c); }", "specification")
    good = spec_of(toy["c"])
    r = grade(toy["a"], [spec_of(crashing), good])
    assert r.verdicts[0].error and "specification" in r.verdicts[0].error
    assert r.matched == ("CountSpec",)


def test_runtime_errors_are_tagged(toy):
    impl = load_program("P(s, t) {\n  c := t[10]; }")
    with pytest.raises(ExecutionError) as info:
        matches(spec_of(toy["c"]), impl)
    assert info.value.which == "implementation"


def test_custom_equality_failure_is_recorded(toy):
    def broken(x, y):
        raise ZeroDivisionError
    loc_id = next(s.loc.id for s in toy["c"].statements() if type(s).__name__ == "Observe")
    delta = ComparisonFunction({loc_id: lift_custom("Broken", broken)})
    with pytest.raises(ZeroDivisionError):
        matches(spec_of(toy["c"], delta=delta), toy["a"])


def test_specification_kind():
    p = load_program("P(s) {\n  observe(s); }", "specification")
    assert spec_of(p, criterion=Criterion.FULL).kind == "efficient"
    assert spec_of(p).kind == "inefficient"
    with pytest.raises(ValueError):
        Specification("x", load_program("P(s) { skip; }"), Criterion.FULL, ({"s": ""},))


def test_erase_observations(toy):
    erased = erase_observations(toy["c"], {"nd1": False})
    assert not erased.is_specification
    body = list(erased.statements())
    assert isinstance(body[0], Assign) and body[0].target == "nd1"
    assert str(body[0].loc).startswith("ℓnd")
    assert not any(isinstance(s, SPEC_ONLY) for s in body)
    obs = [s for s in body if isinstance(s, Assign) and s.target.startswith("_obs")]
    assert len(obs) == 5


def test_self_match_without_nondet():
    p = load_program("P(s) {\n  i := 0;\n  while (i < |s|) {\n    c := s[i];\n    observe(c);\n"
                     "    i := i + 1; }\n  observeFun(Split(s, 'a')); }", "specification")
    assert self_match(spec_of(p, inputs=({"s": "bab"},)), {}).matched


def test_json_omits_timings_unless_asked(toy):
    v = matches(spec_of(toy["c"]), toy["a"])
    assert "seconds" not in v.to_json()
    assert "seconds" in v.to_json(timings=True)
    assert v.to_json()["witness"][0]["spec"] == "ℓ6"


def test_unmatched_verdict_lists_candidates(toy):
    p = load_program("P(s, t) {\n  observe(42); }", "specification")
    v = matches(spec_of(p), toy["a"])
    assert not v.matched and v.to_json()["candidates"] == {"-": {"ℓ2": []}}
