import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from tracematch.embedding import (
    Criterion, PotentialGraph, build_potential_graph, check_observed_coverage, embed,
    enumerate_maximum_matchings, one_to_many_candidates, one_to_one, subsequence,
    verify_witness,
)
from tracematch.embedding.subsequence import inverse
from tracematch.errors import EnumerationBudgetExceeded
from tracematch.frontend import load_program
from tracematch.lang.trace import Trace, TraceEntry
from tracematch.lang.values import DONT_CARE, LOOP, LibRecord

from oracles import brute_force_embed, loc, random_instance

P, F = Criterion.PARTIAL, Criterion.FULL


def tr(*pairs):
    return Trace(tuple(TraceEntry(l, v) for l, v in pairs))


s1, s2, s3 = loc("s", 1), loc("s", 2), loc("s", 3)
i1, i2, i3, i4 = loc("i", 1), loc("i", 2), loc("i", 3), loc("i", 4)
w = loc("w", 1)


# ------------------------------------------------------------ subsequence


def test_partial_skips_extra_entries():
    g1 = tr((s1, 1), (s1, 3))
    g2 = tr((i1, 1), (i1, 2), (i1, 3))
    assert subsequence(g1, g2, None, P, one_to_one({s1: i1}))
    assert not subsequence(g1, g2, None, F, one_to_one({s1: i1}))


def test_order_matters_across_locations():
    g1 = tr((s1, 1), (s2, 2))
    g2 = tr((i2, 2), (i1, 1))
    assert not subsequence(g1, g2, None, P, one_to_one({s1: i1, s2: i2}))


def test_full_requires_equal_counts():
    g1 = tr((s1, 1), (s2, 2))
    g2 = tr((i1, 1), (i3, 9), (i2, 2))
    assert subsequence(g1, g2, None, F, one_to_one({s1: i1, s2: i2}))


def test_unmapped_required_location_fails():
    assert not subsequence(tr((s1, 1)), tr((i1, 1)), None, P, {})


def test_optional_entries_may_stay_unmapped():
    g1 = Trace((TraceEntry(s1, 1), TraceEntry(s2, LibRecord("f", (DONT_CARE,)), optional=True)))
    assert subsequence(g1, tr((i1, 1)), None, F, one_to_one({s1: i1}))


def test_cover_bound_limits_image_count():
    g1 = Trace((TraceEntry(s1, DONT_CARE, optional=True, bound=2),))
    two = tr((i1, 5), (i1, 6))
    three = tr((i1, 5), (i1, 6), (i1, 7))
    pi = one_to_one({s1: i1})
    for crit in (P, F):
        assert subsequence(g1, two, None, crit, pi)
        assert not subsequence(g1, three, None, crit, pi)


def test_inverse_rejects_overlap():
    with pytest.raises(ValueError):
        inverse({s1: frozenset({i1}), s2: frozenset({i1, i2})})


def test_groups_merge_in_trace_order():
    g1 = tr((s1, "x"), (s1, "y"))
    g2 = tr((i2, "x"), (i1, "y"))
    assert subsequence(g1, g2, None, P, {s1: frozenset({i1, i2})})
    assert not subsequence(g1, g2, None, P, one_to_one({s1: i1}))


# -------------------------------------------------------------- coverage


def test_coverage_needs_observation_between_iterations():
    g2 = tr((w, LOOP), (i1, 1), (w, LOOP), (i2, 2), (w, LOOP), (i1, 3))
    assert not check_observed_coverage(one_to_one({s1: i1}), g2)
    assert check_observed_coverage(one_to_one({s1: i1, s2: i2}), g2)


def test_coverage_needs_library_calls_observed():
    g2 = tr((i1, 1), (i2, LibRecord("Sort", ("ba",), "ab")))
    assert not check_observed_coverage(one_to_one({s1: i1}), g2)
    assert check_observed_coverage(one_to_one({s1: i1, s2: i2}), g2)


def test_coverage_vacuous_without_loops_or_calls():
    g2 = tr((i1, 1), (i2, 2))
    assert check_observed_coverage(one_to_one({s1: i1}), g2)


# ------------------------------------------------------------- matchings


def _brute_matchings(edges, lefts):
    rights = sorted({r for rs in edges.values() for r in rs})
    out = set()
    for image in itertools.permutations(rights, len(lefts)):
        if all(r in edges[l] for l, r in zip(lefts, image)):
            out.add(tuple(zip(lefts, image)))
    return out


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.integers(0, 2 ** 20 - 1))
def test_enumeration_equals_brute_force(n1, n2, bits):
    lefts = [loc("s", i) for i in range(n1)]
    rights = [loc("i", j) for j in range(n2)]
    edges = {l: tuple(frozenset({r}) for j, r in enumerate(rights) if bits >> (i * 5 + j) & 1)
             for i, l in enumerate(lefts)}
    got = [tuple((l, next(iter(pi[l]))) for l in lefts)
           for pi in enumerate_maximum_matchings(PotentialGraph(edges), lefts)]
    assert len(got) == len(set(got))
    plain = {l: {next(iter(c)) for c in cs} for l, cs in edges.items()}
    assert set(got) == _brute_matchings(plain, lefts)


def test_complete_two_by_two_has_two_matchings():
    edges = {s1: (frozenset({i1}), frozenset({i2})), s2: (frozenset({i1}), frozenset({i2}))}
    assert len(list(enumerate_maximum_matchings(PotentialGraph(edges)))) == 2


def test_unsaturable_graph_yields_nothing():
    edges = {s1: (frozenset({i1}),), s2: (frozenset({i1}),), s3: ()}
    assert list(enumerate_maximum_matchings(PotentialGraph(edges))) == []


def test_optional_left_may_be_skipped():
    edges = {s1: (frozenset({i1}),), s2: (frozenset({i1}),)}
    got = list(enumerate_maximum_matchings(PotentialGraph(edges, frozenset({s2}))))
    assert got == [{s1: frozenset({i1})}]


# ----------------------------------------------------------------- embed


def test_potential_graph_prunes_per_pair():
    g1 = tr((s1, 1), (s2, 2))
    g2 = tr((i1, 1), (i2, 2), (i3, 1))
    G = build_potential_graph([g1], [g2], [s1, s2], [i1, i2, i3], None, P)
    assert G.singleton_pairs() == {(s1, i1), (s1, i3), (s2, i2)}


def test_embed_reports_witness_and_budget():
    g1 = tr((s1, 0), (s2, 0))
    g2 = tr((i1, 0), (i2, 0), (i3, 0), (i4, 0))
    r = embed([g1], [g2], [s1, s2], [i1, i2, i3, i4], None, P)
    assert r.found and verify_witness(r.witness, [g1], [g2], None, P)
    # opposite orders on two inputs: 12 candidate matchings, none a witness
    rev = tr((i4, 0), (i3, 0), (i2, 0), (i1, 0))
    r = embed([g1, g1], [g2, rev], [s1, s2], [i1, i2, i3, i4], None, P)
    assert not r.found and r.explored == 12
    with pytest.raises(EnumerationBudgetExceeded):
        embed([g1, g1], [g2, rev], [s1, s2], [i1, i2, i3, i4], None, P, budget=3)


def test_same_mapping_must_serve_every_input():
    a1, a2 = tr((s1, 1)), tr((s1, 2))
    b1, b2 = tr((i1, 1), (i2, 9)), tr((i1, 9), (i2, 2))
    assert not embed([a1, a2], [b1, b2], [s1], [i1, i2], None, P).found
    assert embed([a1], [b1], [s1], [i1, i2], None, P).found


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10 ** 9), st.booleans())
def test_embed_agrees_with_brute_force(seed, full):
    spec, impl, loc1, loc2, delta = random_instance(random.Random(seed), full)
    crit = F if full else P
    r = embed(spec, impl, loc1, loc2, delta, crit)
    want = brute_force_embed(spec, impl, loc1, loc2, delta, full)
    assert r.found == (want is not None)
    if r.found:
        assert verify_witness(r.witness, spec, impl, delta, crit)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9), st.lists(st.integers(0, 2), max_size=5))
def test_partial_monotone_under_unmapped_appends(seed, extra):
    spec, impl, loc1, loc2, delta = random_instance(random.Random(seed), False)
    before = embed(spec, impl, loc1, loc2, delta, P)
    if not before.found:
        return
    used = set().union(*before.witness.values())
    spare = [l for l in loc2 if l not in used]
    if not spare:
        return
    longer = [Trace(t.entries + tuple(TraceEntry(spare[0], v) for v in extra)) for t in impl]
    assert embed(spec, longer, loc1, loc2, delta, P).found


# ----------------------------------------------------------------- groups


def _group_lines(p):
    by_id = {s.loc.id: s.loc.line for s in p.statements()}
    return [sorted(by_id[i] for i in g) for g in one_to_many_candidates(p)]


def test_r5_has_one_cp_group(anagram_impls):
    assert _group_lines(anagram_impls["r5"]) == [[9, 11, 13]]


def test_straight_line_has_no_groups():
    p = load_program("P(s) {\n  x := 1;\n  x := 2; }")
    assert one_to_many_candidates(p) == []


def test_branches_assigning_different_variables_have_no_groups():
    p = load_program("P(s) {\n  if (s == \"\") x := 1;\n  else y := 2; }")
    assert one_to_many_candidates(p) == []


def test_if_else_same_variable_groups():
    p = load_program("P(s) {\n  if (s == \"\") x := 1;\n  else x := 2; }")
    assert _group_lines(p) == [[2, 3]]
