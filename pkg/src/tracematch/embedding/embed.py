from __future__ import annotations

from typing import FrozenSet, Iterable, Optional, Sequence

from ..errors import EnumerationBudgetExceeded
from ..lang.ast import Location
from ..lang.equality import ComparisonFunction
from ..lang.trace import Trace
from .coverage import check_observed_coverage
from .graph import build_potential_graph
from .matching import enumerate_maximum_matchings
from .subsequence import subsequence
from .types import Criterion, EmbeddingResult, MappingFunction

DEFAULT_ENUMERATION_BUDGET = 1_000_000


def verify_witness(pi: MappingFunction, spec_traces: Sequence[Trace], impl_traces: Sequence[Trace],
                   delta: Optional[ComparisonFunction], criterion: Criterion) -> bool:
    """Check ``pi`` against every input (plus coverage under full)."""
    for g1, g2 in zip(spec_traces, impl_traces):
        if not subsequence(g1, g2, delta, criterion, pi):
            return False
    if criterion is Criterion.FULL:
        return all(check_observed_coverage(pi, g2) for g2 in impl_traces)
    return True


def embed(spec_traces: Sequence[Trace], impl_traces: Sequence[Trace],
          loc1: Iterable[Location], loc2: Iterable[Location],
          delta: Optional[ComparisonFunction], criterion: Criterion, *,
          groups: Iterable[FrozenSet[Location]] = (),
          budget: int = DEFAULT_ENUMERATION_BUDGET) -> EmbeddingResult:
    """Search for a witness mapping: prune with the potential graph, then
    check candidate matchings one by one.

    Raises :class:`EnumerationBudgetExceeded` when more than ``budget``
    candidate mappings would have to be examined.
    """
    criterion = Criterion(criterion)
    loc1 = sorted(set(loc1))
    graph = build_potential_graph(spec_traces, impl_traces, loc1, loc2, delta, criterion, groups)
    explored = 0
    for pi in enumerate_maximum_matchings(graph, loc1):
        if explored >= budget:
            raise EnumerationBudgetExceeded(explored, budget)
        explored += 1
        if verify_witness(pi, spec_traces, impl_traces, delta, criterion):
            return EmbeddingResult(True, pi, explored, dict(graph.edges))
    note = "" if explored else "no matching covers every observed location"
    return EmbeddingResult(False, None, explored, dict(graph.edges), note)
