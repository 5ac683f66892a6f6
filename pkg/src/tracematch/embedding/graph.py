"""Potential graph: which implementation candidates each specification
location could map to, judged one pair at a time."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from ..lang.ast import Location
from ..lang.equality import ComparisonFunction, values_equal
from ..lang.trace import Trace
from .types import Criterion

Candidate = FrozenSet[Location]


@dataclass(frozen=True)
class PotentialGraph:
    """Bipartite graph between specification locations and candidates.

    A candidate is a frozenset of implementation locations: a singleton,
    or a merged one-to-many group. ``optional`` holds the cover locations
    that a witness may leave unmapped.
    """

    edges: Dict[Location, Tuple[Candidate, ...]]
    optional: FrozenSet[Location] = frozenset()

    @property
    def left(self) -> Tuple[Location, ...]:
        return tuple(sorted(self.edges))

    def pairs(self) -> Set[Tuple[Location, Candidate]]:
        return {(a, c) for a, cs in self.edges.items() for c in cs}

    def singleton_pairs(self) -> Set[Tuple[Location, Location]]:
        """Edges to single implementation locations, as plain pairs."""
        return {(a, next(iter(c))) for a, c in self.pairs() if len(c) == 1}

    def __len__(self) -> int:
        return sum(len(cs) for cs in self.edges.values())


class SpecIndex:
    """Per-location view of one specification trace."""

    def __init__(self, trace: Trace) -> None:
        self.values: Dict[Location, List[Any]] = {}
        self.bound: Dict[Location, int] = {}
        self.optional: Set[Location] = set()
        for e in trace:
            if e.optional:
                self.optional.add(e.loc)
            if e.bound is not None:
                self.bound[e.loc] = self.bound.get(e.loc, 0) + e.bound
            else:
                self.values.setdefault(e.loc, []).append(e.value)


class ImplIndex:
    """Per-location positions and values of one implementation trace."""

    def __init__(self, trace: Trace) -> None:
        self.at: Dict[Location, List[Tuple[int, Any]]] = {}
        for pos, e in enumerate(trace):
            if not e.is_marker:
                self.at.setdefault(e.loc, []).append((pos, e.value))
        self._merged: Dict[Candidate, List[Any]] = {}

    def values(self, cand: Candidate) -> List[Any]:
        got = self._merged.get(cand)
        if got is None:
            if len(cand) == 1:
                got = [v for _, v in self.at.get(next(iter(cand)), ())]
            else:
                streams = [self.at.get(l, []) for l in sorted(cand)]
                got = [v for _, v in heapq.merge(*streams, key=lambda pv: pv[0])]
            self._merged[cand] = got
        return got


def pair_embeds(spec_vals: Sequence[Any], bound: Optional[int], impl_vals: Sequence[Any],
                delta: Optional[ComparisonFunction], loc: Location, criterion: Criterion) -> bool:
    """Restricted check for a single (spec location, candidate) pair."""
    if bound is not None:
        # cover(v): only the iteration bound constrains the image
        if len(impl_vals) > bound:
            return False
        if not spec_vals:
            return True
    n, m = len(spec_vals), len(impl_vals)
    if n > m or (criterion is Criterion.FULL and n != m):
        return False
    i = 0
    for v in impl_vals:
        if i == n:
            break
        if values_equal(delta, loc, spec_vals[i], v):
            i += 1
    return i == n


def build_potential_graph(spec_traces: Sequence[Trace], impl_traces: Sequence[Trace],
                          loc1: Iterable[Location], loc2: Iterable[Location],
                          delta: Optional[ComparisonFunction], criterion: Criterion,
                          groups: Iterable[Candidate] = (),
                          optional: Optional[Iterable[Location]] = None) -> PotentialGraph:
    """Keep the pair (l1, c) iff the l1-restricted spec trace embeds in the
    c-restricted implementation trace on every input."""
    if len(spec_traces) != len(impl_traces):
        raise ValueError("specification and implementation traces must come from the same inputs")
    specs = [SpecIndex(t) for t in spec_traces]
    impls = [ImplIndex(t) for t in impl_traces]
    candidates: List[Candidate] = [frozenset((l,)) for l in sorted(set(loc2))]
    candidates += sorted({frozenset(g) for g in groups if len(g) > 1}, key=lambda g: (len(g), sorted(g)))
    if optional is None:
        optional = set().union(*(s.optional for s in specs)) if specs else set()
    optional = frozenset(optional)
    edges: Dict[Location, Tuple[Candidate, ...]] = {}
    for l1 in sorted(set(loc1)):
        kept = []
        for cand in candidates:
            ok = True
            for s, m in zip(specs, impls):
                if not pair_embeds(s.values.get(l1, ()), s.bound.get(l1), m.values(cand),
                                   delta, l1, criterion):
                    ok = False
                    break
            if ok:
                kept.append(cand)
        edges[l1] = tuple(kept)
    return PotentialGraph(edges, optional)
