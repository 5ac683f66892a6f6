"""Enumeration of the matchings of a potential graph that saturate the
specification side.

Backtracking over specification locations, pruned by a maximum-matching
feasibility test (Kuhn's augmenting paths) on what remains. With
singleton candidates the test is exact, so every branch entered yields at
least one matching and the delay between outputs is polynomial. Merged
one-to-many candidates may overlap each other; the test then relaxes
overlaps among the remaining locations and disjointness is enforced when a
candidate is actually chosen.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence

from ..lang.ast import Location
from .graph import Candidate, PotentialGraph


def _augment(left: Location, cands: Dict[Location, Sequence[Candidate]], used: FrozenSet[Location],
             owner: Dict[Candidate, Location], seen: set) -> bool:
    for c in cands[left]:
        if c in seen or not used.isdisjoint(c):
            continue
        seen.add(c)
        prev = owner.get(c)
        if prev is None or _augment(prev, cands, used, owner, seen):
            owner[c] = left
            return True
    return False


def max_matching_size(lefts: Iterable[Location], cands: Dict[Location, Sequence[Candidate]],
                      used: FrozenSet[Location] = frozenset()) -> int:
    owner: Dict[Candidate, Location] = {}
    return sum(1 for l in lefts if _augment(l, cands, used, owner, set()))


def enumerate_maximum_matchings(graph: PotentialGraph,
                                loc1: Optional[Iterable[Location]] = None
                                ) -> Iterator[Dict[Location, FrozenSet[Location]]]:
    """Yield each mapping that maps every non-optional location in ``loc1``
    to a pairwise-disjoint candidate, exactly once.

    Optional locations are either mapped or left out of the mapping. If no
    saturating matching exists nothing is yielded, and this is detected
    before any search.
    """
    lefts = sorted(set(graph.edges if loc1 is None else loc1))
    cands: Dict[Location, Sequence[Candidate]] = {l: graph.edges.get(l, ()) for l in lefts}
    optional = graph.optional
    order: List[Location] = sorted(lefts, key=lambda l: (l in optional, len(cands[l]), l))
    required_from = [
        [l for l in order[k:] if l not in optional] for k in range(len(order) + 1)
    ]

    def feasible(k: int, used: FrozenSet[Location]) -> bool:
        rem = required_from[k]
        return max_matching_size(rem, cands, used) == len(rem)

    assign: Dict[Location, FrozenSet[Location]] = {}

    def search(k: int, used: FrozenSet[Location]) -> Iterator[Dict[Location, FrozenSet[Location]]]:
        if k == len(order):
            yield dict(assign)
            return
        left = order[k]
        for c in cands[left]:
            if not used.isdisjoint(c):
                continue
            now = used | c
            if feasible(k + 1, now):
                assign[left] = c
                yield from search(k + 1, now)
                del assign[left]
        if left in optional and feasible(k + 1, used):
            yield from search(k + 1, used)

    if feasible(0, frozenset()):
        yield from search(0, frozenset())
