"""The subsequence relation between a specification trace and an
implementation trace under a location mapping."""

from __future__ import annotations

from collections import Counter
from typing import Dict, Optional

from ..lang.ast import Location
from ..lang.equality import DEFAULT, ComparisonFunction
from ..lang.trace import Trace
from ..lang.values import LOOP
from .types import Criterion, MappingFunction


def inverse(pi: MappingFunction) -> Dict[Location, Location]:
    inv: Dict[Location, Location] = {}
    for spec_loc, image in pi.items():
        for impl_loc in image:
            if impl_loc in inv:
                raise ValueError(f"{impl_loc} is in the image of both {inv[impl_loc]} and {spec_loc}")
            inv[impl_loc] = spec_loc
    return inv


def subsequence(g1: Trace, g2: Trace, delta: Optional[ComparisonFunction],
                criterion: Criterion, pi: MappingFunction) -> bool:
    """Decide ``g1`` ⊑ ``g2`` under ``pi`` with one left-to-right scan.

    Entries of ``g1`` at unmapped optional (cover) locations are ignored;
    an unmapped non-optional location makes the answer ``False``. A
    ``cover(v)`` location is never embedded entry by entry: its image may
    occur at most as often as the bounds recorded at its occurrences
    allow. Under the full criterion every other mapped location must
    occur equally often on both sides.
    """
    inv = inverse(pi)
    required = []
    bounds: Counter = Counter()
    for e in g1:
        if e.loc not in pi:
            if e.optional:
                continue
            return False
        if e.bound is not None:
            bounds[e.loc] += e.bound
        else:
            required.append(e)
    full = criterion is Criterion.FULL
    counting = full or bool(bounds)
    rels = [DEFAULT if delta is None else delta(e.loc) for e in required]
    n = len(required)
    i = 0
    seen: Counter = Counter()
    for e2 in g2:
        owner = inv.get(e2.loc)
        if owner is None or e2.value is LOOP:
            continue
        if counting:
            seen[owner] += 1
        elif i == n:
            break
        if i < n:
            e1 = required[i]
            if e1.loc == owner and rels[i](e1.value, e2.value):
                i += 1
    if i < n:
        return False
    for loc, bound in bounds.items():
        if seen[loc] > bound:
            return False
    if full:
        wanted = Counter(e.loc for e in required)
        for loc in pi:
            if loc not in bounds and seen[loc] != wanted[loc]:
                return False
    return True
