"""Independent reference implementations used by the tests.

Nothing here calls the embedding package: witnesses are found by trying
every injective location map, and subsequence checks use a memoised
recursion instead of a greedy scan.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from tracematch.lang.ast import Location
from tracematch.lang.equality import DEFAULT, ComparisonFunction, Relation
from tracematch.lang.trace import Trace, TraceEntry
from tracematch.lang.values import DONT_CARE, LOOP, LibRecord, data_view


# ------------------------------------------------------------- brute force


def _rel(delta: ComparisonFunction, loc: Location) -> Relation:
    return delta(loc) if delta is not None else DEFAULT


def partial_embeds(g1: Trace, g2: Trace, pi: Dict[Location, Location], delta) -> bool:
    image = set(pi.values())
    a = [(e.loc, e.value) for e in g1]
    b = [(e.loc, e.value) for e in g2 if not e.is_marker and e.loc in image]

    @lru_cache(maxsize=None)
    def go(i: int, j: int) -> bool:
        if i == len(a):
            return True
        if len(b) - j < len(a) - i:
            return False
        l1, v1 = a[i]
        l2, v2 = b[j]
        if pi[l1] == l2 and _rel(delta, l1)(v1, v2) and go(i + 1, j + 1):
            return True
        return go(i, j + 1)

    return go(0, 0)


def full_embeds(g1: Trace, g2: Trace, pi: Dict[Location, Location], delta) -> bool:
    image = set(pi.values())
    b = [e for e in g2 if not e.is_marker and e.loc in image]
    if len(b) != len(g1):
        return False
    for e1, e2 in zip(g1, b):
        if pi[e1.loc] != e2.loc or not _rel(delta, e1.loc)(e1.value, e2.value):
            return False
    return True


def observes_everything(g2: Trace, pi: Dict[Location, Location]) -> bool:
    image = set(pi.values())
    entries = list(g2)
    for e in entries:
        if not e.is_marker and type(e.value) is LibRecord and e.loc not in image:
            return False
    markers: Dict[Location, List[int]] = {}
    for i, e in enumerate(entries):
        if e.is_marker:
            markers.setdefault(e.loc, []).append(i)
    for positions in markers.values():
        for lo, hi in zip(positions, positions[1:]):
            if not any(not x.is_marker and x.loc in image for x in entries[lo + 1:hi]):
                return False
    return True


def brute_force_embed(spec_traces: Sequence[Trace], impl_traces: Sequence[Trace],
                      loc1: Sequence[Location], loc2: Sequence[Location], delta,
                      full: bool) -> Optional[Dict[Location, Location]]:
    loc1, loc2 = sorted(set(loc1)), sorted(set(loc2))
    for image in itertools.permutations(loc2, len(loc1)):
        pi = dict(zip(loc1, image))
        ok = True
        for g1, g2 in zip(spec_traces, impl_traces):
            if full:
                ok = full_embeds(g1, g2, pi, delta) and observes_everything(g2, pi)
            else:
                ok = partial_embeds(g1, g2, pi, delta)
            if not ok:
                break
        if ok:
            return pi
    return None


# ------------------------------------------------------- random instances


def loc(program: str, i: int) -> Location:
    return Location(program, i, (), i, 1, i, f"{program}{i}")


def _mod2(x, y) -> bool:
    if x is DONT_CARE or y is DONT_CARE:
        return True
    x, y = data_view(x), data_view(y)
    return type(x) is int and type(y) is int and x % 2 == y % 2


RELATIONS = (DEFAULT, Relation("parity", _mod2), Relation("any", lambda x, y: True))


def random_instance(rng: random.Random, full: bool):
    """Spec/impl traces of the sizes the acceptance criterion asks for.

    About half the instances plant a witness and then perturb it, so both
    answers occur often.
    """
    n1 = rng.randint(1, 4)
    n2 = rng.randint(n1, 6)
    L1 = [loc("s", i) for i in range(1, n1 + 1)]
    L2 = [loc("i", i) for i in range(1, n2 + 1)]
    loops = [loc("w", i) for i in range(1, 3)]
    delta = ComparisonFunction({l.id: rng.choice(RELATIONS) if rng.random() < 0.3 else DEFAULT
                                for l in L1})
    inputs = rng.randint(1, 2)
    planted = dict(zip(L1, rng.sample(L2, n1))) if rng.random() < 0.6 else None
    spec_traces, impl_traces = [], []
    for _ in range(inputs):
        g1 = []
        for _ in range(rng.randint(1, 8)):
            v = DONT_CARE if rng.random() < 0.08 else rng.randint(0, 2)
            g1.append(TraceEntry(rng.choice(L1), v))
        g2 = []
        for e in g1:
            while rng.random() < 0.4 and len(g2) < 18:
                g2.append(_noise(rng, L2, loops, full))
            if planted is not None and rng.random() < 0.9:
                v = rng.randint(0, 2) if e.value is DONT_CARE else e.value
                if full and rng.random() < 0.15:
                    v = LibRecord("f", (rng.randint(0, 2),), v)
                g2.append(TraceEntry(planted[e.loc], v))
            else:
                g2.append(_noise(rng, L2, loops, full))
        while rng.random() < 0.3 and len(g2) < 20:
            g2.append(_noise(rng, L2, loops, full))
        spec_traces.append(Trace(tuple(g1[:20])))
        impl_traces.append(Trace(tuple(g2[:20])))
    loc1 = sorted({e.loc for t in spec_traces for e in t})
    return spec_traces, impl_traces, loc1, L2, delta


def _noise(rng: random.Random, L2, loops, full: bool) -> TraceEntry:
    r = rng.random()
    if full and r < 0.15:
        return TraceEntry(rng.choice(loops), LOOP)
    if full and r < 0.22:
        return TraceEntry(rng.choice(L2), LibRecord("g", (), rng.randint(0, 2)))
    return TraceEntry(rng.choice(L2), rng.randint(0, 2))


# -------------------------------------------------- permutation patterns


def pattern_occurs(pattern: Sequence[int], text: Sequence[int]) -> bool:
    """Brute force: some subsequence of ``text`` is order-isomorphic to
    ``pattern``."""
    k = len(pattern)
    order = sorted(range(k), key=lambda i: pattern[i])
    for idx in itertools.combinations(range(len(text)), k):
        vals = [text[i] for i in idx]
        if all(vals[order[a]] < vals[order[a + 1]] for a in range(k - 1)):
            return True
    return False


def pattern_traces(pattern: Sequence[int], text: Sequence[int]
                   ) -> Tuple[Trace, Trace, List[Location], List[Location]]:
    """Reduce pattern matching to embedding on a single input.

    Each value becomes a location. A trace lists the locations in sequence
    order and then in value order, so an injective map embeds the pattern
    trace iff it picks text values in the same relative order both ways.
    """
    def trace(prog: str, seq: Sequence[int]) -> Trace:
        first = [TraceEntry(loc(prog, v), 0) for v in seq]
        second = [TraceEntry(loc(prog, v), 0) for v in sorted(seq)]
        return Trace(tuple(first + second))

    return (trace("p", pattern), trace("t", text),
            [loc("p", v) for v in sorted(pattern)], [loc("t", v) for v in sorted(text)])


def random_permutation(rng: random.Random, n: int) -> List[int]:
    xs = list(range(1, n + 1))
    rng.shuffle(xs)
    return xs
