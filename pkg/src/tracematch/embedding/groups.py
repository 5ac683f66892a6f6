"""One-to-many candidates: the same variable assigned in different branches
of one if / else-if chain."""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from ..lang.ast import Assign, If, IndexAssign, Location, Program, Stmt, While, walk
from ..lang.trace import Trace


def _else_if(rest: Tuple[Stmt, ...]) -> Optional[If]:
    """The nested ``If`` when ``rest`` is an else-if, possibly preceded by
    the temporaries that normalization hoisted out of its condition."""
    if not rest or not isinstance(rest[-1], If):
        return None
    if all(isinstance(x, Assign) and x.target.startswith("$") for x in rest[:-1]):
        return rest[-1]
    return None


def _branches(s: If) -> List[Tuple[Stmt, ...]]:
    """Flatten ``if .. else if .. else`` into its list of branch bodies."""
    out = [s.then]
    rest = s.orelse
    while (nxt := _else_if(rest)) is not None:
        out.append(nxt.then)
        rest = nxt.orelse
    out.append(rest)
    return out


def _chain_tails(s: If) -> List[If]:
    tails = []
    rest = s.orelse
    while (nxt := _else_if(rest)) is not None:
        tails.append(nxt)
        rest = nxt.orelse
    return tails


def _targets(body: Tuple[Stmt, ...]) -> Dict[str, List[int]]:
    got: Dict[str, List[int]] = {}
    for s in body:
        if isinstance(s, (Assign, IndexAssign)) and not s.target.startswith("$"):
            got.setdefault(s.target, []).append(s.loc.id)
    return got


def one_to_many_candidates(program: Program) -> List[FrozenSet[int]]:
    """Static groups of statement ids, one per (if-chain, variable) pair
    whose variable is assigned directly in at least two branches."""
    groups: List[FrozenSet[int]] = []
    inner: Set[int] = set()
    for s in program.statements():
        if not isinstance(s, If) or s.loc.id in inner:
            continue
        inner.update(t.loc.id for t in _chain_tails(s))
        per_var: Dict[str, List[List[int]]] = {}
        for body in _branches(s):
            for var, ids in _targets(body).items():
                per_var.setdefault(var, []).append(ids)
        for var in sorted(per_var):
            hits = per_var[var]
            if len(hits) >= 2:
                groups.append(frozenset(i for ids in hits for i in ids))
    return groups


def instantiate_groups(static: Iterable[FrozenSet[int]], traces: Iterable[Trace]
                       ) -> List[FrozenSet[Location]]:
    """Turn static groups into candidate location sets, one per calling
    context in which at least two members actually executed."""
    static = list(static)
    seen: Dict[Tuple[int, Tuple[int, ...]], Set[Location]] = {}
    for t in traces:
        for e in t:
            if e.is_marker:
                continue
            for gi, g in enumerate(static):
                if e.loc.id in g:
                    seen.setdefault((gi, e.loc.context), set()).add(e.loc)
    out = {frozenset(locs) for locs in seen.values() if len(locs) > 1}
    return sorted(out, key=lambda g: (len(g), sorted(g)))
