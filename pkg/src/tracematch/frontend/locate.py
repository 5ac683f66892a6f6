"""Location numbering shared by the parser and the normalizer."""

from __future__ import annotations

import dataclasses
from collections import Counter
from typing import Dict, List, Tuple

from ..lang.ast import Break, Function, If, Location, Return, Skip, Stmt, While

# statements that never produce a trace entry do not compete for labels
_SILENT = (If, Skip, Return, Break)


def _preorder(stmts, out: List[Stmt]) -> None:
    for s in stmts:
        out.append(s)
        if isinstance(s, While):
            _preorder(s.prelude, out)
            _preorder(s.body, out)
        elif isinstance(s, If):
            _preorder(s.then, out)
            _preorder(s.orelse, out)


def relocate(program_name: str, functions: Dict[str, Function]) -> Dict[str, Function]:
    """Renumber every statement ``1..N`` in program order and label it.

    A traceable statement alone on its source line is labelled ``ℓ<line>``;
    when a line hosts several they become ``ℓ<line>.1``, ``ℓ<line>.2``...
    Numbering depends only on the program text, so repeated parses agree.
    """
    order: List[Stmt] = []
    for fn in functions.values():
        _preorder(fn.body, order)
    per_line = Counter(s.loc.line for s in order if not isinstance(s, _SILENT))
    seen_on_line: Counter = Counter()
    fresh: Dict[int, Location] = {}
    for n, s in enumerate(order, start=1):
        ln = s.loc.line
        if per_line[ln] <= 1 or isinstance(s, _SILENT):
            label = f"ℓ{ln}"
        else:
            seen_on_line[ln] += 1
            label = f"ℓ{ln}.{seen_on_line[ln]}"
        fresh[id(s)] = Location(program_name, n, (), ln, s.loc.col, s.loc.end_line, label)

    def rebuild(stmts) -> Tuple[Stmt, ...]:
        out = []
        for s in stmts:
            changes = {"loc": fresh[id(s)]}
            if isinstance(s, While):
                changes["prelude"] = rebuild(s.prelude)
                changes["body"] = rebuild(s.body)
            elif isinstance(s, If):
                changes["then"] = rebuild(s.then)
                changes["orelse"] = rebuild(s.orelse)
            out.append(dataclasses.replace(s, **changes))
        return tuple(out)

    return {name: dataclasses.replace(fn, body=rebuild(fn.body)) for name, fn in functions.items()}
