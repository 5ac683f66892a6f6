"""Matching driver: run the implementation once per input, try every
assignment of the specification's nondeterministic variables, and report
which specifications (and so which feedback texts) apply."""

from __future__ import annotations

import dataclasses
import itertools
import time
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .embedding import Criterion, embed, instantiate_groups, one_to_many_candidates
from .embedding.embed import DEFAULT_ENUMERATION_BUDGET
from .errors import ExecutionError, RuntimeFault, TraceMatchError
from .lang.ast import (
    Assign, Call, CoverFun, CoverVar, If, Lit, Location, Observe, ObserveFun, Program,
    Skip, Stmt, While, Wild,
)
from .lang.equality import IDENTITY, ComparisonFunction
from .lang.trace import Trace
from .lang.values import DONT_CARE, render
from .runtime import DEFAULT_STEP_BUDGET, STANDARD, Executor, LibraryRegistry

Inputs = Mapping[str, Any]


@dataclass(frozen=True)
class Specification:
    name: str
    program: Program
    criterion: Criterion
    inputs: Tuple[Inputs, ...]
    feedback: str = ""
    delta: ComparisonFunction = field(default=IDENTITY)

    def __post_init__(self) -> None:
        if not self.program.is_specification:
            raise ValueError(f"{self.name}: program is not a specification")
        object.__setattr__(self, "criterion", Criterion(self.criterion))

    @property
    def kind(self) -> str:
        return "efficient" if self.criterion is Criterion.FULL else "inefficient"


@dataclass(frozen=True)
class MatchVerdict:
    spec: str
    criterion: Criterion
    matched: bool
    witness: Optional[Dict[Location, FrozenSet[Location]]] = None
    nondet: Optional[Dict[str, bool]] = None
    explored: int = 0
    assignments_tried: int = 0
    # per nondet assignment: spec location label -> labels of candidates
    diagnostics: Tuple[Tuple[str, Tuple[Tuple[str, Tuple[str, ...]], ...]], ...] = ()
    error: Optional[str] = None
    seconds: float = 0.0

    def to_json(self, timings: bool = False) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "spec": self.spec,
            "criterion": str(self.criterion),
            "matched": self.matched,
        }
        if self.error:
            out["error"] = self.error
        if self.matched:
            out["nondet"] = dict(self.nondet or {})
            out["witness"] = witness_json(self.witness or {})
        out["mappings_explored"] = self.explored
        out["nondet_assignments_tried"] = self.assignments_tried
        if not self.matched and self.diagnostics:
            out["candidates"] = {nd: {loc: list(c) for loc, c in rows} for nd, rows in self.diagnostics}
        if timings:
            out["seconds"] = round(self.seconds, 6)
        return out


def witness_json(pi: Mapping[Location, FrozenSet[Location]]) -> List[Dict[str, Any]]:
    rows = []
    for spec_loc in sorted(pi):
        image = sorted(pi[spec_loc])
        rows.append({
            "spec": str(spec_loc), "spec_id": spec_loc.id,
            "impl": [str(l) for l in image], "impl_ids": [l.id for l in image],
        })
    return rows


def nondet_assignments(names: Sequence[str]) -> List[Dict[str, bool]]:
    """All assignments in lexicographic order over the declared variables,
    ``true`` before ``false``."""
    return [dict(zip(names, vals)) for vals in itertools.product((True, False), repeat=len(names))]


def nondet_text(nd: Mapping[str, bool]) -> str:
    return ",".join(f"{k}={render(v)}" for k, v in nd.items()) or "-"


def _input_key(inputs: Inputs) -> Tuple:
    return tuple(sorted((k, render(v)) for k, v in inputs.items()))


class ImplementationRuns:
    """Implementation traces, computed once per distinct input."""

    def __init__(self, program: Program, *, registry: LibraryRegistry = STANDARD,
                 step_budget: int = DEFAULT_STEP_BUDGET) -> None:
        if program.is_specification:
            raise ValueError(f"{program.name} is a specification, not an implementation")
        self.program = program
        self.executor = Executor(program, "implementation", registry=registry, step_budget=step_budget)
        self._runs: Dict[Tuple, Any] = {}
        self._static_groups = one_to_many_candidates(program)

    def run(self, inputs: Inputs):
        key = _input_key(inputs)
        if key not in self._runs:
            try:
                self._runs[key] = self.executor.run(inputs)
            except RuntimeFault as exc:
                raise ExecutionError("implementation", exc) from exc
        return self._runs[key]

    def traces(self, inputs: Sequence[Inputs]) -> List[Trace]:
        return [self.run(i).trace for i in inputs]

    def groups(self, traces: Iterable[Trace]) -> List[FrozenSet[Location]]:
        return instantiate_groups(self._static_groups, traces)


def _trace_locations(traces: Iterable[Trace]) -> List[Location]:
    seen = set()
    for t in traces:
        seen.update(e.loc for e in t if not e.is_marker)
    return sorted(seen)


def matches(spec: Specification, impl: Program | ImplementationRuns,
            inputs: Optional[Sequence[Inputs]] = None, *,
            criterion: Optional[Criterion] = None,
            assignments: Optional[Sequence[Mapping[str, bool]]] = None,
            enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET,
            step_budget: int = DEFAULT_STEP_BUDGET,
            registry: LibraryRegistry = STANDARD) -> MatchVerdict:
    """Decide whether ``impl`` matches ``spec`` on ``inputs``.

    The first nondeterministic assignment admitting a witness wins; the
    same assignment serves every input.
    """
    start = time.perf_counter()
    runs = impl if isinstance(impl, ImplementationRuns) else \
        ImplementationRuns(impl, registry=registry, step_budget=step_budget)
    inputs = list(spec.inputs if inputs is None else inputs)
    if not inputs:
        raise ValueError(f"{spec.name}: no inputs to match on")
    crit = Criterion(criterion or spec.criterion)
    impl_traces = runs.traces(inputs)
    loc2 = _trace_locations(impl_traces)
    groups = runs.groups(impl_traces)
    spec_exec = Executor(spec.program, "specification", registry=registry, step_budget=step_budget)
    if assignments is None:
        assignments = nondet_assignments(spec.program.nondet_vars)
    explored = 0
    diagnostics = []
    for n, nd in enumerate(assignments, start=1):
        try:
            spec_traces = [spec_exec.run(i, nd).trace for i in inputs]
        except RuntimeFault as exc:
            raise ExecutionError("specification", exc) from exc
        loc1 = _trace_locations(spec_traces)
        result = embed(spec_traces, impl_traces, loc1, loc2, spec.delta, crit,
                       groups=groups, budget=max(enumeration_budget - explored, 0))
        explored += result.explored
        if result.found:
            return MatchVerdict(spec.name, crit, True, result.witness, dict(nd), explored, n,
                                seconds=time.perf_counter() - start)
        rows = tuple(
            (str(l), tuple("+".join(str(x) for x in sorted(c)) for c in result.candidates.get(l, ())))
            for l in loc1
        )
        diagnostics.append((nondet_text(nd), rows))
    return MatchVerdict(spec.name, crit, False, None, None, explored, len(assignments),
                        tuple(diagnostics), seconds=time.perf_counter() - start)


@dataclass(frozen=True)
class GradeReport:
    implementation: str
    verdicts: Tuple[MatchVerdict, ...]
    feedback: Tuple[Tuple[str, str], ...]

    @property
    def matched(self) -> Tuple[str, ...]:
        return tuple(v.spec for v in self.verdicts if v.matched)

    @property
    def unmatched(self) -> bool:
        return not self.matched

    @property
    def errors(self) -> Tuple[MatchVerdict, ...]:
        return tuple(v for v in self.verdicts if v.error)

    def to_json(self, timings: bool = False) -> Dict[str, Any]:
        out = {
            "implementation": self.implementation,
            "status": "UNMATCHED" if self.unmatched else "MATCHED",
            "matched": list(self.matched),
            "feedback": [{"spec": s, "text": t} for s, t in self.feedback],
            "verdicts": [v.to_json(timings) for v in self.verdicts],
        }
        if timings:
            out["seconds"] = round(sum(v.seconds for v in self.verdicts), 6)
        return out


def grade(impl: Program, registry: Sequence[Specification], *,
          enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET,
          step_budget: int = DEFAULT_STEP_BUDGET,
          library: LibraryRegistry = STANDARD) -> GradeReport:
    """Match ``impl`` against every specification; errors are recorded
    per specification and never stop the others."""
    runs = ImplementationRuns(impl, registry=library, step_budget=step_budget)
    verdicts = []
    for spec in registry:
        start = time.perf_counter()
        try:
            v = matches(spec, runs, enumeration_budget=enumeration_budget,
                        step_budget=step_budget, registry=library)
        except TraceMatchError as exc:
            v = MatchVerdict(spec.name, spec.criterion, False, error=f"{type(exc).__name__}: {exc}",
                             seconds=time.perf_counter() - start)
        verdicts.append(v)
    by_name = {s.name: s for s in registry}
    feedback = tuple((v.spec, by_name[v.spec].feedback) for v in verdicts if v.matched)
    return GradeReport(impl.name, tuple(verdicts), feedback)


# --------------------------------------------------------------- self-match


def erase_observations(spec: Program, nondet: Mapping[str, bool],
                       registry: LibraryRegistry = STANDARD) -> Program:
    """The specification body as an implementation.

    Nondeterministic variables become assignments at the top of the entry
    function. ``observe(v)`` becomes ``_obsN := v`` and ``observeFun(f(..))``
    becomes ``_obsN := f(..)`` with elided arguments passed as ``?``; both
    keep the observe statement's line and number. Cover statements vanish.
    """
    name = spec.name + "~erased"
    counter = itertools.count(1)
    ids = [s.loc.id for s in spec.statements()]
    next_id = itertools.count(max(ids, default=0) + 1)

    def moved(loc: Location) -> Location:
        return dataclasses.replace(loc, program=name)

    def rewrite(stmts: Tuple[Stmt, ...]) -> Tuple[Stmt, ...]:
        out = []
        for s in stmts:
            loc = moved(s.loc)
            if isinstance(s, Observe):
                out.append(Assign(loc, f"_obs{next(counter)}", s.expr))
            elif isinstance(s, ObserveFun):
                if s.args is None:
                    args = (Lit(DONT_CARE),) * registry.default_arity(s.fname)
                else:
                    args = tuple(Lit(DONT_CARE) if isinstance(a, Wild) else a for a in s.args)
                out.append(Assign(loc, f"_obs{next(counter)}", Call(s.fname, args)))
            elif isinstance(s, (CoverFun, CoverVar)):
                out.append(Skip(loc))
            elif isinstance(s, While):
                out.append(While(loc, s.cond, rewrite(s.body), rewrite(s.prelude)))
            elif isinstance(s, If):
                out.append(If(loc, s.cond, rewrite(s.then), rewrite(s.orelse)))
            else:
                out.append(dataclasses.replace(s, loc=loc))
        return tuple(out)

    functions = {}
    for fname, fn in spec.functions.items():
        body = rewrite(fn.body)
        if fname == spec.entry:
            prologue = []
            for v in fn.nondet:
                n = next(next_id)
                loc = Location(name, n, (), fn.line, 1, fn.line, f"ℓnd{n}")
                prologue.append(Assign(loc, v, Lit(bool(nondet[v]))))
            body = tuple(prologue) + body
        functions[fname] = dataclasses.replace(fn, body=body, nondet=())
    return Program(name, "implementation", functions, spec.entry, spec.line_offset)


def self_match(spec: Specification, nondet: Mapping[str, bool], **kw: Any) -> MatchVerdict:
    """Partial match of ``spec`` (under ``nondet`` only) against its own
    erased body."""
    erased = erase_observations(spec.program, nondet)
    return matches(spec, erased, criterion=Criterion.PARTIAL, assignments=[dict(nondet)], **kw)
