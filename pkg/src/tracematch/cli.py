"""Command-line interface.

Exit codes: 0 success (for ``grade``: at least one specification matched),
2 usage, parse, runtime or bundle error, 3 no specification matched,
4 the implementation disagrees with the reference solution and was not
graded for performance.

Budgets can be set with ``TRACEMATCH_STEP_BUDGET`` and
``TRACEMATCH_ENUMERATION_BUDGET``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .bundle import (Bundle, format_inputs, load_bundle, load_specification, parse_inputs,
                     read_default_inputs)
from .embedding import Criterion
from .embedding.embed import DEFAULT_ENUMERATION_BUDGET
from .errors import TraceMatchError
from .frontend import SourceUnit, load_program, program_text, split_header
from .lang.ast import Program
from .lang.values import render, structurally_equal
from .matcher import GradeReport, MatchVerdict, grade, matches, nondet_text
from .runtime import DEFAULT_STEP_BUDGET, STANDARD, Executor

EXIT_OK, EXIT_ERROR, EXIT_UNMATCHED, EXIT_NOT_GRADED = 0, 2, 3, 4

STEP_ENV = "TRACEMATCH_STEP_BUDGET"
ENUM_ENV = "TRACEMATCH_ENUMERATION_BUDGET"


class CliError(Exception):
    pass


def _budget(env: str, default: int) -> int:
    raw = os.environ.get(env)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise CliError(f"{env} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise CliError(f"{env} must be positive")
    return value


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str, role: str) -> Program:
    """Parse a file; without a ``#name`` pragma the file stem names it."""
    text = _read(path)
    pragmas, _, _ = split_header(text)
    named = any(k == "name" for k, _ in pragmas)
    return load_program(text, role, None if named else Path(path).stem, path)


def _nondet(text: Optional[str]) -> Dict[str, bool]:
    if not text:
        return {}
    out = parse_inputs(text)
    for k, v in out.items():
        if type(v) is not bool:
            raise CliError(f"--nd {k} must be true or false")
    return out


def _emit(data: Any) -> None:
    print(json.dumps(data, ensure_ascii=False, indent=2))


# ----------------------------------------------------------------- commands


def cmd_trace(args: argparse.Namespace) -> int:
    program = _load(args.file, args.role)
    if args.input is not None:
        inputs = parse_inputs(args.input)
    else:
        declared = SourceUnit.from_text(_read(args.file), args.role).pragma_all("input")
        inputs = parse_inputs(declared[0]) if declared else {}
    ex = Executor(program, registry=STANDARD,
                  step_budget=_budget(STEP_ENV, DEFAULT_STEP_BUDGET))
    result = ex.run(inputs, _nondet(args.nd))
    if args.json:
        _emit({
            "program": program.name,
            "inputs": format_inputs(inputs),
            "returned": None if result.returned is None else render(result.returned),
            "trace": [{"loc": str(e.loc), "id": e.loc.id, "value": e.render().split("\t", 1)[1]}
                      for e in result.trace if args.markers or not e.is_marker],
        })
    else:
        print(result.trace.dump(markers=args.markers), end="")
    return EXIT_OK


def cmd_normalize(args: argparse.Namespace) -> int:
    print(program_text(_load(args.file, args.role)), end="")
    return EXIT_OK


def _verdict_line(v: MatchVerdict) -> str:
    if v.error:
        state = f"error: {v.error}"
    elif v.matched:
        state = f"matched  {nondet_text(v.nondet or {})}"
    else:
        state = "no"
    return f"  {v.spec:<8} {str(v.criterion):<8} {state}"


def cmd_match(args: argparse.Namespace) -> int:
    spec_path = Path(args.spec)
    spec = load_specification(_read(args.spec), file=str(spec_path), equality_dir=spec_path.parent,
                              default_inputs=read_default_inputs(spec_path.parent))
    impl = _load(args.impl, "implementation")
    inputs = [parse_inputs(args.input)] if args.input is not None else None
    criterion = Criterion.parse(args.criterion) if args.criterion else None
    v = matches(spec, impl, inputs, criterion=criterion,
                enumeration_budget=_budget(ENUM_ENV, DEFAULT_ENUMERATION_BUDGET),
                step_budget=_budget(STEP_ENV, DEFAULT_STEP_BUDGET))
    if args.json:
        _emit({"implementation": impl.name, **v.to_json(args.timings)})
    else:
        print(f"{impl.name} vs {spec.name}: {'MATCHED' if v.matched else 'NOT MATCHED'}")
        if v.matched:
            print(f"  nondet: {nondet_text(v.nondet or {})}")
            for spec_loc in sorted(v.witness or {}):
                image = ", ".join(str(l) for l in sorted(v.witness[spec_loc]))
                print(f"  {spec_loc} -> {image}")
        else:
            for nd, rows in v.diagnostics:
                print(f"  [{nd}]")
                for loc, cands in rows:
                    print(f"    {loc}: {', '.join(cands) or '(no candidate)'}")
        if args.timings:
            print(f"  {v.seconds:.3f}s")
    return EXIT_OK if v.matched else EXIT_UNMATCHED


def _reference_check(impl: Program, reference: Program, bundle: Bundle) -> List[str]:
    """Inputs on which ``impl`` and ``reference`` return different values."""
    step_budget = _budget(STEP_ENV, DEFAULT_STEP_BUDGET)
    seen, failures = set(), []
    for spec in bundle.specs:
        for inputs in spec.inputs:
            key = format_inputs(inputs)
            if key in seen:
                continue
            seen.add(key)
            want = Executor(reference, "silent", step_budget=step_budget).run(inputs).returned
            got = Executor(impl, "silent", step_budget=step_budget).run(inputs).returned
            if not structurally_equal(want, got):
                failures.append(f"{key}: expected {render(want)}, got {render(got)}")
    return failures


def _grade_one(impl: Program, bundle: Bundle) -> GradeReport:
    return grade(impl, bundle.specs,
                 enumeration_budget=_budget(ENUM_ENV, DEFAULT_ENUMERATION_BUDGET),
                 step_budget=_budget(STEP_ENV, DEFAULT_STEP_BUDGET))


def _report_text(report: GradeReport, timings: bool) -> str:
    lines = [f"{report.implementation}: {'UNMATCHED' if report.unmatched else 'MATCHED'}"]
    lines += [_verdict_line(v) for v in report.verdicts]
    for spec, text in report.feedback:
        lines.append(f"  feedback [{spec}]: {text}")
    if timings:
        lines.append(f"  {sum(v.seconds for v in report.verdicts):.3f}s")
    return "\n".join(lines)


def cmd_grade(args: argparse.Namespace) -> int:
    bundle = load_bundle(args.bundle)
    impl = _load(args.impl, "implementation")
    if args.reference:
        failures = _reference_check(impl, _load(args.reference, "implementation"), bundle)
        if failures:
            if args.json:
                _emit({"implementation": impl.name, "status": "NOT-GRADED-FOR-PERFORMANCE",
                       "failures": failures})
            else:
                print(f"{impl.name}: NOT-GRADED-FOR-PERFORMANCE")
                for f in failures:
                    print(f"  {f}")
            return EXIT_NOT_GRADED
    report = _grade_one(impl, bundle)
    if args.json:
        _emit(report.to_json(args.timings))
    else:
        print(_report_text(report, args.timings))
    if report.errors and not report.matched:
        return EXIT_ERROR
    return EXIT_UNMATCHED if report.unmatched else EXIT_OK


def cmd_corpus_run(args: argparse.Namespace) -> int:
    bundle = load_bundle(args.bundle)
    files = sorted(Path(args.dir).glob("*.l"))
    if not files:
        raise CliError(f"{args.dir}: no .l files")
    impls = [_load(str(f), "implementation") for f in files]
    workers = max(1, args.workers)
    if workers == 1:
        reports = [_grade_one(p, bundle) for p in impls]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda p: _grade_one(p, bundle), impls))
    if args.json:
        out: Dict[str, Any] = {
            "bundle": bundle.names(),
            "reports": [r.to_json(args.timings) for r in reports],
        }
        _emit(out)
    else:
        width = max(len(r.implementation) for r in reports)
        for r in reports:
            got = ",".join(r.matched) or "UNMATCHED"
            err = "  (errors: " + ",".join(v.spec for v in r.errors) + ")" if r.errors else ""
            tail = f"  {sum(v.seconds for v in r.verdicts):.3f}s" if args.timings else ""
            print(f"{r.implementation:<{width}}  {got}{err}{tail}")
    return EXIT_ERROR if any(r.errors for r in reports) else EXIT_OK


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tracematch",
                                description="Match programs against strategy specifications "
                                            "by comparing execution traces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("trace", help="run a program and print its trace")
    t.add_argument("file")
    t.add_argument("--role", default="impl", choices=["impl", "spec", "implementation", "specification"])
    t.add_argument("--input", help="name=value,... (default: first #input of the file)")
    t.add_argument("--nd", help="nondeterministic choices, e.g. nd1=true,nd2=false")
    t.add_argument("--markers", action="store_true", help="include loop-iteration markers")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_trace)

    n = sub.add_parser("normalize", help="print the three-address form with location labels")
    n.add_argument("file")
    n.add_argument("--role", default="impl", choices=["impl", "spec", "implementation", "specification"])
    n.set_defaults(func=cmd_normalize)

    m = sub.add_parser("match", help="match one implementation against one specification")
    m.add_argument("impl")
    m.add_argument("spec")
    m.add_argument("--input", help="override the specification's inputs with one input")
    m.add_argument("--criterion", choices=["partial", "full"])
    m.add_argument("--json", action="store_true")
    m.add_argument("--timings", action="store_true")
    m.set_defaults(func=cmd_match)

    g = sub.add_parser("grade", help="match an implementation against every spec of a bundle")
    g.add_argument("impl")
    g.add_argument("bundle")
    g.add_argument("--reference", help="reference solution; skip grading if results differ")
    g.add_argument("--json", action="store_true")
    g.add_argument("--timings", action="store_true")
    g.set_defaults(func=cmd_grade)

    c = sub.add_parser("corpus-run", help="grade every .l file of a directory")
    c.add_argument("bundle")
    c.add_argument("dir")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--json", action="store_true")
    c.add_argument("--timings", action="store_true")
    c.set_defaults(func=cmd_corpus_run)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, TraceMatchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
