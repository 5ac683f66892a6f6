"""Specification bundles.

A bundle is a directory of ``.l`` files. Files whose header carries a
``#criterion`` pragma are specifications; the others hold equality
functions and are loaded only when a specification names them::

    #name RS
    #criterion partial
    #feedback Removing characters one by one is quadratic.
    #input s=abc,t=cab
    #equality CompareLetterString=cde.l

``#input`` may repeat, one line per input. A specification without inputs
falls back to the ``#input`` lines of ``defaults.inputs`` when present.
Specifications are registered in file-name order.

Input values::

    value  := int | true | false | 'c' | "text" | [value, ...] | bare
    bare   := any text up to the next ',' or ']' (taken as a string)

An empty value is the empty string.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from .embedding import Criterion
from .errors import BundleError, TraceMatchError
from .frontend import SourceUnit, load_program, split_header
from .lang.ast import CoverFun, Observe, ObserveFun, Program
from .lang.equality import ComparisonFunction, lift_custom
from .lang.values import Char, render
from .matcher import Specification
from .runtime import STANDARD, LibraryRegistry, eval_equality_fn

DEFAULTS_FILE = "defaults.inputs"


# ------------------------------------------------------------------ inputs


class _ValueReader:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> BundleError:
        return BundleError(f"input {self.text!r}, column {self.pos + 1}: {msg}")

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_space(self) -> None:
        while self.peek() == " ":
            self.pos += 1

    def quoted(self, quote: str) -> str:
        self.pos += 1
        out = []
        while True:
            c = self.peek()
            if not c:
                raise self.error("unterminated quote")
            self.pos += 1
            if c == quote:
                return "".join(out)
            if c == "\\":
                c = self.peek()
                if not c:
                    raise self.error("dangling escape")
                self.pos += 1
                c = {"n": "\n", "t": "\t", "0": "\0"}.get(c, c)
            out.append(c)

    def value(self) -> Any:
        self.skip_space()
        c = self.peek()
        if c == "[":
            self.pos += 1
            items = []
            self.skip_space()
            if self.peek() == "]":
                self.pos += 1
                return ()
            while True:
                items.append(self.value())
                self.skip_space()
                c = self.peek()
                self.pos += 1
                if c == "]":
                    return tuple(items)
                if c != ",":
                    raise self.error("expected ',' or ']'")
        if c == '"':
            return self.quoted('"')
        if c == "'":
            s = self.quoted("'")
            if len(s) != 1:
                raise self.error(f"character literal {s!r} is not one character")
            return Char(s)
        start = self.pos
        while self.peek() not in ("", ",", "]"):
            self.pos += 1
        word = self.text[start:self.pos].strip()
        if word in ("true", "false"):
            return word == "true"
        try:
            return int(word)
        except ValueError:
            return word


def parse_value(text: str) -> Any:
    """Parse one input value."""
    r = _ValueReader(text)
    v = r.value()
    r.skip_space()
    if r.pos != len(text):
        raise r.error("trailing text")
    return v


def parse_inputs(text: str) -> Dict[str, Any]:
    """Parse ``name=value,name=value`` into a dict."""
    r = _ValueReader(text)
    out: Dict[str, Any] = {}
    r.skip_space()
    while r.pos < len(text):
        start = r.pos
        while r.peek() not in ("", "="):
            r.pos += 1
        name = text[start:r.pos].strip()
        if not r.peek() or not name.isidentifier():
            raise r.error("expected name=value")
        r.pos += 1
        if name in out:
            raise r.error(f"{name} given twice")
        out[name] = r.value()
        r.skip_space()
        if r.peek() == ",":
            r.pos += 1
        elif r.peek():
            raise r.error("expected ','")
        r.skip_space()
    return out


def format_inputs(inputs: Mapping[str, Any]) -> str:
    """Inverse of :func:`parse_inputs` (strings are always quoted)."""
    return ",".join(f"{k}={render(v)}" for k, v in inputs.items())


# --------------------------------------------------------------- equality


def equality_relations(program: Program, sources: Mapping[str, Program], *,
                       registry: LibraryRegistry = STANDARD,
                       step_budget: int = 100_000) -> ComparisonFunction:
    """Bind each ``observe(.., F)`` to the L predicate ``F`` found in
    ``sources`` (function name -> program defining it)."""
    rels = {}
    for s in program.statements():
        if not isinstance(s, (Observe, ObserveFun, CoverFun)) or not s.eq:
            continue
        if s.eq not in sources:
            raise BundleError(f"{program.name}: equality function {s.eq!r} not provided")
        fn_prog = sources[s.eq]

        def test(x, y, _p=fn_prog, _f=s.eq, _memo={}):
            # pure L function: reuse answers; rendered keys keep 1 and true apart
            key = (render(x), render(y))
            if key not in _memo:
                _memo[key] = eval_equality_fn(_p, _f, x, y, step_budget=step_budget,
                                              registry=registry)
            return _memo[key]

        rels[s.loc.id] = lift_custom(s.eq, test)
    return ComparisonFunction(rels)


# ----------------------------------------------------------------- bundles


@dataclass(frozen=True)
class SpecSource:
    file: str
    text: str


@dataclass
class Bundle:
    directory: Optional[Path]
    specs: List[Specification]
    sources: Dict[str, SpecSource] = field(default_factory=dict)
    equality_files: Dict[str, str] = field(default_factory=dict)
    default_inputs: Tuple[Dict[str, Any], ...] = ()

    def names(self) -> List[str]:
        return [s.name for s in self.specs]

    def __iter__(self):
        return iter(self.specs)

    def __len__(self) -> int:
        return len(self.specs)


def _pragma_inputs(unit: SourceUnit, where: str) -> Tuple[Dict[str, Any], ...]:
    try:
        return tuple(parse_inputs(v) for v in unit.pragma_all("input"))
    except BundleError as exc:
        raise BundleError(f"{where}: {exc}") from None


def load_specification(text: str, *, file: str = "<spec>",
                       equality_dir: Optional[Path] = None,
                       default_inputs: Sequence[Mapping[str, Any]] = (),
                       registry: LibraryRegistry = STANDARD) -> Specification:
    """Build a specification from its source text and pragma header."""
    stem = Path(file).stem
    unit = SourceUnit.from_text(text, "specification", source=file)
    name = unit.pragma("name") or stem
    crit_text = unit.pragma("criterion")
    if crit_text is None:
        raise BundleError(f"{file}: missing #criterion")
    try:
        criterion = Criterion.parse(crit_text)
    except ValueError as exc:
        raise BundleError(f"{file}: {exc}") from None
    try:
        program = load_program(text, "specification", name, file)
    except TraceMatchError as exc:
        raise BundleError(f"{file}: {exc}") from exc
    inputs = _pragma_inputs(unit, file) or tuple(dict(i) for i in default_inputs)
    if not inputs:
        raise BundleError(f"{file}: no #input lines and no bundle defaults")
    params = set(program.params)
    for i in inputs:
        if set(i) != params:
            raise BundleError(f"{file}: input {format_inputs(i)} does not bind {sorted(params)}")
    providers: Dict[str, Program] = {}
    for entry in unit.pragma_all("equality"):
        fname, _, ref = entry.partition("=")
        fname, ref = fname.strip(), ref.strip()
        if not fname or not ref:
            raise BundleError(f"{file}: malformed #equality {entry!r}")
        if equality_dir is None:
            raise BundleError(f"{file}: #equality needs a bundle directory")
        path = equality_dir / ref
        try:
            eq_text = path.read_text(encoding="utf-8")
            eq_prog = load_program(eq_text, "implementation", path.stem, str(path))
        except OSError as exc:
            raise BundleError(f"{file}: cannot read {ref}: {exc}") from exc
        except TraceMatchError as exc:
            raise BundleError(f"{file}: {ref}: {exc}") from exc
        if fname not in eq_prog.functions or len(eq_prog.functions[fname].params) != 2:
            raise BundleError(f"{file}: {ref} defines no two-argument function {fname!r}")
        providers[fname] = eq_prog
    delta = equality_relations(program, providers, registry=registry)
    return Specification(name, program, criterion, inputs,
                         " ".join(unit.pragma_all("feedback")), delta)


def read_default_inputs(directory: os.PathLike | str) -> Tuple[Dict[str, Any], ...]:
    """The ``#input`` lines of ``defaults.inputs`` in ``directory``, if any."""
    dpath = Path(directory) / DEFAULTS_FILE
    if not dpath.exists():
        return ()
    unit = SourceUnit.from_text(dpath.read_text(encoding="utf-8"), "specification")
    return _pragma_inputs(unit, str(dpath))


def load_bundle(directory: os.PathLike | str, *, registry: LibraryRegistry = STANDARD) -> Bundle:
    """Load and validate every specification in ``directory``."""
    root = Path(directory)
    if not root.is_dir():
        raise BundleError(f"{root}: not a directory")
    defaults = read_default_inputs(root)
    specs: List[Specification] = []
    sources: Dict[str, SpecSource] = {}
    equality_files: Dict[str, str] = {}
    for path in sorted(root.glob("*.l")):
        text = path.read_text(encoding="utf-8")
        pragmas, _, _ = split_header(text)
        if not any(k == "criterion" for k, _ in pragmas):
            equality_files[path.name] = text
            continue
        spec = load_specification(text, file=str(path), equality_dir=root,
                                  default_inputs=defaults, registry=registry)
        if spec.name in sources:
            raise BundleError(f"{path}: specification name {spec.name!r} used twice")
        specs.append(spec)
        sources[spec.name] = SpecSource(path.name, text)
    if not specs:
        raise BundleError(f"{root}: no specification files (none has #criterion)")
    return Bundle(root, specs, sources, equality_files, defaults)


def write_bundle(bundle: Bundle, directory: os.PathLike | str) -> Path:
    """Write ``bundle`` to ``directory`` so that :func:`load_bundle` yields
    the same specifications. Headers are regenerated from the loaded
    values; program bodies are copied verbatim."""
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    for fname, text in bundle.equality_files.items():
        (root / fname).write_text(text, encoding="utf-8")
    if bundle.default_inputs:
        lines = [f"#input {format_inputs(i)}" for i in bundle.default_inputs]
        (root / DEFAULTS_FILE).write_text("\n".join(lines) + "\n", encoding="utf-8")
    for spec in bundle.specs:
        src = bundle.sources[spec.name]
        pragmas, body, _ = split_header(src.text)
        header = [f"#name {spec.name}", f"#criterion {spec.criterion}"]
        if spec.feedback:
            header.append(f"#feedback {spec.feedback}")
        header += [f"#input {format_inputs(i)}" for i in spec.inputs]
        header += [f"#{k} {v}" for k, v in pragmas if k in ("equality", "entry")]
        (root / src.file).write_text("\n".join(header) + "\n" + body, encoding="utf-8")
    return root


def corpus_path(*parts: str) -> Path:
    """Path inside the corpus shipped with the package."""
    return Path(__file__).parent.joinpath("corpus", *parts)
