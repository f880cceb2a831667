"""Command-line interface.

Data goes to stdout, diagnostics to stderr. Exit statuses: 0 success,
1 negative analysis result (languages differ, a run blocks, a process is
neither fully-listening nor trivializable, a witness drive fails),
2 input errors, 3 exploration caps.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis, switching, translate
from .cts import ComposedCts, Cts
from .documents import Document, dumps, loads
from .dot import VIEWS, export_dot
from .errors import InputError, ResourceError
from .explore import bounded_language
from .values import canonical_key, canonical_sorted, encode, fmt_value, fmt_word

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3
MACHINE_KINDS = ("global-aa", "local-aa", "cts", "cts-system")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _read(path: str) -> Document:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def _machine(path: str):
    doc = _read(path)
    if doc.kind not in MACHINE_KINDS:
        raise InputError(f"{path}: expected one of {MACHINE_KINDS}, got {doc.kind!r}")
    return ComposedCts([doc.body]) if doc.kind == "cts" else doc.body


def _system(path: str) -> ComposedCts:
    doc = _read(path)
    if doc.kind == "cts":
        return ComposedCts([doc.body])
    if doc.kind != "cts-system":
        raise InputError(f"{path}: expected a cts or cts-system document, got {doc.kind!r}")
    return doc.body


def _lookup(name: str, candidates, what: str):
    """Match a command-line token against values by their printed form."""
    for c in candidates:
        if str(c) == name or fmt_value(c) == name:
            return c
    raise InputError(f"unknown {what} {name!r}; known: {', '.join(map(fmt_value, candidates))}")


def _word(text: str | None, letters) -> tuple:
    if not text:
        return ()
    tokens = text.replace(",", " ").split()
    return tuple(_lookup(t, letters, "letter") for t in tokens)


def _letters(m) -> tuple:
    return tuple(m.channels) if isinstance(m, ComposedCts) else tuple(m.letters)


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# verbs


def cmd_gen(args) -> int:
    if args.family == "single":
        system = switching.single_system(args.n, args.order, args.cycle)
    else:
        rotation = args.cycle if args.cycle in switching.ROTATIONS else "index"
        system = switching.double_system(args.n, rotation)
    _emit(dumps(system))
    return EXIT_OK


def cmd_compose(args) -> int:
    comps, procs = [], []
    for path in args.files:
        doc = _read(path)
        if doc.kind == "cts":
            comps.append(doc.body)
            procs.append(f"p{len(procs) + 1}")
        elif doc.kind == "cts-system":
            comps.extend(doc.body.components)
            procs.extend(doc.body.processes)
        else:
            raise InputError(f"{path}: cannot compose a {doc.kind!r} document")
    if len(set(procs)) != len(procs):
        procs = None
    system = ComposedCts(comps, procs)
    _emit(dumps(system.to_cts(args.cap) if args.flatten else system))
    return EXIT_OK


def cmd_translate(args) -> int:
    doc = _read(args.file)
    mode = args.mode
    if mode in ("aa-to-cts", "laa-to-cts"):
        want = "global-aa" if mode == "aa-to-cts" else "local-aa"
        if doc.kind != want:
            raise InputError(f"{mode} needs a {want!r} document, got {doc.kind!r}")
        aa = doc.body
        fn = translate.aa_to_cts if mode == "aa-to-cts" else translate.laa_to_cts
        out = ComposedCts(fn(aa), aa.processes)
    else:
        system = _system(args.file)
        if mode == "cts-to-aa":
            out = translate.cts_to_aa(system, resolve=args.resolve, cap=args.cap)
        elif mode == "cts-to-laa":
            out = translate.cts_to_laa(system, cap=args.cap)
        else:
            if args.executor is None:
                raise InputError("cts-to-aa-executor needs --executor")
            executor = _lookup(args.executor, system.processes, "process")
            listen = {}
            for item in args.listen or ():
                name, _, chans = item.partition("=")
                p = _lookup(name, system.processes, "process")
                listen[p] = _word(chans, system.channels)
            choice = translate.ExecutorChoice(executor, listen)
            out = translate.cts_to_aa_executor(system, choice, resolve=args.resolve, cap=args.cap)
    _emit(dumps(out))
    return EXIT_OK


def cmd_run(args) -> int:
    m = _machine(args.file)
    word = _word(args.word, _letters(m))
    current = frozenset(m.initial_states())
    for i, a in enumerate(word):
        current = frozenset(t for s in current for b, t in m.moves(s) if b == a)
        if not current:
            print(f"blocked at position {i} on {fmt_value(a)} after {fmt_word(word[:i])}", file=sys.stderr)
            return EXIT_NEGATIVE
    for s in canonical_sorted(current):
        _emit(fmt_value(s))
    return EXIT_OK


def cmd_lang(args) -> int:
    m = _machine(args.file)
    words = bounded_language(m, args.max_len, args.cap)
    for w in sorted(words, key=lambda w: (len(w), canonical_key(w))):
        _emit(fmt_word(w))
    return EXIT_OK


def cmd_equiv(args) -> int:
    left, right = _machine(args.a), _machine(args.b)
    res = analysis.equiv_upto(left, right, args.max_len, args.cap)
    if res:
        _emit(f"equal up to length {args.max_len}")
        return EXIT_OK
    _emit(f"differ: {fmt_word(res.word)} (only in {res.accepted_by})")
    return EXIT_NEGATIVE


def _report_text(report: analysis.AnalysisReport) -> str:
    lines = [f"configurations: {report.configurations}"]
    for v in report.verdicts:
        lines.append(f"{fmt_value(v.process)}: {v.verdict}")
        d = v.detail
        if d is not None and not d:
            lines.append(f"  stuck at {fmt_value(d.stuck)} reached by {fmt_word(d.stuck_word)}")
    lines.append(f"note: {report.note}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    doc = _read(args.file)
    if doc.kind not in ("global-aa", "local-aa"):
        raise InputError(f"analyze needs an automaton document, got {doc.kind!r}")
    aa = doc.body
    procs = None if args.process is None else [_lookup(args.process, aa.processes, "process")]
    report = analysis.analyze(aa, procs, args.cap)
    _emit(dumps(report) if args.format == "json" else _report_text(report))
    return EXIT_OK if report.dichotomy_holds else EXIT_NEGATIVE


def cmd_witness(args) -> int:
    doc = _read(args.file)
    if doc.kind not in ("global-aa", "local-aa"):
        raise InputError(f"witness needs an automaton document, got {doc.kind!r}")
    b = doc.body
    ref = _system(args.ref)
    p = _lookup(args.process, b.processes, "process")
    w = _word(args.word, b.letters)
    rep = analysis.lemma_witness_drive(b, p, ref, w, args.bound, args.check_len)
    data = {
        "process": encode(rep.process),
        "channel": encode(rep.channel),
        "word": encode(rep.word),
        "continuation": encode(rep.continuation),
        "bound": rep.bound,
        "ok": rep.ok,
        "checked": rep.checked,
        "blocked_word": None if rep.blocked_word is None else encode(rep.blocked_word),
        "ref_stable": rep.ref_stable,
    }
    _emit(json.dumps(data, indent=1, sort_keys=True))
    return EXIT_OK if rep.ok else EXIT_NEGATIVE


def cmd_schedule(args) -> int:
    system = switching.single_system(args.n)
    sched = switching.switching_schedule(system, args.steps)
    _emit(switching.format_schedule(sched, system.channels))
    return EXIT_OK


def cmd_export(args) -> int:
    doc = _read(args.file)
    if doc.kind not in MACHINE_KINDS:
        raise InputError(f"cannot export a {doc.kind!r} document")
    obj = doc.body
    component = None
    if args.component is not None:
        procs = obj.processes if not isinstance(obj, Cts) else ()
        component = _lookup(args.component, procs, "component")
    _emit(export_dot(obj, args.view, component, args.cap))
    return EXIT_OK


def cmd_validate(args) -> int:
    doc = _read(args.file)
    _emit(f"ok: {doc.kind} (version {doc.version})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zielonka-cts", description=__doc__.splitlines()[0])
    parser.add_argument("--cap", type=int, default=None, help="state-space cap")
    sub = parser.add_subparsers(dest="verb", metavar="verb", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("gen", help="generate a switching-channel system")
    p.add_argument("family", choices=("single", "double"))
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--order", default="size-lex", choices=sorted(switching.ORDERS))
    p.add_argument("--cycle", default="index",
                   help="cycle policy (single) or role rotation (double: index|disjoint)")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("compose", help="compose cts documents into a system")
    p.add_argument("files", nargs="+")
    p.add_argument("--flatten", action="store_true", help="emit the reachable product as one cts")
    p.set_defaults(fn=cmd_compose)

    p = sub.add_parser("translate", help="translate between automata and cts systems")
    p.add_argument("mode", choices=("aa-to-cts", "laa-to-cts", "cts-to-aa", "cts-to-laa",
                                    "cts-to-aa-executor"))
    p.add_argument("file")
    p.add_argument("--executor")
    p.add_argument("--listen", action="append", metavar="P=C1,C2",
                   help="listening set of a non-executor process (repeatable)")
    p.add_argument("--resolve", action="store_true",
                   help="pick the least successor instead of rejecting nondeterminism")
    p.set_defaults(fn=cmd_translate)

    p = sub.add_parser("run", help="run a word and print the reached states")
    p.add_argument("file")
    p.add_argument("--word", default="")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("lang", help="list the words up to a length")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=4)
    p.set_defaults(fn=cmd_lang)

    p = sub.add_parser("equiv", help="compare bounded languages")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--max-len", type=int, default=5)
    p.set_defaults(fn=cmd_equiv)

    p = sub.add_parser("analyze", help="classify processes of an automaton")
    p.add_argument("file")
    p.add_argument("--process")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("witness", help="drive a switching reference and check a process")
    p.add_argument("file")
    p.add_argument("--process", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--word", default="")
    p.add_argument("--bound", type=int, default=4)
    p.add_argument("--check-len", type=int, default=5)
    p.set_defaults(fn=cmd_witness)

    p = sub.add_parser("schedule", help="print the switching schedule table")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--steps", type=int, default=32)
    p.set_defaults(fn=cmd_schedule)

    p = sub.add_parser("export", help="render a machine as DOT")
    p.add_argument("file")
    p.add_argument("--view", choices=VIEWS, default="component")
    p.add_argument("--component")
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("validate", help="parse and check a document")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.fn(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        word = getattr(exc, "word", None)
        if word is not None:
            print(f"word: {fmt_word(word)}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
