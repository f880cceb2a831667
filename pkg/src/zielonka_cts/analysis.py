"""Fully-listening / trivializable classification, bounded language
equivalence, and the continuation driver that pushes a switching system
into a state where a chosen channel is the switching channel.

A process is trivializable when, from every reachable configuration,
some runnable continuation brings its local state into a bottom strongly
connected component of its local move graph in which every letter it
listens to has a move. The local move graph only contains moves the
global system can actually perform. None of this decides whether *every*
automaton for a language has the property; the checks apply to the
automaton at hand.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

import networkx as nx

from .cts import TOKEN, ComposedCts
from .errors import InputError, PreconditionError
from .explore import ReachableGraph, bounded_language, explore
from .switching import shared_roles
from .values import canonical_key, canonical_sorted

FULLY_LISTENING = "fully-listening"
TRIVIALIZABLE = "trivializable"
NEITHER = "neither-detected"

SCOPE_NOTE = (
    "Verdicts describe this automaton only; they do not show that every "
    "automaton with the same language behaves alike."
)


def fully_listening(aa, p) -> bool:
    return aa.alphabet.dom_inv(p) == frozenset(aa.letters)


@dataclass(frozen=True)
class Trivializability:
    """Result of :func:`trivializable`; truthy when the property holds.

    ``complete_sccs`` are the complete bottom components of the process's
    local move graph. ``paths`` maps each reachable configuration to a
    shortest continuation ending in one of them. ``stuck`` is a reachable
    configuration with no such continuation (None when the property holds).
    """

    process: object
    holds: bool
    complete_sccs: tuple
    bottom_sccs: tuple
    paths: dict = field(repr=False)
    stuck: tuple | None = None
    stuck_word: tuple | None = None

    def __bool__(self):
        return self.holds


def _local_graph(aa, graph: ReachableGraph, p) -> nx.DiGraph:
    i = aa.processes.index(p)
    heard = aa.alphabet.dom_inv(p)
    local = nx.MultiDiGraph()
    for g in graph.order:
        local.add_node(g[i])
        for a, g2 in graph.edges[g]:
            if a in heard:
                local.add_edge(g[i], g2[i], letter=a)
    return local


def _sorted_sccs(sccs):
    return tuple(
        sorted((frozenset(s) for s in sccs), key=lambda s: canonical_key(frozenset(s)))
    )


def trivializable(aa, p, cap=None, graph: ReachableGraph | None = None) -> Trivializability:
    if p not in aa.processes:
        raise InputError(f"unknown process {p!r}")
    graph = explore(aa, cap) if graph is None else graph
    heard = aa.alphabet.dom_inv(p)
    local = _local_graph(aa, graph, p)
    condensed = nx.condensation(nx.DiGraph(local))
    bottoms = [
        frozenset(condensed.nodes[n]["members"])
        for n in condensed.nodes
        if condensed.out_degree(n) == 0
    ]
    complete = []
    for scc in bottoms:
        ok = True
        for s in scc:
            letters = {d["letter"] for _u, v, d in local.out_edges(s, data=True) if v in scc}
            if not heard <= letters:
                ok = False
                break
        if ok:
            complete.append(scc)
    inside = frozenset().union(*complete) if complete else frozenset()
    i = aa.processes.index(p)

    # backward BFS from configurations already inside a complete component
    preds = graph.predecessors()
    paths = {}
    queue = deque()
    for g in graph.order:
        if g[i] in inside:
            paths[g] = ()
            queue.append(g)
    while queue:
        g2 = queue.popleft()
        for a, g in preds.get(g2, ()):
            if g not in paths:
                paths[g] = (a,) + paths[g2]
                queue.append(g)
    # prefer a witness already sitting in an incomplete bottom component
    trapped = frozenset().union(*bottoms) - inside if bottoms else frozenset()
    missing = [g for g in graph.order if g not in paths]
    stuck = next((g for g in missing if g[i] in trapped), missing[0] if missing else None)
    return Trivializability(
        process=p,
        holds=stuck is None,
        complete_sccs=_sorted_sccs(complete),
        bottom_sccs=_sorted_sccs(bottoms),
        paths=paths,
        stuck=stuck,
        stuck_word=None if stuck is None else graph.path_to(stuck),
    )


@dataclass(frozen=True)
class ProcessVerdict:
    process: object
    verdict: str
    listening: frozenset
    detail: Trivializability | None = None


@dataclass(frozen=True)
class AnalysisReport:
    verdicts: tuple
    configurations: int
    note: str = SCOPE_NOTE

    def verdict_of(self, p) -> str:
        for v in self.verdicts:
            if v.process == p:
                return v.verdict
        raise KeyError(p)

    @property
    def dichotomy_holds(self) -> bool:
        return all(v.verdict != NEITHER for v in self.verdicts)


def analyze(aa, processes=None, cap=None) -> AnalysisReport:
    graph = explore(aa, cap)
    out = []
    for p in aa.processes if processes is None else processes:
        heard = aa.alphabet.dom_inv(p)
        if fully_listening(aa, p):
            out.append(ProcessVerdict(p, FULLY_LISTENING, heard))
            continue
        res = trivializable(aa, p, graph=graph)
        out.append(ProcessVerdict(p, TRIVIALIZABLE if res else NEITHER, heard, res))
    return AnalysisReport(tuple(out), len(graph))


@dataclass(frozen=True)
class EquivResult:
    """Truthy when the bounded languages coincide. Otherwise ``word`` is a
    shortest word in exactly one of them and ``accepted_by`` says which
    (``"left"`` or ``"right"``)."""

    equal: bool
    bound: int
    word: tuple | None = None
    accepted_by: str | None = None

    def __bool__(self):
        return self.equal


def equiv_upto(x, y, k: int, cap=None) -> EquivResult:
    left = bounded_language(x, k, cap)
    right = bounded_language(y, k, cap)
    diff = left ^ right
    if not diff:
        return EquivResult(True, k)
    word = min(diff, key=lambda w: (len(w), canonical_key(w)))
    return EquivResult(False, k, word, "left" if word in left else "right")


def _run_single(machine, word, start=None):
    """Deterministic run; None when blocked."""
    cfg = machine.initial_config() if start is None else start
    for a in word:
        cfg = machine.step(cfg, a)
        if cfg is None:
            return None
    return cfg


def _ref_run(ref: ComposedCts, word, start=None):
    g = ref.initial if start is None else start
    for c in word:
        nxt = ref.step(g, (TOKEN, c))
        if not nxt:
            return None
        if len(nxt) > 1:
            raise InputError(f"reference system is nondeterministic on {c!r} at {g!r}")
        (g,) = nxt
    return g


def drive_to_switching(ref: ComposedCts, g, target):
    """Communications on the current switching channel, repeated until
    ``target`` is the switching channel and the dependent set is empty.
    Returns the word and the state reached."""
    word = []
    limit = len(ref.channels) * (1 << len(ref.channels)) + 1
    sc, D = shared_roles(g, (1, 2))
    while not (sc == target and not D):
        if len(word) > limit:
            raise InputError(f"channel {target!r} never becomes the switching channel")
        g = _ref_run(ref, (sc,), g)
        word.append(sc)
        sc, D = shared_roles(g, (1, 2))
    return tuple(word), g


def _words(alphabet, bound):
    alphabet = canonical_sorted(alphabet)
    for n in range(bound + 1):
        yield from product(alphabet, repeat=n)


@dataclass(frozen=True)
class WitnessReport:
    process: object
    channel: object
    word: tuple
    continuation: tuple
    bound: int
    ok: bool
    checked: int
    blocked_word: tuple | None = None
    ref_stable: bool = True
    ref_violation: tuple | None = None
    local_states: frozenset = frozenset()


def lemma_witness_drive(b, p, ref: ComposedCts, w=(), bound: int = 4, check_len: int = 5):
    """Drive ``ref`` after ``w`` until a channel ``p`` does not hear is the
    switching channel with an empty dependent set, then check in ``b``
    that every word over ``p``'s letters (up to ``bound``) still runs.

    Preconditions (raised as :class:`PreconditionError`): ``b`` and
    ``ref`` agree up to ``check_len``, ``p`` is not fully-listening, and
    ``w`` runs in both. A failed check is reported, not raised.
    """
    w = tuple(w)
    if p not in b.processes:
        raise InputError(f"unknown process {p!r}")
    if fully_listening(b, p):
        raise PreconditionError(f"process {p!r} is fully-listening; nothing to drive")
    eq = equiv_upto(b, ref, check_len)
    if not eq:
        raise PreconditionError(
            f"languages differ up to length {check_len} ({eq.accepted_by} only)", eq.word
        )
    cfg = _run_single(b, w)
    g = _ref_run(ref, w)
    if cfg is None or g is None:
        raise PreconditionError("word does not run in both machines", w)

    heard = b.alphabet.dom_inv(p)
    silent = canonical_sorted(frozenset(ref.channels) - heard)
    c = silent[0]
    drive, g_after = drive_to_switching(ref, g, c)

    roles = shared_roles(g_after, (1, 2))
    ref_violation = None
    for ext in _words(frozenset(ref.channels) - {c}, bound):
        g2 = _ref_run(ref, ext, g_after)
        if g2 is None or shared_roles(g2, (1, 2)) != roles:
            ref_violation = ext
            break

    start = _run_single(b, drive, cfg)
    if start is None:
        return WitnessReport(
            p, c, w, drive, bound, False, 0, w + drive, ref_violation is None, ref_violation
        )
    i = b.processes.index(p)
    checked = 0
    local = set()
    for ext in _words(heard, bound):
        end = _run_single(b, ext, start)
        checked += 1
        if end is None:
            return WitnessReport(
                p, c, w, drive, bound, False, checked, w + drive + ext,
                ref_violation is None, ref_violation, frozenset(local),
            )
        local.add(end[i])
    return WitnessReport(
        p, c, w, drive, bound, True, checked, None,
        ref_violation is None, ref_violation, frozenset(local),
    )
