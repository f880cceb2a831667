"""Translations between asynchronous automata and channeled transition
systems.

Each translation preserves the language. The two directions from CTS to
automata work on the reachable part of the composition: letter functions
are only tabulated at configurations the composed system can reach.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .alphabet import DistributedAlphabet
from .automata import GlobalAA, LocalAA
from .cts import TOKEN, ComposedCts, Cts, as_system
from .errors import InputError, NondeterminismError
from .values import canonical_key, canonical_sorted

#: Local state of a non-executor process in the executor construction.
IDLE = "idle"


def aa_to_cts(aa: GlobalAA) -> list[Cts]:
    """One CTS per process; a letter's message carries the joint state of
    its domain, and each participant checks its own coordinate."""
    procs = aa.processes
    alpha = aa.alphabet
    contents = set()
    for a in aa.letters:
        dom = [p for p in procs if p in alpha.dom[a]]
        contents.update(product(*(canonical_sorted(aa.states_of[p]) for p in dom)))
    components = []
    for p in procs:
        transitions = set()
        for a in aa.letters:
            idx = aa.domain_positions(a)
            if procs.index(p) not in idx:
                continue
            k = [procs[i] for i in idx].index(p)
            for src, dst in aa.delta[a].items():
                transitions.add((src[k], (src, a), dst[k]))
        listening = alpha.dom_inv(p)
        components.append(
            Cts(
                initial=aa.initial_of[p],
                transitions=frozenset(transitions),
                listen={s: listening for s in aa.states_of[p]},
                channels=aa.letters,
                states=aa.states_of[p],
                contents=frozenset(contents),
            )
        )
    return components


def laa_to_cts(laa: LocalAA) -> list[Cts]:
    """As :func:`aa_to_cts` with a single, uninformative message content."""
    components = []
    for p in laa.processes:
        listening = laa.alphabet.dom_inv(p)
        transitions = frozenset((s, (TOKEN, a), t) for (s, a), t in laa.delta_p[p].items())
        components.append(
            Cts(
                initial=laa.initial_of[p],
                transitions=transitions,
                listen={s: listening for s in laa.states_of[p]},
                channels=laa.letters,
                states=laa.states_of[p],
                contents=frozenset({TOKEN}),
            )
        )
    return components


def _composed_successors(system: ComposedCts, resolve: bool, cap):
    """Map ``(g, c)`` to the unique composed successor for every reachable
    ``g``; several successors are an error unless ``resolve`` picks the
    least ``(content, successor)``."""
    graph = system.reachable(cap)
    table = {}
    clashes = []
    for g in graph.order:
        by_channel = {}
        for (t, c), g2 in system.transitions_from(g):
            by_channel.setdefault(c, []).append((t, g2))
        for c, options in by_channel.items():
            targets = {g2 for _t, g2 in options}
            if len(targets) > 1:
                if not resolve:
                    clashes.append((g, c, tuple(canonical_sorted(targets))))
                    continue
                options = sorted(options, key=canonical_key)
            table[g, c] = options[0][1]
    if clashes:
        g, c, targets = clashes[0]
        raise NondeterminismError(
            f"{len(clashes)} reachable (state, channel) pairs have several successors, "
            f"e.g. {g!r} on {c!r} -> {len(targets)} targets; pass resolve=True to pick "
            "the least (content, successor), which need not preserve the language",
            clashes,
        )
    return graph, table


def cts_to_aa(system, processes=None, *, resolve: bool = False, cap=None) -> GlobalAA:
    """Global automaton over the channels with every process in every
    letter's domain.

    A process that does not listen to ``c`` keeps its state; the joint
    function moves listeners exactly as the composition does.
    """
    system = as_system(system, processes)
    graph, table = _composed_successors(system, resolve, cap)
    alpha = DistributedAlphabet.complete(system.channels, system.processes)
    delta = {c: {} for c in system.channels}
    for (g, c), g2 in table.items():
        delta[c][g] = g2
    return GlobalAA(
        alpha,
        {p: comp.states for p, comp in zip(system.processes, system.components)},
        {p: comp.initial for p, comp in zip(system.processes, system.components)},
        delta,
    )


def cts_to_laa(system, processes=None, *, cap=None) -> LocalAA:
    """Local automaton over the channels for single-content systems.

    Every process is in every letter's domain. A listener moves along its
    unique transition (no transition: the letter is refused), a
    non-listener stutters. Local stuttering cannot express "somebody
    listens", so a reachable configuration where nobody listens to a
    channel is reported instead of silently enabling it.
    """
    system = as_system(system, processes)
    if len(system.contents) > 1:
        raise InputError("cts_to_laa needs a single message content; use cts_to_aa")
    delta_p = {}
    for p, comp in zip(system.processes, system.components):
        if not comp.is_deterministic():
            bad = [
                (s, c)
                for (s, c), opts in comp._out.items()
                if len({s2 for _t, s2 in opts}) > 1
            ]
            raise NondeterminismError(
                f"component {p!r} has several successors on {bad[0][1]!r} from {bad[0][0]!r}",
                bad,
            )
        table = {}
        for s in comp.states:
            for c in system.channels:
                if c in comp.listen[s]:
                    out = comp.outgoing(s, c)
                    if out:
                        table[s, c] = out[0][1]
                else:
                    table[s, c] = s
        delta_p[p] = table
    graph = system.reachable(cap)
    for g in graph.order:
        for c in system.channels:
            if not system.listeners(g, c):
                raise InputError(
                    f"nobody listens to {c!r} in reachable configuration {g!r} "
                    f"(reached by {list(graph.path_to(g))!r}); local stuttering would enable it"
                )
    alpha = DistributedAlphabet.complete(system.channels, system.processes)
    return LocalAA(
        alpha,
        {p: comp.states for p, comp in zip(system.processes, system.components)},
        {p: comp.initial for p, comp in zip(system.processes, system.components)},
        delta_p,
    )


@dataclass(frozen=True)
class ExecutorChoice:
    """Which process simulates the composition, and what every other
    process listens to (unmentioned processes listen to nothing)."""

    executor: object
    listen_sets: Mapping = None

    def listen_of(self, p) -> frozenset:
        if p == self.executor:
            raise InputError("the executor listens to every channel")
        return frozenset((self.listen_sets or {}).get(p, ()))


def cts_to_aa_executor(
    system, choice: ExecutorChoice, processes=None, *, resolve: bool = False, cap=None
) -> GlobalAA:
    """Global automaton where only ``choice.executor`` listens to every
    channel; its local state is the whole composed state. The others have
    a single state and accept anything on their listening sets."""
    system = as_system(system, processes)
    procs = system.processes
    if choice.executor not in procs:
        raise InputError(f"unknown executor {choice.executor!r}")
    extra = set(choice.listen_sets or {}) - set(procs)
    if extra:
        raise InputError(f"listening sets for unknown processes {sorted(map(str, extra))}")
    channels = set(system.channels)
    dom = {c: {choice.executor} for c in system.channels}
    for p in procs:
        if p == choice.executor:
            continue
        heard = choice.listen_of(p)
        if not heard <= channels:
            raise InputError(f"process {p!r} listens to undeclared channels")
        for c in heard:
            dom[c].add(p)
    alpha = DistributedAlphabet(system.channels, procs, dom)
    graph, table = _composed_successors(system, resolve, cap)
    delta = {c: {} for c in system.channels}
    for (g, c), g2 in table.items():
        src = tuple(g if p == choice.executor else IDLE for p in procs if p in dom[c])
        dst = tuple(g2 if p == choice.executor else IDLE for p in procs if p in dom[c])
        delta[c][src] = dst
    states_of = {p: {IDLE} for p in procs}
    states_of[choice.executor] = set(graph.order)
    initial_of = {p: IDLE for p in procs}
    initial_of[choice.executor] = system.initial
    return GlobalAA(alpha, states_of, initial_of, delta)
