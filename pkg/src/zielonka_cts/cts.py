"""Channeled transition systems and their parallel composition."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Iterable, Mapping

from .errors import InputError, IntegrityError
from .explore import bounded_language, explore
from .values import canonical_key, canonical_sorted

#: The single message content used whenever contents carry no information.
TOKEN = "t"


@dataclass(frozen=True)
class Cts:
    """One agent: states, a transition relation over ``(content, channel)``
    messages, and a listening function.

    Transitions are triples ``(s, (t, c), s2)``. A state must listen to
    every channel it has a transition on; it may listen to more, and a
    channel listened to without a matching transition is refused.
    ``states``, ``channels`` and ``contents`` default to what the other
    arguments mention.
    """

    initial: Any
    transitions: frozenset
    listen: Mapping
    channels: tuple | None = None
    states: frozenset | None = None
    contents: frozenset | None = None
    _out: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        transitions = frozenset((s, (t, c), s2) for s, (t, c), s2 in self.transitions)
        listen = {s: frozenset(cs) for s, cs in self.listen.items()}
        states = self.states
        if states is None:
            states = {self.initial, *listen}
            for s, _m, s2 in transitions:
                states.update((s, s2))
        states = frozenset(states)
        channels = self.channels
        if channels is None:
            found = {c for _s, (_t, c), _s2 in transitions}
            for cs in listen.values():
                found |= cs
            channels = canonical_sorted(found)
        channels = tuple(channels)
        contents = self.contents
        if contents is None:
            contents = {t for _s, (t, _c), _s2 in transitions} or {TOKEN}
        contents = frozenset(contents)

        if self.initial not in states:
            raise IntegrityError(f"initial state {self.initial!r} not declared")
        known = set(channels)
        for s, cs in listen.items():
            if s not in states:
                raise IntegrityError(f"listening set given for undeclared state {s!r}")
            if not cs <= known:
                raise IntegrityError(f"state {s!r} listens to undeclared channels")
        for s in states:
            listen.setdefault(s, frozenset())
        out = defaultdict(list)
        for s, (t, c), s2 in transitions:
            if s not in states or s2 not in states:
                raise IntegrityError(f"transition {s!r} -> {s2!r} uses undeclared states")
            if c not in known:
                raise IntegrityError(f"transition from {s!r} on undeclared channel {c!r}")
            if t not in contents:
                raise IntegrityError(f"transition from {s!r} carries undeclared content {t!r}")
            if c not in listen[s]:
                raise IntegrityError(
                    f"listening constraint violated: state {s!r} has a transition on "
                    f"channel {c!r} but does not listen to it"
                )
            out[s, c].append((t, s2))
        for key in out:
            out[key].sort(key=canonical_key)
        object.__setattr__(self, "transitions", transitions)
        object.__setattr__(self, "listen", listen)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "channels", channels)
        object.__setattr__(self, "contents", contents)
        object.__setattr__(self, "_out", {k: tuple(v) for k, v in out.items()})

    def outgoing(self, s, c) -> tuple:
        """``(content, successor)`` pairs leaving ``s`` on channel ``c``."""
        return self._out.get((s, c), ())

    def initial_states(self):
        return (self.initial,)

    def moves(self, s):
        for c in self.channels:
            seen = set()
            for _t, s2 in self.outgoing(s, c):
                if s2 not in seen:
                    seen.add(s2)
                    yield c, s2

    def is_deterministic(self) -> bool:
        """At most one successor per (state, channel)."""
        return all(len({s2 for _t, s2 in v}) <= 1 for v in self._out.values())


def cts_step(cts: Cts, s, msg) -> frozenset:
    t, c = msg
    return frozenset(s2 for t2, s2 in cts.outgoing(s, c) if t2 == t)


def default_processes(n: int) -> tuple:
    return tuple(f"p{k}" for k in range(1, n + 1))


class ComposedCts:
    """Parallel composition of one CTS per process.

    A global transition on ``(t, c)`` exists iff some component listens to
    ``c``, every listener has a ``(t, c)`` transition, and every
    non-listener stays put.
    """

    def __init__(self, components: Iterable[Cts], processes: Iterable | None = None):
        components = tuple(components)
        if not components:
            raise InputError("cannot compose an empty list of components")
        processes = default_processes(len(components)) if processes is None else tuple(processes)
        if len(processes) != len(components):
            raise InputError("one process name per component is required")
        if len(set(processes)) != len(processes):
            raise InputError("duplicate process names")
        channels = set(components[0].channels)
        for i, comp in enumerate(components[1:], start=2):
            if set(comp.channels) != channels:
                raise InputError(
                    f"component {i} is over channels {sorted(map(str, comp.channels))}, "
                    f"expected {sorted(map(str, channels))}"
                )
        self.components = components
        self.processes = processes
        self.channels = components[0].channels
        self._cache: dict = {}

    def __eq__(self, other):
        if not isinstance(other, ComposedCts):
            return NotImplemented
        return (self.components, self.processes) == (other.components, other.processes)

    def __hash__(self):
        return hash(self.processes)

    def __len__(self):
        return len(self.components)

    def __repr__(self):
        return f"ComposedCts(processes={self.processes!r}, channels={self.channels!r})"

    @property
    def initial(self) -> tuple:
        return tuple(c.initial for c in self.components)

    @property
    def contents(self) -> frozenset:
        return frozenset().union(*(c.contents for c in self.components))

    def component(self, p) -> Cts:
        return self.components[self.processes.index(p)]

    def initial_states(self):
        return (self.initial,)

    def listen(self, g) -> frozenset:
        return frozenset().union(*(comp.listen[s] for comp, s in zip(self.components, g)))

    def listeners(self, g, c) -> tuple:
        return tuple(i for i, (comp, s) in enumerate(zip(self.components, g)) if c in comp.listen[s])

    def transitions_from(self, g) -> tuple:
        """All ``((t, c), g2)`` leaving global state ``g``."""
        g = tuple(g)
        cached = self._cache.get(g)
        if cached is not None:
            return cached
        result = []
        for c in self.channels:
            who = self.listeners(g, c)
            if not who:
                continue
            options = {}
            for i in who:
                per_t = defaultdict(list)
                for t, s2 in self.components[i].outgoing(g[i], c):
                    per_t[t].append(s2)
                options[i] = per_t
            common = set(options[who[0]])
            for i in who[1:]:
                common &= set(options[i])
            for t in canonical_sorted(common):
                for choice in product(*(options[i][t] for i in who)):
                    nxt = list(g)
                    for i, s2 in zip(who, choice):
                        nxt[i] = s2
                    result.append(((t, c), tuple(nxt)))
        result = tuple(result)
        self._cache[g] = result
        return result

    def step(self, g, msg) -> frozenset:
        return frozenset(g2 for m, g2 in self.transitions_from(g) if m == msg)

    def moves(self, g):
        seen = set()
        for (_t, c), g2 in self.transitions_from(g):
            if (c, g2) not in seen:
                seen.add((c, g2))
                yield c, g2

    def enabled(self, g) -> frozenset:
        return frozenset(c for (_t, c), _g2 in self.transitions_from(g))

    def reachable(self, cap: int | None = None):
        return explore(self, cap)

    def to_cts(self, cap: int | None = None) -> Cts:
        """The reachable part of the composition as a single CTS."""
        graph = self.reachable(cap)
        transitions = set()
        for g in graph.order:
            for msg, g2 in self.transitions_from(g):
                transitions.add((g, msg, g2))
        return Cts(
            initial=self.initial,
            transitions=frozenset(transitions),
            listen={g: self.listen(g) for g in graph.order},
            channels=self.channels,
            states=frozenset(graph.order),
            contents=self.contents,
        )


def compose(components, processes=None) -> ComposedCts:
    return ComposedCts(components, processes)


def as_system(system_or_components, processes=None) -> ComposedCts:
    if isinstance(system_or_components, ComposedCts):
        return system_or_components
    if isinstance(system_or_components, Cts):
        return ComposedCts([system_or_components], processes)
    return ComposedCts(system_or_components, processes)


def enabled_channels(system: ComposedCts, g) -> frozenset:
    return system.enabled(tuple(g))


def cts_language_upto(machine, k: int, cap: int | None = None) -> frozenset:
    """Channel words of length <= k labelling some run."""
    return bounded_language(machine, k, cap)
