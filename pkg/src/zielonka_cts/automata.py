"""Global and local asynchronous automata.

Configurations are tuples with one local state per process, in the
alphabet's process order. Transition functions are partial: an undefined
entry means the letter is refused, which is how an automaton blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Mapping

from .alphabet import DistributedAlphabet
from .errors import IntegrityError
from .explore import bounded_language
from .values import canonical_sorted


@dataclass(frozen=True)
class RunResult:
    """Outcome of running a word: the last configuration reached and, if
    the run got stuck, the index of the refused letter."""

    config: tuple
    blocked_at: int | None = None

    @property
    def blocked(self) -> bool:
        return self.blocked_at is not None


class _Machine:
    alphabet: DistributedAlphabet
    states_of: Mapping
    initial_of: Mapping

    @property
    def letters(self) -> tuple:
        return self.alphabet.letters

    @property
    def processes(self) -> tuple:
        return self.alphabet.processes

    def dom_inv(self, p) -> frozenset:
        return self.alphabet.dom_inv(p)

    def initial_config(self) -> tuple:
        return tuple(self.initial_of[p] for p in self.processes)

    def initial_states(self):
        return (self.initial_config(),)

    def moves(self, cfg):
        for a in self.letters:
            nxt = self.step(cfg, a)
            if nxt is not None:
                yield a, nxt

    def enabled(self, cfg) -> frozenset:
        return frozenset(a for a, _ in self.moves(cfg))

    def local(self, cfg, p):
        return cfg[self.processes.index(p)]

    def _check_states(self):
        procs = self.processes
        if set(self.states_of) != set(procs) or set(self.initial_of) != set(procs):
            raise IntegrityError("states and initial states must be given for every process")
        states = {p: frozenset(self.states_of[p]) for p in procs}
        for p in procs:
            if self.initial_of[p] not in states[p]:
                raise IntegrityError(f"initial state {self.initial_of[p]!r} of {p!r} not declared")
        object.__setattr__(self, "states_of", states)
        object.__setattr__(self, "initial_of", {p: self.initial_of[p] for p in procs})

    def _check_config(self, cfg):
        if len(cfg) != len(self.processes):
            raise IntegrityError(
                f"configuration {cfg!r} has {len(cfg)} coordinates, expected {len(self.processes)}"
            )


@dataclass(frozen=True)
class GlobalAA(_Machine):
    """Asynchronous automaton whose letter transitions read the joint
    state of the letter's domain.

    ``delta[a]`` maps a tuple of local states of ``dom(a)`` (in process
    order) to the successor tuple. Letters missing from ``delta`` are
    never enabled. ``accepting`` is carried for documents only; every
    configuration is treated as accepting.
    """

    alphabet: DistributedAlphabet
    states_of: Mapping
    initial_of: Mapping
    delta: Mapping
    accepting: Any = None
    _positions: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self._check_states()
        procs = self.processes
        positions = {
            a: tuple(i for i, p in enumerate(procs) if p in self.alphabet.dom[a])
            for a in self.letters
        }
        delta = {}
        for a, table in self.delta.items():
            if a not in self.alphabet:
                raise IntegrityError(f"transition table for undeclared letter {a!r}")
            idx = positions[a]
            clean = {}
            for src, dst in table.items():
                src, dst = tuple(src), tuple(dst)
                for tup in (src, dst):
                    if len(tup) != len(idx):
                        raise IntegrityError(
                            f"letter {a!r}: tuple {tup!r} does not match domain size {len(idx)}"
                        )
                    for i, s in zip(idx, tup):
                        if s not in self.states_of[procs[i]]:
                            raise IntegrityError(
                                f"letter {a!r}: state {s!r} not declared for {procs[i]!r}"
                            )
                clean[src] = dst
            delta[a] = clean
        for a in self.letters:
            delta.setdefault(a, {})
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "_positions", positions)

    def domain_positions(self, a) -> tuple:
        return self._positions[a]

    def step(self, cfg, a):
        """Successor configuration, or None when ``a`` is refused."""
        self.alphabet.check_letter(a)
        idx = self._positions[a]
        dst = self.delta[a].get(tuple(cfg[i] for i in idx))
        if dst is None:
            return None
        nxt = list(cfg)
        for i, s in zip(idx, dst):
            nxt[i] = s
        return tuple(nxt)


@dataclass(frozen=True)
class LocalAA(_Machine):
    """Asynchronous automaton in which each process moves on its own.

    ``delta_p[p]`` maps ``(local state, letter)`` to the next local state,
    for letters in ``dom_inv(p)`` only.
    """

    alphabet: DistributedAlphabet
    states_of: Mapping
    initial_of: Mapping
    delta_p: Mapping
    _positions: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self._check_states()
        procs = self.processes
        delta_p = {}
        for p in procs:
            table = dict(self.delta_p.get(p, {}))
            for (s, a), t in table.items():
                if a not in self.alphabet:
                    raise IntegrityError(f"process {p!r}: undeclared letter {a!r}")
                if p not in self.alphabet.dom[a]:
                    raise IntegrityError(f"process {p!r} moves on {a!r} outside its domain")
                if s not in self.states_of[p] or t not in self.states_of[p]:
                    raise IntegrityError(f"process {p!r}: undeclared state in {s!r} -> {t!r}")
            delta_p[p] = table
        extra = set(self.delta_p) - set(procs)
        if extra:
            raise IntegrityError(f"transitions for undeclared processes {sorted(map(str, extra))}")
        object.__setattr__(self, "delta_p", delta_p)
        object.__setattr__(
            self,
            "_positions",
            {
                a: tuple(i for i, p in enumerate(procs) if p in self.alphabet.dom[a])
                for a in self.letters
            },
        )

    def step(self, cfg, a):
        self.alphabet.check_letter(a)
        nxt = list(cfg)
        for i in self._positions[a]:
            t = self.delta_p[self.processes[i]].get((cfg[i], a))
            if t is None:
                return None
            nxt[i] = t
        return tuple(nxt)

    def to_global(self) -> GlobalAA:
        """The global automaton whose letter functions are the products of
        the local ones."""
        procs = self.processes
        delta = {}
        for a in self.letters:
            dom = [p for p in procs if p in self.alphabet.dom[a]]
            table = {}
            for src in product(*(canonical_sorted(self.states_of[p]) for p in dom)):
                dst = tuple(self.delta_p[p].get((s, a)) for p, s in zip(dom, src))
                if None not in dst:
                    table[src] = dst
            delta[a] = table
        return GlobalAA(self.alphabet, self.states_of, self.initial_of, delta)


def aa_step(aa: GlobalAA, cfg, a):
    aa._check_config(cfg)
    return aa.step(tuple(cfg), a)


def laa_step(laa: LocalAA, cfg, a):
    laa._check_config(cfg)
    return laa.step(tuple(cfg), a)


def run_word(machine, word) -> RunResult:
    cfg = machine.initial_config()
    for i, a in enumerate(word):
        nxt = machine.step(cfg, a)
        if nxt is None:
            return RunResult(cfg, i)
        cfg = nxt
    return RunResult(cfg)


def language_upto(machine, k: int, cap: int | None = None) -> frozenset:
    """Runnable words of length <= k (every configuration accepts, so this
    is the bounded, prefix-closed language)."""
    return bounded_language(machine, k, cap)
