"""Distributed alphabets, independence and trace equivalence."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Hashable, Iterable, Mapping

from .errors import IntegrityError, ResourceError, UnknownLetterError
from .values import canonical_key

TRACE_CLASS_BOUND = 8


@dataclass(frozen=True, eq=False)
class DistributedAlphabet:
    """Letters together with the processes that synchronise on each.

    ``dom`` maps every letter to a nonempty subset of ``processes``.
    Letter and process order is significant: it fixes tuple coordinates
    in configurations and the order of serialized documents.
    """

    letters: tuple
    processes: tuple
    dom: Mapping[Hashable, frozenset]
    _dom_inv: dict = field(init=False, repr=False)

    def __post_init__(self):
        letters = tuple(self.letters)
        processes = tuple(self.processes)
        if len(set(letters)) != len(letters):
            raise IntegrityError("duplicate letters in alphabet")
        if len(set(processes)) != len(processes):
            raise IntegrityError("duplicate processes in alphabet")
        dom = {}
        for a in letters:
            if a not in self.dom:
                raise IntegrityError(f"letter {a!r} has no domain")
            procs = frozenset(self.dom[a])
            if not procs:
                raise IntegrityError(f"letter {a!r} has an empty domain")
            unknown = procs - set(processes)
            if unknown:
                raise IntegrityError(
                    f"domain of {a!r} names undeclared processes {sorted(map(str, unknown))}"
                )
            dom[a] = procs
        extra = set(self.dom) - set(letters)
        if extra:
            raise IntegrityError(f"domain given for undeclared letters {sorted(map(str, extra))}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "processes", processes)
        object.__setattr__(self, "dom", dom)
        object.__setattr__(
            self,
            "_dom_inv",
            {p: frozenset(a for a in letters if p in dom[a]) for p in processes},
        )

    @classmethod
    def complete(cls, letters: Iterable, processes: Iterable) -> "DistributedAlphabet":
        """Every letter shared by every process."""
        processes = tuple(processes)
        letters = tuple(letters)
        return cls(letters, processes, {a: frozenset(processes) for a in letters})

    def __eq__(self, other):
        if not isinstance(other, DistributedAlphabet):
            return NotImplemented
        return (self.letters, self.processes, self.dom) == (
            other.letters,
            other.processes,
            other.dom,
        )

    def __contains__(self, letter) -> bool:
        return letter in self.dom

    def check_letter(self, letter):
        if letter not in self.dom:
            raise UnknownLetterError(letter)

    def check_word(self, word):
        for a in word:
            self.check_letter(a)

    def dom_inv(self, process) -> frozenset:
        """Letters whose domain contains ``process``."""
        try:
            return self._dom_inv[process]
        except KeyError:
            raise IntegrityError(f"unknown process {process!r}") from None

    def independent(self, a, b) -> bool:
        self.check_letter(a)
        self.check_letter(b)
        return not (self.dom[a] & self.dom[b])

    def independent_pairs(self):
        """Unordered independent pairs, in letter order."""
        return [(a, b) for a, b in combinations(self.letters, 2) if self.independent(a, b)]


def independent(alpha: DistributedAlphabet, a, b) -> bool:
    return alpha.independent(a, b)


def trace_equivalent(alpha: DistributedAlphabet, u, v) -> bool:
    """Whether ``v`` is obtained from ``u`` by commuting adjacent
    independent letters.

    Decided by projections: two words are equivalent exactly when their
    projections onto every pair of dependent letters (a letter is
    dependent with itself) coincide.
    """
    u, v = tuple(u), tuple(v)
    alpha.check_word(u)
    alpha.check_word(v)
    if len(u) != len(v):
        return False
    letters = sorted(set(u) | set(v), key=alpha.letters.index)
    for i, a in enumerate(letters):
        for b in letters[i:]:
            if a != b and alpha.independent(a, b):
                continue
            keep = {a, b}
            if [x for x in u if x in keep] != [x for x in v if x in keep]:
                return False
    return True


def trace_class(alpha: DistributedAlphabet, u, max_len: int = TRACE_CLASS_BOUND) -> frozenset:
    """All words trace-equivalent to ``u`` (``u`` included)."""
    u = tuple(u)
    alpha.check_word(u)
    if len(u) > max_len:
        raise ResourceError(f"trace class of a word of length {len(u)}", max_len)
    seen = {u}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if a != b and alpha.independent(a, b):
                swapped = w[:i] + (b, a) + w[i + 2 :]
                if swapped not in seen:
                    seen.add(swapped)
                    queue.append(swapped)
    return frozenset(seen)


@dataclass(frozen=True, eq=False)
class Dfa:
    """Deterministic automaton with a partial transition map."""

    states: frozenset
    initial: Any
    delta: Mapping[tuple, Any]
    accepting: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "delta", dict(self.delta))
        if self.initial not in self.states:
            raise IntegrityError(f"initial state {self.initial!r} not declared")
        if not self.accepting <= self.states:
            raise IntegrityError("accepting states must be declared states")
        for (q, _a), r in self.delta.items():
            if q not in self.states or r not in self.states:
                raise IntegrityError(f"transition {q!r} -> {r!r} uses undeclared states")

    def __eq__(self, other):
        if not isinstance(other, Dfa):
            return NotImplemented
        return (self.states, self.initial, self.delta, self.accepting) == (
            other.states,
            other.initial,
            other.delta,
            other.accepting,
        )

    @property
    def letters(self) -> frozenset:
        return frozenset(a for _q, a in self.delta)

    def step(self, q, a):
        return self.delta.get((q, a))

    def run(self, word, start=None):
        """State reached on ``word`` or None if some letter is undefined."""
        q = self.initial if start is None else start
        for a in word:
            q = self.delta.get((q, a))
            if q is None:
                return None
        return q

    def accepts(self, word) -> bool:
        q = self.run(word)
        return q is not None and q in self.accepting


def diamond_violation(dfa: Dfa, alpha: DistributedAlphabet):
    """First ``(q, a, b)`` with ``(a, b)`` independent where the two
    orders disagree (in value or in definedness), or None."""
    for a in dfa.letters:
        alpha.check_letter(a)
    order = sorted(dfa.states, key=canonical_key)
    for q in order:
        for a, b in alpha.independent_pairs():
            if dfa.run((a, b), q) != dfa.run((b, a), q):
                return (q, a, b)
    return None


def is_i_diamond(dfa: Dfa, alpha: DistributedAlphabet) -> bool:
    return diamond_violation(dfa, alpha) is None

