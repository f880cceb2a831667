"""Breadth-first exploration shared by every machine kind.

A machine here is anything with ``initial_states()`` and ``moves(state)``,
the latter yielding ``(letter, successor)`` pairs.
"""

from __future__ import annotations

import os
from collections import defaultdict, deque
from dataclasses import dataclass, field

from .errors import ResourceError

DEFAULT_STATE_CAP = 10**6
CAP_ENV = "ZIELONKA_CTS_STATE_CAP"


def state_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(CAP_ENV)
    return int(env) if env else DEFAULT_STATE_CAP


def bounded_language(machine, k: int, cap: int | None = None) -> frozenset:
    """All words of length <= k labelling a run from an initial state."""
    if k < 0:
        raise ValueError("length bound must be >= 0")
    cap = state_cap(cap)
    words = {()}
    frontier = {(): frozenset(machine.initial_states())}
    for _ in range(k):
        nxt = defaultdict(set)
        size = 0
        for word, states in frontier.items():
            for s in states:
                for letter, t in machine.moves(s):
                    bucket = nxt[word + (letter,)]
                    if t not in bucket:
                        bucket.add(t)
                        size += 1
            if size > cap:
                raise ResourceError("language frontier", cap)
        if not nxt:
            break
        frontier = {w: frozenset(ss) for w, ss in nxt.items()}
        words.update(frontier)
    return frozenset(words)


@dataclass
class ReachableGraph:
    """Reachable part of a machine, in BFS discovery order."""

    order: list
    edges: dict
    parent: dict = field(repr=False)

    def __contains__(self, state) -> bool:
        return state in self.edges

    def __len__(self) -> int:
        return len(self.order)

    def path_to(self, state) -> tuple:
        """A shortest word leading from an initial state to ``state``."""
        word = []
        while self.parent[state] is not None:
            state, letter = self.parent[state]
            word.append(letter)
        return tuple(reversed(word))

    def predecessors(self) -> dict:
        preds = defaultdict(list)
        for s, out in self.edges.items():
            for letter, t in out:
                preds[t].append((letter, s))
        return preds


def explore(machine, cap: int | None = None) -> ReachableGraph:
    cap = state_cap(cap)
    order = []
    edges = {}
    parent = {}
    queue = deque()
    for s in machine.initial_states():
        if s not in parent:
            parent[s] = None
            queue.append(s)
    while queue:
        s = queue.popleft()
        order.append(s)
        out = []
        for letter, t in machine.moves(s):
            out.append((letter, t))
            if t not in parent:
                if len(parent) >= cap:
                    raise ResourceError("explored state count", cap)
                parent[t] = (s, letter)
                queue.append(t)
        edges[s] = out
    return ReachableGraph(order, edges, parent)
