"""Seeded random machines for property checks.

Every generator takes a :class:`random.Random`, so a seed reproduces the
same machine.
"""

from __future__ import annotations

import random
from itertools import product

from .alphabet import Dfa, DistributedAlphabet
from .automata import GlobalAA, LocalAA
from .cts import TOKEN, Cts, default_processes


def random_alphabet(rng: random.Random, n_procs: int, n_letters: int) -> DistributedAlphabet:
    procs = default_processes(n_procs)
    letters = tuple("abcdefgh"[:n_letters])
    dom = {}
    for a in letters:
        k = rng.randint(1, n_procs)
        dom[a] = frozenset(rng.sample(procs, k))
    return DistributedAlphabet(letters, procs, dom)


def _states(rng, procs, max_states):
    return {p: tuple(range(rng.randint(1, max_states))) for p in procs}


def random_global_aa(
    rng: random.Random, max_procs=3, max_states=3, max_letters=4, density=0.7
) -> GlobalAA:
    alpha = random_alphabet(rng, rng.randint(1, max_procs), rng.randint(1, max_letters))
    states = _states(rng, alpha.processes, max_states)
    delta = {}
    for a in alpha.letters:
        dom = [p for p in alpha.processes if p in alpha.dom[a]]
        table = {}
        for src in product(*(states[p] for p in dom)):
            if rng.random() < density:
                table[src] = tuple(rng.choice(states[p]) for p in dom)
        delta[a] = table
    return GlobalAA(alpha, states, {p: 0 for p in alpha.processes}, delta)


def random_local_aa(
    rng: random.Random, max_procs=3, max_states=3, max_letters=4, density=0.75
) -> LocalAA:
    alpha = random_alphabet(rng, rng.randint(1, max_procs), rng.randint(1, max_letters))
    states = _states(rng, alpha.processes, max_states)
    delta_p = {}
    for p in alpha.processes:
        table = {}
        for s in states[p]:
            for a in alpha.letters:
                if p in alpha.dom[a] and rng.random() < density:
                    table[s, a] = rng.choice(states[p])
        delta_p[p] = table
    return LocalAA(alpha, states, {p: 0 for p in alpha.processes}, delta_p)


def random_cts_system(
    rng: random.Random, max_procs=3, max_states=3, max_channels=3, density=0.6
) -> list[Cts]:
    """Single-content agents, deterministic per (state, channel), whose
    listening sets randomly over-approximate their transitions."""
    channels = tuple(range(1, rng.randint(1, max_channels) + 1))
    agents = []
    for _ in range(rng.randint(1, max_procs)):
        states = tuple(range(rng.randint(1, max_states)))
        transitions = set()
        listen = {}
        for s in states:
            heard = set()
            for c in channels:
                if rng.random() < density:
                    heard.add(c)
                    if rng.random() < 0.8:
                        transitions.add((s, (TOKEN, c), rng.choice(states)))
            listen[s] = frozenset(heard)
        agents.append(
            Cts(0, frozenset(transitions), listen, channels, frozenset(states), frozenset({TOKEN}))
        )
    return agents


def _component_dfa(rng, letters, max_states, density):
    states = range(rng.randint(1, max_states))
    delta = {}
    for q in states:
        for a in letters:
            if rng.random() < density:
                delta[q, a] = rng.choice(states)
    accepting = {q for q in states if rng.random() < 0.5} or {0}
    return list(states), delta, accepting


def random_diamond_dfa(rng: random.Random, max_parts=3, max_states=3, max_letters=4, density=0.8):
    """Product of DFAs over letter groups with disjoint domains.

    Each group gets its own process, so letters of different groups are
    independent and commute in the product by construction. Returns
    ``(dfa, alphabet)``.
    """
    n_letters = rng.randint(2, max_letters)
    n_parts = rng.randint(2, min(max_parts, n_letters))
    letters = list("abcdefgh"[:n_letters])
    rng.shuffle(letters)
    groups = [letters[i::n_parts] for i in range(n_parts)]
    procs = tuple(f"p{i + 1}" for i in range(n_parts))
    dom = {a: {procs[i]} for i, g in enumerate(groups) for a in g}
    alpha = DistributedAlphabet(tuple(sorted(letters)), procs, dom)
    parts = [_component_dfa(rng, g, max_states, density) for g in groups]
    states = list(product(*(part[0] for part in parts)))
    delta = {}
    for q in states:
        for i, g in enumerate(groups):
            for a in g:
                r = parts[i][1].get((q[i], a))
                if r is not None:
                    delta[q, a] = q[:i] + (r,) + q[i + 1 :]
    accepting = {q for q in states if all(q[i] in parts[i][2] for i in range(n_parts))}
    return Dfa(frozenset(states), tuple(0 for _ in parts), delta, frozenset(accepting)), alpha


def mutate_dfa(rng: random.Random, dfa: Dfa, letters) -> Dfa:
    """Redirect, add or delete one transition."""
    delta = dict(dfa.delta)
    states = sorted(dfa.states)
    letters = sorted(letters)
    q = rng.choice(states)
    a = rng.choice(letters)
    current = delta.get((q, a))
    if current is not None and rng.random() < 0.3:
        del delta[q, a]
    else:
        others = [r for r in states if r != current]
        delta[q, a] = rng.choice(others) if others else q
    return Dfa(dfa.states, dfa.initial, delta, dfa.accepting)
