"""Brute-force reference implementations used only by the tests.

These deliberately avoid the package's exploration and composition code:
they read the raw transition data and enumerate by plain recursion.
"""

from __future__ import annotations

from itertools import product


def aa_words(aa, k):
    """Runnable words of a global or local automaton, by recursion."""
    procs = aa.alphabet.processes
    dom = aa.alphabet.dom

    def step(cfg, a):
        idx = [i for i, p in enumerate(procs) if p in dom[a]]
        if hasattr(aa, "delta_p"):
            nxt = list(cfg)
            for i in idx:
                t = aa.delta_p[procs[i]].get((cfg[i], a))
                if t is None:
                    return None
                nxt[i] = t
            return tuple(nxt)
        dst = aa.delta.get(a, {}).get(tuple(cfg[i] for i in idx))
        if dst is None:
            return None
        nxt = list(cfg)
        for i, s in zip(idx, dst):
            nxt[i] = s
        return tuple(nxt)

    out = set()

    def go(cfg, word):
        out.add(word)
        if len(word) == k:
            return
        for a in aa.alphabet.letters:
            nxt = step(cfg, a)
            if nxt is not None:
                go(nxt, word + (a,))

    go(tuple(aa.initial_of[p] for p in procs), ())
    return out


def naive_successors(components, g):
    """Composition rule spelled out with nested loops over raw data."""
    out = set()
    channels = components[0].channels
    contents = set()
    for comp in components:
        contents |= {t for _s, (t, _c), _s2 in comp.transitions}
    for c in channels:
        for t in contents:
            listeners = [i for i, comp in enumerate(components) if c in comp.listen[g[i]]]
            if not listeners:
                continue
            options = []
            for i in listeners:
                options.append(
                    [s2 for s, (t2, c2), s2 in components[i].transitions
                     if s == g[i] and t2 == t and c2 == c]
                )
            for choice in product(*options):
                nxt = list(g)
                for i, s2 in zip(listeners, choice):
                    nxt[i] = s2
                out.add(((t, c), tuple(nxt)))
    return out


def cts_words(components, k):
    components = list(components)
    out = set()

    def go(g, word):
        out.add(word)
        if len(word) == k:
            return
        for (_t, c), g2 in naive_successors(components, g):
            go(g2, word + (c,))

    go(tuple(comp.initial for comp in components), ())
    return out


def reachable_configs(components):
    start = tuple(comp.initial for comp in components)
    seen = {start}
    stack = [start]
    while stack:
        g = stack.pop()
        for _m, g2 in naive_successors(components, g):
            if g2 not in seen:
                seen.add(g2)
                stack.append(g2)
    return seen


def swap_class(dom, word):
    """Closure of a word under swapping adjacent letters with disjoint domains."""
    word = tuple(word)
    seen = {word}
    todo = [word]
    while todo:
        w = todo.pop()
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if not (set(dom[a]) & set(dom[b])):
                v = w[:i] + (b, a) + w[i + 2:]
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
    return seen


def diamond_broken(dfa, dom, letters):
    """Some state where two independent letters disagree in either order."""
    def run(q, w):
        for a in w:
            q = dfa.delta.get((q, a))
            if q is None:
                return None
        return q

    for q in dfa.states:
        for a in letters:
            for b in letters:
                if a != b and not (set(dom[a]) & set(dom[b])):
                    if run(q, (a, b)) != run(q, (b, a)):
                        return True
    return False
