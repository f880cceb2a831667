"""Generators for the single- and two-switching-channel systems.

Channels are the integers ``1..n+1`` (single) or ``1..n+2`` (double),
processes are ``p1..pn``, and process ``pk`` initially owns channel ``k``.
Only the locally reachable part of each agent's state space is emitted.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .cts import TOKEN, ComposedCts, Cts, default_processes
from .errors import InputError
from .values import canonical_key, canonical_sorted

EMPTY = frozenset()


class SwitchState(NamedTuple):
    c: int
    sc: int
    D: frozenset
    d: int


class TwoSwitchState(NamedTuple):
    c: int
    tg: int
    hl: int
    h: int
    D: frozenset
    d: int


@dataclass(frozen=True)
class Cycle:
    """A cyclic successor on every subset of channels, identity outside it."""

    name: str
    descending: bool = False

    def _ring(self, D):
        return sorted(D, key=canonical_key, reverse=self.descending)

    def next(self, D, d):
        if d not in D:
            return d
        ring = self._ring(D)
        return ring[(ring.index(d) + 1) % len(ring)]

    def prev(self, D, d, strict: bool = True):
        if d not in D:
            if strict:
                raise InputError(f"{d!r} is not in {canonical_sorted(D)!r}")
            return d
        ring = self._ring(D)
        return ring[(ring.index(d) - 1) % len(ring)]


CYCLES = {"index": Cycle("index"), "reverse": Cycle("reverse", descending=True)}


def next_cyclic(D, d, cycle: Cycle = CYCLES["index"]):
    return cycle.next(frozenset(D), d)


def prev_cyclic(D, d, cycle: Cycle = CYCLES["index"]):
    return cycle.prev(frozenset(D), d)


def _size_lex(subset):
    return (len(subset), tuple(canonical_key(x) for x in canonical_sorted(subset)))


def _binary(universe):
    weights = {x: 1 << i for i, x in enumerate(canonical_sorted(universe))}
    return lambda subset: sum(weights[x] for x in subset)


ORDERS = {"size-lex": lambda universe: _size_lex, "binary": _binary}


class SubsetOrder:
    """Total order on the subsets of ``channels - {sc}``, empty set first."""

    def __init__(self, sc, channels, policy: str = "size-lex"):
        if policy not in ORDERS:
            raise InputError(f"unknown order policy {policy!r}; known: {sorted(ORDERS)}")
        universe = frozenset(channels) - {sc}
        members = canonical_sorted(universe)
        subsets = [
            frozenset(x for i, x in enumerate(members) if mask >> i & 1)
            for mask in range(1 << len(members))
        ]
        self.sc = sc
        self.policy = policy
        self.universe = universe
        self.sets = tuple(sorted(subsets, key=ORDERS[policy](universe)))
        self._pos = {s: i for i, s in enumerate(self.sets)}
        assert self.sets[0] == EMPTY

    def __len__(self):
        return len(self.sets)

    def index(self, D) -> int:
        D = frozenset(D)
        if D not in self._pos:
            raise InputError(
                f"{canonical_sorted(D)!r} is not a subset of the non-switching channels"
            )
        return self._pos[D]

    def inc(self, D):
        """Next subset, or None after the last one."""
        i = self.index(D) + 1
        return self.sets[i] if i < len(self.sets) else None


def inc_order(order: SubsetOrder, D):
    return order.inc(D)


def _closure(initial, moves: Callable) -> tuple[set, set]:
    states = {initial}
    transitions = set()
    queue = deque([initial])
    while queue:
        s = queue.popleft()
        for c, s2 in moves(s):
            transitions.add((s, (TOKEN, c), s2))
            if s2 not in states:
                states.add(s2)
                queue.append(s2)
    return states, transitions


def single_channels(n: int) -> tuple:
    return tuple(range(1, n + 2))


def single_listen(s, cycle: Cycle) -> frozenset:
    c, sc, D, _d = s
    if c in D:
        return frozenset({sc, c, cycle.prev(D, c)})
    return frozenset({sc, c})


def single_moves(s, channels, orders: dict, cycle: Cycle):
    """Outgoing ``(channel, successor)`` pairs of one agent."""
    c, sc, D, d = s
    out = []
    before = cycle.prev(D, c, strict=False)
    # dependent-set cycling: fire own channel, then wait for the previous one
    if d == c:
        out.append((c, SwitchState(c, sc, D, before)))
    if d == before:
        out.append((before, SwitchState(c, sc, D, c)))
    nxt = orders[sc].inc(D)
    if nxt is not None:
        if c == min(nxt, key=canonical_key):
            out.append((sc, SwitchState(c, sc, nxt, c)))
        else:
            out.append((sc, SwitchState(c, sc, nxt, cycle.prev(nxt, c, strict=False))))
    else:
        new_sc = cycle.next(channels, sc)
        if c != new_sc:
            out.append((sc, SwitchState(c, new_sc, EMPTY, c)))
        else:
            out.append((sc, SwitchState(sc, new_sc, EMPTY, sc)))
    return list(dict.fromkeys(out))


def single_agent(k: int, n: int, order: str = "size-lex", cycle: str = "index") -> Cts:
    channels = frozenset(single_channels(n))
    cyc = _cycle(cycle)
    orders = {sc: SubsetOrder(sc, channels, order) for sc in channels}
    initial = SwitchState(k, n + 1, EMPTY, k)
    states, transitions = _closure(initial, lambda s: single_moves(s, channels, orders, cyc))
    return Cts(
        initial=initial,
        transitions=frozenset(transitions),
        listen={s: single_listen(s, cyc) for s in states},
        channels=single_channels(n),
        states=frozenset(states),
        contents=frozenset({TOKEN}),
    )


def gen_single(n: int, order: str = "size-lex", cycle: str = "index") -> list[Cts]:
    """Agents of the single-switching-channel system for ``n`` processes."""
    if n < 1:
        raise InputError("need at least one process")
    return [single_agent(k, n, order, cycle) for k in range(1, n + 1)]


def single_system(n: int, order: str = "size-lex", cycle: str = "index") -> ComposedCts:
    return ComposedCts(gen_single(n, order, cycle), default_processes(n))


def single_state_bound(n: int) -> int:
    """Size of the full declared agent state space (c, sc, D, d)."""
    channels = single_channels(n)
    total = 0
    for c in channels:
        for sc in channels:
            rest = [x for x in channels if x != sc]
            for mask in range(1 << len(rest)):
                D = {x for i, x in enumerate(rest) if mask >> i & 1}
                total += len(D | {c})
    return total


def double_channels(n: int) -> tuple:
    return tuple(range(1, n + 3))


def _rotate_index(channels, tg, hl, cycle):
    return cycle.next(channels, tg), cycle.next(channels, hl)


def _rotate_disjoint(channels, tg, hl, cycle):
    new_tg = cycle.next(channels, hl)
    return new_tg, cycle.next(channels, new_tg)


ROTATIONS = {"index": _rotate_index, "disjoint": _rotate_disjoint}


def star_bounds(channels, tg, hl, cycle: Cycle):
    """``(minstar, maxstar)`` of the non-switching channels, with
    ``minstar`` the cycle successor of ``maxstar``."""
    star = frozenset(channels) - {tg, hl}
    lo = min(star, key=canonical_key)
    return lo, cycle.prev(star, lo)


def double_listen(s, cycle: Cycle) -> frozenset:
    c, tg, hl, _h, D, _d = s
    if c in D:
        return frozenset({tg, hl, c, cycle.prev(D, c)})
    return frozenset({tg, hl, c})


def double_moves(s, channels, cycle: Cycle, rotate):
    c, tg, hl, h, D, d = s
    out = []
    before = cycle.prev(D, c, strict=False)
    if d == c:
        out.append((c, TwoSwitchState(c, tg, hl, h, D, before)))
    if d == before:
        out.append((before, TwoSwitchState(c, tg, hl, h, D, c)))
    # toggling adds the highlighted channel to D
    grown = D | {h}
    if c != h:
        out.append((tg, TwoSwitchState(c, tg, hl, h, grown, cycle.prev(grown, c, strict=False))))
    else:
        out.append((tg, TwoSwitchState(h, tg, hl, h, grown, h)))
    star = frozenset(channels) - {tg, hl}
    _lo, maxstar = star_bounds(channels, tg, hl, cycle)
    if h != maxstar:
        out.append((hl, TwoSwitchState(c, tg, hl, cycle.next(star, h), D, d)))
    else:
        new_tg, new_hl = rotate(channels, tg, hl, cycle)
        minstar, _hi = star_bounds(channels, new_tg, new_hl, cycle)
        if c == new_tg:
            out.append((hl, TwoSwitchState(tg, new_tg, new_hl, minstar, EMPTY, tg)))
        elif c == new_hl:
            out.append((hl, TwoSwitchState(hl, new_tg, new_hl, minstar, EMPTY, hl)))
        else:
            out.append((hl, TwoSwitchState(c, new_tg, new_hl, minstar, EMPTY, c)))
    return list(dict.fromkeys(out))


def double_agent(k: int, n: int, rotation: str = "index", cycle: str = "index") -> Cts:
    channels = frozenset(double_channels(n))
    cyc = _cycle(cycle)
    if rotation not in ROTATIONS:
        raise InputError(f"unknown rotation {rotation!r}; known: {sorted(ROTATIONS)}")
    rotate = ROTATIONS[rotation]
    tg, hl = n + 1, n + 2
    minstar, _ = star_bounds(channels, tg, hl, cyc)
    initial = TwoSwitchState(k, tg, hl, minstar, EMPTY, k)
    states, transitions = _closure(initial, lambda s: double_moves(s, channels, cyc, rotate))
    return Cts(
        initial=initial,
        transitions=frozenset(transitions),
        listen={s: double_listen(s, cyc) for s in states},
        channels=double_channels(n),
        states=frozenset(states),
        contents=frozenset({TOKEN}),
    )


def gen_double(n: int, rotation: str = "index", cycle: str = "index") -> list[Cts]:
    """Agents of the two-switching-channel system for ``n`` processes.

    ``rotation="index"`` advances both switching channels by one position
    when the highlight wraps; ``"disjoint"`` moves the pair to the two
    channels after the old highlighting channel.
    """
    if n < 1:
        raise InputError("need at least one process")
    return [double_agent(k, n, rotation, cycle) for k in range(1, n + 1)]


def double_system(n: int, rotation: str = "index", cycle: str = "index") -> ComposedCts:
    return ComposedCts(gen_double(n, rotation, cycle), default_processes(n))


def _cycle(name) -> Cycle:
    if isinstance(name, Cycle):
        return name
    if name not in CYCLES:
        raise InputError(f"unknown cycle policy {name!r}; known: {sorted(CYCLES)}")
    return CYCLES[name]


def shared_roles(g, fields: tuple) -> tuple:
    """The role fields every agent agrees on; raises if they disagree."""
    views = {tuple(s[i] for i in fields) for s in g}
    if len(views) != 1:
        raise InputError(f"agents disagree on switching roles in {g!r}")
    return views.pop()


def switching_schedule(system: ComposedCts, steps: int) -> list[tuple]:
    """``(sc, D)`` after each of ``steps`` communications on the current
    switching channel, starting with the initial snapshot."""
    g = system.initial
    sc, D = shared_roles(g, (1, 2))
    out = [(sc, D)]
    for _ in range(steps):
        nxt = system.step(g, (TOKEN, sc))
        if len(nxt) != 1:
            raise InputError(f"switching channel {sc!r} has {len(nxt)} successors in {g!r}")
        (g,) = nxt
        sc, D = shared_roles(g, (1, 2))
        out.append((sc, D))
    return out


def format_schedule(schedule, channels) -> str:
    """Text table: one row per channel, one column per snapshot; ``S``
    marks the switching channel and ``#`` a dependent one."""
    width = len(str(len(schedule) - 1))
    head = "ch | " + " ".join(str(i).rjust(width) for i in range(len(schedule)))
    lines = [head, "-" * len(head)]
    for ch in channels:
        cells = []
        for sc, D in schedule:
            mark = "S" if ch == sc else "#" if ch in D else "."
            cells.append(mark.rjust(width))
        lines.append(f"{str(ch).rjust(2)} | " + " ".join(cells))
    return "\n".join(lines)


def head_of(g, cycle: Cycle = CYCLES["index"]):
    """The dependent channel both of whose listeners are ready, or None.

    For ``x`` in ``D`` the listeners are the owner of ``x`` (ready when
    expecting ``x``) and the owner of the cycle successor of ``x`` (ready
    when expecting ``x`` as its predecessor). Raises if several are ready.
    """
    _sc, D = shared_roles(g, (1, 2))
    owner = {s[0]: s for s in g}
    ready = []
    for x in canonical_sorted(D):
        a, b = owner.get(x), owner.get(cycle.next(D, x))
        if a is not None and b is not None and a[3] == x and b[3] == x:
            ready.append(x)
    if len(ready) > 1:
        raise InputError(f"several dependent channels ready in {g!r}: {ready!r}")
    return ready[0] if ready else None


@dataclass(frozen=True)
class RoleIssue:
    state: tuple
    process: object
    channel: object
    kind: str


def role_collisions(system: ComposedCts, double: bool, cap=None) -> list[RoleIssue]:
    """Reachable states where an agent owns a current switching channel
    (``kind="owns-switching"``) or a non-switching channel has no owner
    (``kind="unowned"``)."""
    issues = []
    channels = frozenset(system.channels)
    roles = (1, 2) if double else (1,)
    for g in system.reachable(cap).order:
        switching = set(shared_roles(g, roles))
        for p, s in zip(system.processes, g):
            if s[0] in switching:
                issues.append(RoleIssue(g, p, s[0], "owns-switching"))
        owned = {s[0] for s in g}
        for ch in canonical_sorted(channels - switching - owned):
            issues.append(RoleIssue(g, None, ch, "unowned"))
    return issues


def _roles_or_none(g, fields):
    try:
        return shared_roles(g, fields)
    except InputError:
        return None


def reset_configurations(system: ComposedCts, cap=None, cycle: Cycle = CYCLES["index"]) -> list:
    """Reachable configurations of a two-switching system right after a
    reset: empty dependent set and the highlight on ``minstar``. States
    where agents disagree on their roles are skipped."""
    out = []
    for g in system.reachable(cap).order:
        roles = _roles_or_none(g, (1, 2, 3, 4))
        if roles is None:
            continue
        tg, hl, h, D = roles
        if not D and h == star_bounds(system.channels, tg, hl, cycle)[0]:
            out.append(g)
    return out


def drive_costs(system: ComposedCts, g) -> dict:
    """Dependent sets reachable from ``g`` using only the two switching
    channels without rotating them, mapped to the Pareto-minimal
    ``(hl uses, tg uses)`` pairs. Each count is capped at ``|C*|``."""
    tg, hl = shared_roles(g, (1, 2))
    limit = len(system.channels) - 2
    seen = {(g, 0, 0)}
    frontier = [(g, 0, 0)]
    costs: dict = {}
    while frontier:
        nxt = []
        for x, nh, nt in frontier:
            roles = _roles_or_none(x, (1, 2, 4))
            if roles is None or roles[:2] != (tg, hl):
                continue
            costs.setdefault(roles[2], set()).add((nh, nt))
            for ch, dh, dt in ((hl, 1, 0), (tg, 0, 1)):
                for y in system.step(x, (TOKEN, ch)):
                    key = (y, nh + dh, nt + dt)
                    if key[1] <= limit and key[2] <= limit and key not in seen:
                        seen.add(key)
                        nxt.append(key)
        frontier = nxt
    return {
        D: sorted(
            c for c in pairs if not any(o != c and o[0] <= c[0] and o[1] <= c[1] for o in pairs)
        )
        for D, pairs in costs.items()
    }
