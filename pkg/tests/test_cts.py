import random

import pytest
from hypothesis import given, strategies as st

from zielonka_cts import (
    TOKEN,
    ComposedCts,
    Cts,
    InputError,
    IntegrityError,
    compose,
    cts_language_upto,
    cts_step,
    enabled_channels,
)
from zielonka_cts.random_models import random_cts_system

import oracles


def agent(transitions, listen, initial=0, channels=("x", "y")):
    return Cts(initial, frozenset((s, (TOKEN, c), t) for s, c, t in transitions), listen, channels)


def test_listening_constraint():
    with pytest.raises(IntegrityError, match="listening constraint"):
        agent([(0, "x", 0)], {0: set()})


def test_undeclared_initial():
    with pytest.raises(IntegrityError):
        Cts(9, frozenset(), {}, ("x",), frozenset({0}))


def test_step():
    a = agent([(0, "x", 1)], {0: {"x"}, 1: set()})
    assert cts_step(a, 0, (TOKEN, "x")) == {1}
    assert cts_step(a, 0, ("other", "x")) == frozenset()


def test_listening_without_transition_blocks():
    talker = agent([(0, "x", 1)], {0: {"x"}, 1: set()})
    refuser = agent([], {0: {"x"}})
    deaf = agent([], {0: set()})
    assert enabled_channels(compose([talker, refuser]), (0, 0)) == frozenset()
    assert enabled_channels(compose([talker, deaf]), (0, 0)) == {"x"}


def test_nobody_listens():
    deaf = agent([], {0: set()})
    assert ComposedCts([deaf, deaf]).enabled((0, 0)) == frozenset()


def test_non_listener_stays():
    talker = agent([(0, "y", 1)], {0: {"y"}, 1: set()})
    other = agent([(0, "x", 1)], {0: {"x"}, 1: set()})
    system = compose([talker, other])
    assert system.step((0, 0), (TOKEN, "y")) == {(1, 0)}
    assert system.step((0, 0), (TOKEN, "x")) == {(0, 1)}


def test_contents_must_agree():
    a = Cts(0, frozenset({(0, ("m", "x"), 1)}), {0: {"x"}, 1: set()}, ("x",))
    b = Cts(0, frozenset({(0, ("n", "x"), 1)}), {0: {"x"}, 1: set()}, ("x",))
    assert ComposedCts([a, b]).enabled((0, 0)) == frozenset()


def test_composition_errors():
    with pytest.raises(InputError):
        ComposedCts([])
    with pytest.raises(InputError):
        ComposedCts([agent([], {0: set()}), agent([], {0: set()}, channels=("x",))])


def test_fix1_language_frozen(fix1):
    lang = cts_language_upto(fix1, 5)
    # every word of length <= 4 runs; exactly one of length 5 is refused
    assert len(lang) == 1364
    assert all(w in lang for w in oracles.cts_words(fix1.components, 4))
    assert len([w for w in lang if len(w) == 4]) == 4**4
    assert (4, 4, 4, 4, 2) not in lang


def test_fix1_reachable_count(fix1):
    assert len(fix1.reachable()) == len(oracles.reachable_configs(fix1.components)) == 156


@given(st.integers(0, 10**6))
def test_composition_matches_naive_oracle(seed):
    comps = random_cts_system(random.Random(seed))
    system = ComposedCts(comps)
    for g in oracles.reachable_configs(comps):
        assert set(system.transitions_from(g)) == oracles.naive_successors(comps, g)


@given(st.integers(0, 10**6))
def test_language_matches_oracle(seed):
    comps = random_cts_system(random.Random(seed))
    assert cts_language_upto(ComposedCts(comps), 5) == oracles.cts_words(comps, 5)


@given(st.integers(0, 10**6))
def test_flattening_preserves_language(seed):
    system = ComposedCts(random_cts_system(random.Random(seed)))
    flat = system.to_cts()
    assert cts_language_upto(ComposedCts([flat]), 5) == cts_language_upto(system, 5)
