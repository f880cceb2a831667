import random

import pytest
from hypothesis import given, strategies as st

from zielonka_cts import (
    TOKEN,
    ComposedCts,
    Cts,
    InputError,
    NondeterminismError,
    cts_language_upto,
    language_upto,
)
from zielonka_cts.analysis import fully_listening
from zielonka_cts.random_models import random_cts_system, random_global_aa, random_local_aa
from zielonka_cts.translate import (
    IDLE,
    ExecutorChoice,
    aa_to_cts,
    cts_to_aa,
    cts_to_aa_executor,
    cts_to_laa,
    laa_to_cts,
)

import oracles

SEEDS = st.integers(0, 10**6)


@given(SEEDS)
def test_aa_to_cts_language(seed):
    aa = random_global_aa(random.Random(seed))
    comps = aa_to_cts(aa)
    assert cts_language_upto(ComposedCts(comps, aa.processes), 5) == oracles.aa_words(aa, 5)


@given(SEEDS)
def test_aa_to_cts_listening_is_domain(seed):
    aa = random_global_aa(random.Random(seed))
    for p, comp in zip(aa.processes, aa_to_cts(aa)):
        assert all(heard == aa.alphabet.dom_inv(p) for heard in comp.listen.values())


@given(SEEDS)
def test_laa_round_trip(seed):
    laa = random_local_aa(random.Random(seed))
    system = ComposedCts(laa_to_cts(laa), laa.processes)
    assert system.contents == {TOKEN}
    back = cts_to_laa(system)
    assert language_upto(back, 5) == oracles.aa_words(laa, 5)


@given(SEEDS)
def test_cts_to_aa_language(seed):
    comps = random_cts_system(random.Random(seed))
    aa = cts_to_aa(comps)
    assert language_upto(aa, 5) == oracles.cts_words(comps, 5)
    assert all(fully_listening(aa, p) for p in aa.processes)


@given(SEEDS, st.integers(0, 2))
def test_executor_language(seed, who):
    comps = random_cts_system(random.Random(seed))
    system = ComposedCts(comps)
    executor = system.processes[who % len(comps)]
    others = {p: system.channels[:1] for p in system.processes if p != executor}
    b = cts_to_aa_executor(system, ExecutorChoice(executor, others))
    assert language_upto(b, 5) == oracles.cts_words(comps, 5)
    assert fully_listening(b, executor)
    assert all(b.states_of[p] == {IDLE} for p in others)


def test_executor_needs_known_process(fix1):
    with pytest.raises(InputError):
        cts_to_aa_executor(fix1, ExecutorChoice("nobody"))
    with pytest.raises(InputError):
        ExecutorChoice("p1").listen_of("p1")


def _fork():
    """One agent with two successors on the same channel."""
    return Cts(0, frozenset({(0, (TOKEN, "x"), 1), (0, (TOKEN, "x"), 2)}),
               {0: {"x"}, 1: set(), 2: set()}, ("x",))


def test_nondeterminism_rejected():
    with pytest.raises(NondeterminismError) as err:
        cts_to_aa([_fork()])
    assert err.value.witnesses
    with pytest.raises(NondeterminismError):
        cts_to_laa([_fork()])


def test_nondeterminism_resolved():
    aa = cts_to_aa([_fork()], resolve=True)
    assert aa.step((0,), "x") == (1,)


def test_laa_rejects_unheard_channel():
    deaf = Cts(0, frozenset(), {0: set()}, ("x",))
    with pytest.raises(InputError, match="nobody listens"):
        cts_to_laa([deaf])


def test_laa_rejects_contents():
    comp = Cts(0, frozenset({(0, ("m", "x"), 0), (0, ("n", "x"), 0)}), {0: {"x"}}, ("x",))
    with pytest.raises(InputError):
        cts_to_laa([comp])


def test_fix1_reverse_translations(fix1):
    ref = cts_language_upto(fix1, 5)
    assert language_upto(cts_to_aa(fix1), 5) == ref
    for executor in fix1.processes:
        b = cts_to_aa_executor(fix1, ExecutorChoice(executor))
        assert language_upto(b, 5) == ref
