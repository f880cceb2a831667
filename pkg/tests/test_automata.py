import random

import pytest
from hypothesis import given, strategies as st

from zielonka_cts import (
    DistributedAlphabet,
    GlobalAA,
    IntegrityError,
    LocalAA,
    UnknownLetterError,
    aa_step,
    language_upto,
    run_word,
)
from zielonka_cts.random_models import random_global_aa, random_local_aa

import oracles

SEEDS = st.integers(0, 10**6)


@pytest.fixture
def handshake():
    """p and q each flip a bit on a private letter; s resets both together."""
    alpha = DistributedAlphabet(("a", "b", "s"), ("p", "q"), {"a": {"p"}, "b": {"q"}, "s": {"p", "q"}})
    delta = {
        "a": {(0,): (1,)},
        "b": {(0,): (1,)},
        "s": {(1, 1): (0, 0)},
    }
    return GlobalAA(alpha, {"p": {0, 1}, "q": {0, 1}}, {"p": 0, "q": 0}, delta)


def test_partial_delta_blocks(handshake):
    assert aa_step(handshake, (0, 0), "s") is None
    assert aa_step(handshake, (1, 1), "s") == (0, 0)
    res = run_word(handshake, "aas")
    assert res.blocked and res.blocked_at == 1 and res.config == (1, 0)
    assert not run_word(handshake, "absab").blocked


def test_language_prefix_closed(handshake):
    lang = language_upto(handshake, 3)
    assert lang == {(), ("a",), ("b",), ("a", "b"), ("b", "a"),
                    ("a", "b", "s"), ("b", "a", "s")}


def test_unknown_letter(handshake):
    with pytest.raises(UnknownLetterError):
        aa_step(handshake, (0, 0), "z")


def test_config_arity(handshake):
    with pytest.raises(IntegrityError):
        aa_step(handshake, (0,), "a")


def test_undeclared_state():
    alpha = DistributedAlphabet(("a",), ("p",), {"a": {"p"}})
    with pytest.raises(IntegrityError):
        GlobalAA(alpha, {"p": {0}}, {"p": 0}, {"a": {(0,): (5,)}})
    with pytest.raises(IntegrityError):
        LocalAA(alpha, {"p": {0}}, {"p": 1}, {})


def test_local_outside_domain():
    alpha = DistributedAlphabet(("a", "b"), ("p", "q"), {"a": {"p"}, "b": {"q"}})
    with pytest.raises(IntegrityError):
        LocalAA(alpha, {"p": {0}, "q": {0}}, {"p": 0, "q": 0}, {"p": {(0, "b"): 0}})


@given(SEEDS)
def test_global_language_matches_oracle(seed):
    aa = random_global_aa(random.Random(seed))
    assert language_upto(aa, 5) == oracles.aa_words(aa, 5)


@given(SEEDS)
def test_local_to_global_same_language(seed):
    laa = random_local_aa(random.Random(seed))
    assert language_upto(laa, 5) == language_upto(laa.to_global(), 5) == oracles.aa_words(laa, 5)


def _after(aa, cfg, word):
    for a in word:
        if cfg is None:
            return None
        cfg = aa.step(cfg, a)
    return cfg


@given(SEEDS)
def test_independent_letters_commute(seed):
    aa = random_global_aa(random.Random(seed))
    for cfg in oracles_configs(aa):
        for a, b in aa.alphabet.independent_pairs():
            assert _after(aa, cfg, (a, b)) == _after(aa, cfg, (b, a))


def oracles_configs(aa):
    seen = {aa.initial_config()}
    todo = list(seen)
    while todo:
        cfg = todo.pop()
        for a in aa.letters:
            nxt = aa.step(cfg, a)
            if nxt is not None and nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen
