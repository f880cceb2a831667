"""Asynchronous (Zielonka) automata, channeled transition systems and the
translations between them, plus switching-channel system generators and
bounded analyses."""

from .alphabet import (
    DistributedAlphabet,
    Dfa,
    diamond_violation,
    independent,
    is_i_diamond,
    trace_class,
    trace_equivalent,
)
from .automata import (
    GlobalAA,
    LocalAA,
    RunResult,
    aa_step,
    laa_step,
    language_upto,
    run_word,
)
from .cts import (
    TOKEN,
    ComposedCts,
    Cts,
    compose,
    cts_language_upto,
    cts_step,
    enabled_channels,
)
from .errors import (
    AutomataError,
    IntegrityError,
    InputError,
    NondeterminismError,
    PreconditionError,
    ResourceError,
    SchemaError,
    UnknownLetterError,
)

__all__ = [
    "AutomataError",
    "ComposedCts",
    "Cts",
    "Dfa",
    "DistributedAlphabet",
    "GlobalAA",
    "InputError",
    "IntegrityError",
    "LocalAA",
    "NondeterminismError",
    "PreconditionError",
    "ResourceError",
    "RunResult",
    "SchemaError",
    "TOKEN",
    "UnknownLetterError",
    "aa_step",
    "compose",
    "cts_language_upto",
    "cts_step",
    "diamond_violation",
    "enabled_channels",
    "independent",
    "is_i_diamond",
    "laa_step",
    "language_upto",
    "run_word",
    "trace_class",
    "trace_equivalent",
]
