"""JSON interchange documents.

Every document is ``{"kind": ..., "version": "1", "body": {...}}``.
Values (states, letters, channels, contents, processes) are JSON scalars,
arrays for tuples, and ``{"set": [...]}`` for sets, so structured states
survive a round trip unchanged. Serialization is canonical: sets and
relations are written in a fixed order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Any

import jsonschema

from .alphabet import Dfa, DistributedAlphabet
from .analysis import AnalysisReport
from .automata import GlobalAA, LocalAA
from .cts import ComposedCts, Cts
from .errors import InputError, SchemaError
from .values import canonical_key, canonical_sorted, decode, encode

VERSION = "1"
KINDS = ("distributed-alphabet", "dfa", "global-aa", "local-aa", "cts", "cts-system", "report")


@dataclass(frozen=True)
class Document:
    kind: str
    body: Any
    version: str = VERSION


@lru_cache(maxsize=None)
def schema() -> dict:
    text = resources.files(__package__).joinpath("schemas/document.schema.json").read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def _validator():
    return jsonschema.Draft202012Validator(schema())


def _pointer(path) -> str:
    return "/" + "/".join(str(p) for p in path) if path else "/"


def _enc_list(values):
    return [encode(v) for v in canonical_sorted(values)]


def _alphabet_json(alpha: DistributedAlphabet) -> dict:
    return {
        "processes": [encode(p) for p in alpha.processes],
        "letters": [
            {
                "letter": encode(a),
                "dom": [encode(p) for p in alpha.processes if p in alpha.dom[a]],
            }
            for a in alpha.letters
        ],
    }


def _process_states(m) -> list:
    return [
        {
            "process": encode(p),
            "states": _enc_list(m.states_of[p]),
            "initial": encode(m.initial_of[p]),
        }
        for p in m.processes
    ]


def _cts_json(c: Cts) -> dict:
    delta = sorted(c.transitions, key=canonical_key)
    return {
        "channels": [encode(ch) for ch in c.channels],
        "contents": _enc_list(c.contents),
        "states": _enc_list(c.states),
        "initial": encode(c.initial),
        "listen": [
            {"state": encode(s), "channels": [encode(ch) for ch in c.channels if ch in c.listen[s]]}
            for s in canonical_sorted(c.states)
        ],
        "delta": [
            {"from": encode(s), "content": encode(t), "channel": encode(ch), "to": encode(s2)}
            for s, (t, ch), s2 in delta
        ],
    }


def _report_json(r: AnalysisReport) -> dict:
    verdicts = []
    for v in r.verdicts:
        entry = {
            "process": encode(v.process),
            "verdict": v.verdict,
            "listening": _enc_list(v.listening),
        }
        d = v.detail
        if d is not None:
            entry["bottom_sccs"] = [_enc_list(s) for s in d.bottom_sccs]
            entry["complete_sccs"] = [_enc_list(s) for s in d.complete_sccs]
            if d.stuck is not None:
                entry["stuck"] = {"config": encode(d.stuck), "reached_by": encode(d.stuck_word)}
            else:
                entry["paths"] = [
                    {"config": encode(g), "continuation": encode(w)}
                    for g, w in sorted(d.paths.items(), key=lambda kv: canonical_key(kv[0]))
                ]
        verdicts.append(entry)
    return {"configurations": r.configurations, "note": r.note, "verdicts": verdicts}


def to_document(obj) -> Document:
    if isinstance(obj, Document):
        return obj
    if isinstance(obj, DistributedAlphabet):
        return Document("distributed-alphabet", _alphabet_json(obj))
    if isinstance(obj, Dfa):
        raise InputError("a dfa needs its alphabet; pass Document('dfa', (dfa, alphabet))")
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], Dfa):
        return Document("dfa", obj)
    if isinstance(obj, GlobalAA):
        return Document("global-aa", obj)
    if isinstance(obj, LocalAA):
        return Document("local-aa", obj)
    if isinstance(obj, Cts):
        return Document("cts", obj)
    if isinstance(obj, ComposedCts):
        return Document("cts-system", obj)
    if isinstance(obj, (list, tuple)) and obj and all(isinstance(c, Cts) for c in obj):
        return Document("cts-system", ComposedCts(obj))
    if isinstance(obj, AnalysisReport):
        return Document("report", _report_json(obj))
    raise InputError(f"cannot serialize {type(obj).__name__}")


def body_json(doc: Document) -> dict:
    kind, obj = doc.kind, doc.body
    if kind == "distributed-alphabet":
        return obj if isinstance(obj, dict) else _alphabet_json(obj)
    if kind == "dfa":
        dfa, alpha = obj
        return {
            "alphabet": _alphabet_json(alpha),
            "states": _enc_list(dfa.states),
            "initial": encode(dfa.initial),
            "accepting": _enc_list(dfa.accepting),
            "delta": [
                {"from": encode(q), "letter": encode(a), "to": encode(r)}
                for (q, a), r in sorted(dfa.delta.items(), key=lambda kv: canonical_key(kv[0]))
            ],
        }
    if kind == "global-aa":
        delta = []
        for a in obj.letters:
            for src, dst in sorted(obj.delta[a].items(), key=lambda kv: canonical_key(kv[0])):
                delta.append({"letter": encode(a), "from": encode(src), "to": encode(dst)})
        out = {
            "alphabet": _alphabet_json(obj.alphabet),
            "processes": _process_states(obj),
            "delta": delta,
        }
        if obj.accepting is not None:
            out["accepting"] = obj.accepting
        return out
    if kind == "local-aa":
        delta = []
        for p in obj.processes:
            for (s, a), t in sorted(obj.delta_p[p].items(), key=lambda kv: canonical_key(kv[0])):
                delta.append(
                    {"process": encode(p), "from": encode(s), "letter": encode(a), "to": encode(t)}
                )
        return {
            "alphabet": _alphabet_json(obj.alphabet),
            "processes": _process_states(obj),
            "delta": delta,
        }
    if kind == "cts":
        return _cts_json(obj)
    if kind == "cts-system":
        return {
            "channels": [encode(c) for c in obj.channels],
            "components": [
                {"process": encode(p), "cts": _cts_json(c)}
                for p, c in zip(obj.processes, obj.components)
            ],
        }
    if kind == "report":
        return obj if isinstance(obj, dict) else _report_json(obj)
    raise InputError(f"unknown kind {kind!r}")


def dumps(obj) -> str:
    doc = to_document(obj)
    data = {"kind": doc.kind, "version": doc.version, "body": body_json(doc)}
    return json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def _alphabet(body) -> DistributedAlphabet:
    return DistributedAlphabet(
        tuple(decode(x["letter"]) for x in body["letters"]),
        tuple(decode(p) for p in body["processes"]),
        {decode(x["letter"]): {decode(p) for p in x["dom"]} for x in body["letters"]},
    )


def _states_of(body):
    states = {decode(x["process"]): {decode(s) for s in x["states"]} for x in body["processes"]}
    initial = {decode(x["process"]): decode(x["initial"]) for x in body["processes"]}
    return states, initial


def _cts(body) -> Cts:
    return Cts(
        initial=decode(body["initial"]),
        transitions=frozenset(
            (decode(x["from"]), (decode(x["content"]), decode(x["channel"])), decode(x["to"]))
            for x in body["delta"]
        ),
        listen={decode(x["state"]): {decode(c) for c in x["channels"]} for x in body["listen"]},
        channels=tuple(decode(c) for c in body["channels"]),
        states=frozenset(decode(s) for s in body["states"]),
        contents=frozenset(decode(t) for t in body["contents"]),
    )


def _with_path(path, fn, *args):
    try:
        return fn(*args)
    except SchemaError:
        raise
    except InputError as exc:
        exc.args = (f"{path}: {exc.args[0]}",) + exc.args[1:]
        raise


def from_json(data) -> Document:
    error = jsonschema.exceptions.best_match(_validator().iter_errors(data))
    if error is not None:
        raise SchemaError(_pointer(error.absolute_path), error.message)
    kind, body = data["kind"], data["body"]
    if kind == "distributed-alphabet":
        obj = _with_path("/body", _alphabet, body)
    elif kind == "dfa":
        alpha = _with_path("/body/alphabet", _alphabet, body["alphabet"])
        dfa = _with_path(
            "/body",
            Dfa,
            frozenset(decode(s) for s in body["states"]),
            decode(body["initial"]),
            {(decode(x["from"]), decode(x["letter"])): decode(x["to"]) for x in body["delta"]},
            frozenset(decode(s) for s in body["accepting"]),
        )
        for i, x in enumerate(body["delta"]):
            if decode(x["letter"]) not in alpha:
                raise SchemaError(f"/body/delta/{i}/letter", "letter not in alphabet")
        obj = (dfa, alpha)
    elif kind == "global-aa":
        alpha = _with_path("/body/alphabet", _alphabet, body["alphabet"])
        states, initial = _states_of(body)
        delta = {}
        for i, x in enumerate(body["delta"]):
            a = decode(x["letter"])
            if a not in alpha:
                raise SchemaError(f"/body/delta/{i}/letter", f"letter {a!r} not in alphabet")
            table = delta.setdefault(a, {})
            src = decode(x["from"])
            if src in table:
                raise SchemaError(f"/body/delta/{i}", "second transition from the same tuple")
            table[src] = decode(x["to"])
        obj = _with_path("/body", GlobalAA, alpha, states, initial, delta, body.get("accepting"))
    elif kind == "local-aa":
        alpha = _with_path("/body/alphabet", _alphabet, body["alphabet"])
        states, initial = _states_of(body)
        delta_p = {}
        for i, x in enumerate(body["delta"]):
            key = (decode(x["from"]), decode(x["letter"]))
            table = delta_p.setdefault(decode(x["process"]), {})
            if key in table:
                raise SchemaError(f"/body/delta/{i}", "second transition on the same letter")
            table[key] = decode(x["to"])
        obj = _with_path("/body", LocalAA, alpha, states, initial, delta_p)
    elif kind == "cts":
        obj = _with_path("/body", _cts, body)
    elif kind == "cts-system":
        comps = [
            _with_path(f"/body/components/{i}/cts", _cts, x["cts"])
            for i, x in enumerate(body["components"])
        ]
        channels = tuple(decode(c) for c in body["channels"])
        for i, comp in enumerate(comps):
            if set(comp.channels) != set(channels):
                raise SchemaError(f"/body/components/{i}/cts/channels", "differs from system channels")
        obj = _with_path(
            "/body", ComposedCts, comps, tuple(decode(x["process"]) for x in body["components"])
        )
    else:
        obj = body
    return Document(kind, obj, data["version"])


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("/", f"not JSON: {exc}") from None
    return from_json(data)
