"""Graphviz DOT rendering.

Output is deterministic: nodes are numbered in canonical state order
(component views) or BFS discovery order (composed views) and edges are
sorted before emission.
"""

from __future__ import annotations

from .automata import GlobalAA, LocalAA
from .cts import ComposedCts, Cts
from .documents import Document
from .errors import InputError
from .explore import explore
from .values import canonical_sorted, fmt_value

VIEWS = ("component", "composed")


def _quote(s: str) -> str:
    s = s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return '"' + s + '"'


def _graph(name, nodes, edges, initial, indent="  ") -> list[str]:
    """``nodes``: ordered (state, label); ``edges``: (src, dst, label)."""
    ids = {s: f"{name}_{i}" for i, (s, _l) in enumerate(nodes)}
    lines = []
    for s, label in nodes:
        shape = "doublecircle" if s == initial else "circle"
        lines.append(f"{indent}{ids[s]} [shape={shape}, label={_quote(label)}];")
    merged = {}
    for src, dst, label in edges:
        merged.setdefault((ids[src], ids[dst]), set()).add(label)
    for (a, b), labels in sorted(merged.items()):
        text = ",".join(sorted(labels, key=lambda x: (len(x), x)))
        lines.append(f"{indent}{a} -> {b} [label={_quote(text)}];")
    return lines


def _msg_label(t, c, single_content: bool) -> str:
    return str(c) if single_content else f"{fmt_value(t)}/{c}"


def cts_lines(cts: Cts, name="s", indent="  ") -> list[str]:
    single = len(cts.contents) <= 1
    nodes = [(s, fmt_value(s)) for s in canonical_sorted(cts.states)]
    edges = [(s, s2, _msg_label(t, c, single)) for s, (t, c), s2 in cts.transitions]
    return _graph(name, nodes, edges, cts.initial, indent)


def _aa_local_edges(aa, p):
    i = aa.processes.index(p)
    if isinstance(aa, LocalAA):
        return [(s, t, str(a)) for (s, a), t in aa.delta_p[p].items()]
    edges = []
    for a in aa.letters:
        idx = aa.domain_positions(a)
        if i not in idx:
            continue
        k = idx.index(i)
        for src, dst in aa.delta[a].items():
            edges.append((src[k], dst[k], str(a)))
    return edges


def export_dot(obj, view: str = "component", component=None, cap=None) -> str:
    if view not in VIEWS:
        raise InputError(f"unknown view {view!r}; known: {VIEWS}")
    if isinstance(obj, Document):
        obj = obj.body
    lines = ["digraph {", "  rankdir=LR;"]
    if view == "composed":
        if isinstance(obj, Cts):
            obj = ComposedCts([obj])
        if not isinstance(obj, (ComposedCts, GlobalAA, LocalAA)):
            raise InputError("composed view needs a system or an automaton")
        graph = explore(obj, cap)
        nodes = []
        for g in graph.order:
            label = fmt_value(g)
            if isinstance(obj, ComposedCts):
                enabled = canonical_sorted(obj.enabled(g))
            else:
                enabled = canonical_sorted({a for a, _ in graph.edges[g]})
            label += "\nenabled: {" + ",".join(map(str, enabled)) + "}"
            nodes.append((g, label))
        edges = [(g, g2, str(a)) for g in graph.order for a, g2 in graph.edges[g]]
        lines += _graph("g", nodes, edges, graph.order[0])
    elif isinstance(obj, Cts):
        lines += cts_lines(obj)
    elif isinstance(obj, ComposedCts):
        procs = obj.processes if component is None else (component,)
        for j, p in enumerate(procs):
            if p not in obj.processes:
                raise InputError(f"unknown component {p!r}")
            if component is not None:
                lines += cts_lines(obj.component(p))
                break
            lines.append(f"  subgraph cluster_{j} {{")
            lines.append(f"    label={_quote(str(p))};")
            lines += cts_lines(obj.component(p), name=f"c{j}", indent="    ")
            lines.append("  }")
    elif isinstance(obj, (GlobalAA, LocalAA)):
        procs = obj.processes if component is None else (component,)
        for j, p in enumerate(procs):
            if p not in obj.processes:
                raise InputError(f"unknown process {p!r}")
            nodes = [(s, fmt_value(s)) for s in canonical_sorted(obj.states_of[p])]
            edges = _aa_local_edges(obj, p)
            lines.append(f"  subgraph cluster_{j} {{")
            lines.append(f"    label={_quote(str(p))};")
            lines += _graph(f"c{j}", nodes, edges, obj.initial_of[p], indent="    ")
            lines.append("  }")
    else:
        raise InputError(f"cannot render {type(obj).__name__}")
    lines.append("}")
    return "\n".join(lines) + "\n"
