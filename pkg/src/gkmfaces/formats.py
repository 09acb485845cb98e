"""Text grammars for the three input kinds, plus DOT and JSON export.

All three formats are line-based; `#` starts a comment anywhere and blank
lines are skipped.  Parsers report every failure with its line and the
column of the offending token.

matroid (.wt)      ambient_rank: <k>
                   w1 = (a_1,...,a_k)        weights numbered from 1, in order

poset (.poset)     element <id> rank <r> [drk <d>]
                   cover <id> < <id>

graph (.gkm)       ambient_rank: <k>
                   signed                    optional; weights are then oriented
                                             from the first listed endpoint
                   vertex <id>
                   edge <id> <u> <v> weight (a_1,...,a_k)
                   connection <from> at <vertex> -> <to> via <edge>
                                             optional; the map along `via` out
                                             of `vertex`; via -> via is implicit
"""

from __future__ import annotations

import json
import re

from .errors import GkmFacesError, ParseError
from .gkm import Connection, GkmGraph
from .matroid import WeightSystem
from .poset import GradedPoset, computed_ranks
from .ratlinalg import IntVector


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield lineno, line


def _parse_vector(token: str, lineno: int, column: int) -> IntVector:
    body = token.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ParseError(f"expected a parenthesized vector, got {token!r}", lineno, column)
    inner = body[1:-1].strip()
    if not inner:
        raise ParseError("empty vector", lineno, column)
    entries = []
    for part in inner.split(","):
        part = part.strip()
        if not re.fullmatch(r"[+-]?\d+", part):
            raise ParseError(f"bad integer {part!r} in vector", lineno, column)
        entries.append(int(part))
    return tuple(entries)


def _ambient_rank(line: str, lineno: int) -> int:
    match = re.fullmatch(r"ambient_rank\s*:\s*(\d+)", line.strip())
    if not match:
        raise ParseError("expected 'ambient_rank: <k>'", lineno, 1)
    return int(match.group(1))


# ----------------------------------------------------------------------
# matroid files


def parse_matroid(text: str) -> WeightSystem:
    ambient = None
    weights: list[IntVector] = []
    for lineno, line in _lines(text):
        stripped = line.strip()
        if stripped.startswith("ambient_rank"):
            if ambient is not None:
                raise ParseError("ambient_rank given twice", lineno, 1)
            ambient = _ambient_rank(stripped, lineno)
            continue
        match = re.fullmatch(r"w(\d+)\s*=\s*(\(.*\))", stripped)
        if not match:
            raise ParseError(f"expected 'w<i> = (…)', got {stripped!r}", lineno, 1)
        index = int(match.group(1))
        if index != len(weights) + 1:
            raise ParseError(f"expected weight w{len(weights) + 1}, got w{index}", lineno, 1)
        if ambient is None:
            raise ParseError("ambient_rank must come before the weights", lineno, 1)
        column = line.index("(") + 1
        vector = _parse_vector(match.group(2), lineno, column)
        if len(vector) != ambient:
            raise ParseError(
                f"weight w{index} has {len(vector)} entries, expected {ambient}", lineno, column
            )
        if not any(vector):
            raise ParseError("zero weight forbidden", lineno, column)
        weights.append(vector)
    if ambient is None:
        raise ParseError("missing ambient_rank", 1, 1)
    return WeightSystem(ambient, weights)


def format_matroid(ws: WeightSystem) -> str:
    out = [f"ambient_rank: {ws.ambient_rank}"]
    for i in ws.indices:
        out.append(f"w{i} = ({','.join(map(str, ws.weight(i)))})")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------
# poset files


def parse_poset(text: str) -> GradedPoset:
    elements: list[str] = []
    rank: dict[str, int] = {}
    drk: dict[str, int] = {}
    covers: list[tuple[str, str]] = []
    for lineno, line in _lines(text):
        tokens = line.split()
        if tokens[0] == "element":
            if len(tokens) not in (4, 6) or tokens[2] != "rank":
                raise ParseError("expected 'element <id> rank <r> [drk <d>]'", lineno, 1)
            name = tokens[1]
            if name in rank:
                raise ParseError(f"element {name!r} declared twice", lineno, 1)
            if not tokens[3].lstrip("-").isdigit():
                raise ParseError(f"bad rank {tokens[3]!r}", lineno, 1)
            elements.append(name)
            rank[name] = int(tokens[3])
            if len(tokens) == 6:
                if tokens[4] != "drk" or not tokens[5].isdigit():
                    raise ParseError("expected 'drk <d>'", lineno, 1)
                drk[name] = int(tokens[5])
        elif tokens[0] == "cover":
            if len(tokens) != 4 or tokens[2] != "<":
                raise ParseError("expected 'cover <id> < <id>'", lineno, 1)
            low, high = tokens[1], tokens[3]
            for name in (low, high):
                if name not in rank:
                    raise ParseError(f"unknown element {name!r} in cover", lineno, 1)
            covers.append((low, high))
        else:
            raise ParseError(f"unknown directive {tokens[0]!r}", lineno, 1)
    if not elements:
        raise ParseError("poset file declares no elements", 1, 1)
    if drk and set(drk) != set(elements):
        missing = next(e for e in elements if e not in drk)
        raise ParseError(f"drk given for some elements but not {missing!r}", 1, 1)
    try:
        return GradedPoset(elements, covers, rank=rank, drk=drk or None)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from exc


_TOKEN = re.compile(r"[A-Za-z0-9_.:\-{},']+")


def _export_ids(p: GradedPoset) -> dict:
    """Stable printable identifiers for arbitrary element objects."""
    out = {}
    used = set()
    for pos, e in enumerate(p.elements):
        for candidate in (e if isinstance(e, str) else None, p.labels.get(e)):
            if (
                candidate
                and isinstance(candidate, str)
                and _TOKEN.fullmatch(candidate)
                and candidate not in used
            ):
                break
        else:
            candidate = f"n{pos}"
        used.add(candidate)
        out[e] = candidate
    return out


def format_poset(p: GradedPoset) -> str:
    names = _export_ids(p)
    ranks = p.rank
    if ranks is None:
        ranks, reason = computed_ranks(p)
        if ranks is None:
            raise GkmFacesError(f"cannot export an ungradable poset: {reason}")
    out = []
    for e in p.elements:
        line = f"element {names[e]} rank {ranks[e]}"
        if p.drk is not None:
            line += f" drk {p.drk[e]}"
        out.append(line)
    position = {e: i for i, e in enumerate(p.elements)}
    for low, high in sorted(p.covers, key=lambda c: (position[c[0]], position[c[1]])):
        out.append(f"cover {names[low]} < {names[high]}")
    return "\n".join(out) + "\n"


def poset_to_json(p: GradedPoset) -> dict:
    names = _export_ids(p)
    ranks = p.rank
    if ranks is None:
        ranks, _ = computed_ranks(p)
    elements = []
    for e in p.elements:
        entry: dict = {"id": names[e]}
        if ranks is not None:
            entry["rank"] = ranks[e]
        if p.drk is not None:
            entry["drk"] = p.drk[e]
            if ranks is not None:
                entry["com"] = p.drk[e] - ranks[e]
        if e in p.labels and p.labels[e] != names[e]:
            entry["label"] = p.labels[e]
        elements.append(entry)
    position = {e: i for i, e in enumerate(p.elements)}
    covers = [
        [names[low], names[high]]
        for low, high in sorted(p.covers, key=lambda c: (position[c[0]], position[c[1]]))
    ]
    return {"kind": "poset", "elements": elements, "covers": covers}


def poset_to_dot(p: GradedPoset) -> str:
    """Hasse diagram with one layer per rank, lowest rank at the bottom."""
    names = _export_ids(p)
    ranks = p.rank
    if ranks is None:
        ranks, _ = computed_ranks(p)
    out = ["digraph poset {", "  rankdir=BT;", "  node [shape=box];"]
    for e in p.elements:
        label = p.labels.get(e, names[e])
        out.append(f'  "{names[e]}" [label="{label}"];')
    if ranks is not None:
        for level in sorted(set(ranks.values())):
            same = " ".join(f'"{names[e]}";' for e in p.elements if ranks[e] == level)
            out.append(f"  {{ rank=same; {same} }}")
    position = {e: i for i, e in enumerate(p.elements)}
    for low, high in sorted(p.covers, key=lambda c: (position[c[0]], position[c[1]])):
        out.append(f'  "{names[low]}" -> "{names[high]}";')
    out.append("}")
    return "\n".join(out) + "\n"


def matroid_to_json(ws: WeightSystem) -> dict:
    return {
        "kind": "matroid",
        "ambient_rank": ws.ambient_rank,
        "weights": [list(w) for w in ws.weights],
    }


# ----------------------------------------------------------------------
# graph files


def parse_graph_with_connection(text: str) -> tuple[GkmGraph, Connection | None]:
    ambient = None
    signed = False
    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    axial: dict[str, IntVector] = {}
    connection_rows: list[tuple[int, str, str, str, str]] = []
    for lineno, line in _lines(text):
        tokens = line.split()
        if tokens[0] == "ambient_rank" or tokens[0].startswith("ambient_rank"):
            if ambient is not None:
                raise ParseError("ambient_rank given twice", lineno, 1)
            ambient = _ambient_rank(line.strip(), lineno)
        elif tokens[0] == "signed":
            if len(tokens) != 1:
                raise ParseError("'signed' takes no arguments", lineno, 1)
            signed = True
        elif tokens[0] == "vertex":
            if len(tokens) != 2:
                raise ParseError("expected 'vertex <id>'", lineno, 1)
            if tokens[1] in set(vertices):
                raise ParseError(f"vertex {tokens[1]!r} declared twice", lineno, 1)
            vertices.append(tokens[1])
        elif tokens[0] == "edge":
            if len(tokens) != 6 or tokens[4] != "weight":
                raise ParseError("expected 'edge <id> <u> <v> weight (…)'", lineno, 1)
            name, u, v = tokens[1], tokens[2], tokens[3]
            if name in axial:
                raise ParseError(f"edge {name!r} declared twice", lineno, 1)
            for x in (u, v):
                if x not in set(vertices):
                    raise ParseError(f"unknown vertex {x!r}", lineno, 1)
            if ambient is None:
                raise ParseError("ambient_rank must come before the edges", lineno, 1)
            column = line.index("(") + 1 if "(" in line else 1
            vector = _parse_vector(tokens[5], lineno, column)
            if len(vector) != ambient:
                raise ParseError(
                    f"edge weight has {len(vector)} entries, expected {ambient}", lineno, column
                )
            if not any(vector):
                raise ParseError("zero weight forbidden", lineno, column)
            edges.append((name, u, v))
            axial[name] = vector
        elif tokens[0] == "connection":
            if len(tokens) != 8 or tokens[2] != "at" or tokens[4] != "->" or tokens[6] != "via":
                raise ParseError(
                    "expected 'connection <from> at <vertex> -> <to> via <edge>'", lineno, 1
                )
            connection_rows.append((lineno, tokens[1], tokens[3], tokens[5], tokens[7]))
        else:
            raise ParseError(f"unknown directive {tokens[0]!r}", lineno, 1)
    if ambient is None:
        raise ParseError("missing ambient_rank", 1, 1)
    if not vertices:
        raise ParseError("graph file declares no vertices", 1, 1)
    try:
        graph = GkmGraph(ambient, vertices, edges, axial, signed=signed)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from exc
    theta = None
    if connection_rows:
        theta = _assemble_connection(graph, connection_rows)
    return graph, theta


def _assemble_connection(graph: GkmGraph, rows) -> Connection:
    maps: dict[tuple[str, str], dict[str, str]] = {}
    for lineno, source, vertex, target, via in rows:
        for name in (source, via, target):
            if name not in graph.axial:
                raise ParseError(f"unknown edge {name!r} in connection", lineno, 1)
        if vertex not in set(graph.vertices):
            raise ParseError(f"unknown vertex {vertex!r} in connection", lineno, 1)
        via_edge = graph.edge(via)
        if vertex not in (via_edge.u, via_edge.v):
            raise ParseError(f"vertex {vertex!r} is not an endpoint of {via!r}", lineno, 1)
        head = via_edge.other(vertex)
        if source not in graph.star(vertex):
            raise ParseError(f"edge {source!r} is not at vertex {vertex!r}", lineno, 1)
        if target not in graph.star(head):
            raise ParseError(f"edge {target!r} is not at vertex {head!r}", lineno, 1)
        entry = maps.setdefault((via, vertex), {via: via})
        if source in entry and entry[source] != target:
            raise ParseError(f"conflicting images for {source!r} across {via!r}", lineno, 1)
        entry[source] = target
    for (via, vertex), mapping in sorted(maps.items()):
        missing = [f for f in graph.star(vertex) if f not in mapping]
        if missing:
            raise ParseError(
                f"connection along {via!r} out of {vertex!r} misses edge {missing[0]!r}", 1, 1
            )
    for edge in graph.edges:
        for tail in (edge.u, edge.v):
            if (edge.name, tail) not in maps:
                raise ParseError(
                    f"no connection rows along {edge.name!r} out of {tail!r}", 1, 1
                )
    return Connection(maps)


def parse_graph(text: str) -> GkmGraph:
    return parse_graph_with_connection(text)[0]


def format_graph(graph: GkmGraph, theta: Connection | None = None) -> str:
    out = [f"ambient_rank: {graph.ambient_rank}"]
    if graph.signed:
        out.append("signed")
    for x in graph.vertices:
        out.append(f"vertex {x}")
    for e in graph.edges:
        weight = ",".join(map(str, graph.alpha(e.name)))
        out.append(f"edge {e.name} {e.u} {e.v} weight ({weight})")
    if theta is not None:
        for e in graph.edges:
            for tail in (e.u, e.v):
                mapping = theta.maps[(e.name, tail)]
                for source in graph.star(tail):
                    if source == e.name:
                        continue
                    out.append(
                        f"connection {source} at {tail} -> {mapping[source]} via {e.name}"
                    )
    return "\n".join(out) + "\n"


def graph_to_json(graph: GkmGraph) -> dict:
    return {
        "kind": "graph",
        "ambient_rank": graph.ambient_rank,
        "signed": graph.signed,
        "vertices": [str(x) for x in graph.vertices],
        "edges": [
            {
                "id": e.name,
                "ends": [str(e.u), str(e.v)],
                "weight": list(graph.alpha(e.name)),
            }
            for e in graph.edges
        ],
    }


def dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
