"""Abstract GKM-graphs: axioms, connections, and face enumeration.

A graph is a finite multigraph with an integer axial vector on every
edge.  In unsigned mode one vector per edge is stored and all span and
collinearity questions ignore signs; in signed mode the stored vector is
the value for the edge oriented from its first declared endpoint, and the
reverse orientation is its exact negation.

Faces are connected subgraphs that are GKM-graphs in their own right:
regular of some degree and closed under two-dimensional spans.  They are
enumerated exhaustively over connected edge subsets behind a hard cap, so
pathological inputs fail loudly instead of hanging.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    ConnectionNotCanonical,
    DimensionMismatch,
    EnumerationCapExceeded,
    GraphModeError,
    InvalidGraph,
    ZeroWeight,
)
from .matroid import WeightSystem, flats_lattice
from .poset import GradedPoset
from .ratlinalg import IntVector, Subspace, as_vector, rank_of

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class Edge:
    name: str
    u: object
    v: object

    def other(self, x):
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"vertex {x!r} is not an endpoint of edge {self.name!r}")


class GkmGraph:
    """Multigraph with axial vectors; GKM axioms are checked by validate_graph."""

    def __init__(
        self,
        ambient_rank: int,
        vertices: Iterable,
        edges: Iterable[tuple[str, object, object]],
        axial: Mapping[str, Sequence[int]],
        signed: bool = False,
    ):
        if ambient_rank < 1:
            raise ValueError("ambient rank must be at least 1")
        self.ambient_rank = ambient_rank
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex identifiers")
        vertex_set = set(self.vertices)
        self.edges = tuple(Edge(name, u, v) for name, u, v in edges)
        names = [e.name for e in self.edges]
        if len(set(names)) != len(names):
            raise ValueError("duplicate edge identifiers")
        for e in self.edges:
            if e.u not in vertex_set or e.v not in vertex_set:
                raise ValueError(f"edge {e.name!r} uses unknown endpoints")
            if e.u == e.v:
                raise ValueError(f"edge {e.name!r} is a loop")
        self.axial: dict[str, IntVector] = {}
        for e in self.edges:
            if e.name not in axial:
                raise ValueError(f"edge {e.name!r} has no axial vector")
            w = as_vector(axial[e.name])
            if len(w) != ambient_rank:
                raise DimensionMismatch(
                    f"axial vector of edge {e.name!r} has length {len(w)}, expected {ambient_rank}"
                )
            if not any(w):
                raise ZeroWeight(f"axial vector of edge {e.name!r} is zero")
            self.axial[e.name] = w
        self.signed = signed
        self._edge_by_name = {e.name: e for e in self.edges}
        self._star: dict[object, tuple[str, ...]] = {x: tuple() for x in self.vertices}
        for e in self.edges:
            self._star[e.u] += (e.name,)
            self._star[e.v] += (e.name,)
        self._vertex_pos = {x: i for i, x in enumerate(self.vertices)}
        self._edge_pos = {e.name: i for i, e in enumerate(self.edges)}

    def edge(self, name: str) -> Edge:
        return self._edge_by_name[name]

    def star(self, x) -> tuple[str, ...]:
        if x not in self._star:
            raise ValueError(f"unknown vertex {x!r}")
        return self._star[x]

    def alpha(self, name: str) -> IntVector:
        return self.axial[name]

    def alpha_from(self, name: str, tail) -> IntVector:
        """Signed axial value for the edge oriented out of `tail`."""
        if not self.signed:
            raise GraphModeError("oriented axial values need a signed graph")
        e = self.edge(name)
        w = self.axial[name]
        if tail == e.u:
            return w
        if tail == e.v:
            return tuple(-x for x in w)
        raise ValueError(f"vertex {tail!r} is not an endpoint of edge {name!r}")

    def vertex_key(self, x) -> int:
        return self._vertex_pos[x]

    def edge_key(self, name: str) -> int:
        return self._edge_pos[name]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GkmGraph):
            return NotImplemented
        return (
            self.ambient_rank == other.ambient_rank
            and self.vertices == other.vertices
            and self.edges == other.edges
            and self.axial == other.axial
            and self.signed == other.signed
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class GraphReport:
    ok: bool
    dimension: int | None
    rank: int | None
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def _collinear(a: Sequence[int], b: Sequence[int]) -> bool:
    return rank_of([tuple(a), tuple(b)]) <= 1


def _two_plane_closure_violations(g: GkmGraph, edges: frozenset[str], star) -> list[str]:
    """Closure failures among the given edges, with star restricted to them."""
    out = []
    for e2_name in sorted(edges, key=g.edge_key):
        e2 = g.edge(e2_name)
        for y, z in ((e2.u, e2.v), (e2.v, e2.u)):
            for e1_name in star(y):
                if e1_name == e2_name:
                    continue
                plane = Subspace.span([g.alpha(e1_name), g.alpha(e2_name)], g.ambient_rank)
                found = any(
                    e3_name != e2_name and plane.contains(g.alpha(e3_name))
                    for e3_name in star(z)
                )
                if not found:
                    out.append(
                        f"no edge at {z!r} continues the span of "
                        f"{e1_name!r} and {e2_name!r}"
                    )
    return out


def validate_graph(g: GkmGraph) -> GraphReport:
    """Check the GKM-graph axioms, reporting every violation."""
    violations: list[str] = []

    seen = {g.vertices[0]}
    frontier = [g.vertices[0]]
    while frontier:
        x = frontier.pop()
        for name in g.star(x):
            y = g.edge(name).other(x)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    if len(seen) != len(g.vertices):
        missing = next(x for x in g.vertices if x not in seen)
        violations.append(f"graph is disconnected: vertex {missing!r} unreachable")

    degrees = {x: len(g.star(x)) for x in g.vertices}
    dimension = degrees[g.vertices[0]]
    if len(set(degrees.values())) != 1:
        worst = sorted(degrees.items(), key=lambda kv: (kv[1], g.vertex_key(kv[0])))
        violations.append(
            f"graph is not regular: vertex {worst[0][0]!r} has degree {worst[0][1]}, "
            f"vertex {worst[-1][0]!r} has degree {worst[-1][1]}"
        )
        dimension = None

    for x in g.vertices:
        star = g.star(x)
        for i in range(len(star)):
            for j in range(i + 1, len(star)):
                if _collinear(g.alpha(star[i]), g.alpha(star[j])):
                    violations.append(
                        f"edges {star[i]!r} and {star[j]!r} at vertex {x!r} "
                        "have dependent axial vectors"
                    )

    all_edges = frozenset(e.name for e in g.edges)
    violations.extend(_two_plane_closure_violations(g, all_edges, g.star))

    spans = [Subspace.span([g.alpha(name) for name in g.star(x)], g.ambient_rank) for x in g.vertices]
    rank = spans[0].dim
    for x, span in zip(g.vertices, spans):
        if span != spans[0]:
            violations.append(
                f"axial span at vertex {x!r} differs from the span at {g.vertices[0]!r}"
            )
            rank = None
            break

    return GraphReport(not violations, dimension, rank, tuple(violations))


def require_valid(g: GkmGraph) -> GraphReport:
    report = validate_graph(g)
    if not report:
        raise InvalidGraph("; ".join(report.violations))
    return report


# ----------------------------------------------------------------------
# connections


class Connection:
    """Star bijections per oriented edge: maps[(edge, tail)][f] = image edge."""

    def __init__(self, maps: Mapping[tuple[str, object], Mapping[str, str]]):
        self.maps = {key: dict(value) for key, value in maps.items()}

    def apply(self, edge: str, tail, f: str) -> str:
        return self.maps[(edge, tail)][f]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Connection):
            return NotImplemented
        return self.maps == other.maps


@dataclass(frozen=True)
class ConnectionReport:
    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def connection_violations(g: GkmGraph, theta: Connection) -> tuple[str, ...]:
    """All connection axiom failures; sign rule is exact on signed graphs.

    On unsigned graphs the translation axiom accepts either sign of the
    source value, since stored vectors are only defined up to sign.
    """
    out: list[str] = []
    for e in g.edges:
        for tail in (e.u, e.v):
            head = e.other(tail)
            key = (e.name, tail)
            if key not in theta.maps:
                out.append(f"no star map along edge {e.name!r} out of {tail!r}")
                continue
            mapping = theta.maps[key]
            star_tail, star_head = set(g.star(tail)), set(g.star(head))
            if set(mapping) != star_tail or set(mapping.values()) != star_head:
                out.append(
                    f"map along {e.name!r} out of {tail!r} is not a bijection "
                    "between the vertex stars"
                )
                continue
            if mapping[e.name] != e.name:
                out.append(f"map along {e.name!r} out of {tail!r} moves the edge itself")
    for e in g.edges:
        fwd, back = (e.name, e.u), (e.name, e.v)
        if fwd in theta.maps and back in theta.maps:
            mapping, inverse = theta.maps[fwd], theta.maps[back]
            if set(mapping) == set(g.star(e.u)) and set(mapping.values()) == set(g.star(e.v)):
                for f, image in mapping.items():
                    if inverse.get(image) != f:
                        out.append(
                            f"maps along {e.name!r} are not mutually inverse at {f!r}"
                        )
                        break
    for e in g.edges:
        for tail in (e.u, e.v):
            key = (e.name, tail)
            if key not in theta.maps:
                continue
            head = e.other(tail)
            mapping = theta.maps[key]
            for f, image in mapping.items():
                if f not in set(g.star(tail)) or image not in set(g.star(head)):
                    continue
                if g.signed:
                    a_f = g.alpha_from(f, tail)
                    a_image = g.alpha_from(image, head)
                    a_e = g.alpha_from(e.name, tail)
                    diff = tuple(p - q for p, q in zip(a_image, a_f))
                    good = _collinear(diff, a_e)
                else:
                    a_f, a_image, a_e = g.alpha(f), g.alpha(image), g.alpha(e.name)
                    good = any(
                        _collinear(tuple(p - s * q for p, q in zip(a_image, a_f)), a_e)
                        for s in (1, -1)
                    )
                if not good:
                    out.append(
                        f"difference of axial values of {image!r} and {f!r} is not "
                        f"collinear to the edge {e.name!r}"
                    )
    return tuple(out)


def validate_connection(g: GkmGraph, theta: Connection) -> ConnectionReport:
    """Check the three connection axioms on a signed graph."""
    if not g.signed:
        raise GraphModeError("connection validation is defined for signed graphs")
    violations = connection_violations(g, theta)
    return ConnectionReport(not violations, violations)


def check_connection(g: GkmGraph, theta: Connection) -> ConnectionReport:
    """Connection axioms in whichever sign mode the graph uses."""
    violations = connection_violations(g, theta)
    return ConnectionReport(not violations, violations)


def canonical_connection(g: GkmGraph) -> Connection:
    """The unique span-compatible connection, where one exists.

    Along an oriented edge, every other edge at the tail must see exactly
    one edge at the head inside their common two-dimensional span; three
    dependent axial values at a vertex break uniqueness and raise.
    """
    require_valid(g)
    maps: dict[tuple[str, object], dict[str, str]] = {}
    for e in g.edges:
        for tail in (e.u, e.v):
            head = e.other(tail)
            mapping = {e.name: e.name}
            for f in g.star(tail):
                if f == e.name:
                    continue
                plane = Subspace.span([g.alpha(e.name), g.alpha(f)], g.ambient_rank)
                candidates = [
                    h for h in g.star(head) if h != e.name and plane.contains(g.alpha(h))
                ]
                if len(candidates) != 1:
                    raise ConnectionNotCanonical(
                        f"connection not canonical: edge {f!r} at {tail!r} has "
                        f"{len(candidates)} span-compatible images across {e.name!r}"
                    )
                mapping[f] = candidates[0]
            if len(set(mapping.values())) != len(mapping):
                raise ConnectionNotCanonical(
                    f"connection not canonical: images across {e.name!r} out of "
                    f"{tail!r} collide"
                )
            maps[(e.name, tail)] = mapping
    return Connection(maps)


# ----------------------------------------------------------------------
# faces


@dataclass(frozen=True)
class GkmSubgraph:
    vertices: frozenset
    edges: frozenset[str]

    def contains(self, other: "GkmSubgraph") -> bool:
        return other.vertices <= self.vertices and other.edges <= self.edges


def subgraph_sort_key(g: GkmGraph, h: GkmSubgraph) -> tuple:
    return (
        len(h.vertices),
        sorted(g.vertex_key(x) for x in h.vertices),
        sorted(g.edge_key(e) for e in h.edges),
    )


def subgraph_flat(g: GkmGraph, h: GkmSubgraph, x) -> Subspace:
    """Span of the axial vectors of h-edges at x."""
    if x not in h.vertices:
        raise ValueError(f"vertex {x!r} does not belong to the subgraph")
    at_x = [g.alpha(name) for name in g.star(x) if name in h.edges]
    return Subspace.span(at_x, g.ambient_rank)


def subgraph_degree(g: GkmGraph, h: GkmSubgraph) -> int:
    x = min(h.vertices, key=g.vertex_key)
    return sum(1 for name in g.star(x) if name in h.edges)


def _edge_subset_face(g: GkmGraph, edges: frozenset[str]) -> GkmSubgraph | None:
    """The subgraph on an edge subset if it satisfies the face axioms."""
    vertices = set()
    for name in edges:
        e = g.edge(name)
        vertices.add(e.u)
        vertices.add(e.v)
    degree = {x: 0 for x in vertices}
    for name in edges:
        e = g.edge(name)
        degree[e.u] += 1
        degree[e.v] += 1
    if len(set(degree.values())) != 1:
        return None

    def star(x):
        return tuple(name for name in g.star(x) if name in edges)

    if _two_plane_closure_violations(g, edges, star):
        return None
    return GkmSubgraph(frozenset(vertices), edges)


def _connected_edge_subsets(g: GkmGraph, cap: int) -> list[frozenset[str]]:
    """Every connected edge subset, grown one adjacent edge at a time."""
    incident: dict[object, list[str]] = {x: list(g.star(x)) for x in g.vertices}
    singles = [frozenset([e.name]) for e in g.edges]
    visited: set[frozenset[str]] = set(singles)
    queue = deque(singles)
    out = list(singles)
    if len(out) > cap:
        raise EnumerationCapExceeded(cap)
    while queue:
        current = queue.popleft()
        touched = set()
        for name in current:
            e = g.edge(name)
            touched.add(e.u)
            touched.add(e.v)
        reachable = sorted(
            {name for x in touched for name in incident[x] if name not in current},
            key=g.edge_key,
        )
        for name in reachable:
            grown = current | {name}
            if grown not in visited:
                visited.add(grown)
                if len(visited) > cap:
                    raise EnumerationCapExceeded(cap)
                queue.append(grown)
                out.append(grown)
    return out


def enumerate_face_subgraphs(
    g: GkmGraph, cap: int = DEFAULT_CAP, workers: int = 1
) -> list[GkmSubgraph]:
    """All faces as subgraphs, canonically sorted."""
    require_valid(g)
    faces = [GkmSubgraph(frozenset([x]), frozenset()) for x in g.vertices]
    candidates = _connected_edge_subsets(g, cap)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            checked = list(pool.map(lambda e: _edge_subset_face(g, e), candidates))
    else:
        checked = [_edge_subset_face(g, edges) for edges in candidates]
    faces.extend(face for face in checked if face is not None)
    faces.sort(key=lambda h: subgraph_sort_key(g, h))
    return faces


def is_totally_geodesic(g: GkmGraph, theta: Connection, h: GkmSubgraph) -> bool:
    """Star intersections must map onto each other along every h-edge."""
    for name in h.edges:
        e = g.edge(name)
        for tail in (e.u, e.v):
            head = e.other(tail)
            inside_tail = {f for f in g.star(tail) if f in h.edges}
            inside_head = {f for f in g.star(head) if f in h.edges}
            mapping = theta.maps[(name, tail)]
            if {mapping[f] for f in inside_tail} != inside_head:
                return False
    return True


def _face_poset(g: GkmGraph, faces: list[GkmSubgraph], prefix: str = "H") -> GradedPoset:
    ids = [f"{prefix}{i}" for i in range(len(faces))]
    by_id = dict(zip(ids, faces))
    rank = {i: subgraph_flat(g, h, min(h.vertices, key=g.vertex_key)).dim for i, h in by_id.items()}
    drk = {i: subgraph_degree(g, h) for i, h in by_id.items()}
    leq = {
        (a, b)
        for a in ids
        for b in ids
        if a != b and by_id[b].contains(by_id[a])
    }
    covers = [
        (a, b)
        for a, b in sorted(leq)
        if not any((a, c) in leq and (c, b) in leq for c in ids)
    ]
    labels = {
        i: "{" + ",".join(str(x) for x in sorted(h.vertices, key=g.vertex_key)) + "}"
        for i, h in by_id.items()
    }
    return GradedPoset(ids, covers, rank=rank, drk=drk, payload=by_id, labels=labels)


def enumerate_faces(g: GkmGraph, cap: int = DEFAULT_CAP, workers: int = 1) -> GradedPoset:
    """Poset of all faces ordered by inclusion; rank labels are span ranks."""
    return _face_poset(g, enumerate_face_subgraphs(g, cap, workers))


def enumerate_tg_faces(
    g: GkmGraph, theta: Connection, cap: int = DEFAULT_CAP, workers: int = 1
) -> GradedPoset:
    """Poset of connection-closed faces."""
    faces = [
        h
        for h in enumerate_face_subgraphs(g, cap, workers)
        if is_totally_geodesic(g, theta, h)
    ]
    return _face_poset(g, faces)


# ----------------------------------------------------------------------
# representation face posets


def representation_face_poset(ws: WeightSystem) -> GradedPoset:
    """Face poset of the linear torus representation with these weights.

    This is the lattice of flats with drk labels counting weights with
    multiplicity.
    """
    return flats_lattice(ws)


def local_face_poset(g: GkmGraph, x) -> GradedPoset:
    """Flats lattice of the axial vectors at one vertex."""
    star = g.star(x)
    return flats_lattice(WeightSystem(g.ambient_rank, [g.alpha(name) for name in star]))
