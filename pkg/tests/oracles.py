"""Independent brute-force oracles used to pin expected values.

These deliberately avoid the library's code paths: rank comes from plain
Gaussian elimination over fractions.Fraction, closures from a subset scan,
flat lists from the full 2^n sweep, and GKM faces from checking every edge
subset.  Slow and obvious on purpose.
"""

from fractions import Fraction
from itertools import combinations


def rank_oracle(vectors):
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / prow[col]
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
        rank += 1
    return rank


def in_span_oracle(v, vectors):
    return rank_oracle(list(vectors) + [v]) == rank_oracle(list(vectors))


def closure_oracle(weights, subset):
    """Flat spanned by the chosen 1-based indices, via a membership scan."""
    chosen = [weights[i - 1] for i in subset]
    members = frozenset(
        i for i in range(1, len(weights) + 1) if in_span_oracle(weights[i - 1], chosen)
    )
    return members, rank_oracle(chosen)


def flats_oracle(weights):
    """All flats of the weight multiset by closing every one of the 2^n subsets."""
    n = len(weights)
    seen = {}
    for size in range(n + 1):
        for subset in combinations(range(1, n + 1), size):
            members, rank = closure_oracle(weights, subset)
            seen[members] = rank
    return sorted(seen.items(), key=lambda mr: (mr[1], sorted(mr[0])))


def mobius_oracle(leq, elements, s, t):
    """Direct recursion for the Mobius function of a finite poset.

    `leq(a, b)` must answer the order relation; no memoisation on purpose.
    """
    if s == t:
        return 1
    interval = [u for u in elements if leq(s, u) and leq(u, t)]
    return -sum(mobius_oracle(leq, elements, s, u) for u in interval if u != t)


def gkm_faces_oracle(graph):
    """Every face of a GKM graph by checking all edge subsets.

    Returns a sorted list of (vertex frozenset, edge frozenset) pairs.
    Uses rank_oracle for all span questions.
    """
    edge_ids = [e.name for e in graph.edges]
    ends = {e.name: (e.u, e.v) for e in graph.edges}
    weight = {e.name: graph.alpha(e.name) for e in graph.edges}

    def connected(vertices, edges):
        if not vertices:
            return False
        start = next(iter(vertices))
        seen = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for eid in edges:
                u, v = ends[eid]
                if u == x and v not in seen:
                    seen.add(v)
                    frontier.append(v)
                if v == x and u not in seen:
                    seen.add(u)
                    frontier.append(u)
        return seen == set(vertices)

    def is_face(edges):
        vertices = set()
        for eid in edges:
            vertices.update(ends[eid])
        if not connected(vertices, edges):
            return None
        degree = {x: 0 for x in vertices}
        for eid in edges:
            u, v = ends[eid]
            degree[u] += 1
            degree[v] += 1
        if len(set(degree.values())) != 1:
            return None
        # two-plane closure inside the subgraph
        for e1 in edges:
            for e2 in edges:
                if e1 == e2:
                    continue
                for y in set(ends[e1]) & set(ends[e2]):
                    z = ends[e2][0] if ends[e2][1] == y else ends[e2][1]
                    plane = [weight[e1], weight[e2]]
                    base = rank_oracle(plane)
                    good = any(
                        e3 != e2
                        and z in ends[e3]
                        and rank_oracle(plane + [weight[e3]]) == base
                        for e3 in edges
                    )
                    if not good:
                        return None
        return frozenset(vertices), frozenset(edges)

    faces = [(frozenset([x]), frozenset()) for x in graph.vertices]
    for size in range(1, len(edge_ids) + 1):
        for chosen in combinations(edge_ids, size):
            face = is_face(set(chosen))
            if face is not None:
                faces.append(face)
    return sorted(faces, key=lambda f: (len(f[0]), sorted(map(str, f[0])), sorted(map(str, f[1]))))
