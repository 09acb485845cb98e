"""Linear matroids over Q presented by integer weight multisets.

A weight system is an ordered multiset of nonzero integer vectors; the
1-based position of a weight is its identity, so duplicate vectors are
distinct matroid elements.  Flats are index sets closed under rational
span, enumerated bottom-up by repeated single-element closure rather than
by scanning all 2^n subsets (the subset scan is kept as a test oracle).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import DimensionMismatch, ZeroWeight
from .poset import GradedPoset
from .ratlinalg import EchelonBasis, IntVector, Subspace, as_vector


@dataclass(frozen=True)
class WeightSystem:
    """Ordered multiset of nonzero weights in Z^ambient_rank."""

    ambient_rank: int
    weights: tuple[IntVector, ...]

    def __init__(self, ambient_rank: int, weights: Iterable[Sequence[int]]):
        if ambient_rank < 1:
            raise ValueError("ambient rank must be at least 1")
        ws = tuple(as_vector(w) for w in weights)
        for pos, w in enumerate(ws, start=1):
            if len(w) != ambient_rank:
                raise DimensionMismatch(
                    f"weight {pos} has length {len(w)}, expected {ambient_rank}"
                )
            if not any(w):
                raise ZeroWeight(f"weight {pos} is zero")
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "weights", ws)

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def indices(self) -> range:
        return range(1, len(self.weights) + 1)

    def weight(self, index: int) -> IntVector:
        if not 1 <= index <= len(self.weights):
            raise IndexError(f"weight index {index} out of range 1..{len(self.weights)}")
        return self.weights[index - 1]

    def span_of(self, indices: Iterable[int]) -> Subspace:
        return Subspace.span([self.weight(i) for i in indices], self.ambient_rank)

    def rank(self) -> int:
        return self.span_of(self.indices).dim


@dataclass(frozen=True)
class Flat:
    """A span-closed index set with its rank; multiplicity counts repeats."""

    members: frozenset[int]
    rank: int

    @property
    def multiplicity(self) -> int:
        return len(self.members)

    def sort_key(self) -> tuple:
        return (self.rank, sorted(self.members))


@dataclass(frozen=True)
class SimplicialComplex:
    """Stored by facets; faces are implicitly all subsets of facets."""

    vertices: tuple[int, ...]
    facets: tuple[frozenset[int], ...]

    def faces(self) -> set[frozenset[int]]:
        out: set[frozenset[int]] = {frozenset()}
        for facet in self.facets:
            items = sorted(facet)
            for size in range(1, len(items) + 1):
                out.update(frozenset(c) for c in combinations(items, size))
        return out

    def f_vector(self) -> tuple[int, ...]:
        """(f_-1, f_0, ..., f_{d-1}) with d the largest face cardinality."""
        by_size: dict[int, int] = {}
        for face in self.faces():
            by_size[len(face)] = by_size.get(len(face), 0) + 1
        top = max(by_size) if by_size else 0
        return tuple(by_size.get(size, 0) for size in range(top + 1))


def closure(ws: WeightSystem, subset: Iterable[int]) -> Flat:
    """Smallest flat containing the given indices."""
    chosen = set(subset)
    span = ws.span_of(chosen)
    members = frozenset(i for i in ws.indices if span.contains(ws.weight(i)))
    return Flat(members, span.dim)


def all_flats(ws: WeightSystem) -> list[Flat]:
    """Every flat exactly once, sorted by (rank, members).

    Grown upward from the bottom flat by closing one extra index at a
    time; in a matroid this reaches every flat through covers, so the
    cost is governed by the number of flats, not 2^n.
    """
    bottom = closure(ws, ())
    found = {bottom.members: bottom}
    frontier = [bottom]
    while frontier:
        flat = frontier.pop()
        for i in ws.indices:
            if i not in flat.members:
                bigger = closure(ws, flat.members | {i})
                if bigger.members not in found:
                    found[bigger.members] = bigger
                    frontier.append(bigger)
    return sorted(found.values(), key=Flat.sort_key)


def flat_id(flat: Flat) -> tuple[int, ...]:
    return tuple(sorted(flat.members))


def flats_lattice(ws: WeightSystem) -> GradedPoset:
    """Lattice of flats ordered by inclusion.

    Element ids are sorted member tuples; rank labels are flat ranks and
    drk labels count the weights in the flat with multiplicity.
    """
    flats = all_flats(ws)
    ids = [flat_id(f) for f in flats]
    covers = []
    for low in flats:
        for high in flats:
            if high.rank == low.rank + 1 and low.members < high.members:
                covers.append((flat_id(low), flat_id(high)))
    return GradedPoset(
        ids,
        covers,
        rank={flat_id(f): f.rank for f in flats},
        drk={flat_id(f): f.multiplicity for f in flats},
        payload={flat_id(f): f for f in flats},
        labels={flat_id(f): "{" + ",".join(map(str, flat_id(f))) + "}" for f in flats},
    )


def independence_complex(ws: WeightSystem) -> SimplicialComplex:
    """Faces are the linearly independent index sets; facets are the bases."""
    rank = ws.rank()
    bases: list[frozenset[int]] = []

    def extend(chosen: list[int], basis: EchelonBasis, start: int) -> None:
        if basis.dim == rank:
            bases.append(frozenset(chosen))
            return
        for i in range(start, ws.size + 1):
            grown = EchelonBasis(ws.ambient_rank)
            for j in chosen:
                grown.add(ws.weight(j))
            if grown.add(ws.weight(i)):
                extend(chosen + [i], grown, i + 1)

    if rank == 0:
        return SimplicialComplex(tuple(), tuple())
    extend([], EchelonBasis(ws.ambient_rank), 1)
    return SimplicialComplex(tuple(ws.indices), tuple(sorted(bases, key=sorted)))


def h_vector(complex_: SimplicialComplex) -> tuple[int, ...]:
    """Binomial transform of the f-vector of a pure complex.

    h_j = sum_{i=0..j} (-1)^(j-i) C(d-i, j-i) f_{i-1}, with d the facet size.
    """
    sizes = {len(f) for f in complex_.facets}
    if len(sizes) > 1:
        raise ValueError(f"complex is not pure: facet sizes {sorted(sizes)}")
    d = sizes.pop() if sizes else 0
    f = complex_.f_vector()
    return tuple(
        sum((-1) ** (j - i) * comb(d - i, j - i) * f[i] for i in range(j + 1))
        for j in range(d + 1)
    )


def independence_degree(ws: WeightSystem) -> int:
    """Largest j such that every subset of at most j weights is independent."""
    for j in range(1, ws.size + 1):
        for subset in combinations(ws.indices, j):
            if ws.span_of(subset).dim < j:
                return j - 1
    return ws.size
