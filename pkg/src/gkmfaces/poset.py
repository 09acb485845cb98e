"""Finite graded posets stored by their cover relation.

Elements are opaque hashable identifiers; the full order is the
reflexive-transitive closure of the declared covers, precomputed at
construction as bitmasks so every predicate afterwards is pure reads.
Rank and drk labellings are optional data: predicates recompute rank
from the covers and compare against stored labels where present.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

from .errors import (
    EmptyPoset,
    Incomparable,
    MissingAtomWeight,
    NotLocallyGeometric,
    PreconditionFailed,
)

Element = Hashable


@dataclass(frozen=True)
class Verdict:
    """Outcome of a structural predicate, with a human-readable certificate."""

    ok: bool
    reason: str = ""
    rank: int | None = None  # top rank for locally geometric checks

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class CoherenceResult:
    """drk assignment if the atom sums agree, else the first witness."""

    ok: bool
    drk: dict | None = None
    element: Element | None = None
    conflict: tuple = ()  # ((minimal, sum), (minimal, sum)) on failure

    def __bool__(self) -> bool:
        return self.ok


class GradedPoset:
    """Immutable finite poset with optional rank/drk/payload labellings."""

    def __init__(
        self,
        elements: Iterable[Element],
        covers: Iterable[tuple[Element, Element]],
        rank: Mapping[Element, int] | None = None,
        drk: Mapping[Element, int] | None = None,
        payload: Mapping[Element, object] | None = None,
        labels: Mapping[Element, str] | None = None,
    ):
        self.elements: tuple[Element, ...] = tuple(elements)
        if not self.elements:
            raise EmptyPoset("poset must have at least one element")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate element identifiers")
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.covers: tuple[tuple[Element, Element], ...] = tuple(covers)
        for low, high in self.covers:
            if low not in self._index or high not in self._index:
                raise ValueError(f"cover ({low!r}, {high!r}) uses unknown elements")
            if low == high:
                raise ValueError(f"cover ({low!r}, {high!r}) is a self-loop")
        self.rank = dict(rank) if rank is not None else None
        if self.rank is not None and set(self.rank) != set(self.elements):
            raise ValueError("rank labelling must cover exactly the elements")
        self.drk = dict(drk) if drk is not None else None
        if self.drk is not None and set(self.drk) != set(self.elements):
            raise ValueError("drk labelling must cover exactly the elements")
        self.payload = dict(payload) if payload is not None else {}
        self.labels = dict(labels) if labels is not None else {}
        self._up, self._down = self._closure()

    # ------------------------------------------------------------------
    # order core

    def _closure(self) -> tuple[list[int], list[int]]:
        n = len(self.elements)
        above = [[] for _ in range(n)]
        indeg = [0] * n
        for low, high in self.covers:
            above[self._index[low]].append(self._index[high])
            indeg[self._index[high]] += 1
        # Kahn topological order doubles as the acyclicity check
        order = [i for i in range(n) if indeg[i] == 0]
        seen = 0
        queue = list(order)
        while queue:
            i = queue.pop()
            seen += 1
            for j in above[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    queue.append(j)
                    order.append(j)
        if seen != n:
            raise ValueError("covers contain a cycle")
        up = [1 << i for i in range(n)]
        for i in reversed(order):
            for j in above[i]:
                up[i] |= up[j]
        down = [1 << i for i in range(n)]
        for i in range(n):
            mask = up[i]
            while mask:
                low_bit = mask & -mask
                down[low_bit.bit_length() - 1] |= 1 << i
                mask ^= low_bit
        return up, down

    def _bits(self, mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def leq(self, a: Element, b: Element) -> bool:
        return bool(self._up[self._index[a]] & (1 << self._index[b]))

    def lt(self, a: Element, b: Element) -> bool:
        return a != b and self.leq(a, b)

    def up_set(self, a: Element) -> list[Element]:
        return [self.elements[i] for i in self._bits(self._up[self._index[a]])]

    def down_set(self, a: Element) -> list[Element]:
        return [self.elements[i] for i in self._bits(self._down[self._index[a]])]

    def minimal_elements(self) -> list[Element]:
        lowers = {high for _, high in self.covers}
        return [e for e in self.elements if e not in lowers]

    def maximal_elements(self) -> list[Element]:
        uppers = {low for low, _ in self.covers}
        return [e for e in self.elements if e not in uppers]

    def top(self) -> Element | None:
        maxima = self.maximal_elements()
        return maxima[0] if len(maxima) == 1 else None

    def bottom(self) -> Element | None:
        minima = self.minimal_elements()
        return minima[0] if len(minima) == 1 else None

    def hasse_covers(self) -> list[tuple[Element, Element]]:
        """True cover pairs recomputed from the order relation.

        Differs from the declared covers only when the input listed a
        transitively redundant pair.
        """
        n = len(self.elements)
        out = []
        for i in range(n):
            strict = self._up[i] & ~(1 << i)
            for j in self._bits(strict):
                between = self._up[i] & self._down[j] & ~(1 << i) & ~(1 << j)
                if between == 0:
                    out.append((self.elements[i], self.elements[j]))
        return out

    # ------------------------------------------------------------------
    # lattice operations

    def _least_of(self, mask: int) -> int | None:
        for i in self._bits(mask):
            if mask & ~self._up[i] == 0:
                return i
        return None

    def _greatest_of(self, mask: int) -> int | None:
        for i in self._bits(mask):
            if mask & ~self._down[i] == 0:
                return i
        return None

    def join(self, a: Element, b: Element) -> Element | None:
        common = self._up[self._index[a]] & self._up[self._index[b]]
        i = self._least_of(common)
        return None if i is None else self.elements[i]

    def meet(self, a: Element, b: Element) -> Element | None:
        common = self._down[self._index[a]] & self._down[self._index[b]]
        i = self._greatest_of(common)
        return None if i is None else self.elements[i]

    # ------------------------------------------------------------------
    # derived posets

    def induced(self, keep: Iterable[Element], rank: Mapping[Element, int] | None = None) -> "GradedPoset":
        """Subposet on `keep`, covers recomputed from the induced order."""
        keep_set = set(keep)
        kept = [e for e in self.elements if e in keep_set]
        mask = 0
        for e in kept:
            mask |= 1 << self._index[e]
        covers = []
        for e in kept:
            i = self._index[e]
            strict = self._up[i] & mask & ~(1 << i)
            for j in self._bits(strict):
                between = self._up[i] & self._down[j] & mask & ~(1 << i) & ~(1 << j)
                if between == 0:
                    covers.append((e, self.elements[j]))
        return GradedPoset(
            kept,
            covers,
            rank=rank,
            drk={e: self.drk[e] for e in kept} if self.drk is not None else None,
            payload={e: self.payload[e] for e in kept if e in self.payload},
            labels={e: self.labels[e] for e in kept if e in self.labels},
        )

    def upper_ideal(self, s: Element, ranks: Mapping[Element, int] | None = None) -> "GradedPoset":
        """The subposet of everything above s, reranked to start at 0.

        `ranks` defaults to the stored rank labelling; pass the computed
        one when the poset carries none.
        """
        base = ranks if ranks is not None else self.rank
        keep = self.up_set(s)
        shift = None if base is None else base[s]
        new_rank = None if base is None else {e: base[e] - shift for e in keep}
        return self.induced(keep, rank=new_rank)

    def proper_part(self) -> "GradedPoset":
        bottom, top = self.bottom(), self.top()
        if bottom is None or top is None:
            raise PreconditionFailed("proper part needs a unique bottom and top")
        keep = [e for e in self.elements if e not in (bottom, top)]
        if not keep:
            raise EmptyPoset("proper part is empty")
        return self.induced(keep)

    # ------------------------------------------------------------------
    # equality (structural; used by parser round-trips)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedPoset):
            return NotImplemented
        return (
            set(self.elements) == set(other.elements)
            and set(self.covers) == set(other.covers)
            and self.rank == other.rank
            and self.drk == other.drk
        )

    __hash__ = None  # type: ignore[assignment]


# ----------------------------------------------------------------------
# predicates


def computed_ranks(p: GradedPoset) -> tuple[dict | None, str]:
    """Rank labelling forced by the covers, or a reason why none exists."""
    ranks: dict[Element, int] = {e: 0 for e in p.minimal_elements()}
    pending = list(p.covers)
    progress = True
    while pending and progress:
        progress = False
        rest = []
        for low, high in pending:
            if low in ranks:
                value = ranks[low] + 1
                if high in ranks and ranks[high] != value:
                    return None, (
                        f"element {high!r} is reached at ranks {ranks[high]} and {value}"
                    )
                if high not in ranks:
                    ranks[high] = value
                    progress = True
                else:
                    progress = True
            else:
                rest.append((low, high))
        pending = rest
    if len(ranks) != len(p.elements):
        missing = next(e for e in p.elements if e not in ranks)
        return None, f"element {missing!r} is not reachable from a minimal element"
    return ranks, ""


def is_graded(p: GradedPoset) -> Verdict:
    """Minimal elements at rank 0 and every cover raising rank by one.

    Stored rank labels, when present, must agree with the computed ones.
    """
    ranks, reason = computed_ranks(p)
    if ranks is None:
        return Verdict(False, reason)
    # re-walk covers: the propagation above assigns each element one rank,
    # but a cover seen before its lower end was ranked needs a second look
    for low, high in p.covers:
        if ranks[high] != ranks[low] + 1:
            return Verdict(
                False,
                f"cover ({low!r}, {high!r}) jumps rank {ranks[low]} -> {ranks[high]}",
            )
    if p.rank is not None:
        for e in p.elements:
            if p.rank[e] != ranks[e]:
                return Verdict(
                    False,
                    f"stored rank {p.rank[e]} of {e!r} disagrees with computed {ranks[e]}",
                )
    return Verdict(True, rank=max(ranks.values()))


def grading_of(p: GradedPoset) -> dict:
    """Computed ranks of a poset known to be graded."""
    verdict = is_graded(p)
    if not verdict:
        raise PreconditionFailed(f"poset is not graded: {verdict.reason}")
    ranks, _ = computed_ranks(p)
    assert ranks is not None
    return ranks


def is_geometric_lattice(p: GradedPoset) -> Verdict:
    """Graded lattice, atomistic and rank-submodular."""
    graded = is_graded(p)
    if not graded:
        return Verdict(False, f"not graded: {graded.reason}")
    ranks, _ = computed_ranks(p)
    assert ranks is not None
    if p.bottom() is None:
        return Verdict(False, "no unique bottom element")
    if p.top() is None:
        return Verdict(False, "no unique top element")
    for a in p.elements:
        for b in p.elements:
            if p.join(a, b) is None:
                return Verdict(False, f"join of {a!r} and {b!r} does not exist")
            if p.meet(a, b) is None:
                return Verdict(False, f"meet of {a!r} and {b!r} does not exist")
    atoms = [e for e in p.elements if ranks[e] == 1]
    for s in p.elements:
        below = [a for a in atoms if p.leq(a, s)]
        current = p.bottom()
        for a in below:
            current = p.join(current, a)
        if current != s:
            return Verdict(False, f"element {s!r} is not the join of the atoms below it")
    for a in p.elements:
        for b in p.elements:
            join, meet = p.join(a, b), p.meet(a, b)
            if ranks[join] + ranks[meet] > ranks[a] + ranks[b]:
                return Verdict(
                    False,
                    f"rank submodularity fails for {a!r}, {b!r}",
                )
    return Verdict(True, rank=ranks[p.top()])


def is_locally_geometric(p: GradedPoset) -> Verdict:
    """Graded with a greatest element, every upper ideal a geometric lattice."""
    graded = is_graded(p)
    if not graded:
        return Verdict(False, f"not graded: {graded.reason}")
    top = p.top()
    if top is None:
        return Verdict(False, "no greatest element")
    ranks, _ = computed_ranks(p)
    assert ranks is not None
    k = ranks[top]
    for s in p.elements:
        ideal = p.upper_ideal(s, ranks=ranks)
        verdict = is_geometric_lattice(ideal)
        if not verdict:
            return Verdict(
                False, f"upper ideal at {s!r} is not a geometric lattice: {verdict.reason}"
            )
        if verdict.rank != k - ranks[s]:
            return Verdict(
                False,
                f"upper ideal at {s!r} has rank {verdict.rank}, expected {k - ranks[s]}",
            )
    return Verdict(True, rank=k)


def mobius(p: GradedPoset, s: Element, t: Element) -> int:
    """Mobius function via the defining recursion, memoised over [s, t]."""
    if not p.leq(s, t):
        raise Incomparable(f"{s!r} is not below {t!r}")
    interval = [u for u in p.elements if p.leq(s, u) and p.leq(u, t)]
    values: dict[Element, int] = {}
    for u in sorted(interval, key=lambda u: len(p.down_set(u))):
        if u == s:
            values[u] = 1
        else:
            values[u] = -sum(values[v] for v in interval if p.leq(v, u) and v != u)
    return values[t]


def atoms_of(p: GradedPoset, ranks: Mapping[Element, int]) -> list[Element]:
    return [e for e in p.elements if ranks[e] == 1]


def check_coherent(p: GradedPoset, d: Mapping[Element, int]) -> CoherenceResult:
    """Test that atom sums below each element agree for all base points.

    For every s and every minimal x <= s the sum of d over atoms a with
    x < a <= s must be the same; the common values form the drk labelling
    (0 on minimal elements).  The first disagreement, in element order,
    is reported as a witness.
    """
    verdict = is_locally_geometric(p)
    if not verdict:
        raise NotLocallyGeometric(f"poset is not locally geometric: {verdict.reason}")
    ranks, _ = computed_ranks(p)
    assert ranks is not None
    atoms = atoms_of(p, ranks)
    for a in atoms:
        if a not in d:
            raise MissingAtomWeight(f"no weight for atom {a!r}")
        if d[a] <= 0:
            raise ValueError(f"atom weight for {a!r} must be positive")
    minima = p.minimal_elements()
    drk: dict[Element, int] = {}
    for s in p.elements:
        sums = []
        for x in minima:
            if p.leq(x, s):
                total = sum(d[a] for a in atoms if p.lt(x, a) and p.leq(a, s))
                sums.append((x, total))
        values = {total for _, total in sums}
        if len(values) > 1:
            first = sums[0]
            other = next(pair for pair in sums if pair[1] != first[1])
            return CoherenceResult(False, element=s, conflict=(first, other))
        drk[s] = sums[0][1]
    return CoherenceResult(True, drk=drk)


def check_gkm_coherent(p: GradedPoset) -> CoherenceResult:
    """Coherence for the constant atom weight 1."""
    ranks, reason = computed_ranks(p)
    if ranks is None:
        raise NotLocallyGeometric(f"poset is not graded: {reason}")
    return check_coherent(p, {a: 1 for a in atoms_of(p, ranks)})


# ----------------------------------------------------------------------
# constructions


def _fresh_id(p: GradedPoset, base: str) -> str:
    candidate = base
    while candidate in set(p.elements):
        candidate += "'"
    return candidate


def compactify(p: GradedPoset) -> GradedPoset:
    """Double the bottom element: a second minimal point under every s != bottom."""
    bottom = p.bottom()
    if bottom is None:
        raise PreconditionFailed("compactification needs a unique bottom element")
    ranks = grading_of(p)
    double = _fresh_id(p, "0'")
    atoms = [e for e in p.elements if ranks[e] == 1]
    elements = list(p.elements) + [double]
    covers = list(p.covers) + [(double, a) for a in atoms]
    rank = {e: ranks[e] for e in p.elements}
    rank[double] = 0
    labels = dict(p.labels)
    labels[double] = "0'"
    return GradedPoset(elements, covers, rank=rank, payload=dict(p.payload), labels=labels)


def projectivize(p: GradedPoset) -> GradedPoset:
    """Remove the bottom element and shift all ranks down by one.

    drk labels are dropped: dimension data does not transfer under the
    construction (every face loses one).
    """
    bottom = p.bottom()
    if bottom is None:
        raise PreconditionFailed("projectivization needs a unique bottom element")
    ranks = grading_of(p)
    if max(ranks.values()) < 1:
        raise PreconditionFailed("cannot projectivize a rank-0 lattice")
    keep = [e for e in p.elements if e != bottom]
    sub = p.induced(keep, rank={e: ranks[e] - 1 for e in keep})
    return GradedPoset(
        sub.elements, sub.covers, rank=sub.rank, payload=sub.payload, labels=sub.labels
    )


def glue_top(p1: GradedPoset, p2: GradedPoset) -> GradedPoset:
    """Disjoint union of two lattices with their top elements identified."""
    tops = (p1.top(), p2.top())
    if tops[0] is None or tops[1] is None:
        raise PreconditionFailed("both posets need a unique top element")
    ranks1, ranks2 = grading_of(p1), grading_of(p2)
    k1, k2 = ranks1[tops[0]], ranks2[tops[1]]
    if k1 != k2:
        raise PreconditionFailed(f"ranks differ: {k1} vs {k2}")
    top = ("top",)
    elements: list[Element] = []
    covers: list[tuple[Element, Element]] = []
    rank: dict[Element, int] = {top: k1}
    labels: dict[Element, str] = {top: "top"}

    def absorb(p: GradedPoset, ranks: Mapping[Element, int], tag: str, old_top: Element):
        rename: dict[Element, Element] = {
            e: top if e == old_top else (tag, e) for e in p.elements
        }
        for e in p.elements:
            if e == old_top:
                continue
            elements.append(rename[e])
            rank[rename[e]] = ranks[e]
            labels[rename[e]] = f"{tag}:{p.labels.get(e, e)}"
        covers.extend((rename[a], rename[b]) for a, b in p.covers)

    absorb(p1, ranks1, "L", tops[0])
    absorb(p2, ranks2, "R", tops[1])
    elements.append(top)
    return GradedPoset(elements, covers, rank=rank, labels=labels)


# ----------------------------------------------------------------------
# isomorphism


def _refine_colors(p: GradedPoset) -> dict[Element, tuple]:
    uppers: dict[Element, list[Element]] = {e: [] for e in p.elements}
    lowers: dict[Element, list[Element]] = {e: [] for e in p.elements}
    for low, high in p.hasse_covers():
        uppers[low].append(high)
        lowers[high].append(low)
    color: dict[Element, tuple] = {
        e: (len(uppers[e]), len(lowers[e]), len(p.up_set(e)), len(p.down_set(e)))
        for e in p.elements
    }
    for _ in range(len(p.elements)):
        palette = sorted(set(color.values()))
        key = {c: i for i, c in enumerate(palette)}
        new = {
            e: (
                key[color[e]],
                tuple(sorted(key[color[u]] for u in uppers[e])),
                tuple(sorted(key[color[v]] for v in lowers[e])),
            )
            for e in p.elements
        }
        if len(set(new.values())) == len(set(color.values())):
            color = new
            break
        color = new
    return color


def are_isomorphic(p: GradedPoset, q: GradedPoset) -> bool:
    """Order isomorphism via color refinement plus backtracking."""
    if len(p.elements) != len(q.elements):
        return False
    pc, qc = _refine_colors(p), _refine_colors(q)
    if sorted(pc.values()) != sorted(qc.values()):
        return False
    by_color: dict[tuple, list[Element]] = {}
    for e in q.elements:
        by_color.setdefault(qc[e], []).append(e)
    order = sorted(p.elements, key=lambda e: (pc[e], p.elements.index(e)))
    image: dict[Element, Element] = {}
    used: set[Element] = set()

    def compatible(e: Element, f: Element) -> bool:
        for done_e, done_f in image.items():
            if p.leq(e, done_e) != q.leq(f, done_f):
                return False
            if p.leq(done_e, e) != q.leq(done_f, f):
                return False
        return True

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        e = order[i]
        for f in by_color[pc[e]]:
            if f not in used and compatible(e, f):
                image[e] = f
                used.add(f)
                if backtrack(i + 1):
                    return True
                del image[e]
                used.discard(f)
        return False

    return backtrack(0)
