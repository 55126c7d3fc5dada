"""Ordered perfect matchings (chord diagrams) and the m(π) permutation encoding.

A matching is a set of arcs over 2m endpoints on a line.  Construction accepts
arbitrary numeric coordinates (the witness constructions place endpoints at
positions like x-0.5 or i+0.4) and immediately renormalizes to 1..2m.  The
canonical form is the normalized arc list sorted by left endpoint; isomorphism
is equality of canonical forms.

Text format: arcs as "l-r" pairs separated by spaces, e.g. "1-5 2-4 3-6".
Input may be unnormalized; output is always normalized and sorted.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError
from .perms import Permutation

Arc = tuple[int, int]


@dataclass(frozen=True)
class Matching:
    """Normalized matching: arcs on the point set 1..2m, sorted by left endpoint."""

    arcs: tuple[Arc, ...]

    def __post_init__(self):
        arcs = tuple(tuple(arc) for arc in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        endpoints = sorted(e for arc in arcs for e in arc)
        if endpoints != list(range(1, 2 * len(arcs) + 1)):
            raise ValueError(f"endpoints must be exactly 1..{2 * len(arcs)}: {arcs!r}")
        if any(a >= b for a, b in arcs):
            raise ValueError("each arc needs left < right")
        if list(arcs) != sorted(arcs):
            raise ValueError("arcs must be sorted by left endpoint")

    def __len__(self) -> int:
        return len(self.arcs)

    def text(self) -> str:
        return " ".join(f"{a}-{b}" for a, b in self.arcs)

    def __repr__(self) -> str:
        return f"Matching({self.text()!r})"

    @staticmethod
    def from_arcs(pairs: Iterable[tuple[float, float]]) -> "Matching":
        """Build from arcs with arbitrary distinct numeric coordinates."""
        raw = [tuple(sorted(pair)) for pair in pairs]
        coords = sorted(e for arc in raw for e in arc)
        if len(set(coords)) != len(coords):
            raise ValueError(f"duplicate endpoint coordinates in {raw!r}")
        rank = {e: i + 1 for i, e in enumerate(coords)}
        return Matching(tuple(sorted((rank[a], rank[b]) for a, b in raw)))

    @staticmethod
    def from_text(text: str) -> "Matching":
        text = text.strip()
        if not text:
            return Matching(())
        pairs = []
        for tok in text.split():
            left, sep, right = tok.partition("-")
            if not sep:
                raise ValueError(f"bad arc token {tok!r}")
            pairs.append((float(left), float(right)))
        return Matching.from_arcs(pairs)


EMPTY_MATCHING = Matching(())


class ArcRelation(Enum):
    CROSSES_FROM_LEFT = "crosses-from-left"
    CROSSES_FROM_RIGHT = "crosses-from-right"
    NESTED_BELOW = "nested-below"
    NESTS_ABOVE = "nests-above"
    SERIES_BEFORE = "series-before"
    SERIES_AFTER = "series-after"


def relation(x: Arc, y: Arc) -> ArcRelation:
    """How arc x sits relative to arc y; exactly one relation always holds."""
    a, b = x
    c, d = y
    if len({a, b, c, d}) < 4:
        raise PreconditionError(f"arcs {x} and {y} share an endpoint")
    if b < c:
        return ArcRelation.SERIES_BEFORE
    if d < a:
        return ArcRelation.SERIES_AFTER
    if a < c:
        return ArcRelation.CROSSES_FROM_LEFT if b < d else ArcRelation.NESTS_ABOVE
    return ArcRelation.CROSSES_FROM_RIGHT if d < b else ArcRelation.NESTED_BELOW


def crosses(x: Arc, y: Arc) -> bool:
    a, b = x
    c, d = y
    return (a < c < b < d) or (c < a < d < b)


def m_of(p: Permutation) -> Matching:
    """The permutation matching with one arc (-p(i), i) per element, normalized.

    >>> m_of(Permutation.from_text("231")).text()
    '1-5 2-4 3-6'
    """
    n = len(p)
    return Matching(tuple(sorted((n + 1 - v, n + i) for i, v in enumerate(p.values, 1))))


def perm_of(m: Matching) -> Permutation | None:
    """Inverse of m_of, or None if some left endpoint follows a right endpoint."""
    n = len(m)
    if any(a > n or b <= n for a, b in m.arcs):
        return None
    vals = [0] * n
    for a, b in m.arcs:
        vals[b - n - 1] = n + 1 - a
    return Permutation(tuple(vals))


def matching_contains(pattern: Matching, host: Matching) -> bool:
    """True iff some |pattern|-subset of the host's arcs is isomorphic to pattern.

    Backtracking over host arcs in left-endpoint order, pruning as soon as a
    partial selection disagrees with the pattern on some pairwise relation.
    """
    k, q = len(pattern), len(host)
    if k == 0:
        return True
    if k > q:
        return False
    pa, ha = pattern.arcs, host.arcs

    def rel3(x: Arc, y: Arc) -> int:
        # x precedes y in left-endpoint order: 0 series, 1 crossing, 2 y-nested-in-x
        return 0 if x[1] < y[0] else (1 if x[1] < y[1] else 2)

    chosen: list[int] = []

    def extend(start: int) -> bool:
        t = len(chosen)
        if t == k:
            return True
        for idx in range(start, q - (k - t) + 1):
            cand = ha[idx]
            if all(rel3(ha[c], cand) == rel3(pa[j], pa[t]) for j, c in enumerate(chosen)):
                chosen.append(idx)
                if extend(idx + 1):
                    return True
                chosen.pop()
        return False

    return extend(0)


def blocks(m: Matching) -> tuple[Matching, ...]:
    """The unique maximal decomposition m = M1 ⊎ M2 ⊎ ... ⊎ Mk, left to right."""
    out = []
    current: list[Arc] = []
    open_count = 0
    ends = {b for _, b in m.arcs}
    for e in range(1, 2 * len(m) + 1):
        if e in ends:
            open_count -= 1
        else:
            open_count += 1
            current.append(next(arc for arc in m.arcs if arc[0] == e))
        if open_count == 0 and current:
            out.append(Matching.from_arcs(current))
            current = []
    return tuple(out)


def uplus(a: Matching, b: Matching) -> Matching:
    """The left-to-right disjoint union a ⊎ b."""
    shift = 2 * len(a)
    return Matching(a.arcs + tuple((x + shift, y + shift) for x, y in b.arcs))


def _neighbors(arcs: Sequence[Arc]) -> list[list[int]]:
    nbr: list[list[int]] = [[] for _ in arcs]
    for i, j in combinations(range(len(arcs)), 2):
        if crosses(arcs[i], arcs[j]):
            nbr[i].append(j)
            nbr[j].append(i)
    return nbr


def is_connected(m: Matching) -> bool:
    """Connectivity of the crossing (intersection) graph."""
    if len(m) <= 1:
        return True
    nbr = _neighbors(m.arcs)
    seen = {0}
    queue = deque([0])
    while queue:
        for j in nbr[queue.popleft()]:
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen) == len(m)


def levels(m: Matching) -> tuple[tuple[Arc, ...], ...]:
    """BFS layers of the crossing graph from the arc at the leftmost endpoint."""
    if len(m) == 0:
        return ()
    if not is_connected(m):
        raise PreconditionError("levels requires a connected matching")
    nbr = _neighbors(m.arcs)
    dist = {0: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in nbr[i]:
            if j not in dist:
                dist[j] = dist[i] + 1
                queue.append(j)
    depth = max(dist.values())
    layers: list[list[Arc]] = [[] for _ in range(depth + 1)]
    for i, d in dist.items():
        layers[d].append(m.arcs[i])
    return tuple(tuple(sorted(layer)) for layer in layers)


def weight(m: Matching) -> int:
    """Arc count plus the number of long arcs (arcs nesting some endpoint)."""
    return len(m) + sum(1 for a, b in m.arcs if b - a > 1)


def all_matchings(q: int) -> Iterator[Matching]:
    """All matchings with exactly q arcs on 1..2q, in a fixed deterministic order."""

    def pair_up(points: tuple[int, ...]) -> Iterator[tuple[Arc, ...]]:
        if not points:
            yield ()
            return
        first = points[0]
        for i in range(1, len(points)):
            rest = points[1:i] + points[i + 1 :]
            for partial in pair_up(rest):
                yield ((first, points[i]),) + partial

    for arcs in pair_up(tuple(range(1, 2 * q + 1))):
        yield Matching(tuple(sorted(arcs)))


def matchings_up_to(q_max: int) -> Iterator[Matching]:
    for q in range(q_max + 1):
        yield from all_matchings(q)
