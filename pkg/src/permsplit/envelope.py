"""Envelope matchings: the staircase path under a permutation diagram.

The envelope of π is the highest non-increasing lattice path below the diagram;
labelling its 2n steps in traversal order and pairing the down-step in each
element's row with the right-step in its column yields the envelope matching
E(π).  Short arcs of E(π) correspond exactly to LR-minima.  The long arcs form
the reduced envelope R(π), which tracks containment of patterns 1⊕σ.

An EnvelopeDecomposition serializes as {"perm": ..., "path": "DDRR...",
"arcs": "1-4 2-3"}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .matchings import Arc, Matching
from .perms import Permutation


@dataclass(frozen=True)
class EnvelopeDecomposition:
    perm: Permutation
    path: str  # 'D'/'R' per step, labels are 1-based string positions
    arcs: Matching
    elem_to_arc: tuple[Arc, ...]  # arc of the element at each position

    def to_json_dict(self) -> dict:
        return {"perm": self.perm.text(), "path": self.path, "arcs": self.arcs.text()}


def envelope_of(p: Permutation) -> EnvelopeDecomposition:
    """Build the envelope path of p, label its steps, and read off E(p).

    >>> envelope_of(Permutation.from_text("132")).arcs.text()
    '1-5 2-6 3-4'
    >>> envelope_of(Permutation.from_text("21")).arcs.text()
    '1-2 3-4'
    """
    n = len(p)
    steps: list[str] = []
    down_label_of_row: dict[int, int] = {}
    right_label_of_col: dict[int, int] = {}
    height = n
    prefix_min = n + 1
    label = 0
    for i, v in enumerate(p.values, start=1):
        prefix_min = min(prefix_min, v)
        while height > prefix_min - 1:
            label += 1
            steps.append("D")
            down_label_of_row[height] = label
            height -= 1
        label += 1
        steps.append("R")
        right_label_of_col[i] = label
    elem_to_arc = tuple(
        (down_label_of_row[v], right_label_of_col[i])
        for i, v in enumerate(p.values, start=1)
    )
    return EnvelopeDecomposition(
        perm=p,
        path="".join(steps),
        arcs=Matching(tuple(sorted(elem_to_arc))),
        elem_to_arc=elem_to_arc,
    )


def is_envelope_matching(m: Matching) -> bool:
    """The decodability condition: a left endpoint directly followed by a
    right endpoint must be matched to it."""
    lefts = {a for a, _ in m.arcs}
    arcs = set(m.arcs)
    for a in lefts:
        if a + 1 <= 2 * len(m) and a + 1 not in lefts and (a, a + 1) not in arcs:
            return False
    return True


def decode_envelope(m: Matching) -> Permutation | None:
    """The unique π with E(π) = m, or None if m is not an envelope matching.

    Reconstructs the lattice path whose a-th step is a down-step exactly when
    a is a left endpoint, then reads each arc as a (row, column) pair.
    """
    if not is_envelope_matching(m):
        return None
    n = len(m)
    lefts = sorted(a for a, _ in m.arcs)
    rights = sorted(b for _, b in m.arcs)
    row_of = {a: n - t for t, a in enumerate(lefts)}  # t-th down-step sits in row n-t
    col_of = {b: t + 1 for t, b in enumerate(rights)}
    vals = [0] * n
    for a, b in m.arcs:
        vals[col_of[b] - 1] = row_of[a]
    return Permutation(tuple(vals))


def reduced_envelope(p: Permutation) -> Matching:
    """The long arcs of E(p), renormalized; empty for decreasing permutations."""
    env = envelope_of(p)
    return Matching.from_arcs([arc for arc in env.arcs.arcs if arc[1] - arc[0] > 1])


def reduced_envelope_map(p: Permutation) -> tuple[Matching, tuple[int, ...]]:
    """R(p) together with the covered element behind each of its arcs.

    The j-th entry is the 1-based position of the element whose envelope arc
    became the j-th arc of R(p) (both sides in left-endpoint order).
    """
    env = envelope_of(p)
    long_arcs = sorted(arc for arc in env.arcs.arcs if arc[1] - arc[0] > 1)
    position_of = {arc: i for i, arc in enumerate(env.elem_to_arc, start=1)}
    reduced = Matching.from_arcs(long_arcs)
    return reduced, tuple(position_of[arc] for arc in long_arcs)


def tangle(m: Matching, interval: tuple[float, float]) -> Matching:
    """Tangle m in the open interval: move every left endpoint inside the
    interval in front of every right endpoint inside it (each group keeping
    its order), then insert a new short arc between the two groups.

    The new arc ends up nested below every arc with an endpoint in the
    interval.  Tangling an envelope matching yields an envelope matching.
    """
    lo, hi = interval
    if not lo < hi:
        raise ValueError(f"interval must be nonempty: {interval!r}")
    lefts = {a for a, _ in m.arcs}
    slots = [e for e in range(1, 2 * len(m) + 1) if lo < e < hi]
    left_group = [e for e in slots if e in lefts]
    right_group = [e for e in slots if e not in lefts]
    new_coord = {e: slots[i] for i, e in enumerate(left_group + right_group)}

    t = len(left_group)
    lower = slots[t - 1] if t >= 1 else lo
    upper = slots[t] if t < len(slots) else hi
    if lower == -math.inf and upper == math.inf:
        x, y = 0.0, 1.0
    elif lower == -math.inf:
        x, y = upper - 2, upper - 1
    elif upper == math.inf:
        x, y = lower + 1, lower + 2
    else:
        gap = upper - lower
        x, y = lower + gap / 3, lower + 2 * gap / 3

    arcs = [(new_coord.get(a, a), new_coord.get(b, b)) for a, b in m.arcs]
    arcs.append((x, y))
    return Matching.from_arcs(arcs)


def tangle_intervals(m: Matching) -> list[tuple[float, float]]:
    """A finite set of intervals covering every distinct tangling of m.

    A tangling is determined by the contiguous run of endpoints inside the
    interval, plus the gap receiving the new arc when that run is empty; so it
    suffices to take all boundary pairs between consecutive endpoints (with the
    two outer rays) together with one empty interval per gap.
    """
    points = [-math.inf] + [k + 0.5 for k in range(0, 2 * len(m) + 1)] + [math.inf]
    spanning = [(lo, hi) for i, lo in enumerate(points) for hi in points[i + 1 :]]
    within_gap = [(k + 0.25, k + 0.75) for k in range(0, 2 * len(m) + 1)]
    return spanning + within_gap


def matching_to_perm(m: Matching) -> Permutation:
    """A canonical permutation whose reduced envelope matching is m.

    Inserts a short arc into every gap between a left endpoint and an
    immediately following right endpoint, then decodes the result.  (The
    preimage of R is not unique; this picks the greedy left-to-right one.)
    """
    lefts = {a for a, _ in m.arcs}
    arcs: list[tuple[float, float]] = list(m.arcs)
    for e in range(1, 2 * len(m)):
        if e in lefts and e + 1 not in lefts:
            arcs.append((e + 1 / 3, e + 2 / 3))
    result = decode_envelope(Matching.from_arcs(arcs))
    assert result is not None, "short-arc insertion must produce an envelope matching"
    return result
