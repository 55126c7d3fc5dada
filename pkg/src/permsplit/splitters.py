"""Coloring algorithms that produce splitting certificates.

A certificate assigns every element of a permutation (or every arc of a
matching) to one part of a splitting; a certificate is valid when each color
class avoids its part's pattern.  Certificates serialize as JSON lines:
{"subject": "...", "parts": ["1 3 2", "2 1 3"], "colors": [0, 1, 0]}.

The matching splitter works with palettes structured as whole copies of a base
part multiset; the returned part list is the flattened multiset of the copies
actually allocated, never the worst-case bound.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .envelope import reduced_envelope_map
from .errors import InvalidColorerError, PreconditionError
from .matchings import (
    Arc,
    Matching,
    blocks,
    crosses,
    m_of,
    matching_contains,
    perm_of,
    uplus,
    weight,
)
from .perms import (
    Permutation,
    contains,
    decreasing,
    direct_sum,
    sum_decompose,
)


@dataclass(frozen=True)
class SplittingSpec:
    """Multiset of part patterns: ((pattern, multiplicity), ...)."""

    parts: tuple[tuple[Permutation, int], ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("a splitting needs at least one part")
        if any(len(p) == 0 or k <= 0 for p, k in self.parts):
            raise ValueError("part patterns must be nonempty with multiplicity >= 1")

    @staticmethod
    def of(*patterns: Permutation) -> "SplittingSpec":
        return SplittingSpec(tuple((p, 1) for p in patterns))

    def flatten(self) -> tuple[Permutation, ...]:
        return tuple(p for p, k in self.parts for _ in range(k))

    def text(self) -> str:
        return ",".join(
            (f"{k}*{p.text()}" if k > 1 else p.text()) for p, k in self.parts
        )


@dataclass(frozen=True)
class ColoringCertificate:
    """An element→part (or arc→part) assignment against a flattened part list."""

    subject: Permutation | Matching
    parts: tuple[Permutation, ...]
    colors: tuple[int, ...]

    def __post_init__(self):
        if len(self.colors) != len(self.subject):
            raise ValueError("need one color per element/arc")
        if any(c < 0 or (c >= len(self.parts)) for c in self.colors):
            raise ValueError("color index out of range of the part list")

    def colors_used(self) -> int:
        return len(set(self.colors))

    def to_json_dict(self) -> dict:
        return {
            "subject": self.subject.text(),
            "parts": [p.text() for p in self.parts],
            "colors": list(self.colors),
        }

    @staticmethod
    def from_json_dict(d: dict) -> "ColoringCertificate":
        text = d["subject"]
        subject = Matching.from_text(text) if "-" in text else Permutation.from_text(text)
        return ColoringCertificate(
            subject=subject,
            parts=tuple(Permutation.from_text(t) for t in d["parts"]),
            colors=tuple(d["colors"]),
        )


def _contains_ending_at_last(pattern: Sequence[int], seq: Sequence[int]) -> bool:
    """Does seq contain the pattern with an occurrence using seq's last entry?"""
    m = len(pattern)
    if m == 0 or m > len(seq):
        return m == 0
    last = seq[-1]
    chosen: list[int] = []

    def extend(start: int) -> bool:
        k = len(chosen)
        if k == m - 1:
            return all(
                (pattern[j] < pattern[m - 1]) == (seq[q] < last)
                for j, q in enumerate(chosen)
            )
        for pos in range(start, len(seq) - 1 - (m - 1 - k) + 1):
            v = seq[pos]
            if all((pattern[j] < pattern[k]) == (seq[q] < v) for j, q in enumerate(chosen)):
                chosen.append(pos)
                if extend(pos + 1):
                    return True
                chosen.pop()
        return False

    return extend(0)


def greedy_three_sum(
    alpha: Permutation, beta: Permutation, gamma: Permutation, p: Permutation
) -> ColoringCertificate:
    """Two-part certificate over {Av(α⊕β), Av(β⊕γ)} for p avoiding α⊕β⊕γ.

    Left-to-right scan: color an element blue if coloring it red would complete
    a red occurrence of α⊕β, or if some earlier blue element is smaller;
    otherwise red.  The red class avoids α⊕β by construction, and the blue one
    avoids β⊕γ whenever the precondition holds.
    """
    if not (len(alpha) and len(beta) and len(gamma)):
        raise PreconditionError("alpha, beta, gamma must be nonempty")
    ab = direct_sum(alpha, beta)
    bg = direct_sum(beta, gamma)
    if contains(direct_sum(ab, gamma), p) is not None:
        raise PreconditionError(f"{p.text()} contains {direct_sum(ab, gamma).text()}")
    red_vals: list[int] = []
    blue_min: int | None = None
    colors: list[int] = []
    for v in p.values:
        blue = (blue_min is not None and blue_min < v) or _contains_ending_at_last(
            ab.values, red_vals + [v]
        )
        if blue:
            colors.append(1)
            blue_min = v if blue_min is None else min(blue_min, v)
        else:
            colors.append(0)
            red_vals.append(v)
    return ColoringCertificate(subject=p, parts=(ab, bg), colors=tuple(colors))


def easy_split_parts(alpha: Permutation, beta: Permutation) -> SplittingSpec:
    """The two-part spec {Av(α⊕1), Av(1⊕β)} splitting Av(α⊕β).

    Certificates come from greedy_three_sum(alpha, 1, beta, ·).
    """
    if len(alpha) < 2 or len(beta) < 2:
        raise PreconditionError("both summands must have order at least two")
    one = Permutation((1,))
    return SplittingSpec.of(direct_sum(alpha, one), direct_sum(one, beta))


def _lds_ending_lengths(p: Permutation) -> list[int]:
    vals = p.values
    out = [1] * len(vals)
    for i in range(len(vals)):
        for j in range(i):
            if vals[j] > vals[i]:
                out[i] = max(out[i], out[j] + 1)
    return out


def dilworth_split(n: int, p: Permutation) -> ColoringCertificate:
    """Color each element by the length of the longest decreasing subsequence
    ending at it; every class is increasing.  Requires p to avoid n(n-1)...1.

    >>> dilworth_split(3, Permutation.from_text("231")).colors
    (0, 0, 1)
    """
    if n < 1:
        raise PreconditionError("n must be at least 1")
    lengths = _lds_ending_lengths(p)
    if lengths and max(lengths) >= n:
        raise PreconditionError(f"{p.text()} contains {decreasing(n).text()}")
    parts = tuple(Permutation((2, 1)) for _ in range(n - 1))
    return ColoringCertificate(
        subject=p, parts=parts, colors=tuple(ln - 1 for ln in lengths)
    )


@dataclass(frozen=True)
class MatchingBase:
    """A base colorer for permutation matchings, with a fixed part list."""

    parts: tuple[Permutation, ...]
    fn: Callable[[Matching], ColoringCertificate]

    def __call__(self, m: Matching) -> ColoringCertificate:
        cert = self.fn(m)
        assert cert.parts == self.parts, "base colorer must keep a fixed part list"
        return cert


def dilworth_matching_base(n: int) -> MatchingBase:
    """Lift dilworth_split(n, ·) to permutation matchings (arc = element)."""
    parts = tuple(Permutation((2, 1)) for _ in range(n - 1))

    def color(m: Matching) -> ColoringCertificate:
        q = perm_of(m)
        assert q is not None, "base colorer needs a permutation matching"
        elem_cert = dilworth_split(n, q)
        size = len(m)
        # arc (a, b) encodes the element at position b - size
        colors = tuple(elem_cert.colors[b - size - 1] for _, b in m.arcs)
        return ColoringCertificate(subject=m, parts=parts, colors=colors)

    return MatchingBase(parts=parts, fn=color)


def refine_colorer(
    pi: Permutation,
    spec: SplittingSpec,
    part_index: int,
    colorer: Callable[[Permutation], ColoringCertificate],
    p: Permutation,
) -> ColoringCertificate:
    """Refine a splitting of Av(pi) whose part `part_index` has a decomposable
    pattern π₁ = π₁'⊕π₁'': color p⊕p, then keep whichever copy of p avoids the
    matching half of π₁ in that part, relabelling the part accordingly.
    """
    if sum_decompose(pi) is not None:
        raise PreconditionError("pi must be sum-indecomposable")
    flat = spec.flatten()
    pi1 = flat[part_index]
    split = sum_decompose(pi1)
    if split is None:
        raise PreconditionError(f"part {pi1.text()} is not sum-decomposable")
    left, right = split
    if contains(pi, p) is not None:
        raise PreconditionError(f"{p.text()} contains {pi.text()}")

    n = len(p)
    cert = colorer(direct_sum(p, p))
    if cert.parts != flat or len(cert.colors) != 2 * n:
        raise InvalidColorerError("colorer returned a certificate for the wrong spec")

    def class_values(colors: Sequence[int], vals: Sequence[int]) -> Permutation:
        picked = [v for v, c in zip(vals, colors) if c == part_index]
        rank = {v: i + 1 for i, v in enumerate(sorted(picked))}
        return Permutation(tuple(rank[v] for v in picked))

    bottom, top = cert.colors[:n], cert.colors[n:]
    if contains(left, class_values(bottom, p.values)) is None:
        colors, replacement = bottom, left
    elif contains(right, class_values(top, p.values)) is None:
        colors, replacement = top, right
    else:
        raise InvalidColorerError(
            f"class {part_index} of the colorer's certificate contains {pi1.text()}"
        )
    parts = flat[:part_index] + (replacement,) + flat[part_index + 1 :]
    return ColoringCertificate(subject=p, parts=parts, colors=tuple(colors))


@dataclass
class MatchingSplitState:
    """Recursion trace of match_split: obstacle weights and palette copies."""

    pattern_basis: Permutation
    obstacle: Matching
    trace: list[tuple[int, str, int, int]] = field(default_factory=list)
    # entries: (depth, case, obstacle weight, copies allocated)

    def record(self, depth: int, case: str, obstacle: Matching, copies: int) -> None:
        self.trace.append((depth, case, weight(obstacle), copies))


def _subset_matching(arcs: Sequence[Arc], subset: Iterable[int]) -> Matching:
    return Matching.from_arcs([arcs[i] for i in subset])


def _subset_blocks(arcs: Sequence[Arc], subset: Sequence[int]) -> list[list[int]]:
    """⊎-blocks of the sub-matching given by `subset` (indices into arcs)."""
    events = sorted((e, i) for i in subset for e in arcs[i])
    out: list[list[int]] = []
    current: set[int] = set()
    opened: set[int] = set()
    for _, i in events:
        if i in opened:
            current.discard(i)
            if not current:
                out.append(sorted(opened))
                opened = set()
        else:
            opened.add(i)
            current.add(i)
    return out


def _subset_components(arcs: Sequence[Arc], subset: Sequence[int]) -> list[list[int]]:
    subset = list(subset)
    nbr = {i: [] for i in subset}
    for i, j in combinations(subset, 2):
        if crosses(arcs[i], arcs[j]):
            nbr[i].append(j)
            nbr[j].append(i)
    seen: set[int] = set()
    comps = []
    for start in subset:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            for j in nbr[queue.popleft()]:
                if j not in seen:
                    seen.add(j)
                    comp.append(j)
                    queue.append(j)
        comps.append(sorted(comp))
    return comps


def _levels_and_signs(
    arcs: Sequence[Arc], component: Sequence[int]
) -> dict[int, tuple[int, int]]:
    """BFS level of each arc from the leftmost one, plus the crossing side.

    Sign +1 means the chosen lower-level arc ν crosses this arc from the left
    (ν is the crossing arc of the previous level with least left endpoint);
    the root gets sign +1 by convention.
    """
    root = min(component, key=lambda i: arcs[i][0])
    level = {root: 0}
    queue = deque([root])
    while queue:
        i = queue.popleft()
        for j in component:
            if j not in level and crosses(arcs[i], arcs[j]):
                level[j] = level[i] + 1
                queue.append(j)
    out = {root: (0, 1)}
    for i in component:
        if i == root:
            continue
        nu = min(
            (j for j in component if level[j] == level[i] - 1 and crosses(arcs[i], arcs[j])),
            key=lambda j: arcs[j][0],
        )
        sign = 1 if arcs[nu][0] < arcs[i][0] else -1
        out[i] = (level[i], sign)
    return out


def match_split(
    n: Matching,
    pattern: Permutation,
    obstacle: Matching,
    base: MatchingBase,
    state: MatchingSplitState | None = None,
) -> ColoringCertificate:
    """Recursive splitter: color the arcs of an m(pattern)- and obstacle-avoiding
    matching with copies of the base part multiset, one class per (copy, part).

    Recursion: a ⊎-decomposable obstacle M₁⊎M₂ splits the host at the first
    prefix containing M₁ (the straddling arcs form a permutation matching and
    go to the base); an indecomposable obstacle is handled per connected
    component via BFS levels, sending each block of a level's left/right side
    to the recursion with the obstacle's leftmost/rightmost arc shortened.
    Copies used never exceed 4^weight(obstacle).
    """
    from .constructions import m_plus, m_minus  # cycle: constructions uses splitters

    if any(sum_decompose(q) is not None for q in base.parts):
        raise PreconditionError("base part patterns must be sum-indecomposable")
    if matching_contains(m_of(pattern), n):
        raise PreconditionError(f"host contains m({pattern.text()})")
    if matching_contains(obstacle, n):
        raise PreconditionError("host contains the obstacle")
    if state is None:
        state = MatchingSplitState(pattern_basis=pattern, obstacle=obstacle)

    arcs = n.arcs
    k = len(base.parts)

    def solve(subset: list[int], obs: Matching, depth: int) -> tuple[dict, int]:
        """Returns ({arc index: (copy, part)}, copies used)."""
        if not subset:
            return {}, 0
        sub = _subset_matching(arcs, subset)
        assert not matching_contains(obs, sub), "recursive avoidance guarantee broke"
        if len(obs) == 1:
            raise AssertionError("nonempty host cannot avoid a single-arc obstacle")

        obs_blocks = blocks(obs)
        if len(obs_blocks) > 1:
            m1 = obs_blocks[0]
            m2 = reduce(uplus, obs_blocks[1:])
            colors, copies = _solve_decomposable(subset, obs, m1, m2, depth)
            state.record(depth, "uplus-obstacle", obs, copies)
            return colors, copies

        colors: dict[int, tuple[int, int]] = {}
        copies = 0
        for comp in _subset_components(arcs, subset):
            comp_colors, comp_copies = _solve_connected(comp, obs, depth)
            colors.update(comp_colors)
            copies = max(copies, comp_copies)
        state.record(depth, "components", obs, copies)
        return colors, copies

    def _solve_decomposable(subset, obs, m1, m2, depth):
        endpoints = sorted(e for i in subset for e in arcs[i])
        cut = None
        for e in endpoints:
            prefix = [i for i in subset if arcs[i][1] <= e]
            if matching_contains(m1, _subset_matching(arcs, prefix)):
                cut = e
                break
        if cut is None:
            return solve(subset, m1, depth + 1)
        left = [i for i in subset if arcs[i][1] < cut]
        right = [i for i in subset if arcs[i][0] > cut]
        middle = [i for i in subset if i not in left and i not in right]
        colors1, k1 = solve(left, m1, depth + 1)
        colors2, k2 = solve(right, m2, depth + 1)
        out = dict(colors1)
        out.update({i: (c + k1, j) for i, (c, j) in colors2.items()})
        mid_matching = _subset_matching(arcs, middle)
        mid_cert = base(mid_matching)
        for i, color in zip(sorted(middle, key=lambda i: arcs[i][0]), mid_cert.colors):
            out[i] = (k1 + k2, color)
        return out, k1 + k2 + 1

    def _solve_connected(comp, obs, depth):
        info = _levels_and_signs(arcs, comp)
        depth_max = max(level for level, _ in info.values())
        obs_plus, obs_minus = m_plus(obs), m_minus(obs)
        local: dict[int, tuple[int, int]] = {}
        # copies per (parity, sign) section, shared across levels of a parity
        section_copies = {("even", 1): 0, ("even", -1): 0, ("odd", 1): 0, ("odd", -1): 0}
        section_colors: dict[tuple[str, int], dict[int, tuple[int, int]]] = {
            key: {} for key in section_copies
        }
        root = min(comp, key=lambda i: arcs[i][0])
        root_cert = base(_subset_matching(arcs, [root]))
        section_colors[("even", 1)][root] = (0, root_cert.colors[0])
        section_copies[("even", 1)] = 1
        for lvl in range(1, depth_max + 1):
            parity = "even" if lvl % 2 == 0 else "odd"
            for sign, sub_obs in ((1, obs_plus), (-1, obs_minus)):
                members = [i for i in comp if info[i] == (lvl, sign)]
                if not members:
                    continue
                level_copies = 0
                for block in _subset_blocks(arcs, members):
                    block_colors, block_copies = solve(block, sub_obs, depth + 1)
                    section_colors[(parity, sign)].update(block_colors)
                    level_copies = max(level_copies, block_copies)
                section_copies[(parity, sign)] = max(
                    section_copies[(parity, sign)], level_copies
                )
        offset = 0
        for key in (("even", 1), ("even", -1), ("odd", 1), ("odd", -1)):
            for i, (c, j) in section_colors[key].items():
                local[i] = (c + offset, j)
            offset += section_copies[key]
        return local, offset

    color_map, copies = solve(list(range(len(arcs))), obstacle, 0)
    assert copies <= 4 ** weight(obstacle), "palette exceeded the 4^weight bound"
    parts = base.parts * copies
    colors = tuple(
        color_map[i][0] * k + color_map[i][1] for i in range(len(arcs))
    )
    return ColoringCertificate(subject=n, parts=parts, colors=colors)


def oneplus_split(
    sigma: Permutation,
    base_spec: SplittingSpec,
    colorer: MatchingBase,
    rho: Permutation,
) -> ColoringCertificate:
    """Split a (1⊕σ)-avoider: color its reduced envelope with match_split,
    pull arc colors back to the covered elements, and send every LR-minimum to
    part 0.  Each class avoids 1⊕(its part pattern).
    """
    if sum_decompose(sigma) is not None or len(sigma) == 0:
        raise PreconditionError("sigma must be nonempty and sum-indecomposable")
    one = Permutation((1,))
    target = direct_sum(one, sigma)
    if contains(target, rho) is not None:
        raise PreconditionError(f"{rho.text()} contains {target.text()}")
    if colorer.parts != base_spec.flatten():
        raise PreconditionError("colorer parts must match the base spec")

    reduced, positions = reduced_envelope_map(rho)
    cert = match_split(reduced, sigma, m_of(sigma), colorer)
    k = len(colorer.parts)
    copies = max(1, len(cert.parts) // k)
    parts = tuple(direct_sum(one, q) for q in colorer.parts) * copies
    color_of_position = {pos: cert.colors[j] for j, pos in enumerate(positions)}
    colors = tuple(color_of_position.get(i, 0) for i in range(1, len(rho) + 1))
    return ColoringCertificate(subject=rho, parts=parts, colors=colors)


def circle_color(m: Matching, n: int) -> dict[Arc, int]:
    """Properly color the crossing graph of a matching with no n pairwise
    crossing arcs, via match_split against the obstacle m(n(n-1)...1)."""
    clique = decreasing(n)
    if matching_contains(m_of(clique), m):
        raise PreconditionError(f"matching has {n} pairwise crossing arcs")
    cert = match_split(m, clique, m_of(clique), dilworth_matching_base(n))
    return {arc: color for arc, color in zip(m.arcs, cert.colors)}
