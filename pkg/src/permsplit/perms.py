"""Permutations in one-line notation, containment, and structural predicates.

A permutation of order n is a sequence of the n distinct values 1..n.  The
one-line tuple is the only internal representation; positions reported by the
public API (embeddings, left-to-right minima, marks) are 1-based, matching the
usual combinatorial convention.

Text format: digits without separators for orders up to 9 ("2413"), otherwise
space-separated integers.  Canonical output is always space-separated, and the
empty permutation prints as "ε" (the empty string is accepted on input).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import permutations
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class Permutation:
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if sorted(vals) != list(range(1, len(vals) + 1)):
            raise ValueError(f"not a permutation of 1..{len(vals)}: {vals!r}")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def text(self) -> str:
        if not self.values:
            return "ε"
        return " ".join(str(v) for v in self.values)

    def __repr__(self) -> str:
        return f"Permutation({self.text()!r})"

    @staticmethod
    def from_text(text: str) -> "Permutation":
        """Parse either digit form ("2413") or space-separated form ("2 4 1 3")."""
        text = text.strip()
        if text in ("", "ε"):
            return EMPTY
        if any(ch.isspace() for ch in text):
            return Permutation(tuple(int(tok) for tok in text.split()))
        return Permutation(tuple(int(ch) for ch in text))


EMPTY = Permutation(())


def perm(*values: int) -> Permutation:
    return Permutation(values)


@dataclass(frozen=True)
class Embedding:
    """Strictly increasing 1-based positions of an occurrence in the host."""

    positions: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(self.positions))
        if any(a >= b for a, b in zip(self.positions, self.positions[1:])):
            raise ValueError("embedding positions must be strictly increasing")


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def decreasing(n: int) -> Permutation:
    """The decreasing permutation n, n-1, ..., 1."""
    return Permutation(tuple(range(n, 0, -1)))


def contains(pattern: Permutation, host: Permutation) -> Embedding | None:
    """Lexicographically least embedding of `pattern` into `host`, or None.

    Backtracking over host positions in increasing order, pruning any partial
    choice that is not order-isomorphic to the corresponding pattern prefix.

    >>> contains(Permutation.from_text("132"), Permutation.from_text("2413"))
    Embedding(positions=(1, 2, 4))
    >>> contains(Permutation.from_text("1324"), Permutation.from_text("2413")) is None
    True
    """
    m, n = len(pattern), len(host)
    if m > n:
        return None
    if m == 0:
        return Embedding(())
    pv, hv = pattern.values, host.values
    chosen: list[int] = []

    def extend(start: int) -> bool:
        k = len(chosen)
        if k == m:
            return True
        for pos in range(start, n - (m - k) + 1):
            v = hv[pos]
            if all((pv[j] < pv[k]) == (hv[q] < v) for j, q in enumerate(chosen)):
                chosen.append(pos)
                if extend(pos + 1):
                    return True
                chosen.pop()
        return False

    if extend(0):
        return Embedding(tuple(q + 1 for q in chosen))
    return None


def avoids(pattern: Permutation, host: Permutation) -> bool:
    return contains(pattern, host) is None


def direct_sum(a: Permutation, b: Permutation) -> Permutation:
    """Concatenate with b's values shifted above a's.

    >>> direct_sum(Permutation.from_text("231"), Permutation.from_text("321")).text()
    '2 3 1 6 5 4'
    """
    m = len(a)
    return Permutation(a.values + tuple(v + m for v in b.values))


def skew_sum(a: Permutation, b: Permutation) -> Permutation:
    """Concatenate with a's values shifted above b's."""
    n = len(b)
    return Permutation(tuple(v + n for v in a.values) + b.values)


def reverse(p: Permutation) -> Permutation:
    return Permutation(p.values[::-1])


def complement(p: Permutation) -> Permutation:
    n = len(p)
    return Permutation(tuple(n - v + 1 for v in p.values))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p.values):
        inv[v - 1] = i + 1
    return Permutation(tuple(inv))


def reverse_complement(p: Permutation) -> Permutation:
    return complement(reverse(p))


SYMMETRIES = {
    "reverse": reverse,
    "complement": complement,
    "inverse": inverse,
    "reverse-complement": reverse_complement,
}


def symmetry(kind: str, p: Permutation) -> Permutation:
    try:
        fn = SYMMETRIES[kind]
    except KeyError:
        raise ValueError(f"unknown symmetry {kind!r}") from None
    return fn(p)


def inflate(skeleton: Permutation, parts: Sequence[Permutation]) -> Permutation:
    """The inflation skeleton[parts[0], ..., parts[-1]].

    >>> inflate(Permutation.from_text("231"),
    ...         [Permutation.from_text(t) for t in ("213", "21", "12")]).text()
    '4 3 5 7 6 1 2'
    """
    if len(parts) != len(skeleton):
        raise ValueError(f"need {len(skeleton)} parts, got {len(parts)}")
    if any(len(q) == 0 for q in parts):
        raise ValueError("inflation parts must be nonempty")
    # Block i is shifted above every block with a smaller skeleton value.
    order = sorted(range(len(skeleton)), key=lambda i: skeleton.values[i])
    offset = {}
    total = 0
    for i in order:
        offset[i] = total
        total += len(parts[i])
    vals: list[int] = []
    for i in range(len(skeleton)):
        vals.extend(offset[i] + v for v in parts[i].values)
    return Permutation(tuple(vals))


def is_simple(p: Permutation) -> bool:
    """True iff p has no interval of length strictly between 1 and n.

    Quadratic scan over contiguous position windows, checking whether the
    values form a contiguous range.
    """
    n = len(p)
    v = p.values
    for i in range(n):
        lo = hi = v[i]
        for j in range(i + 1, n):
            lo = min(lo, v[j])
            hi = max(hi, v[j])
            if j - i + 1 < n and hi - lo == j - i:
                return False
    return True


def sum_decompose(p: Permutation) -> tuple[Permutation, Permutation] | None:
    """Split p = a ⊕ b at the least k with p[1..k] = {1..k}, if any."""
    n = len(p)
    mx = 0
    for k in range(1, n):
        mx = max(mx, p.values[k - 1])
        if mx == k:
            head = Permutation(p.values[:k])
            tail = Permutation(tuple(v - k for v in p.values[k:]))
            return head, tail
    return None


def skew_decompose(p: Permutation) -> tuple[Permutation, Permutation] | None:
    """Split p = a ⊖ b at the least k with p[1..k] = {n-k+1..n}, if any."""
    n = len(p)
    mn = n + 1
    for k in range(1, n):
        mn = min(mn, p.values[k - 1])
        if mn == n - k + 1:
            head = Permutation(tuple(v - (n - k) for v in p.values[:k]))
            tail = Permutation(p.values[k:])
            return head, tail
    return None


def sum_components(p: Permutation) -> tuple[Permutation, ...]:
    """The finest decomposition p = c1 ⊕ c2 ⊕ ... into sum-indecomposables."""
    comps: list[Permutation] = []
    rest = p
    while len(rest):
        split = sum_decompose(rest)
        if split is None:
            comps.append(rest)
            break
        head, rest = split
        comps.append(head)
    return tuple(comps)


def direct_sum_all(parts: Iterable[Permutation]) -> Permutation:
    return reduce(direct_sum, parts, EMPTY)


def lr_minima(p: Permutation) -> tuple[int, ...]:
    """1-based positions i where p(i) is smaller than everything before it.

    >>> lr_minima(Permutation.from_text("58641273"))
    (1, 4, 5)
    """
    out = []
    best = len(p) + 1
    for i, v in enumerate(p.values, start=1):
        if v < best:
            out.append(i)
            best = v
    return tuple(out)


def inflate_lr_minima(outer: Permutation, filler: Permutation) -> Permutation:
    """Inflate every LR-minimum of `outer` by `filler`, everything else by 1."""
    if len(filler) == 0:
        raise ValueError("filler must be nonempty")
    mins = set(lr_minima(outer))
    one = Permutation((1,))
    parts = [filler if i in mins else one for i in range(1, len(outer) + 1)]
    return inflate(outer, parts)


def all_perms(n: int) -> Iterator[Permutation]:
    """All permutations of order n, in lexicographic order."""
    for vals in permutations(range(1, n + 1)):
        yield Permutation(vals)


@lru_cache(maxsize=None)
def _avoider_level(basis: frozenset[Permutation], n: int) -> tuple[Permutation, ...]:
    if any(len(b) == 0 for b in basis):
        return ()
    if n == 0:
        return (EMPTY,)
    out = []
    for q in _avoider_level(basis, n - 1):
        for idx in range(n):
            cand = Permutation(q.values[:idx] + (n,) + q.values[idx:])
            if all(contains(b, cand) is None for b in basis):
                out.append(cand)
    return tuple(sorted(out, key=lambda p: p.values))


def enumerate_avoiders(basis: Iterable[Permutation], n: int) -> Iterator[Permutation]:
    """All members of Av(basis) of order exactly n, in lexicographic order.

    Generated by inserting the value n into each avoider of order n-1 at every
    position and filtering by containment; hereditariness makes this complete.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    yield from _avoider_level(frozenset(basis), n)


def avoiders_up_to(basis: Iterable[Permutation], n_max: int) -> Iterator[Permutation]:
    """All members of Av(basis) of order 0..n_max, in size-then-lex order."""
    key = frozenset(basis)
    for n in range(n_max + 1):
        yield from _avoider_level(key, n)
