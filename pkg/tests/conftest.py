"""Brute-force oracles used to derive expected values independently.

These deliberately do not reuse the library's search code: containment is an
exhaustive subsequence scan, avoider enumeration is a filter over all n!
permutations, matching avoidance is an exhaustive subset scan.
"""
from __future__ import annotations

from itertools import combinations, permutations

from permsplit.matchings import Matching
from permsplit.perms import Permutation


def order_isomorphic(seq_a, seq_b) -> bool:
    return len(seq_a) == len(seq_b) and all(
        (seq_a[i] < seq_a[j]) == (seq_b[i] < seq_b[j])
        for i in range(len(seq_a))
        for j in range(i + 1, len(seq_a))
    )


def brute_contains(pattern: Permutation, host: Permutation) -> bool:
    """Exhaustive scan over all |pattern|-subsequences of the host."""
    m = len(pattern)
    return any(
        order_isomorphic(pattern.values, [host.values[i] for i in pos])
        for pos in combinations(range(len(host)), m)
    )


def brute_least_embedding(pattern: Permutation, host: Permutation):
    m = len(pattern)
    for pos in combinations(range(len(host)), m):
        if order_isomorphic(pattern.values, [host.values[i] for i in pos]):
            return tuple(i + 1 for i in pos)
    return None


def brute_avoiders(basis, n: int) -> list[Permutation]:
    """Filter all n! permutations by the basis, lexicographic order."""
    out = []
    for vals in permutations(range(1, n + 1)):
        p = Permutation(vals)
        if not any(brute_contains(b, p) for b in basis):
            out.append(p)
    return out


def brute_matching_contains(pattern: Matching, host: Matching) -> bool:
    """Exhaustive scan over all |pattern|-subsets of the host's arcs."""
    k = len(pattern)
    for subset in combinations(host.arcs, k):
        endpoints = sorted(e for arc in subset for e in arc)
        rank = {e: i + 1 for i, e in enumerate(endpoints)}
        normal = tuple(sorted((rank[a], rank[b]) for a, b in subset))
        if normal == pattern.arcs:
            return True
    return False
