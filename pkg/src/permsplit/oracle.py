"""Independent brute-force verification of splittings and Ramsey-style searches.

Everything here checks certificates and classes from first principles: merge
membership by exhaustive backtracking over part assignments, matching
avoidance by scanning arc subsets, witness properties by enumerating all
two-colorings.  The only search code shared with the constructive side is
perms.contains; in particular matching containment is re-implemented here as
a plain subset scan so that the two routes stay independent.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .matchings import m_of
from .perms import Embedding, Permutation, contains, enumerate_avoiders
from .splitters import ColoringCertificate, SplittingSpec


@dataclass(frozen=True)
class MarkedPermutation:
    """A permutation with one distinguished (1-based) position."""

    perm: Permutation
    mark: int

    def __post_init__(self):
        if not 1 <= self.mark <= len(self.perm):
            raise ValueError(f"mark {self.mark} out of range 1..{len(self.perm)}")


@dataclass
class VerificationReport:
    checked: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)
    max_colors_used: int = 0
    fallbacks: int = 0  # subjects where the constructive splitter did not settle it

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "checked": self.checked,
            "failures": [{"subject": s, "detail": d} for s, d in self.failures],
            "max_colors_used": self.max_colors_used,
            "fallbacks": self.fallbacks,
            "pass": self.passed,
        }


def _as_perm(vals: Sequence[int]) -> Permutation:
    rank = {v: i + 1 for i, v in enumerate(sorted(vals))}
    return Permutation(tuple(rank[v] for v in vals))


def _submatching_avoids(pattern: Permutation, arcs: Sequence[tuple[int, int]]) -> bool:
    """Exhaustive subset scan: no |pattern| arcs normalize to m(pattern)."""
    target = m_of(pattern).arcs
    k = len(pattern)
    for subset in combinations(arcs, k):
        endpoints = sorted(e for arc in subset for e in arc)
        rank = {e: i + 1 for i, e in enumerate(endpoints)}
        if tuple(sorted((rank[a], rank[b]) for a, b in subset)) == target:
            return False
    return True


def merge_check(cert: ColoringCertificate) -> bool:
    """True iff every color class of the certificate avoids its part pattern."""
    if isinstance(cert.subject, Permutation):
        for c, part in enumerate(cert.parts):
            vals = [v for v, color in zip(cert.subject.values, cert.colors) if color == c]
            if contains(part, _as_perm(vals)) is not None:
                return False
        return True
    for c, part in enumerate(cert.parts):
        arcs = [arc for arc, color in zip(cert.subject.arcs, cert.colors) if color == c]
        if not _submatching_avoids(part, arcs):
            return False
    return True


def merge_violations(cert: ColoringCertificate) -> list[str]:
    """One entry per offending class: its part pattern and the first occurrence
    found, located in the subject's own coordinates."""
    out = []
    if isinstance(cert.subject, Permutation):
        for c, part in enumerate(cert.parts):
            positions = [i for i, col in enumerate(cert.colors, 1) if col == c]
            vals = [cert.subject.values[i - 1] for i in positions]
            emb = contains(part, _as_perm(vals))
            if emb is not None:
                where = [positions[j - 1] for j in emb.positions]
                out.append(f"class {c} contains {part.text()} at positions {where}")
        return out
    for c, part in enumerate(cert.parts):
        arcs = [arc for arc, color in zip(cert.subject.arcs, cert.colors) if color == c]
        target = m_of(part).arcs
        for subset in combinations(arcs, len(part)):
            endpoints = sorted(e for arc in subset for e in arc)
            rank = {e: i + 1 for i, e in enumerate(endpoints)}
            if tuple(sorted((rank[a], rank[b]) for a, b in subset)) == target:
                shown = " ".join(f"{a}-{b}" for a, b in subset)
                out.append(f"class {c} contains m({part.text()}) on arcs {shown}")
                break
    return out


def _ends_with_occurrence(pattern: Sequence[int], seq: Sequence[int]) -> bool:
    """Occurrence of pattern in seq whose last element is seq's last entry."""
    m = len(pattern)
    if m == 0 or m > len(seq):
        return False
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


def merge_member(
    p: Permutation, spec: SplittingSpec | Sequence[Permutation]
) -> ColoringCertificate | None:
    """Exhaustive backtracking over part assignments, element by element.

    Prunes a branch as soon as a partial class completes its forbidden
    pattern; only occurrences through the newest element need testing.
    Returns the lexicographically first certificate in part-index order.
    """
    parts = spec.flatten() if isinstance(spec, SplittingSpec) else tuple(spec)
    k = len(parts)
    n = len(p)
    class_vals: list[list[int]] = [[] for _ in range(k)]
    colors = [0] * n

    def place(i: int) -> bool:
        if i == n:
            return True
        v = p.values[i]
        for c in range(k):
            if not class_vals[c] and any(
                parts[c2] == parts[c] and not class_vals[c2] for c2 in range(c)
            ):
                continue  # identical empty parts are interchangeable
            class_vals[c].append(v)
            if not _ends_with_occurrence(parts[c].values, class_vals[c]):
                colors[i] = c
                if place(i + 1):
                    return True
            class_vals[c].pop()
        return False

    if not place(0):
        return None
    return ColoringCertificate(subject=p, parts=parts, colors=tuple(colors))


def verify_splitting(
    class_basis: Iterable[Permutation],
    spec: SplittingSpec,
    n_max: int,
    splitter: Callable[[Permutation], ColoringCertificate] | None = None,
) -> VerificationReport:
    """Check that every member of Av(class_basis) up to order n_max merges
    into the spec: fast path through the supplied constructive splitter when
    its certificate validates, exhaustive merge_member otherwise."""
    from collections import Counter

    basis = frozenset(class_basis)
    spec_counts = Counter(spec.flatten())
    report = VerificationReport()
    for n in range(n_max + 1):
        for p in enumerate_avoiders(basis, n):
            report.checked += 1
            constructive = None
            if splitter is not None:
                try:
                    constructive = splitter(p)
                except Exception:
                    constructive = None
            if constructive is not None:
                subset = not (Counter(constructive.parts) - spec_counts)
                if subset and merge_check(constructive):
                    report.max_colors_used = max(
                        report.max_colors_used, constructive.colors_used()
                    )
                    continue
            if splitter is not None:
                report.fallbacks += 1
            cert = merge_member(p, spec)
            if cert is None:
                detail = "no merge into the spec exists"
                if constructive is not None:
                    detail += "; splitter certificate invalid: " + "; ".join(
                        merge_violations(constructive)
                    )
                report.failures.append((p.text(), detail))
            else:
                report.max_colors_used = max(report.max_colors_used, cert.colors_used())
    return report


def _coloring_defeats(
    sigma: Permutation, tau: Permutation, pi: Permutation
) -> tuple[int, ...] | None:
    """A red/blue coloring of sigma with no red tau and no blue pi, if any."""
    n = len(sigma)
    for mask in range(1 << n):
        red = [v for i, v in enumerate(sigma.values) if not mask >> i & 1]
        blue = [v for i, v in enumerate(sigma.values) if mask >> i & 1]
        if contains(tau, _as_perm(red)) is None and contains(pi, _as_perm(blue)) is None:
            return tuple(mask >> i & 1 for i in range(n))
    return None


def unavoidable_witness(
    class_basis: Iterable[Permutation],
    tau: Permutation,
    pi: Permutation,
    size_bound: int,
) -> Permutation | None:
    """Least (size-then-lex) member of the class whose every red-blue coloring
    has a red tau or a blue pi; None if no witness exists within the bound."""
    basis = frozenset(class_basis)
    for n in range(size_bound + 1):
        for sigma in enumerate_avoiders(basis, n):
            if _coloring_defeats(sigma, tau, pi) is None:
                assert _recheck_witness(sigma, tau, pi)
                return sigma
    return None


def _recheck_witness(sigma: Permutation, tau: Permutation, pi: Permutation) -> bool:
    n = len(sigma)
    for red_size in range(n + 1):
        for red_pos in combinations(range(n), red_size):
            red = [sigma.values[i] for i in red_pos]
            blue = [sigma.values[i] for i in range(n) if i not in red_pos]
            if contains(tau, _as_perm(red)) is None and contains(pi, _as_perm(blue)) is None:
                return False
    return True


def _embeddings(pattern: Permutation, host: Permutation) -> list[Embedding]:
    """All embeddings, by brute-force subsequence scan."""
    m = len(pattern)
    out = []
    for pos in combinations(range(len(host)), m):
        vals = [host.values[i] for i in pos]
        if all(
            (pattern.values[a] < pattern.values[b]) == (vals[a] < vals[b])
            for a in range(m)
            for b in range(a + 1, m)
        ):
            out.append(Embedding(tuple(i + 1 for i in pos)))
    return out


def amalgamation_search(
    class_basis: Iterable[Permutation],
    r1: MarkedPermutation,
    r2: MarkedPermutation,
    size_bound: int,
) -> tuple[Permutation, Embedding, Embedding] | None:
    """First (size-then-lex) member of the class with embeddings of r1.perm
    and r2.perm whose marked elements coincide; None within the bound means
    {Av(r1.perm), Av(r2.perm)} is a candidate splitting (bound-limited)."""
    basis = frozenset(class_basis)
    least = max(len(r1.perm), len(r2.perm))
    for n in range(least, size_bound + 1):
        for sigma in enumerate_avoiders(basis, n):
            embs1 = _embeddings(r1.perm, sigma)
            if not embs1:
                continue
            embs2 = _embeddings(r2.perm, sigma)
            for g1 in embs1:
                shared = g1.positions[r1.mark - 1]
                for g2 in embs2:
                    if g2.positions[r2.mark - 1] == shared:
                        return sigma, g1, g2
    return None


def ama_coloring(
    sigma: Permutation, r1: MarkedPermutation, r2: MarkedPermutation | None = None
) -> ColoringCertificate:
    """Color an element blue iff some embedding of r1.perm maps the mark onto
    it; the red class then avoids r1.perm by construction.  The blue part is
    labelled with r2's pattern when given (the Lemma pairing), else r1's."""
    blue_positions = {
        emb.positions[r1.mark - 1] for emb in _embeddings(r1.perm, sigma)
    }
    colors = tuple(1 if i in blue_positions else 0 for i in range(1, len(sigma) + 1))
    blue_part = r2.perm if r2 is not None else r1.perm
    return ColoringCertificate(subject=sigma, parts=(r1.perm, blue_part), colors=colors)
