from __future__ import annotations

import pytest
from conftest import brute_contains

from permsplit.errors import InvalidColorerError, PreconditionError
from permsplit.matchings import (
    EMPTY_MATCHING,
    Matching,
    crosses,
    m_of,
    matching_contains,
    matchings_up_to,
    weight,
)
from permsplit.perms import EMPTY, Permutation, avoiders_up_to
from permsplit.splitters import (
    ColoringCertificate,
    MatchingSplitState,
    SplittingSpec,
    circle_color,
    dilworth_matching_base,
    dilworth_split,
    easy_split_parts,
    greedy_three_sum,
    match_split,
    oneplus_split,
    refine_colorer,
)

P = Permutation.from_text
M = Matching.from_text
ONE = P("1")


def perm_class_values(cert: ColoringCertificate, c: int) -> Permutation:
    vals = [v for v, color in zip(cert.subject.values, cert.colors) if color == c]
    rank = {v: i + 1 for i, v in enumerate(sorted(vals))}
    return Permutation(tuple(rank[v] for v in vals))


def matching_class(cert: ColoringCertificate, c: int) -> Matching:
    return Matching.from_arcs(
        [arc for arc, color in zip(cert.subject.arcs, cert.colors) if color == c]
    )


def brute_valid(cert: ColoringCertificate) -> bool:
    if isinstance(cert.subject, Permutation):
        return all(
            not brute_contains(part, perm_class_values(cert, c))
            for c, part in enumerate(cert.parts)
        )
    return all(
        not matching_contains(m_of(part), matching_class(cert, c))
        for c, part in enumerate(cert.parts)
    )


def test_spec_multiset_and_parsing_rules():
    spec = SplittingSpec(((P("132"), 2), (P("213"), 1)))
    assert spec.flatten() == (P("132"), P("132"), P("213"))
    assert spec.text() == "2*1 3 2,2 1 3"
    with pytest.raises(ValueError):
        SplittingSpec(())
    with pytest.raises(ValueError):
        SplittingSpec(((EMPTY, 1),))


def test_certificate_json_round_trip():
    cert = greedy_three_sum(ONE, P("21"), ONE, P("2413"))
    again = ColoringCertificate.from_json_dict(cert.to_json_dict())
    assert again == cert
    mcert = match_split(m_of(P("21")), P("321"), m_of(P("321")), dilworth_matching_base(3))
    again = ColoringCertificate.from_json_dict(mcert.to_json_dict())
    assert again == mcert


def test_greedy_examples():
    cert = greedy_three_sum(ONE, P("21"), ONE, P("2413"))
    assert cert.colors == (0, 0, 0, 1)
    assert cert.parts == (P("132"), P("213"))
    assert greedy_three_sum(ONE, P("21"), ONE, P("321")).colors == (0, 0, 0)
    assert greedy_three_sum(ONE, ONE, ONE, P("21")).colors == (0, 0)
    assert greedy_three_sum(ONE, P("21"), ONE, EMPTY).colors == ()
    with pytest.raises(PreconditionError):
        greedy_three_sum(ONE, P("21"), ONE, P("1324"))
    with pytest.raises(PreconditionError):
        greedy_three_sum(EMPTY, P("21"), ONE, P("321"))


def test_greedy_sweep_is_valid_and_red_prefix_invariant():
    basis = {P("1324")}
    ab = P("132")
    for p in avoiders_up_to(basis, 6):
        cert = greedy_three_sum(ONE, P("21"), ONE, p)
        assert brute_valid(cert)
        red: list[int] = []
        for v, color in zip(p.values, cert.colors):
            if color == 0:
                red.append(v)
                rank = {u: i + 1 for i, u in enumerate(sorted(red))}
                assert not brute_contains(ab, Permutation(tuple(rank[u] for u in red)))


def test_easy_split_parts_examples():
    assert easy_split_parts(P("21"), P("21")) == SplittingSpec.of(P("213"), P("132"))
    assert easy_split_parts(P("12"), P("12")) == SplittingSpec.of(P("123"), P("123"))
    assert easy_split_parts(P("21"), P("12")) == SplittingSpec.of(P("213"), P("123"))
    with pytest.raises(PreconditionError):
        easy_split_parts(ONE, P("21"))


def test_dilworth_examples():
    assert dilworth_split(3, P("231")).colors == (0, 0, 1)
    assert dilworth_split(3, P("123")).colors == (0, 0, 0)
    assert dilworth_split(4, P("321")).colors == (0, 1, 2)
    assert dilworth_split(3, P("231")).parts == (P("21"), P("21"))
    with pytest.raises(PreconditionError):
        dilworth_split(3, P("321"))


def test_dilworth_sweep_small():
    for p in avoiders_up_to({P("321")}, 6):
        cert = dilworth_split(3, p)
        assert brute_valid(cert)


def test_dilworth_matching_base():
    base = dilworth_matching_base(3)
    cert = base(m_of(P("21")))
    assert cert.colors == (0, 1) or cert.colors == (1, 0)
    # crossing arcs correspond to an inversion, so they get distinct colors
    assert len(set(cert.colors)) == 2
    assert base(EMPTY_MATCHING).colors == ()


def test_match_split_trivial_and_small():
    base = dilworth_matching_base(3)
    obstacle = m_of(P("321"))
    cert = match_split(EMPTY_MATCHING, P("321"), obstacle, base)
    assert cert.colors == () and cert.parts == ()

    cert = match_split(m_of(P("21")), P("321"), obstacle, base)
    assert brute_valid(cert)
    a, b = cert.colors
    assert a != b  # the two arcs cross, classes must be crossing-free

    chain = M("1-3 2-5 4-6")
    cert = match_split(chain, P("321"), obstacle, base)
    assert brute_valid(cert)
    assert len(cert.parts) <= 4**6 * 2


def test_match_split_preconditions():
    base = dilworth_matching_base(3)
    with pytest.raises(PreconditionError):
        match_split(m_of(P("321")), P("321"), m_of(P("321")), base)


def test_match_split_trace_weights_decrease():
    base = dilworth_matching_base(3)
    obstacle = m_of(P("321"))
    for m in matchings_up_to(4):
        if matching_contains(obstacle, m):
            continue
        state = MatchingSplitState(pattern_basis=P("321"), obstacle=obstacle)
        match_split(m, P("321"), obstacle, base, state=state)
        stack: list[tuple[int, int]] = []  # (depth, weight)
        for depth, _case, w, _copies in state.trace:
            while stack and stack[-1][0] >= depth:
                stack.pop()
            if stack:
                assert w < stack[-1][1]
            stack.append((depth, w))


def test_match_split_sweep_validates():
    base = dilworth_matching_base(3)
    obstacle = m_of(P("321"))
    for m in matchings_up_to(4):
        if matching_contains(obstacle, m):
            continue
        cert = match_split(m, P("321"), obstacle, base)
        assert brute_valid(cert)
        assert len(cert.parts) <= 4 ** weight(obstacle) * 2


def test_oneplus_examples():
    spec = SplittingSpec(((P("21"), 2),))
    base = dilworth_matching_base(3)
    cert = oneplus_split(P("321"), spec, base, P("3142"))
    assert all(part == P("132") for part in cert.parts)
    classes = {c: perm_class_values(cert, c) for c in set(cert.colors)}
    assert sorted(q.text() for q in classes.values()) == ["1", "2 1 3"]

    cert = oneplus_split(P("321"), spec, base, P("4321"))
    assert set(cert.colors) == {0}
    assert perm_class_values(cert, 0) == P("4321")

    cert = oneplus_split(P("321"), spec, base, EMPTY)
    assert cert.colors == ()

    with pytest.raises(PreconditionError):
        oneplus_split(P("321"), spec, base, P("1432"))
    with pytest.raises(PreconditionError):
        oneplus_split(P("123"), spec, base, P("21"))


def test_oneplus_sweep_small():
    from permsplit.envelope import reduced_envelope_map
    from permsplit.perms import lr_minima

    spec = SplittingSpec(((P("21"), 2),))
    base = dilworth_matching_base(3)
    obstacle = m_of(P("321"))
    for rho in avoiders_up_to({P("1432")}, 6):
        cert = oneplus_split(P("321"), spec, base, rho)
        assert brute_valid(cert)
        # class 0 holds every LR-minimum
        for pos in lr_minima(rho):
            assert cert.colors[pos - 1] == 0
        # stripped of LR-minima, class i is exactly the arcs colored i
        reduced, positions = reduced_envelope_map(rho)
        arc_cert = match_split(reduced, P("321"), obstacle, base)
        for j, pos in enumerate(positions):
            assert cert.colors[pos - 1] == arc_cert.colors[j]


def test_circle_color_examples():
    assert len(set(circle_color(M("1-3 2-4"), 3).values())) == 2
    assert len(set(circle_color(M("1-2 3-4"), 3).values())) == 1
    with pytest.raises(PreconditionError):
        circle_color(m_of(P("321")), 3)


def test_circle_color_proper_small():
    obstacle = m_of(P("321"))
    for m in matchings_up_to(4):
        if matching_contains(obstacle, m):
            continue
        coloring = circle_color(m, 3)
        for x in m.arcs:
            for y in m.arcs:
                if x < y and crosses(x, y):
                    assert coloring[x] != coloring[y]


def _two_increasing_colorer(spec_parts):
    """Valid colorer for Av(321) against any 2-part spec whose parts are
    avoided by increasing sequences: Dilworth classes are increasing."""

    def colorer(q: Permutation) -> ColoringCertificate:
        cert = dilworth_split(3, q)
        return ColoringCertificate(subject=q, parts=spec_parts, colors=cert.colors)

    return colorer


def test_refine_colorer_valid_instance():
    spec = SplittingSpec.of(P("132"), P("213"))
    colorer = _two_increasing_colorer(spec.flatten())
    for p in avoiders_up_to({P("321")}, 5):
        cert = refine_colorer(P("321"), spec, 0, colorer, p)
        assert cert.subject == p
        assert cert.parts[1] == P("213")
        assert cert.parts[0] in (P("1"), P("21"))  # 132 = 1 ⊕ 21
        assert brute_valid(cert)


def test_refine_colorer_degenerate_and_errors():
    spec = SplittingSpec.of(P("132"), P("213"))
    colorer = _two_increasing_colorer(spec.flatten())
    cert = refine_colorer(P("321"), spec, 0, colorer, EMPTY)
    assert cert.colors == ()

    def broken(q: Permutation) -> ColoringCertificate:
        return ColoringCertificate(
            subject=q, parts=spec.flatten(), colors=(0,) * len(q)
        )

    with pytest.raises(InvalidColorerError):
        refine_colorer(P("321"), spec, 0, broken, P("21"))
    skew_spec = SplittingSpec.of(P("132"), P("312"))
    skew_colorer = _two_increasing_colorer(skew_spec.flatten())
    with pytest.raises(PreconditionError):
        refine_colorer(P("321"), skew_spec, 1, skew_colorer, P("12"))  # 312 indecomposable
    with pytest.raises(PreconditionError):
        refine_colorer(P("132"), spec, 0, colorer, P("12"))  # pi decomposable
