"""Inverse hull arithmetic, closure generation, fixed points, separation.

The piecewise calculus is cross-checked against a pointwise partial-function
oracle evaluated on enumerated balls.
"""

import itertools

import pytest

from catenv.fixtures import (fix_edge, fix_free2, fix_n2, fix_trivial_monoid,
                             fix_two, fix_two_mce_category)
from catenv.hull import ExplicitBijection, InverseHull, ZERO


def graph_of(hull, s, ball):
    """Pointwise oracle: the graph of s on a ball."""
    return {x: hull.apply(s, x) for x in ball if hull.apply(s, x) is not None}


def compose_graphs(g1, g2):
    return {x: g1[y] for x, y in g2.items() if y in g1}


@pytest.fixture(scope="module")
def edge_hull():
    hull = InverseHull(fix_edge())
    return hull, hull.generate()


def e_map(hull):
    p = hull.p
    e = [m for m in p.ball(None) if m.word == ("e",)][0]
    return hull.from_morphism(e)


# -- constructors --------------------------------------------------------------


def test_from_morphism_graphs(edge_hull):
    hull, _ = edge_hull
    p = hull.p
    ball = p.ball(None)
    s = e_map(hull)
    assert graph_of(hull, s, ball) == {p.identity("w"): by_word(p, ("e",))}
    v_id = hull.from_morphism(p.identity("v"))
    assert graph_of(hull, v_id, ball) == {m: m for m in ball if m.tgt == "v"}


def by_word(p, word):
    return [m for m in p.ball(5) if m.word == word][0]


def test_free_shift_piece():
    p = fix_free2()
    hull = InverseHull(p)
    s = hull.from_morphism(p.word("a"))
    assert s.pieces == ((p.word("a"), p.identity("*")),)
    assert hull.apply(s, p.word("ba")) == p.word("aba")


# -- composition and inversion ---------------------------------------------------


def test_hcompose_examples(edge_hull):
    hull, h = edge_hull
    p = hull.p
    s = e_map(hull)
    sinv = hull.hinverse(s)
    idw = hull.idempotent([p.identity("w")])
    assert hull.hcompose(sinv, s) == idw
    assert hull.hcompose(s, idw) == s
    assert hull.hinverse(hull.hinverse(s)) == s
    assert hull.hinverse(ZERO) == ZERO


def test_hcompose_zero_in_free_monoid():
    p = fix_free2()
    hull = InverseHull(p)
    a_inv = hull.hinverse(hull.from_morphism(p.word("a")))
    b = hull.from_morphism(p.word("b"))
    assert hull.hcompose(a_inv, b).is_zero


def test_hcompose_matches_pointwise_oracle():
    for p, bound, radius in ((fix_edge(), None, None), (fix_two(), None, None),
                             (fix_n2(), 2, 4), (fix_two_mce_category(), None, None)):
        hull = InverseHull(p)
        h = hull.generate(bound)
        ball = p.ball(radius if radius else None)
        els = h.nonzero()
        for s in els:
            for t in els:
                st = hull.hcompose(s, t)
                for x in ball:
                    y = hull.apply(t, x)
                    expected = hull.apply(s, y) if y is not None else None
                    assert hull.apply(st, x) == expected


def test_canonical_equality_matches_pointwise_equality(edge_hull):
    hull, h = edge_hull
    ball = hull.p.ball(None)
    for s, t in itertools.combinations(h.nonzero(), 2):
        assert (s == t) == (graph_of(hull, s, ball) == graph_of(hull, t, ball))


# -- closure generation -----------------------------------------------------------


def test_edge_hull_has_six_elements(edge_hull):
    hull, h = edge_hull
    assert len(h) == 6 and h.complete
    assert hull.contains_zero(h)
    idempotents = [s for s in h.nonzero() if hull.is_idempotent(s)]
    assert len(idempotents) == 3  # identities on v𝔠, w𝔠, e𝔠


def test_n2_hull_bound_two():
    p = fix_n2()
    hull = InverseHull(p)
    h = hull.generate(bound=2)
    # all x·y⁻¹ with |x|+|y| ≤ 2: one pair per (x, y)
    count = 0
    for total in range(3):
        for i in range(total + 1):
            pairs_x = i + 1  # lattice points of size i
            pairs_y = (total - i) + 1
            count += pairs_x * pairs_y
    assert len(h) == count == 15
    assert not hull.contains_zero(h)


def test_trivial_monoid_hull():
    hull = InverseHull(fix_trivial_monoid())
    h = hull.generate()
    assert len(h) == 1 and h.complete and not hull.contains_zero(h)


def test_free2_hull_contains_zero():
    hull = InverseHull(fix_free2())
    h = hull.generate(bound=2)
    assert hull.contains_zero(h)


# -- inverse semigroup axioms -------------------------------------------------------


def test_inverse_semigroup_axioms_exhaustive():
    for p in (fix_edge(), fix_two(), fix_two_mce_category()):
        hull = InverseHull(p)
        h = hull.generate()
        els = h.nonzero() + [ZERO]
        for s in els:
            sinv = hull.hinverse(s)
            assert hull.hcompose(hull.hcompose(s, sinv), s) == s
            assert hull.hcompose(hull.hcompose(sinv, s), sinv) == sinv
        idems = [s for s in els if hull.is_idempotent(s)]
        for e1, e2 in itertools.product(idems, repeat=2):
            assert hull.hcompose(e1, e2) == hull.hcompose(e2, e1)


def test_idempotents_are_ideal_identities(edge_hull):
    hull, h = edge_hull
    for s in h.nonzero():
        if hull.is_idempotent(s):
            assert s == hull.idempotent(hull.domain_parts(s))


# -- fixed points and separation -------------------------------------------------


def test_fix_set_examples(edge_hull):
    hull, h = edge_hull
    p = hull.p
    idv = hull.idempotent([p.identity("v")])
    assert hull.fix_set(idv) == (p.identity("v"),)
    assert hull.fix_set(ZERO) == ()
    f2 = fix_free2()
    hull2 = InverseHull(f2)
    shift = hull2.canonical([(f2.word("a"), f2.word("b"))])
    assert hull2.fix_set(shift) == ()


def test_fix_set_right_invariant_two_parts():
    p = fix_two_mce_category()
    hull = InverseHull(p)
    h = hull.generate()
    two_part = [s for s in h.nonzero()
                if hull.is_idempotent(s) and len(hull.fix_set(s)) == 2]
    assert two_part, "expected a two-part constructible fixed set"


def test_multi_piece_elements_match_pointwise_oracle():
    # the flipped-square monoid produces genuine two-piece bijections
    from catenv.fixtures import fix_flip_monoid
    p = fix_flip_monoid()
    hull = InverseHull(p)
    h = hull.generate(bound=2)
    multi = [s for s in h.nonzero() if len(s.pieces) >= 2]
    assert multi
    ball = p.ball(3)
    els = h.nonzero()
    for s in els:
        sinv = hull.hinverse(s)
        assert hull.hcompose(hull.hcompose(s, sinv), s) == s
    for s in multi:
        for t in els:
            st = hull.hcompose(s, t)
            for x in ball:
                y = hull.apply(t, x)
                expected = hull.apply(s, y) if y is not None else None
                assert hull.apply(st, x) == expected


def test_hausdorff_certified_on_fixtures():
    for p, bound, want in ((fix_edge(), None, "certified"),
                           (fix_two(), None, "certified"),
                           (fix_n2(), 3, "bounded"),
                           (fix_free2(), 3, "bounded")):
        hull = InverseHull(p)
        h = hull.generate(bound)
        assert hull.hausdorff_check(h).status == want


def test_planted_non_ideal_union_rejected(edge_hull):
    hull, h = edge_hull
    p = hull.p
    planted = ExplicitBijection(((p.identity("v"), p.identity("v")),))
    doctored = type(h)(elements=h.elements + [planted], bound=h.bound,
                       complete=h.complete)
    verdict = hull.hausdorff_check(doctored)
    assert verdict.status == "counterexample"
    offender, witness = verdict.witness
    assert offender is planted and witness == p.identity("v")
