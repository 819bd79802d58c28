"""Right LCM certification, core membership, fractions, the boundary cocycle."""

import itertools

import pytest

from catenv.categories import DirectProduct, FreeMonoid, GroupoidSub, NkMonoid
from catenv.fixtures import fix_flip_monoid, fix_free2, fix_n2, fix_trivial_monoid
from catenv.gpd import cyclic_groupoid
from catenv.hull import InverseHull
from catenv.lcm import (NotCore, OreGroup, core_membership,
                        core_unitary_check, germ_equal_at_full_support,
                        is_right_lcm, kappa0, starling_report,
                        transformation_iso_check)


def z2_monoid():
    return GroupoidSub(cyclic_groupoid(2), {"z0", "z1"})


# -- LCM certification -----------------------------------------------------------


def test_right_lcm_verdicts():
    assert is_right_lcm(fix_n2()).is_lcm and is_right_lcm(fix_n2()).mode == "structural"
    assert is_right_lcm(fix_free2()).is_lcm
    verdict = is_right_lcm(fix_flip_monoid(), bound=2)
    assert verdict.is_lcm is False
    c, d = verdict.witness
    assert len(fix_flip_monoid().align(c, d)) == 2


# -- core membership ---------------------------------------------------------------


def test_core_certificates():
    f2 = fix_free2()
    cert = core_membership(f2, f2.word("a"))
    assert cert.status == "not_in_core" and cert.witness == f2.word("b")
    assert core_membership(f2, f2.word("b")).status == "not_in_core"
    assert core_membership(f2, f2.identity("*")).status == "in_core"
    n2 = fix_n2()
    for vec in itertools.product(range(3), repeat=2):
        assert core_membership(n2, n2.vector(vec)).status == "in_core"
    rank1 = FreeMonoid(("a",))
    assert core_membership(rank1, rank1.word("aa")).status == "in_core"
    flip = fix_flip_monoid()
    assert core_membership(flip, flip.path(["e1"]), bound=2).status == "not_in_core"


def test_core_closed_under_composition_on_samples():
    n2 = fix_n2()
    prod = DirectProduct(NkMonoid(1), FreeMonoid(("a", "b")))
    for p, elements in ((n2, [n2.vector(v) for v in itertools.product(range(2), repeat=2)]),
                        (prod, [prod.pair(prod.left.vector((i,)),
                                          prod.right.identity("*")) for i in range(3)])):
        core = [c for c in elements if core_membership(p, c).status == "in_core"]
        for c, d in itertools.product(core, repeat=2):
            assert core_membership(p, p.compose(c, d)).status == "in_core"


# -- fractions -------------------------------------------------------------------------


def test_fraction_arithmetic_in_n2():
    n2 = fix_n2()
    ore = OreGroup(n2)
    f1 = ore.fraction(n2.vector((2, 1)), n2.vector((1, 1)))
    f2 = ore.fraction(n2.vector((1, 0)), n2.vector((0, 0)))
    assert ore.equal(f1, f2)
    assert ore.is_identity(ore.fraction(n2.vector((1, 1)), n2.vector((1, 1))))
    prod = ore.mul(ore.fraction(n2.vector((1, 0)), n2.vector((0, 1))),
                   ore.fraction(n2.vector((0, 1)), n2.vector((1, 0))))
    assert ore.is_identity(prod)
    assert ore.equal(ore.inv(f1), ore.fraction(n2.vector((1, 1)), n2.vector((2, 1))))


def test_fraction_equality_is_congruence():
    n2 = fix_n2()
    ore = OreGroup(n2)
    vs = [n2.vector(v) for v in itertools.product(range(2), repeat=2)]
    fractions = [ore.fraction(a, b) for a in vs for b in vs]
    for f1, f2 in itertools.combinations(fractions, 2):
        if ore.equal(f1, f2):
            for g in fractions[:4]:
                assert ore.equal(ore.mul(f1, g), ore.mul(f2, g))
                assert ore.equal(ore.mul(g, f1), ore.mul(g, f2))


def test_fractions_reject_non_core():
    f2 = fix_free2()
    ore = OreGroup(f2)
    with pytest.raises(NotCore):
        ore.fraction(f2.word("a"), f2.identity("*"))


# -- the cocycle -------------------------------------------------------------------------


def test_kappa0_examples():
    n2 = fix_n2()
    hull = InverseHull(n2)
    ore = OreGroup(n2)
    s = hull.canonical([(n2.vector((2, 1)), n2.vector((1, 1)))])
    assert ore.equal(kappa0(hull, s, ore),
                     ore.fraction(n2.vector((1, 0)), n2.vector((0, 0))))
    unit = hull.idempotent([n2.identity()])
    assert ore.is_identity(kappa0(hull, unit, ore))


def test_kappa0_constant_on_germ_classes():
    n2 = fix_n2()
    hull = InverseHull(n2)
    ore = OreGroup(n2)
    s = hull.canonical([(n2.vector((1, 0)), n2.vector((0, 1)))])
    t = hull.canonical([(n2.vector((2, 1)), n2.vector((1, 2)))])  # restriction of s
    assert germ_equal_at_full_support(hull, s, t)
    assert ore.equal(kappa0(hull, s, ore), kappa0(hull, t, ore))


def test_kappa0_cocycle_identity_on_many_pairs():
    n2 = fix_n2()
    hull = InverseHull(n2)
    h = hull.generate(bound=3)
    ore = OreGroup(n2)
    ok, pairs = transformation_iso_check(n2, hull, h, ore)
    assert ok and pairs >= 100


def test_core_unitary_checks():
    n2 = fix_n2()
    hull = InverseHull(n2)
    h = hull.generate(bound=3)
    verdict = core_unitary_check(n2, n2.vector((1, 1)), hull, h)
    assert verdict.status == "certified" and verdict.branch == "no-zero"
    # planted LCM monoid with a zero and a nontrivial core element
    prod = DirectProduct(NkMonoid(1), FreeMonoid(("a", "b")))
    hp = InverseHull(prod)
    cp = hp.generate(bound=2)
    assert hp.contains_zero(cp)
    c = prod.pair(prod.left.vector((1,)), prod.right.identity("*"))
    verdict2 = core_unitary_check(prod, c, hp, cp)
    assert verdict2.branch == "cover"
    with pytest.raises(NotCore):
        bad = prod.pair(prod.left.vector((0,)), prod.right.word("a"))
        core_unitary_check(prod, bad, hp, cp)


# -- consolidated reports ------------------------------------------------------------------


def test_starling_report_n2_is_evidence_graded():
    entries = starling_report(fix_n2(), bound=3)
    assert [e.check for e in entries] == ["right-lcm", "core-elements",
                                          "fraction-germ-correspondence",
                                          "cocycle-kernel", "core-unitaries"]
    assert entries[0].status == "certified"
    assert all(e.status == "bounded-evidence" for e in entries[1:])


def test_starling_report_finite_group_exact():
    entries = starling_report(z2_monoid())
    assert all(e.status == "certified" for e in entries)


def test_starling_report_trivial_monoid():
    entries = starling_report(fix_trivial_monoid())
    assert all(e.status == "certified" for e in entries)


def test_starling_report_rejects_non_lcm():
    entries = starling_report(fix_flip_monoid(), bound=2)
    assert entries[0].status == "rejected" and entries[0].witness is not None
