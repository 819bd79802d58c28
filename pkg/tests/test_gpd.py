"""Finite groupoid axioms and constructors."""

import pytest

from catenv.gpd import (FiniteGroupoid, GroupoidError, cyclic_groupoid,
                        disjoint_union, pair_groupoid, transitive_groupoid)


def test_pair_groupoid_axioms():
    g = pair_groupoid((1, 2, 3))
    assert len(g) == 9 and len(g.units) == 3
    assert g.inv((1, 2)) == (2, 1)
    assert g.mul((1, 2), (2, 3)) == (1, 3)
    assert g.orbits() == [((1, 1), (2, 2), (3, 3))]
    assert g.is_principal()


def test_cyclic_groupoid():
    g = cyclic_groupoid(3)
    assert len(g.units) == 1
    assert g.mul("z1", "z2") == "z0"
    assert not g.is_principal()
    assert g.isotropy("z0") == ["z0", "z1", "z2"]


def test_disjoint_union_orbits():
    g = disjoint_union(pair_groupoid((1, 2)), cyclic_groupoid(2))
    assert len(g.orbits()) == 2
    assert len(g) == 6


def test_transitive_groupoid_isotropy():
    mul = {("0", "0"): "0", ("0", "1"): "1", ("1", "0"): "1", ("1", "1"): "0"}
    g = transitive_groupoid((1, 2), ["0", "1"], mul, "0")
    assert len(g) == 8 and len(g.units) == 2
    assert len(g.isotropy(g.units[0])) == 2
    assert not g.is_principal()


def test_broken_product_table_rejected():
    with pytest.raises(GroupoidError):
        FiniteGroupoid(elements=["u", "g"],
                       source={"u": "u", "g": "u"},
                       range_={"u": "u", "g": "u"},
                       product={("u", "u"): "u", ("u", "g"): "g",
                                ("g", "u"): "g"})  # missing ("g", "g")
