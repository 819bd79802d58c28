#!/usr/bin/env python3
"""Universal-group survey over a zoo of small finite groupoids.

Prints, for each groupoid: orbit structure, free-letter and isotropy data of the
universal group presentation, and the word-map sanity checks.
"""

from catenv.gpd import (cyclic_groupoid, disjoint_union, pair_groupoid,
                        transitive_groupoid)
from catenv.univgroup import j_map, universal_group


def zoo():
    out = [("pair(2)", pair_groupoid((1, 2))),
           ("pair(3)", pair_groupoid((1, 2, 3))),
           ("Z/3", cyclic_groupoid(3)),
           ("Z/4", cyclic_groupoid(4)),
           ("pair(2) ⊔ Z/2", disjoint_union(pair_groupoid((1, 2)),
                                            cyclic_groupoid(2)))]
    mul2 = {("0", "0"): "0", ("0", "1"): "1", ("1", "0"): "1", ("1", "1"): "0"}
    out.append(("transitive(2 units, Z/2 isotropy)",
                transitive_groupoid((1, 2), ["0", "1"], mul2, "0")))
    return out


def main():
    for name, g in zoo():
        od = universal_group(g)
        factors = []
        for u in od.representatives:
            factors.append(f"F({len(od.x_letters[u])}) ⍟ "
                           f"G[{len(od.isotropy[u])}]")
        kernel_ok = all(j_map(x, od).is_identity == g.is_unit(x)
                        for x in g.elements)
        images = [j_map(x, od).render() for x in g.elements if not g.is_unit(x)]
        injective = len(set(images)) == len(images)
        print(f"{name:38s} univ group { ' ⍟ '.join(factors):28s} "
              f"kernel=units:{kernel_ok}  injective-off-units:{injective}")


if __name__ == "__main__":
    main()
