"""Fixture file formats.

All files are UTF-8 and line oriented. `#` starts a comment. A line of the form
`key: value` is a scalar field; a line `key:` with no value opens a section that
collects the following non-header lines. Sections hold one record per line with
whitespace-separated fields.

Category files (.cat):
    class: graph_path | free_monoid | nk_monoid | kgraph | finite_table | groupoid_sub
    objects: <labels>                  (when the class has named objects)
    k: <int>                           (nk_monoid, kgraph)
    generators:                        graph_path:   name dom tgt
                                       free_monoid:  name
                                       kgraph:       name dom tgt color
                                       finite_table: name dom tgt
    table:                             finite_table: c d cd
    squares:                           kgraph: e f f2 e2   (meaning e·f = f2·e2,
                                       colors of e, e2 below those of f, f2)
    units: / arrows: / products: / chosen:   groupoid_sub ambient data

Groupoid files (.gpd):
    class: groupoid
    units: <labels>
    arrows:                            name source range
    products:                          g h gh     (unit products implied)

Graded-algebra files (.grad):
    class: graded_algebra
    group: cyclic <n>
    ambient: <matrix size>
    generators:                        <degree> i,j,re[,im];i,j,re[,im];...
"""

from __future__ import annotations

import numpy as np

from .categories import (FiniteTable, FreeMonoid, GraphPath, GroupoidSub,
                         KGraph, MalformedPresentation, NkMonoid)
from .coactions import FiniteGroup, GradedAlgebra
from .gpd import FiniteGroupoid


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _read_document(text: str):
    scalars: dict[str, str] = {}
    sections: dict[str, list[tuple[int, list[str]]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line and line.split(":", 1)[0].strip().isidentifier():
            key, value = (part.strip() for part in line.split(":", 1))
            if value:
                scalars[key] = value
                current = None
            else:
                current = key
                sections.setdefault(key, [])
            continue
        if current is None:
            raise ParseError(f"stray record {line!r} outside any section", lineno)
        sections[current].append((lineno, line.split()))
    return scalars, sections


def _require(scalars, key, lineno=None):
    if key not in scalars:
        raise ParseError(f"missing field {key!r}", lineno)
    return scalars[key]


def load_text(text: str):
    """Parse a fixture document; returns (kind, object)."""
    scalars, sections = _read_document(text)
    cls = _require(scalars, "class")
    try:
        if cls == "graph_path":
            return "category", GraphPath(
                objects=tuple(_require(scalars, "objects").split()),
                edges=[(r[0], r[1], r[2]) for _, r in sections.get("generators", [])])
        if cls == "free_monoid":
            letters = [r[0] for _, r in sections.get("generators", [])]
            if not letters:
                raise ParseError("free_monoid needs generators")
            return "category", FreeMonoid(tuple(letters))
        if cls == "nk_monoid":
            return "category", NkMonoid(int(_require(scalars, "k")))
        if cls == "kgraph":
            return "category", KGraph(
                objects=tuple(_require(scalars, "objects").split()),
                edges=[(r[0], r[1], r[2], int(r[3]))
                       for _, r in sections.get("generators", [])],
                squares=[tuple(r) for _, r in sections.get("squares", [])],
                k=int(scalars.get("k", "2")))
        if cls == "finite_table":
            return "category", FiniteTable(
                objects=tuple(_require(scalars, "objects").split()),
                element_endpoints={r[0]: (r[1], r[2])
                                   for _, r in sections.get("generators", [])},
                table={(r[0], r[1]): r[2] for _, r in sections.get("table", [])})
        if cls == "groupoid_sub":
            ambient = _groupoid_from_sections(scalars, sections)
            chosen = [r[0] for _, r in sections.get("chosen", [])]
            return "category", GroupoidSub(ambient, chosen)
        if cls == "groupoid":
            return "groupoid", _groupoid_from_sections(scalars, sections)
        if cls == "graded_algebra":
            return "graded", _graded_from_sections(scalars, sections)
    except (MalformedPresentation, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown class {cls!r}")


def _groupoid_from_sections(scalars, sections) -> FiniteGroupoid:
    units = _require(scalars, "units").split()
    arrows = {r[0]: (r[1], r[2]) for _, r in sections.get("arrows", [])}
    elements = list(units) + list(arrows)
    source = {u: u for u in units}
    range_ = {u: u for u in units}
    for name, (src, rng) in arrows.items():
        source[name] = src
        range_[name] = rng
    unit_set = set(units)
    product = {}
    for g in elements:
        for h in elements:
            if source[g] != range_[h]:
                continue
            if g in unit_set:
                product[(g, h)] = h
            elif h in unit_set:
                product[(g, h)] = g
    for lineno, row in sections.get("products", []):
        if len(row) != 3:
            raise ParseError("product rows are 'g h gh'", lineno)
        g, h, gh = row
        for x in (g, h, gh):
            if x not in source:
                raise ParseError(f"unknown element {x!r}", lineno)
        product[(g, h)] = gh
    return FiniteGroupoid(elements, source, range_, product, units=tuple(units))


def _graded_from_sections(scalars, sections):
    spec = _require(scalars, "group").split()
    if spec[0] == "cyclic":
        group = FiniteGroup.cyclic(int(spec[1]))

        def parse_degree(tok):
            return int(tok) % len(group)
    else:
        raise ParseError(f"unsupported group spec {' '.join(spec)!r}")
    dim = int(_require(scalars, "ambient"))
    components: dict = {}
    for lineno, row in sections.get("generators", []):
        if len(row) != 2:
            raise ParseError("generator rows are '<degree> <entries>'", lineno)
        degree = parse_degree(row[0])
        mat = np.zeros((dim, dim), dtype=complex)
        for chunk in row[1].split(";"):
            parts = chunk.split(",")
            if len(parts) not in (3, 4):
                raise ParseError(f"bad entry {chunk!r}", lineno)
            i, j = int(parts[0]), int(parts[1])
            re, im = float(parts[2]), float(parts[3]) if len(parts) == 4 else 0.0
            mat[i, j] = re + 1j * im
        components.setdefault(degree, []).append(mat)
    return group, GradedAlgebra(group, components)


def load_path(path):
    with open(path, encoding="utf-8") as fh:
        return load_text(fh.read())
