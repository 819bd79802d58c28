"""The fixture file grammar."""

import os

import pytest

from catenv.parsing import ParseError, load_path, load_text
from catenv.pipeline import analyze_category

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def test_shipped_corpus_loads():
    kinds = {}
    for name in os.listdir(FIXTURES):
        kind, obj = load_path(os.path.join(FIXTURES, name))
        kinds[name] = kind
    assert kinds == {"edge.cat": "category", "two.cat": "category",
                     "free2.cat": "category", "n2.cat": "category",
                     "kgraph-acyclic.cat": "category",
                     "pairgpd.gpd": "groupoid",
                     "t2.grad": "graded", "t3.grad": "graded"}


def test_finite_table_document():
    doc = """class: finite_table
objects: u v w
generators:
p v u
q v u
x w v
y w v
m1 w u
m2 w u
table:
p x m1
p y m2
q x m2
q y m1
"""
    kind, pres = load_text(doc)
    assert kind == "category"
    rep = pres.validate()
    assert rep.ok and rep.cancellative and rep.mode == "exhaustive"


def test_groupoid_sub_document():
    doc = """class: groupoid_sub
units: 1 2
arrows:
a12 1 2
a21 2 1
products:
a12 a21 2
a21 a12 1
chosen:
1
2
a21
"""
    kind, pres = load_text(doc)
    assert kind == "category"
    assert analyze_category(pres).exit_code == 0


def test_comments_and_blank_lines_ignored():
    doc = """# header comment
class: free_monoid   # trailing comment

generators:
a
# interleaved comment
b
"""
    kind, pres = load_text(doc)
    assert pres.letters == ("a", "b")


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        load_text("class: groupoid\nunits: 1\nproducts:\nbad row here extra\n")
    assert "line 4" in str(err.value)
    with pytest.raises(ParseError):
        load_text("objects: v\n")  # missing class
    with pytest.raises(ParseError):
        load_text("class: mystery\n")


def test_stray_record_rejected():
    with pytest.raises(ParseError) as err:
        load_text("class: free_monoid\nstray record\n")
    assert "line 2" in str(err.value)


def test_graded_entries_with_imaginary_parts():
    doc = """class: graded_algebra
group: cyclic 2
ambient: 2
generators:
0 0,0,1;1,1,1
1 0,1,0,1
"""
    kind, (group, graded) = load_text(doc)
    assert kind == "graded"
    assert graded.components[1][0][0, 1] == 1j
