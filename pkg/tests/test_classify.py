import pytest

from conftest import AB, formula_corpus

from ltlrl.automata import classify
from ltlrl.formulas import parse


HIERARCHY_TABLE = [
    # formula, guarantee, safety, finitary, horizon
    ("a & X a", True, True, True, 2),
    ("F a", True, False, False, None),
    ("G a", False, True, False, None),
    ("G F a", False, False, False, None),
    ("F G a", False, False, False, None),
    ("true", True, True, True, 0),
    ("false", True, True, True, 0),
    ("a", True, True, True, 1),
    ("X X b", True, True, True, 3),
    ("a U b", True, False, False, None),
    ("G (a -> F b)", False, False, False, None),
    ("G a | F b", False, False, False, None),
]


@pytest.mark.parametrize("text,guarantee,safety,finitary,horizon", HIERARCHY_TABLE)
def test_hierarchy_table(text, guarantee, safety, finitary, horizon):
    report = classify(parse(text, AB))
    assert report.in_guarantee == guarantee
    assert report.in_safety == safety
    assert report.in_finitary == finitary
    assert report.horizon == horizon


def test_finitary_is_the_intersection():
    for f in formula_corpus(extra=40):
        report = classify(f)
        assert report.in_finitary == (report.in_guarantee and report.in_safety)
        assert (report.horizon is not None) == report.in_finitary


def test_horizon_monotone_in_next_depth():
    assert classify(parse("X a", AB)).horizon == 2
    assert classify(parse("X X X a", AB)).horizon == 4
