import pytest

from conftest import AB

from ltlrl.automata import evaluate_lasso
from ltlrl.exceptions import FinitaryFormulaError, InvalidWitnessError
from ltlrl.formulas import LassoWord, parse
from ltlrl.witness import (
    UNCOMMITTABLE_ACCEPTING, UNCOMMITTABLE_REJECTING, Witness, check_witness,
    find_uncommittable,
)

NON_FINITARY = ["G a", "F a", "G F a", "F G a", "a U b", "G (a -> F b)"]


def assert_uncommittable(wit, f, repeats=6):
    want = wit.kind == UNCOMMITTABLE_ACCEPTING
    assert evaluate_lasso(f, LassoWord(wit.w_a, wit.w_b)) == want
    for i in range(repeats):
        flipped = LassoWord(wit.w_a + wit.w_b * i + wit.w_c, wit.w_d)
        assert evaluate_lasso(f, flipped) != want, f"{f} failed at i={i}"


@pytest.mark.parametrize("text", NON_FINITARY)
def test_witness_satisfies_definition(text):
    f = parse(text, AB)
    wit = find_uncommittable(f)
    assert len(wit.w_b) >= 1 and len(wit.w_d) >= 1
    assert_uncommittable(wit, f)


def test_kind_matches_class():
    # outside guarantee -> accepting witness; guarantee minus safety -> rejecting
    assert find_uncommittable(parse("G a", AB)).kind == UNCOMMITTABLE_ACCEPTING
    assert find_uncommittable(parse("G F a", AB)).kind == UNCOMMITTABLE_ACCEPTING
    assert find_uncommittable(parse("F a", AB)).kind == UNCOMMITTABLE_REJECTING
    assert find_uncommittable(parse("a U b", AB)).kind == UNCOMMITTABLE_REJECTING


def test_finitary_formula_rejected():
    with pytest.raises(FinitaryFormulaError):
        find_uncommittable(parse("a & X a", AB))


def test_deterministic():
    f = parse("G (a -> F b)", AB)
    assert find_uncommittable(f) == find_uncommittable(f)


def test_empty_cycle_invalid():
    with pytest.raises(InvalidWitnessError):
        Witness(UNCOMMITTABLE_ACCEPTING, (), (), (frozenset(),), (frozenset(),))


def test_check_rejects_bogus_witness():
    f = parse("G a", AB)
    bogus = Witness(UNCOMMITTABLE_ACCEPTING,
                    (), (frozenset(),), (), (frozenset({"a"}),))
    with pytest.raises(InvalidWitnessError):
        check_witness(bogus, f)
