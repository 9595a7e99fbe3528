"""Uncommittable words: accepted lassos whose verdict a continuation can flip.

Every formula outside the finite-horizon class has one; the witness extractor
reads the four words off the formula's Rabin automaton and re-verifies the
defining property by exact evaluation.
"""

from ltlrl import LassoWord, evaluate_lasso, find_uncommittable, parse
from ltlrl.exceptions import FinitaryFormulaError

AB = ("a", "b")


def show(word):
    return "[" + " ".join("{" + ",".join(sorted(l)) + "}" for l in word) + "]"


for text in ("G a", "F a", "G F a", "a U b", "G (a -> F b)", "a & X a"):
    f = parse(text, AB)
    print(f"\n{text}")
    try:
        wit = find_uncommittable(f)
    except FinitaryFormulaError:
        print("  finite-horizon formula: every verdict commits, no witness exists")
        continue
    print(f"  kind: {wit.kind}")
    print(f"  w_a={show(wit.w_a)} w_b={show(wit.w_b)} w_c={show(wit.w_c)} w_d={show(wit.w_d)}")
    committed = evaluate_lasso(f, LassoWord(wit.w_a, wit.w_b))
    print(f"  verdict of w_a (w_b)^w: {committed}")
    for i in range(3):
        flipped = LassoWord(wit.w_a + wit.w_b * i + wit.w_c, wit.w_d)
        print(f"  verdict after {i} extra cycles + w_c (w_d)^w: "
              f"{evaluate_lasso(f, flipped)}")
