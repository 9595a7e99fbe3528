"""Formulas, lasso words, and the automaton pipeline.

Parse a few formulas, evaluate them on ultimately periodic words, and look at
where each formula sits in the temporal hierarchy.
"""

from ltlrl import (
    build_dfa_finitary, classify, dra_for, dump_dfa, evaluate_lasso, lasso,
    nba_for, parse, to_nnf,
)

AB = ("a", "b")

print("== parsing and normal forms ==")
f = parse("!(a U b)", AB)
print(f"formula:  {f}")
print(f"NNF:      {to_nnf(f)}")

print("\n== evaluating lasso words ==")
talks = [
    ("G a", [], [{"a"}]),
    ("G a", [], [{"a"}, {}]),
    ("G F a", [], [{}, {"a"}]),
    ("F G a", [{"a"}], [{}, {"a"}]),
    ("a U b", [{"a"}, {"a"}], [{"b"}]),
]
for text, prefix, cycle in talks:
    w = lasso(prefix, cycle)
    verdict = evaluate_lasso(parse(text, AB), w)
    print(f"{text:8s} on {prefix}({cycle})^w  ->  {verdict}")

print("\n== the bottom of the temporal hierarchy ==")
print(f"{'formula':14s} {'guarantee':9s} {'safety':7s} {'finitary':8s} horizon")
for text in ("a & X a", "F a", "G a", "G F a", "F G a", "X X b", "true"):
    r = classify(parse(text, AB))
    print(f"{text:14s} {str(r.in_guarantee):9s} {str(r.in_safety):7s} "
          f"{str(r.in_finitary):8s} {r.horizon}")

print("\n== automaton sizes ==")
for text in ("F a", "G a", "G F a", "G (a -> F b)"):
    f = parse(text, AB)
    print(f"{text:14s} NBA states={nba_for(f).n_states:2d}  "
          f"DRA states={dra_for(f).n_states:2d}  rabin pairs={len(dra_for(f).pairs)}")

print("\n== the decision DFA of a finite-horizon formula ==")
dfa, horizon = build_dfa_finitary(parse("a & X a", ("a",)))
print(f"horizon = {horizon}")
print(dump_dfa(dfa))
