"""PAC learning a finite-horizon objective from a generative model.

Formulas decidable within a bounded prefix compile to an acyclic DFA; the
learner samples every (product state, action) a fixed number of times per
horizon step, plans on the empirical model, and certifies its sample budget.
"""

import numpy as np

from ltlrl import learn_finitary, make_labeling, make_mdp, optimal_value, parse, policy_value

rng = np.random.default_rng(12)

states = tuple(f"s{i}" for i in range(5))
actions = ("left", "right")
rows = {}
for s in states:
    for a in actions:
        probs = rng.dirichlet(np.ones(5))
        rows[(s, a)] = [(states[t], float(probs[t])) for t in range(5)]
mdp = make_mdp(states, actions, rows, "s0")
labeling = make_labeling(mdp, ("a", "b"),
                         {"s0": ["a"], "s2": ["a", "b"], "s4": ["b"]})

f = parse("a & X X b", ("a", "b"))
print(f"objective: {f}  (decidable from a 3-letter prefix)")

opt = optimal_value(mdp, labeling, f).value
print(f"optimal satisfaction probability: {opt:.6f}")

for epsilon in (0.3, 0.1, 0.05):
    policy, cert = learn_finitary(mdp, labeling, f, epsilon, 0.1, seed=7)
    value = policy_value(mdp, labeling, f, policy).value
    print(f"\nepsilon={epsilon}: learned value {value:.6f} "
          f"(gap {opt - value:.2e})")
    print(f"  horizon H={cert.horizon}, {cert.per_sa_samples} samples per "
          f"(state, action, step), {cert.samples_used} total")
