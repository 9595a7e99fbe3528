"""Exact satisfaction probabilities on the two-MDP benchmark pair.

The pair shares one state space; whatever M1 rewards under a1, M2 rewards
under a2.  Any single policy therefore splits one unit of satisfaction
probability between the two MDPs, which the checker reproduces to solver
precision.
"""

import numpy as np

from ltlrl import memoryless, optimal_value, policy_value, simple_pair, uniform_policy

pair = simple_pair(p=0.1)
f = pair.reach_formula
print(f"objective: {f} on the 3-state pair, p = {pair.p}")

always_a1 = memoryless(pair.m1, ("h",), {s: 0 for s in range(3)})
always_a2 = memoryless(pair.m1, ("h",), {s: 1 for s in range(3)})
coin = uniform_policy(pair.m1, ("h",))

print("\npolicy values (exact, linear solve):")
for name, pol in (("always a1", always_a1), ("always a2", always_a2),
                  ("uniform", coin)):
    v1 = policy_value(pair.m1, pair.labeling, f, pol).value
    v2 = policy_value(pair.m2, pair.labeling, f, pol).value
    print(f"  {name:9s}  V(M1)={v1:.12f}  V(M2)={v2:.12f}  sum={v1 + v2:.12f}")

print("\noptimal values and certified policies:")
for name, mdp in (("M1", pair.m1), ("M2", pair.m2)):
    res = optimal_value(mdp, pair.labeling, f)
    action = res.policy.decision[(0, res.policy.memory.initial)]
    print(f"  {name}: optimal={res.value:.12f}, decision at g: {action}")

print("\nsum-to-one over 5 random memoryless policies:")
rng = np.random.default_rng(0)
for i in range(5):
    probs = rng.dirichlet(np.ones(2), size=3)
    pol = memoryless(pair.m1, ("h",), {s: {0: probs[s][0], 1: probs[s][1]}
                                       for s in range(3)})
    v1 = policy_value(pair.m1, pair.labeling, f, pol).value
    v2 = policy_value(pair.m2, pair.labeling, f, pol).value
    print(f"  policy {i}: {v1:.6f} + {v2:.6f} = {v1 + v2:.12f}")
