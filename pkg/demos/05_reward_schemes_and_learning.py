"""The five reward schemes and the tabular learners.

Each scheme turns (MDP, labeling, formula) into a product with per-transition
rewards and discounts.  Solving the product exactly and reading the greedy
policy back recovers the optimal satisfaction probability; Q-learning gets
there from samples.
"""

from ltlrl import (
    SCHEMES, build_product, greedy_policy, optimal_value, policy_value,
    simple_pair, train, value_iteration,
)

pair = simple_pair(p=0.1)
f = pair.reach_formula
optimal = optimal_value(pair.m1, pair.labeling, f).value
print(f"objective {f}, p={pair.p}, optimal satisfaction probability {optimal:.6f}")

print("\n== product optimum read back through each scheme ==")
for scheme in SCHEMES:
    prod = build_product(scheme, pair.m1, pair.labeling, f)
    q = value_iteration(prod, tol=1e-10)
    pol = greedy_policy(prod, q)
    value = policy_value(pair.m1, pair.labeling, f, pol).value
    print(f"  {scheme:14s} product={prod.n_states} states  "
          f"read-back value={value:.9f}")

print("\n== Q-learning on the multi-discount product ==")
prod = build_product("multi-discount", pair.m1, pair.labeling, f)
print(f"{'samples':>8s} {'value (seed 0)':>15s} {'value (seed 1)':>15s}")
for budget in (0, 100, 1000, 10_000, 100_000):
    values = []
    for seed in (0, 1):
        pol = train("q", prod, budget=budget, seed=seed)
        values.append(policy_value(pair.m1, pair.labeling, f, pol).value)
    print(f"{budget:8d} {values[0]:15.6f} {values[1]:15.6f}")
print("\nuntrained ties mix uniformly (value 0.5); training commits to a1.")
