import numpy as np
import pytest

from conftest import AB, random_labeling, random_mdp, random_policy

from ltlrl.automata import dra_for
from ltlrl.family import instantiate_from_witness, simple_pair
from ltlrl.formulas import parse
from ltlrl.mdp import memoryless, uniform_policy
from ltlrl.probcheck import optimal_value, policy_value
from ltlrl.witness import find_uncommittable


class TestPolicyValue:
    def test_always_a1_reaches_h(self):
        pair = simple_pair(0.1)
        pol = memoryless(pair.m1, ("h",), {s: 0 for s in range(3)})
        v = policy_value(pair.m1, pair.labeling, pair.reach_formula, pol).value
        assert abs(v - 1.0) <= 1e-12

    def test_uniform_is_a_coin_flip(self):
        pair = simple_pair(0.1)
        pol = uniform_policy(pair.m1, ("h",))
        v = policy_value(pair.m1, pair.labeling, pair.reach_formula, pol).value
        assert abs(v - 0.5) <= 1e-12

    def test_false_formula_has_value_zero(self):
        pair = simple_pair(0.5)
        f = parse("false", ("h",))
        for pol in (uniform_policy(pair.m1, ("h",)),
                    memoryless(pair.m1, ("h",), {s: 1 for s in range(3)})):
            assert policy_value(pair.m1, pair.labeling, f, pol).value == 0.0


class TestOptimalValue:
    @pytest.mark.parametrize("p", [0.5, 0.1, 1e-3])
    def test_simple_pair_anchor(self, p):
        pair = simple_pair(p)
        res = optimal_value(pair.m1, pair.labeling, pair.reach_formula)
        assert abs(res.value - 1.0) <= 1e-10
        assert res.policy.decision[(0, res.policy.memory.initial)] == ((0, 1.0),)

    def test_true_formula(self):
        pair = simple_pair(0.5)
        res = optimal_value(pair.m1, pair.labeling, parse("true", ("h",)))
        assert res.value == 1.0

    def test_certified_consistency_random_models(self):
        rng = np.random.default_rng(31)
        f = parse("G F a | F (a & b)", AB)
        for _ in range(5):
            mdp = random_mdp(rng, 4, 2)
            lab = random_labeling(rng, mdp, AB)
            res = optimal_value(mdp, lab, f)
            check = policy_value(mdp, lab, f, res.policy).value
            assert abs(check - res.value) <= 1e-8

    def test_dominates_every_policy(self):
        rng = np.random.default_rng(17)
        f = parse("F (a & X b)", AB)
        for _ in range(4):
            mdp = random_mdp(rng, 4, 2)
            lab = random_labeling(rng, mdp, AB)
            opt = optimal_value(mdp, lab, f).value
            for _ in range(10):
                pol = random_policy(rng, mdp, AB, n_memory=2)
                assert policy_value(mdp, lab, f, pol).value <= opt + 1e-9


class TestSumToOne:
    @pytest.mark.parametrize("text", ["G a", "F a"])
    def test_witness_pairs(self, text):
        f = parse(text, ("a",))
        wit = find_uncommittable(f)
        rng = np.random.default_rng(101)
        for p in (0.5, 0.1):
            pair = instantiate_from_witness(wit, f, p)
            for _ in range(20):
                pol = random_policy(rng, pair.m1, ("a",), n_memory=2)
                v1 = policy_value(pair.m1, pair.labeling, f, pol).value
                v2 = policy_value(pair.m2, pair.labeling, f, pol).value
                assert abs(v1 + v2 - 1.0) <= 1e-9


class TestMonteCarloAgreement:
    def test_simulated_frequency_matches_exact_value(self):
        # episodes long enough that the product chain settles in a BSCC
        f = parse("F a", ("a",))
        dra = dra_for(f)
        rng = np.random.default_rng(4)
        for trial in range(10):
            mdp = random_mdp(rng, 4, 2)
            lab = random_labeling(rng, mdp, ("a",))
            pol = random_policy(rng, mdp, ("a",), n_memory=1)
            exact = policy_value(mdp, lab, f, pol).value

            episodes, horizon = 10_000, 200
            sim_rng = np.random.default_rng(1000 + trial)
            # vectorized product-chain rollout
            from ltlrl.mdp import induce_dtmc
            chain = induce_dtmc(mdp, pol, lab)
            n_mem = pol.memory.n_states
            n = chain.n_states * dra.n_states
            matrix = np.zeros((n, n))
            for c in range(chain.n_states):
                q_next = {q: dra.step(q, lab.of(c // n_mem)) for q in range(dra.n_states)}
                for t, p in chain.rows[c]:
                    for q in range(dra.n_states):
                        matrix[c * dra.n_states + q, t * dra.n_states + q_next[q]] += p
            cum = np.cumsum(matrix, axis=1)
            state = np.full(episodes, chain.initial * dra.n_states + dra.initial)
            for _ in range(horizon):
                draws = sim_rng.random(episodes)
                new_state = np.empty_like(state)
                for s in np.unique(state):
                    mask = state == s
                    new_state[mask] = np.searchsorted(cum[s], draws[mask], side="right")
                state = new_state
            # formula verdict after settling: DRA component in the good set
            bad, good = dra.pairs[0]
            accepted = np.isin(state % dra.n_states, list(good)).mean()
            spread = min(max(exact, 0.0), 1.0)
            sigma = max((spread * (1 - spread) / episodes) ** 0.5, 1e-4)
            assert abs(accepted - exact) <= 3 * sigma, f"trial {trial}"
