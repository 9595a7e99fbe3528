import numpy as np
import pytest

from ltlrl.automata import dra_for
from ltlrl.exceptions import MultiplePairsUnsupportedError
from ltlrl.family import simple_pair
from ltlrl.formulas import parse
from ltlrl.probcheck import optimal_value, policy_value
from ltlrl.schemes import (
    MULTI_DISCOUNT, REWARD_ON_ACC, SCHEMES, ZETA_ACC, ZETA_REACH,
    SchemeParams, build_product, greedy_policy, product_to_dict,
    value_iteration,
)


@pytest.fixture(scope="module")
def pair():
    return simple_pair(0.1)


class TestBuildProduct:
    def test_reachable_product_size(self, pair):
        prod = build_product(MULTI_DISCOUNT, pair.m1, pair.labeling, pair.reach_formula)
        assert prod.n_states == 6
        assert prod.back_map[prod.initial] == (pair.m1.initial, prod.dra.initial)

    def test_multi_discount_annotations(self, pair):
        params = SchemeParams()
        prod = build_product(MULTI_DISCOUNT, pair.m1, pair.labeling, pair.reach_formula, params)
        rewards = set()
        for row in prod.transitions.values():
            for _, _, r, d in row:
                rewards.add(r)
                assert d in (params.gamma, params.gamma_b)
                assert (r > 0) == (d == params.gamma_b)
        assert rewards == {0.0, 1.0 - params.gamma_b}

    def test_zeta_reach_adds_one_sink(self, pair):
        prod = build_product(ZETA_REACH, pair.m1, pair.labeling, pair.reach_formula)
        sinks = [i for i, b in enumerate(prod.back_map) if b is None]
        assert len(sinks) == 1
        sink = sinks[0]
        rewards = {r for row in prod.transitions.values() for _, _, r, _ in row}
        assert rewards == {0.0, 1.0}
        for (s, a), row in prod.transitions.items():
            for t, _, r, d in row:
                assert d == 1.0
                assert (r == 1.0) == (t == sink and s != sink)

    def test_reward_on_acc_matches_predicate(self, pair):
        # independent accepting-transition predicate from the DRA itself
        prod = build_product(REWARD_ON_ACC, pair.m1, pair.labeling, pair.reach_formula)
        dra = dra_for(pair.reach_formula)
        bad, good = dra.pairs[0]
        for (s, _), row in prod.transitions.items():
            env, q = prod.back_map[s]
            q2 = dra.step(q, pair.labeling.of(env))
            accepting = q2 in good and q2 not in bad
            for _, _, r, _ in row:
                assert r == (1.0 if accepting else 0.0)

    def test_rows_remain_normalized(self, pair):
        for scheme in SCHEMES:
            prod = build_product(scheme, pair.m1, pair.labeling, pair.reach_formula)
            for row in prod.transitions.values():
                assert abs(sum(p for _, p, _, _ in row) - 1.0) <= 1e-12

    def test_multiple_pairs_rejected(self):
        f = parse("a U b", ("a", "b"))
        assert len(dra_for(f).pairs) > 1
        pair = simple_pair(0.5)
        from ltlrl.mdp import make_labeling
        lab = make_labeling(pair.m1, ("a", "b"), {"h": ["a"], "q": ["b"]})
        with pytest.raises(MultiplePairsUnsupportedError):
            build_product(MULTI_DISCOUNT, pair.m1, lab, f)

    def test_param_validation(self):
        with pytest.raises(ValueError):
            SchemeParams(gamma=1.0)
        with pytest.raises(ValueError):
            SchemeParams(gamma=0.99, gamma_b=0.9)
        with pytest.raises(ValueError):
            SchemeParams(zeta=0.0)


class TestReadBack:
    @pytest.mark.parametrize("scheme", SCHEMES)
    @pytest.mark.parametrize("p", [0.5, 0.1])
    def test_product_optimum_reads_back_to_optimal_policy(self, scheme, p):
        pair = simple_pair(p)
        prod = build_product(scheme, pair.m1, pair.labeling, pair.reach_formula)
        q = value_iteration(prod, tol=1e-10)
        pol = greedy_policy(prod, q)
        value = policy_value(pair.m1, pair.labeling, pair.reach_formula, pol).value
        optimal = optimal_value(pair.m1, pair.labeling, pair.reach_formula).value
        assert abs(value - optimal) <= 1e-6, scheme

    def test_all_zero_table_mixes_uniformly(self, pair):
        prod = build_product(MULTI_DISCOUNT, pair.m1, pair.labeling, pair.reach_formula)
        pol = greedy_policy(prod, np.zeros((prod.n_states, prod.n_actions)))
        assert pol.decision[(0, 0)] == ((0, 0.5), (1, 0.5))


class TestSerialization:
    def test_product_document(self, pair):
        prod = build_product(ZETA_ACC, pair.m1, pair.labeling, pair.reach_formula)
        doc = product_to_dict(prod)
        assert doc["scheme"] == ZETA_ACC
        assert {"src", "action", "dst", "prob", "reward", "discount"} <= set(doc["transitions"][0])
        total = sum(t["prob"] for t in doc["transitions"]
                    if t["src"] == doc["initial"] and t["action"] == "a1")
        assert abs(total - 1.0) <= 1e-12
