import json

import numpy as np
import pytest

from conftest import random_mdp

from ltlrl.exceptions import AlphabetMismatchError, UnknownStateOrActionError
from ltlrl.family import simple_pair
from ltlrl.mdp import (
    MemoryTransducer, induce_dtmc, load_model, load_policy, make_labeling,
    make_mdp, memoryless, model_from_dict, sample_step, save_model,
    save_policy, simulate_episode, uniform_policy,
)


def tiny_chain():
    rows = {("s0", "go"): [("s1", 1.0)], ("s1", "go"): [("s1", 1.0)]}
    return make_mdp(("s0", "s1"), ("go",), rows, "s0")


class TestValidation:
    def test_row_must_sum_to_one(self):
        rows = {("s0", "go"): [("s0", 0.5)]}
        with pytest.raises(ValueError):
            make_mdp(("s0",), ("go",), rows, "s0")

    def test_negative_probability(self):
        rows = {("s0", "go"): [("s0", 1.5), ("s0", -0.5)]}
        with pytest.raises(ValueError):
            make_mdp(("s0",), ("go",), rows, "s0")

    def test_missing_row(self):
        rows = {("s0", "go"): [("s0", 1.0)]}
        with pytest.raises(ValueError):
            make_mdp(("s0", "s1"), ("go",), rows, "s0")


class TestSampleStep:
    def test_deterministic_edge_ignores_rng(self):
        mdp = tiny_chain()
        for seed in range(5):
            rng = np.random.default_rng(seed)
            assert sample_step(mdp, 0, 0, rng) == 1

    def test_unknown_action(self):
        with pytest.raises(UnknownStateOrActionError):
            sample_step(tiny_chain(), 0, 3, np.random.default_rng(0))

    def test_jump_frequency_matches_p(self):
        pair = simple_pair(0.1)
        rng = np.random.default_rng(7)
        n = 100_000
        hits = sum(sample_step(pair.m1, 0, 0, rng) == 1 for _ in range(n))
        sigma = (0.1 * 0.9 / n) ** 0.5
        assert abs(hits / n - 0.1) <= 3 * sigma


class TestInduceDtmc:
    def test_product_size_and_rows(self):
        pair = simple_pair(0.3)
        pol = uniform_policy(pair.m1, pair.labeling.alphabet)
        chain = induce_dtmc(pair.m1, pol, pair.labeling)
        assert chain.n_states == pair.m1.n_states * pol.memory.n_states
        for row in chain.rows.values():
            assert abs(sum(p for _, p in row) - 1.0) <= 1e-12

    def test_deterministic_policy_single_path(self):
        mdp = tiny_chain()
        lab = make_labeling(mdp, ("x",), {})
        pol = memoryless(mdp, ("x",), {0: 0, 1: 0})
        chain = induce_dtmc(mdp, pol, lab)
        assert chain.rows[chain.initial] == ((1, 1.0),)

    def test_alphabet_mismatch(self):
        mdp = tiny_chain()
        lab = make_labeling(mdp, ("x",), {})
        pol = memoryless(mdp, ("y",), {0: 0, 1: 0})
        with pytest.raises(AlphabetMismatchError):
            induce_dtmc(mdp, pol, lab)


class TestSimulate:
    def test_zero_steps(self):
        mdp = tiny_chain()
        lab = make_labeling(mdp, ("x",), {})
        pol = memoryless(mdp, ("x",), {0: 0, 1: 0})
        assert simulate_episode(mdp, pol, lab, 0, np.random.default_rng(0)) == []

    def test_deterministic_chain_trace(self):
        mdp = tiny_chain()
        lab = make_labeling(mdp, ("x",), {})
        pol = memoryless(mdp, ("x",), {0: 0, 1: 0})
        trace = simulate_episode(mdp, pol, lab, 3, np.random.default_rng(0))
        assert [(t.state, t.next_state) for t in trace] == [(0, 1), (1, 1), (1, 1)]

    def test_same_seed_same_trace(self):
        rng = np.random.default_rng(123)
        mdp = random_mdp(rng)
        lab = make_labeling(mdp, ("x",), {"s0": ["x"]})
        pol = uniform_policy(mdp, ("x",))
        t1 = simulate_episode(mdp, pol, lab, 50, np.random.default_rng(9))
        t2 = simulate_episode(mdp, pol, lab, 50, np.random.default_rng(9))
        assert t1 == t2


class TestModelFiles:
    def test_round_trip(self, tmp_path):
        pair = simple_pair(0.25)
        path = tmp_path / "m1.json"
        save_model(path, pair.m1, pair.labeling)
        mdp, labeling = load_model(path)
        assert mdp == pair.m1
        assert labeling == pair.labeling

    def test_loader_renormalizes_small_drift(self):
        doc = {
            "states": ["s0"], "actions": ["go"], "initial": "s0",
            "transitions": [
                {"src": "s0", "action": "go", "dst": "s0", "prob": 0.3},
                {"src": "s0", "action": "go", "dst": "s0", "prob": 0.7 + 4e-10},
            ],
        }
        mdp, _ = model_from_dict(doc)
        assert abs(sum(p for _, p in mdp.transitions[(0, 0)]) - 1.0) <= 1e-12

    def test_loader_rejects_large_drift(self):
        doc = {
            "states": ["s0"], "actions": ["go"], "initial": "s0",
            "transitions": [{"src": "s0", "action": "go", "dst": "s0", "prob": 0.9}],
        }
        with pytest.raises(ValueError):
            model_from_dict(doc)

    def test_probabilities_survive_json_exactly(self, tmp_path):
        p = 0.1  # decimal literal that is not exactly representable
        pair = simple_pair(p)
        path = tmp_path / "m.json"
        save_model(path, pair.m1, pair.labeling)
        raw = json.loads(path.read_text())
        probs = {t["prob"] for t in raw["transitions"] if t["src"] == "g"}
        assert p in probs
        mdp, _ = load_model(path)
        assert mdp.transitions[(0, 0)] == pair.m1.transitions[(0, 0)]


class TestPolicyFiles:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(11)
        mdp = random_mdp(rng, 3, 2)
        letters = (frozenset(), frozenset({"x"}))
        update = {(m, l): (m + 1) % 2 for m in range(2) for l in letters}
        memory = MemoryTransducer(2, ("x",), update, 0)
        decision = {(s, m): ((0, 0.25), (1, 0.75))
                    for s in range(3) for m in range(2)}
        from ltlrl.mdp import FiniteMemoryPolicy
        pol = FiniteMemoryPolicy(memory, decision)
        path = tmp_path / "pol.json"
        save_policy(path, mdp, pol)
        back = load_policy(path, mdp)
        assert back == pol
