import itertools

import numpy as np
import pytest

from ltlrl.formulas import (
    And, Atom, Eventually, Always, LassoWord, Next, Not, Or, Until,
    all_letters, parse,
)
from ltlrl.mdp import FiniteMemoryPolicy, Mdp, MemoryTransducer, make_labeling, make_mdp

AB = ("a", "b")


def small_lassos(alphabet=AB, max_prefix=1, max_cycle=2):
    """Every lasso with bounded prefix/cycle over the alphabet's letters."""
    letters = all_letters(tuple(alphabet))
    out = []
    for lu in range(max_prefix + 1):
        for lv in range(1, max_cycle + 1):
            for u in itertools.product(letters, repeat=lu):
                for v in itertools.product(letters, repeat=lv):
                    out.append(LassoWord(u, v))
    return out


def random_lassos(rng, count, alphabet=AB, max_prefix=4, max_cycle=4):
    letters = all_letters(tuple(alphabet))
    out = []
    for _ in range(count):
        lu = int(rng.integers(0, max_prefix + 1))
        lv = int(rng.integers(1, max_cycle + 1))
        u = tuple(letters[int(i)] for i in rng.integers(0, len(letters), lu))
        v = tuple(letters[int(i)] for i in rng.integers(0, len(letters), lv))
        out.append(LassoWord(u, v))
    return out


def random_formula_node(rng, depth):
    """Seeded random formula tree of operator depth at most `depth`."""
    leaves = [Atom("a"), Atom("b")]
    if depth == 0:
        return leaves[int(rng.integers(0, 2))]
    op = int(rng.integers(0, 8))
    if op == 0:
        return leaves[int(rng.integers(0, 2))]
    if op == 1:
        return Not(random_formula_node(rng, depth - 1))
    if op == 2:
        return Next(random_formula_node(rng, depth - 1))
    if op == 3:
        return Eventually(random_formula_node(rng, depth - 1))
    if op == 4:
        return Always(random_formula_node(rng, depth - 1))
    if op == 5:
        return And(random_formula_node(rng, depth - 1), random_formula_node(rng, depth - 1))
    if op == 6:
        return Or(random_formula_node(rng, depth - 1), random_formula_node(rng, depth - 1))
    return Until(random_formula_node(rng, depth - 1), random_formula_node(rng, depth - 1))


CURATED_FORMULAS = [
    "true", "false", "a", "!a", "a & b", "a | b", "X a", "X X b", "F a",
    "G a", "a U b", "G F a", "F G a", "a & X a", "a & X X b",
    "G (a -> F b)", "F (a & X b)", "G a | F b", "F a & G b", "!(a U b)",
    "a <-> b", "G !a", "a U (b U a)", "G (a | b)", "F (a & b)",
    "X (a U b)", "a U (a & b)", "!(F a) | G b", "F X a", "G X b",
]


def formula_corpus(seed=2024, extra=80, depth=3):
    """Curated formulas plus seeded random depth-bounded ones."""
    rng = np.random.default_rng(seed)
    seen = {}
    out = []
    for text in CURATED_FORMULAS:
        f = parse(text, AB)
        if f.root not in seen:
            seen[f.root] = None
            out.append(f)
    from ltlrl.formulas import Formula
    while len(out) < len(CURATED_FORMULAS) + extra:
        node = random_formula_node(rng, depth)
        if node not in seen:
            seen[node] = None
            out.append(Formula(node, AB))
    return out


def random_mdp(rng, n_states=5, n_actions=2):
    states = tuple(f"s{i}" for i in range(n_states))
    actions = tuple(f"a{i}" for i in range(n_actions))
    rows = {}
    for s in states:
        for a in actions:
            probs = rng.dirichlet(np.ones(n_states))
            rows[(s, a)] = [(states[t], float(probs[t])) for t in range(n_states)]
    return make_mdp(states, actions, rows, states[0])


def random_labeling(rng, mdp: Mdp, alphabet):
    alphabet = tuple(alphabet)
    by_name = {}
    for s in mdp.states:
        by_name[s] = [a for a in alphabet if rng.random() < 0.5]
    return make_labeling(mdp, alphabet, by_name)


def random_policy(rng, mdp: Mdp, alphabet, n_memory=2) -> FiniteMemoryPolicy:
    """Random finite-memory policy: random letter-driven memory transducer
    and Dirichlet decision rows."""
    alphabet = tuple(alphabet)
    letters = all_letters(alphabet)
    update = {(m, letter): int(rng.integers(0, n_memory))
              for m in range(n_memory) for letter in letters}
    memory = MemoryTransducer(n_memory, alphabet, update, 0)
    decision = {}
    for s in range(mdp.n_states):
        for m in range(n_memory):
            probs = rng.dirichlet(np.ones(mdp.n_actions))
            decision[(s, m)] = tuple((a, float(probs[a])) for a in range(mdp.n_actions))
    return FiniteMemoryPolicy(memory, decision)


@pytest.fixture(scope="session")
def simple_pair_01():
    from ltlrl.family import simple_pair
    return simple_pair(0.1)
