"""Tabular learners on reward-scheme products, and the finite-horizon PAC
learner for formulas decidable within a bounded prefix.

The sampling loop is jitted; per-(state, action) visit counters drive a
k/(k+t) learning rate, exploration decays linearly across the whole budget,
and per-transition discounts enter the bootstrap target.  Everything is a
deterministic function of its inputs and the seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .automata import build_dfa_finitary, classify
from .exceptions import (
    AlphabetMismatchError, InvalidToleranceError, NotFinitaryError,
)
from .formulas import Formula, all_letters
from .mdp import FiniteMemoryPolicy, Labeling, Mdp, MemoryTransducer
from .schemes import ProductMdp, greedy_policy

ALGO_Q = "q"
ALGO_DOUBLE_Q = "double-q"
ALGO_SARSA = "sarsa"
ALGOS = (ALGO_Q, ALGO_DOUBLE_Q, ALGO_SARSA)
_ALGO_CODE = {ALGO_Q: 0, ALGO_DOUBLE_Q: 1, ALGO_SARSA: 2}


@dataclass(frozen=True)
class Hyper:
    """Learner hyper-parameters; defaults per algorithm via default_hyper."""

    lr_k: int
    explore_start: float = 1.0
    explore_end: float = 0.1
    reset_every: int = 10
    lam: float = 0.0
    q_init: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.explore_end <= self.explore_start <= 1.0:
            raise ValueError("need 0 <= explore_end <= explore_start <= 1")
        if self.reset_every < 1:
            raise ValueError("reset_every must be at least 1")
        if self.lam != 0.0:
            raise ValueError("only SARSA(0) is supported: lam must be 0")
        if self.lr_k < 1:
            raise ValueError("lr_k must be at least 1")


def default_hyper(algo: str, reset_every: int = 10) -> Hyper:
    if algo == ALGO_Q:
        return Hyper(lr_k=10, explore_end=0.1, reset_every=reset_every)
    if algo == ALGO_DOUBLE_Q:
        return Hyper(lr_k=30, explore_end=0.1, reset_every=reset_every)
    if algo == ALGO_SARSA:
        return Hyper(lr_k=10, explore_end=1e-3, reset_every=reset_every)
    raise ValueError(f"unknown algorithm {algo!r}; choose one of {ALGOS}")


def _flatten(prod: ProductMdp):
    n, na = prod.n_states, prod.n_actions
    starts = np.zeros(n * na + 1, dtype=np.int64)
    cum: list[float] = []
    nxt: list[int] = []
    rew: list[float] = []
    disc: list[float] = []
    for s in range(n):
        for a in range(na):
            row = prod.transitions[(s, a)]
            acc = 0.0
            for i, (t, p, r, d) in enumerate(row):
                acc += p
                cum.append(1.0 if i == len(row) - 1 else acc)
                nxt.append(t)
                rew.append(r)
                disc.append(d)
            starts[s * na + a + 1] = len(cum)
    return (starts, np.array(cum), np.array(nxt, dtype=np.int64),
            np.array(rew), np.array(disc))


@njit(cache=True)
def _pick(table, table2, two_tables, s, na, eps):
    if np.random.random() < eps:
        return np.random.randint(0, na)
    base = s * na
    best = table[base]
    if two_tables:
        best += table2[base]
    ties = 1
    pick = 0
    for a in range(1, na):
        v = table[base + a]
        if two_tables:
            v += table2[base + a]
        if v > best:
            best = v
            pick = a
            ties = 1
        elif v == best:
            ties += 1
    if ties == 1:
        return pick
    want = int(np.random.random() * ties)
    seen = -1
    for a in range(na):
        v = table[base + a]
        if two_tables:
            v += table2[base + a]
        if v == best:
            seen += 1
            if seen == want:
                return a
    return pick


@njit(cache=True)
def _run(algo, seed, n_steps, na, s0, reset_every, lr_k, eps0, eps1,
         starts, cum, nxt, rew, disc, qa, qb, visits):
    np.random.seed(seed)
    s = s0
    pos = 0
    a_next = -1
    denom = n_steps - 1 if n_steps > 1 else 1
    for t in range(n_steps):
        if pos == reset_every:
            s = s0
            pos = 0
            a_next = -1
        eps = eps0 + (eps1 - eps0) * (t / denom)
        if algo == 2 and a_next >= 0:
            a = a_next
        else:
            a = _pick(qa, qb, algo == 1, s, na, eps)
        base = s * na + a
        r = np.random.random()
        k = starts[base]
        while cum[k] < r:
            k += 1
        s2 = nxt[k]
        reward = rew[k]
        dd = disc[k]
        alpha = lr_k / (lr_k + visits[base])
        visits[base] += 1
        b2 = s2 * na
        if algo == 0:  # Q-learning
            best = qa[b2]
            for j in range(1, na):
                if qa[b2 + j] > best:
                    best = qa[b2 + j]
            qa[base] += alpha * (reward + dd * best - qa[base])
        elif algo == 1:  # double Q-learning, fair coin per update
            if np.random.random() < 0.5:
                amax = 0
                for j in range(1, na):
                    if qa[b2 + j] > qa[b2 + amax]:
                        amax = j
                qa[base] += alpha * (reward + dd * qb[b2 + amax] - qa[base])
            else:
                amax = 0
                for j in range(1, na):
                    if qb[b2 + j] > qb[b2 + amax]:
                        amax = j
                qb[base] += alpha * (reward + dd * qa[b2 + amax] - qb[base])
        else:  # one-step SARSA
            a_next = _pick(qa, qb, False, s2, na, eps)
            qa[base] += alpha * (reward + dd * qa[b2 + a_next] - qa[base])
        s = s2
        pos += 1


def _seed32(seed) -> int:
    return int(np.random.SeedSequence(seed).generate_state(1)[0])


def train_details(algo: str, prod: ProductMdp, hyper: Hyper | None,
                  budget: int, seed):
    """Q table plus per-(state, action) visit counts; the counts always sum
    to exactly `budget` (one generative-model call per learning step)."""
    if algo not in ALGOS:
        raise ValueError(f"unknown algorithm {algo!r}; choose one of {ALGOS}")
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    if hyper is None:
        hyper = default_hyper(algo)
    n, na = prod.n_states, prod.n_actions
    starts, cum, nxt, rew, disc = _flatten(prod)
    qa = np.full(n * na, hyper.q_init)
    qb = np.full(n * na, hyper.q_init if algo == ALGO_DOUBLE_Q else 0.0)
    visits = np.zeros(n * na, dtype=np.int64)
    if budget > 0:
        _run(_ALGO_CODE[algo], _seed32(seed), budget, na, prod.initial,
             hyper.reset_every, float(hyper.lr_k),
             hyper.explore_start, hyper.explore_end,
             starts, cum, nxt, rew, disc, qa, qb, visits)
    table = qa + qb if algo == ALGO_DOUBLE_Q else qa
    return table.reshape(n, na), visits.reshape(n, na)


def train_table(algo: str, prod: ProductMdp, hyper: Hyper | None,
                budget: int, seed) -> np.ndarray:
    """Q table after exactly `budget` sampled transitions (both tables summed
    for double Q-learning)."""
    return train_details(algo, prod, hyper, budget, seed)[0]


def train(algo: str, prod: ProductMdp, hyper: Hyper | None = None,
          budget: int = 100_000, seed=0) -> FiniteMemoryPolicy:
    """Run the learner and read the greedy policy back to the environment."""
    return greedy_policy(prod, train_table(algo, prod, hyper, budget, seed))


# ---------------------------------------------------------------------------
# Finite-horizon PAC learner

@dataclass(frozen=True)
class PacCertificate:
    epsilon: float
    delta: float
    samples_used: int
    horizon: int
    per_sa_samples: int


def _dfa_product(mdp: Mdp, labeling: Labeling, dfa):
    """Reachable MDP x DFA product; reward 1 on rows entering the accept sink."""
    ids = {(mdp.initial, dfa.initial): 0}
    order = [(mdp.initial, dfa.initial)]
    rows = []
    rewards = []
    frontier = [(mdp.initial, dfa.initial)]
    while frontier:
        s, d = frontier.pop(0)
        d2 = dfa.step(d, labeling.of(s))
        rewards.append(1.0 if d not in dfa.accepting and d2 in dfa.accepting else 0.0)
        per_action = []
        for a in range(mdp.n_actions):
            row = []
            for t, p in mdp.transitions[(s, a)]:
                key = (t, d2)
                if key not in ids:
                    ids[key] = len(ids)
                    order.append(key)
                    frontier.append(key)
                row.append((ids[key], p))
            per_action.append(tuple(row))
        rows.append(per_action)
    return order, rows, rewards


def finitary_sample_size(horizon: int, n_product: int, n_actions: int,
                         epsilon: float, delta: float) -> int:
    """Per-(state, action, step) sample count for the Hoeffding schedule."""
    if horizon == 0:
        return 0
    return math.ceil((2.0 * horizon ** 2 / epsilon ** 2)
                     * math.log(4.0 * n_product * n_actions * horizon / delta))


def learn_finitary(mdp: Mdp, labeling: Labeling, f: Formula,
                   epsilon: float, delta: float, seed=0):
    """PAC policy for a finite-horizon formula from a generative model.

    Draws a fixed number of samples for every (product state, action, step),
    runs finite-horizon value iteration on the empirical model and returns
    the step-indexed greedy policy with its sample-complexity certificate.
    The learned value is within epsilon of optimal with probability at least
    1 - delta.
    """
    if epsilon <= 0.0:
        raise InvalidToleranceError(f"epsilon={epsilon!r} must be positive")
    if not 0.0 < delta < 1.0:
        raise InvalidToleranceError(f"delta={delta!r} outside (0, 1)")
    if labeling.alphabet != f.alphabet:
        raise AlphabetMismatchError(
            f"labeling alphabet {labeling.alphabet} differs from formula alphabet {f.alphabet}")
    if not classify(f).in_finitary:
        raise NotFinitaryError(f"{f} is not decidable within a finite horizon")
    dfa, horizon = build_dfa_finitary(f)

    order, rows, rewards = _dfa_product(mdp, labeling, dfa)
    n_prod = len(order)
    na = mdp.n_actions
    m = finitary_sample_size(horizon, n_prod, na, epsilon, delta)
    rng = np.random.default_rng(np.random.SeedSequence(seed))

    # fresh empirical model per step of the horizon, then backward induction
    values = np.zeros(n_prod)
    step_actions = np.zeros((max(horizon, 1), n_prod), dtype=np.int64)
    emp = []
    for _ in range(horizon):
        per_step = []
        for sid in range(n_prod):
            per_sa = []
            for a in range(na):
                row = rows[sid][a]
                probs = np.array([p for _, p in row])
                counts = rng.multinomial(m, probs / probs.sum())
                per_sa.append(tuple((row[i][0], counts[i] / m)
                                    for i in range(len(row)) if counts[i]))
            per_step.append(per_sa)
        emp.append(per_step)

    for h in range(horizon - 1, -1, -1):
        new_values = np.zeros(n_prod)
        for sid in range(n_prod):
            best_q = -np.inf
            best_a = 0
            for a in range(na):
                q = rewards[sid] + sum(p * values[t] for t, p in emp[h][sid][a])
                if q > best_q:
                    best_q = q
                    best_a = a
            new_values[sid] = best_q
            step_actions[h, sid] = best_a
        values = new_values

    # memory tracks (DFA state, step counter saturated at the horizon)
    n_dfa = len(dfa.states)
    n_mem = n_dfa * (horizon + 1)

    def mem_id(d: int, t: int) -> int:
        return d * (horizon + 1) + min(t, horizon)

    update = {}
    for d in range(n_dfa):
        for t in range(horizon + 1):
            for letter in all_letters(f.alphabet):
                update[(mem_id(d, t), letter)] = mem_id(dfa.step(d, letter),
                                                        min(t + 1, horizon))
    memory = MemoryTransducer(n_mem, f.alphabet, update, mem_id(dfa.initial, 0))

    sid_of = {key: i for i, key in enumerate(order)}
    decision = {}
    for s in range(mdp.n_states):
        for d in range(n_dfa):
            for t in range(horizon + 1):
                sid = sid_of.get((s, d))
                if sid is not None and t < horizon:
                    action = int(step_actions[t, sid])
                else:
                    action = 0
                decision[(s, mem_id(d, t))] = ((action, 1.0),)
    policy = FiniteMemoryPolicy(memory, decision)

    cert = PacCertificate(epsilon, delta, m * n_prod * na * horizon, horizon, m)
    return policy, cert
