"""Reward-scheme products: (MDP, labeling, formula) -> product MDP with rewards.

Each scheme annotates the MDP x DRA product with per-transition rewards and
discounts so that a standard tabular learner optimizing discounted return is
steered toward satisfying the formula.  All five schemes are defined for a
single-pair DRA; a transition is "accepting" when it enters a product state
whose automaton component is in G while outside B.

Scheme semantics (rewards/discounts; gamma, gammaB, zeta from SchemeParams):

* reward-on-acc   reward 1 on accepting transitions, uniform discount gamma.
* multi-discount  accepting transitions earn 1-gammaB and discount by gammaB,
                  others earn 0 and discount by gamma.
* zeta-reach      undiscounted; accepting transitions divert with probability
                  1-zeta to an absorbing sink that pays 1 on entry.
* zeta-acc        undiscounted; accepting transitions pay 1-zeta and
                  terminate (move to a zero-reward sink) with probability
                  1-zeta.
* zeta-discount   accepting transitions pay 1-zeta and discount by zeta;
                  all other transitions are undiscounted and pay 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .automata import Dra, dra_for
from .exceptions import AlphabetMismatchError, MultiplePairsUnsupportedError
from .formulas import Formula
from .mdp import FiniteMemoryPolicy, Labeling, Mdp
from .probcheck import dra_memory

REWARD_ON_ACC = "reward-on-acc"
MULTI_DISCOUNT = "multi-discount"
ZETA_REACH = "zeta-reach"
ZETA_ACC = "zeta-acc"
ZETA_DISCOUNT = "zeta-discount"
SCHEMES = (REWARD_ON_ACC, MULTI_DISCOUNT, ZETA_REACH, ZETA_ACC, ZETA_DISCOUNT)


@dataclass(frozen=True)
class SchemeParams:
    gamma: float = 0.99
    gamma_b: float = 0.999
    zeta: float = 0.99

    def __post_init__(self):
        if not 0.0 < self.gamma < 1.0:
            raise ValueError(f"gamma={self.gamma!r} outside (0, 1)")
        if not self.gamma < self.gamma_b < 1.0:
            raise ValueError(f"gammaB={self.gamma_b!r} outside (gamma, 1)")
        if not 0.0 < self.zeta < 1.0:
            raise ValueError(f"zeta={self.zeta!r} outside (0, 1)")


@dataclass(frozen=True)
class ProductMdp:
    """MDP x DRA product with per-transition reward and discount.

    `back_map[i]` is the (environment state, automaton state) pair of product
    state i, or None for scheme-added sinks.  The automaton doubles as the
    memory of any policy read back from the product.
    """

    scheme: str
    states: tuple[str, ...]
    actions: tuple[str, ...]
    transitions: dict  # (state, action) -> tuple of (next, prob, reward, discount)
    initial: int
    episodic: bool
    back_map: tuple
    dra: Dra
    n_env_states: int
    params: SchemeParams = field(default=SchemeParams())

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def n_actions(self) -> int:
        return len(self.actions)


def build_product(scheme: str, mdp: Mdp, labeling: Labeling, f: Formula,
                  params: SchemeParams | None = None) -> ProductMdp:
    """Product of the environment with the formula's single-pair DRA under
    the named reward scheme."""
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; choose one of {SCHEMES}")
    if labeling.alphabet != f.alphabet:
        raise AlphabetMismatchError(
            f"labeling alphabet {labeling.alphabet} differs from formula alphabet {f.alphabet}")
    if params is None:
        params = SchemeParams()
    dra = dra_for(f)
    if len(dra.pairs) != 1:
        raise MultiplePairsUnsupportedError(
            f"{f} compiles to a DRA with {len(dra.pairs)} Rabin pairs; "
            "reward schemes are defined for exactly one")
    bad, good = dra.pairs[0]
    accepting_q = good - bad

    ids = {(mdp.initial, dra.initial): 0}
    order = [(mdp.initial, dra.initial)]
    raw = []  # per state, per action: ((target, prob, accepting), ...)
    frontier = [(mdp.initial, dra.initial)]
    while frontier:
        s, q = frontier.pop(0)
        q2 = dra.step(q, labeling.of(s))
        acc = q2 in accepting_q
        per_action = []
        for a in range(mdp.n_actions):
            row = []
            for t, p in mdp.transitions[(s, a)]:
                key = (t, q2)
                if key not in ids:
                    ids[key] = len(ids)
                    order.append(key)
                    frontier.append(key)
                row.append((ids[key], p, acc))
            per_action.append(tuple(row))
        raw.append(per_action)

    names = [f"{mdp.states[s]}@{q}" for s, q in order]
    back_map: list = list(order)
    sink = None
    if scheme in (ZETA_REACH, ZETA_ACC):
        sink = len(names)
        names.append("sink")
        back_map.append(None)

    g, gb, z = params.gamma, params.gamma_b, params.zeta
    transitions = {}
    for sid, per_action in enumerate(raw):
        for a, row in enumerate(per_action):
            out = []
            for t, p, acc in row:
                if scheme == REWARD_ON_ACC:
                    out.append((t, p, 1.0 if acc else 0.0, g))
                elif scheme == MULTI_DISCOUNT:
                    out.append((t, p, 1.0 - gb, gb) if acc else (t, p, 0.0, g))
                elif scheme == ZETA_REACH:
                    if acc:
                        out.append((t, p * z, 0.0, 1.0))
                        out.append((sink, p * (1.0 - z), 1.0, 1.0))
                    else:
                        out.append((t, p, 0.0, 1.0))
                elif scheme == ZETA_ACC:
                    if acc:
                        out.append((t, p * z, 1.0 - z, 1.0))
                        out.append((sink, p * (1.0 - z), 1.0 - z, 1.0))
                    else:
                        out.append((t, p, 0.0, 1.0))
                else:  # ZETA_DISCOUNT
                    out.append((t, p, 1.0 - z, z) if acc else (t, p, 0.0, 1.0))
            transitions[(sid, a)] = tuple(out)
    if sink is not None:
        for a in range(mdp.n_actions):
            transitions[(sink, a)] = ((sink, 1.0, 0.0, 1.0),)

    return ProductMdp(scheme, tuple(names), mdp.actions, transitions, 0,
                      episodic=sink is not None, back_map=tuple(back_map),
                      dra=dra, n_env_states=mdp.n_states, params=params)


def value_iteration(prod: ProductMdp, tol: float = 1e-10,
                    max_iter: int = 10_000_000) -> np.ndarray:
    """Q table of the product optimum under per-transition discounts."""
    n, na = prod.n_states, prod.n_actions
    q = np.zeros((n, na))
    values = np.zeros(n)
    for _ in range(max_iter):
        delta = 0.0
        for s in range(n):
            best = -np.inf
            for a in range(na):
                total = 0.0
                for t, p, r, d in prod.transitions[(s, a)]:
                    total += p * (r + d * values[t])
                q[s, a] = total
                if total > best:
                    best = total
            if abs(best - values[s]) > delta:
                delta = abs(best - values[s])
            values[s] = best
        if delta <= tol:
            return q
    raise RuntimeError("value iteration did not converge")


def greedy_policy(prod: ProductMdp, q: np.ndarray,
                  tie_tol: float = 1e-12) -> FiniteMemoryPolicy:
    """Read a product Q table back as a finite-memory policy on the
    environment, memory being the DRA.  Maximizing actions are mixed
    uniformly, so an untrained all-zero table yields the uniform policy."""
    memory = dra_memory(prod.dra)
    na = prod.n_actions
    uniform = tuple((a, 1.0 / na) for a in range(na))
    decision = {}
    for s in range(prod.n_env_states):
        for m in range(prod.dra.n_states):
            decision[(s, m)] = uniform
    for sid, pair in enumerate(prod.back_map):
        if pair is None:
            continue
        row = q[sid]
        best = row.max()
        picks = [a for a in range(na) if row[a] >= best - tie_tol]
        share = 1.0 / len(picks)
        decision[pair] = tuple((a, share) for a in picks)
    return FiniteMemoryPolicy(memory, decision)


def product_to_dict(prod: ProductMdp) -> dict:
    """Model-file document extended with reward and discount per transition."""
    return {
        "scheme": prod.scheme,
        "states": list(prod.states),
        "actions": list(prod.actions),
        "initial": prod.states[prod.initial],
        "transitions": [
            {"src": prod.states[s], "action": prod.actions[a],
             "dst": prod.states[t], "prob": p, "reward": r, "discount": d}
            for (s, a), row in sorted(prod.transitions.items())
            for t, p, r, d in row
        ],
    }
