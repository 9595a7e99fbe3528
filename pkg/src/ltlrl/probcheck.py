"""Exact satisfaction probabilities for LTL objectives on finite MDPs.

A policy's value is computed on the product of its induced chain with the
formula's DRA: bottom strongly connected components are classified by the
Rabin condition and the reaching probability is solved as a linear system.
The optimal value is computed on the MDP x DRA product via accepting maximal
end components and value iteration, with exact re-evaluation of the extracted
policy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .automata import Dra, _cyclic_sccs, dra_for
from .exceptions import AlphabetMismatchError
from .formulas import Formula
from .mdp import (
    FiniteMemoryPolicy, Labeling, Mdp, MemoryTransducer, induce_dtmc,
)

VI_TOL = 1e-10
VI_MAX_ITER = 10_000_000
TIE_TOL = 1e-12


@dataclass(frozen=True)
class ValueResult:
    """A satisfaction probability, with the achieving policy when computed."""

    value: float
    policy: FiniteMemoryPolicy | None = None


def dra_memory(dra: Dra) -> MemoryTransducer:
    """The DRA reinterpreted as policy memory over letters."""
    return MemoryTransducer(dra.n_states, dra.alphabet, dict(dra.transition), dra.initial)


# ---------------------------------------------------------------------------
# Chain analysis

def _chain_reach_probability(n: int, rows, targets: set) -> np.ndarray:
    """Probability of reaching the target set from every state, solved by
    direct elimination on the transient block."""
    values = np.zeros(n)
    for t in targets:
        values[t] = 1.0

    pred = [[] for _ in range(n)]
    for s in range(n):
        for t, p in rows[s]:
            if p > 0.0:
                pred[t].append(s)
    can_reach = set(targets)
    frontier = list(targets)
    while frontier:
        v = frontier.pop()
        for u in pred[v]:
            if u not in can_reach:
                can_reach.add(u)
                frontier.append(u)

    unknown = sorted(can_reach - targets)
    if not unknown:
        return values
    index = {s: i for i, s in enumerate(unknown)}
    a = np.eye(len(unknown))
    b = np.zeros(len(unknown))
    for s in unknown:
        i = index[s]
        for t, p in rows[s]:
            if t in targets:
                b[i] += p
            elif t in index:
                a[i, index[t]] -= p
    values[unknown] = np.linalg.solve(a, b)
    return values


def _bsccs(n: int, rows) -> list:
    succ = [set() for _ in range(n)]
    for s in range(n):
        succ[s] = {t for t, p in rows[s] if p > 0.0}
    out = []
    for comp in _cyclic_sccs(set(range(n)), succ):
        if all(succ[s] <= comp for s in comp):
            out.append(comp)
    return out


def _accepting_bscc_states(n: int, rows, dra_component, pairs) -> set:
    """States of BSCCs whose DRA projection satisfies some Rabin pair."""
    targets: set = set()
    for comp in _bsccs(n, rows):
        proj = {dra_component[s] for s in comp}
        if any(not (proj & bad) and (proj & good) for bad, good in pairs):
            targets |= comp
    return targets


# ---------------------------------------------------------------------------
# Policy evaluation

def policy_value(mdp: Mdp, labeling: Labeling, f: Formula,
                 policy: FiniteMemoryPolicy,
                 memory_labeling: Labeling | None = None) -> ValueResult:
    """Exact probability that the policy's paths satisfy the formula.

    `labeling` feeds the formula's automaton.  A policy whose memory runs
    over a different alphabet (e.g. when cross-checking one policy against
    two objectives on the same states) supplies that alphabet's labeling as
    `memory_labeling`.
    """
    if labeling.alphabet != f.alphabet:
        raise AlphabetMismatchError(
            f"labeling alphabet {labeling.alphabet} differs from formula alphabet {f.alphabet}")
    if memory_labeling is None:
        memory_labeling = labeling
    chain = induce_dtmc(mdp, policy, memory_labeling)
    dra = dra_for(f)
    n_mem = policy.memory.n_states

    def chain_letter(c: int):
        return labeling.of(c // n_mem)

    # product of the chain with the DRA, reachable part only
    ids = {(chain.initial, dra.initial): 0}
    order = [(chain.initial, dra.initial)]
    rows = []
    frontier = [(chain.initial, dra.initial)]
    while frontier:
        c, q = frontier.pop(0)
        q2 = dra.step(q, chain_letter(c))
        row = []
        for t, p in chain.rows[c]:
            key = (t, q2)
            if key not in ids:
                ids[key] = len(ids)
                order.append(key)
                frontier.append(key)
            row.append((ids[key], p))
        rows.append(tuple(row))

    dra_component = [q for _, q in order]
    targets = _accepting_bscc_states(len(order), rows, dra_component, dra.pairs)
    values = _chain_reach_probability(len(order), rows, targets)
    return ValueResult(float(values[0]))


# ---------------------------------------------------------------------------
# Optimal value

def _product_mdp(mdp: Mdp, labeling: Labeling, dra: Dra):
    """Reachable MDP x DRA product; automaton steps on the departed label."""
    ids = {(mdp.initial, dra.initial): 0}
    order = [(mdp.initial, dra.initial)]
    rows = []  # per state: tuple over actions of ((target, prob), ...)
    frontier = [(mdp.initial, dra.initial)]
    while frontier:
        s, q = frontier.pop(0)
        q2 = dra.step(q, labeling.of(s))
        per_action = []
        for a in range(mdp.n_actions):
            row = []
            for t, p in mdp.transitions[(s, a)]:
                key = (t, q2)
                if key not in ids:
                    ids[key] = len(ids)
                    order.append(key)
                    frontier.append(key)
                row.append((ids[key], p))
            per_action.append(tuple(row))
        rows.append(tuple(per_action))
    return order, rows


def _mec_decomposition(n: int, rows, allowed: set):
    """Maximal end components of the sub-MDP on `allowed` states.

    Returns (states, enabled-actions-per-state) per component; actions whose
    support leaves the component are iteratively discarded.
    """
    n_actions = len(rows[0]) if rows else 0
    # start from actions whose support stays inside `allowed`
    enabled = {s: {a for a in range(n_actions)
                   if all(t in allowed for t, p in rows[s][a] if p > 0.0)}
               for s in allowed}

    while True:
        live = {s for s, acts in enabled.items() if acts}
        succ = [set() for _ in range(n)]
        for s in live:
            for a in enabled[s]:
                succ[s] |= {t for t, p in rows[s][a] if p > 0.0 and t in live}
        comps = _cyclic_sccs(live, succ)
        comp_of = {}
        for comp in comps:
            for s in comp:
                comp_of[s] = comp
        changed = False
        for s in list(live):
            comp = comp_of.get(s)
            if comp is None:
                if enabled[s]:
                    enabled[s] = set()
                    changed = True
                continue
            keep = {a for a in enabled[s]
                    if all(t in comp for t, p in rows[s][a] if p > 0.0)}
            if keep != enabled[s]:
                enabled[s] = keep
                changed = True
        if not changed:
            return [(comp, {s: frozenset(enabled[s]) for s in comp})
                    for comp in comps if all(enabled[s] for s in comp)]


def optimal_value(mdp: Mdp, labeling: Labeling, f: Formula) -> ValueResult:
    """Maximal satisfaction probability and a certified finite-memory policy.

    Accepting maximal end components are computed per Rabin pair on the
    product; the optimal probability of reaching their union is found by
    value iteration with greedy extraction (ties to the lowest action id).
    Inside an accepting component the policy mixes uniformly over the actions
    that stay inside, which makes the component recurrent and its good states
    visited unboundedly often.  The reported value is the exact evaluation of
    the extracted policy's induced chain.
    """
    if labeling.alphabet != f.alphabet:
        raise AlphabetMismatchError(
            f"labeling alphabet {labeling.alphabet} differs from formula alphabet {f.alphabet}")
    dra = dra_for(f)
    order, rows = _product_mdp(mdp, labeling, dra)
    n = len(order)
    n_actions = mdp.n_actions

    mec_action: dict = {}
    targets: set = set()
    for bad, good in dra.pairs:
        allowed = {i for i, (_, q) in enumerate(order) if q not in bad}
        for comp, enabled in _mec_decomposition(n, rows, allowed):
            if not any(order[s][1] in good for s in comp):
                continue
            targets |= comp
            for s in comp:
                mec_action.setdefault(s, enabled[s])

    values = np.zeros(n)
    for t in targets:
        values[t] = 1.0
    for _ in range(VI_MAX_ITER):
        delta = 0.0
        for s in range(n):
            if s in targets:
                continue
            best = 0.0
            for a in range(n_actions):
                q = sum(p * values[t] for t, p in rows[s][a])
                if q > best:
                    best = q
            if abs(best - values[s]) > delta:
                delta = abs(best - values[s])
            values[s] = best
        if delta <= VI_TOL:
            break

    # Proper greedy extraction: a value-maximizing action must also move
    # toward the target set with positive probability, otherwise the policy
    # can cycle forever on value-preserving moves and achieve nothing.
    # Assign actions in attractor waves; ties break to the lowest action id.
    chosen: dict[int, int] = {}
    assigned = set(targets)
    while True:
        progressed = False
        for s in range(n):
            if s in assigned:
                continue
            if values[s] <= TIE_TOL:
                continue
            qs = [sum(p * values[t] for t, p in rows[s][a]) for a in range(n_actions)]
            best = max(qs)
            for a in range(n_actions):
                if qs[a] < best - 1e-9:
                    continue
                if any(t in assigned and p > 0.0 for t, p in rows[s][a]):
                    chosen[s] = a
                    assigned.add(s)
                    progressed = True
                    break
        if not progressed:
            break

    decision = {}
    for s in range(n):
        if s in targets:
            acts = sorted(mec_action[s])
            share = 1.0 / len(acts)
            decision_row = tuple((a, share) for a in acts)
        else:
            decision_row = ((chosen.get(s, 0), 1.0),)
        decision[order[s]] = decision_row

    memory = dra_memory(dra)
    full_decision = {}
    default_row = ((0, 1.0),)
    for s in range(mdp.n_states):
        for q in range(dra.n_states):
            full_decision[(s, q)] = decision.get((s, q), default_row)
    policy = FiniteMemoryPolicy(memory, full_decision)

    exact = policy_value(mdp, labeling, f, policy)
    return ValueResult(exact.value, policy)
