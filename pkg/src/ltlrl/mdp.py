"""Environment MDPs, state labelings, finite-memory policies and induced chains.

Policies carry a deterministic memory transducer over letters: the memory
consumes the label of the state being departed, so the memory state at time t
reflects the labels of states 0..t-1.  That convention matches every product
construction in the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import AlphabetMismatchError, UnknownStateOrActionError
from .formulas import Letter, all_letters, check_letter

ROW_SUM_TOL = 1e-12
LOAD_RENORM_TOL = 1e-9


def _check_rows(rows, what: str) -> None:
    for key, row in rows.items():
        if any(p < 0 for _, p in row):
            raise ValueError(f"{what} {key}: negative probability")
        total = sum(p for _, p in row)
        if abs(total - 1.0) > ROW_SUM_TOL:
            raise ValueError(f"{what} {key}: probabilities sum to {total!r}")


@dataclass(frozen=True)
class Mdp:
    """Finite MDP; states and actions are indices into the name tuples."""

    states: tuple[str, ...]
    actions: tuple[str, ...]
    transitions: dict  # (state, action) -> tuple of (next state, probability)
    initial: int

    def __post_init__(self):
        for s in range(len(self.states)):
            for a in range(len(self.actions)):
                if (s, a) not in self.transitions:
                    raise ValueError(f"missing transition row for ({self.states[s]}, {self.actions[a]})")
        _check_rows(self.transitions, "transition row")

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def n_actions(self) -> int:
        return len(self.actions)

    def state_id(self, name: str) -> int:
        try:
            return self.states.index(name)
        except ValueError:
            raise UnknownStateOrActionError(f"unknown state {name!r}") from None

    def action_id(self, name: str) -> int:
        try:
            return self.actions.index(name)
        except ValueError:
            raise UnknownStateOrActionError(f"unknown action {name!r}") from None


def make_mdp(states, actions, transitions, initial) -> Mdp:
    """Build an Mdp from name-keyed rows {(state, action): [(next, prob), ...]}."""
    states = tuple(states)
    actions = tuple(actions)
    sidx = {s: i for i, s in enumerate(states)}
    aidx = {a: i for i, a in enumerate(actions)}
    rows = {}
    for (s, a), row in transitions.items():
        rows[(sidx[s], aidx[a])] = tuple((sidx[t], float(p)) for t, p in row)
    return Mdp(states, actions, rows, sidx[initial])


@dataclass(frozen=True)
class Labeling:
    """Total map from MDP states to letters over the atom alphabet."""

    alphabet: tuple[str, ...]
    letters: tuple[Letter, ...]

    def __post_init__(self):
        for letter in self.letters:
            check_letter(self.alphabet, letter)

    def of(self, state: int) -> Letter:
        return self.letters[state]


def make_labeling(mdp: Mdp, alphabet, by_name: dict) -> Labeling:
    alphabet = tuple(alphabet)
    letters = tuple(frozenset(by_name.get(s, ())) for s in mdp.states)
    return Labeling(alphabet, letters)


@dataclass(frozen=True)
class Dtmc:
    states: tuple[str, ...]
    rows: dict  # state -> tuple of (next state, probability)
    initial: int

    def __post_init__(self):
        _check_rows(self.rows, "chain row")

    @property
    def n_states(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class MemoryTransducer:
    """Deterministic automaton over letters used as policy memory."""

    n_states: int
    alphabet: tuple[str, ...]
    update: dict  # (memory state, Letter) -> memory state
    initial: int

    def __post_init__(self):
        for m in range(self.n_states):
            for letter in all_letters(self.alphabet):
                if (m, letter) not in self.update:
                    raise ValueError(f"memory update missing for state {m}, letter {set(letter)}")

    def step(self, m: int, letter: Letter) -> int:
        return self.update[(m, letter)]


def trivial_memory(alphabet) -> MemoryTransducer:
    alphabet = tuple(alphabet)
    update = {(0, letter): 0 for letter in all_letters(alphabet)}
    return MemoryTransducer(1, alphabet, update, 0)


@dataclass(frozen=True)
class FiniteMemoryPolicy:
    """Stochastic decision table over (environment state, memory state)."""

    memory: MemoryTransducer
    decision: dict  # (state, memory state) -> tuple of (action, probability)

    def __post_init__(self):
        _check_rows(self.decision, "decision row")

    def action_distribution(self, state: int, m: int):
        return self.decision[(state, m)]


def memoryless(mdp: Mdp, alphabet, per_state) -> FiniteMemoryPolicy:
    """Policy with a single memory state; per_state maps state id to either
    an action id or a {action id: probability} dict."""
    decision = {}
    for s in range(mdp.n_states):
        choice = per_state[s]
        if isinstance(choice, dict):
            row = tuple(sorted(choice.items()))
        else:
            row = ((int(choice), 1.0),)
        decision[(s, 0)] = row
    return FiniteMemoryPolicy(trivial_memory(alphabet), decision)


def uniform_policy(mdp: Mdp, alphabet) -> FiniteMemoryPolicy:
    share = 1.0 / mdp.n_actions
    row = tuple((a, share) for a in range(mdp.n_actions))
    return memoryless(mdp, alphabet, {s: dict(row) for s in range(mdp.n_states)})


class TransitionSample(NamedTuple):
    state: int
    action: int
    next_state: int


# ---------------------------------------------------------------------------
# Sampling

def sample_step(mdp: Mdp, state: int, action: int, rng: np.random.Generator) -> int:
    """Draw a successor by inverse CDF over the stored outcome order."""
    if not 0 <= state < mdp.n_states or not 0 <= action < mdp.n_actions:
        raise UnknownStateOrActionError(f"invalid state/action pair ({state}, {action})")
    row = mdp.transitions[(state, action)]
    r = rng.random()
    acc = 0.0
    for target, p in row:
        acc += p
        if r < acc:
            return target
    return row[-1][0]


def _sample_row(row, rng: np.random.Generator) -> int:
    r = rng.random()
    acc = 0.0
    for target, p in row:
        acc += p
        if r < acc:
            return target
    return row[-1][0]


def simulate_episode(mdp: Mdp, policy: FiniteMemoryPolicy, labeling: Labeling,
                     steps: int, rng: np.random.Generator) -> list[TransitionSample]:
    """Rollout of the given length from the initial state."""
    out = []
    s = mdp.initial
    m = policy.memory.initial
    for _ in range(steps):
        a = _sample_row(policy.action_distribution(s, m), rng)
        s2 = sample_step(mdp, s, a, rng)
        out.append(TransitionSample(s, a, s2))
        m = policy.memory.step(m, labeling.of(s))
        s = s2
    return out


# ---------------------------------------------------------------------------
# Induced chain

def induce_dtmc(mdp: Mdp, policy: FiniteMemoryPolicy, labeling: Labeling) -> Dtmc:
    """Markov chain over (state, memory) pairs under the policy.

    The memory advances on the departed state's label; the chain starts at
    (initial state, initial memory).
    """
    if policy.memory.alphabet != labeling.alphabet:
        raise AlphabetMismatchError(
            f"labeling alphabet {labeling.alphabet} differs from memory alphabet {policy.memory.alphabet}")
    n_mem = policy.memory.n_states

    def pid(s: int, m: int) -> int:
        return s * n_mem + m

    names = tuple(f"{mdp.states[s]}#{m}" for s in range(mdp.n_states) for m in range(n_mem))
    rows = {}
    for s in range(mdp.n_states):
        for m in range(n_mem):
            m2 = policy.memory.step(m, labeling.of(s))
            acc: dict[int, float] = {}
            for a, pa in policy.action_distribution(s, m):
                if pa == 0.0:
                    continue
                for t, p in mdp.transitions[(s, a)]:
                    if p == 0.0:
                        continue
                    key = pid(t, m2)
                    acc[key] = acc.get(key, 0.0) + pa * p
            rows[pid(s, m)] = tuple(sorted(acc.items()))
    return Dtmc(names, rows, pid(mdp.initial, policy.memory.initial))


# ---------------------------------------------------------------------------
# Model files

def model_to_dict(mdp: Mdp, labeling: Labeling | None = None) -> dict:
    doc = {
        "states": list(mdp.states),
        "actions": list(mdp.actions),
        "initial": mdp.states[mdp.initial],
        "transitions": [
            {"src": mdp.states[s], "action": mdp.actions[a],
             "dst": mdp.states[t], "prob": p}
            for (s, a), row in sorted(mdp.transitions.items())
            for t, p in row
        ],
    }
    if labeling is not None:
        doc["labels"] = {mdp.states[s]: sorted(labeling.of(s))
                         for s in range(mdp.n_states)}
    return doc


def model_from_dict(doc: dict):
    """Parse a model document; rows off by at most 1e-9 are renormalized."""
    states = tuple(doc["states"])
    actions = tuple(doc["actions"])
    sidx = {s: i for i, s in enumerate(states)}
    aidx = {a: i for i, a in enumerate(actions)}
    acc: dict = {}
    for tr in doc["transitions"]:
        key = (sidx[tr["src"]], aidx[tr["action"]])
        acc.setdefault(key, []).append((sidx[tr["dst"]], float(tr["prob"])))
    rows = {}
    for key, row in acc.items():
        total = sum(p for _, p in row)
        if abs(total - 1.0) > LOAD_RENORM_TOL:
            raise ValueError(
                f"transition row {key} sums to {total!r}, beyond the renormalization tolerance")
        if total != 1.0:
            row = [(t, p / total) for t, p in row]
        rows[key] = tuple(row)
    mdp = Mdp(states, actions, rows, sidx[doc["initial"]])

    labeling = None
    if "labels" in doc:
        atoms = sorted({a for atoms in doc["labels"].values() for a in atoms})
        labeling = make_labeling(mdp, atoms, doc["labels"])
    return mdp, labeling


def save_model(path, mdp: Mdp, labeling: Labeling | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(mdp, labeling), fh, indent=2)
        fh.write("\n")


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# Policy files

def policy_to_dict(mdp: Mdp, policy: FiniteMemoryPolicy) -> dict:
    mem = policy.memory
    return {
        "memory": {
            "n_states": mem.n_states,
            "initial": mem.initial,
            "alphabet": list(mem.alphabet),
            "update": [
                {"mem": m, "letter": sorted(letter), "next": mem.update[(m, letter)]}
                for m in range(mem.n_states)
                for letter in all_letters(mem.alphabet)
            ],
        },
        "decision": [
            {"state": mdp.states[s], "mem": m,
             "actions": {mdp.actions[a]: p for a, p in row}}
            for (s, m), row in sorted(policy.decision.items())
        ],
    }


def policy_from_dict(mdp: Mdp, doc: dict) -> FiniteMemoryPolicy:
    mem_doc = doc["memory"]
    alphabet = tuple(mem_doc["alphabet"])
    update = {(e["mem"], frozenset(e["letter"])): e["next"] for e in mem_doc["update"]}
    memory = MemoryTransducer(mem_doc["n_states"], alphabet, update, mem_doc["initial"])
    decision = {}
    for e in doc["decision"]:
        row = tuple(sorted((mdp.action_id(a), float(p)) for a, p in e["actions"].items()))
        decision[(mdp.state_id(e["state"]), e["mem"])] = row
    return FiniteMemoryPolicy(memory, decision)


def save_policy(path, mdp: Mdp, policy: FiniteMemoryPolicy) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(policy_to_dict(mdp, policy), fh, indent=2)
        fh.write("\n")


def load_policy(path, mdp: Mdp) -> FiniteMemoryPolicy:
    with open(path, encoding="utf-8") as fh:
        return policy_from_dict(mdp, json.load(fh))
