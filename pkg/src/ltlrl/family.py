"""Generators for the benchmark environments.

The two-MDP families share a state space and differ only in which action at
the decision state leads to the absorbing/high region: whatever one MDP does
under a1, the other does under a2.  No policy can therefore do well on both,
which is what makes the pairs hard for any learner that has not observed the
decisive low-probability transitions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exceptions import InvalidPError, InvalidShapeError
from .formulas import Formula, Letter, parse
from .mdp import Labeling, Mdp, make_labeling, make_mdp
from .witness import (
    UNCOMMITTABLE_ACCEPTING, Witness, check_witness,
)

Shape = tuple[int, int, int, int, int, int]  # (k, l, u, v, m, n)


@dataclass(frozen=True)
class CounterexamplePair:
    """Two MDPs whose optimal actions are swapped, plus their objectives.

    `labeling`/`target_formula` give the objective of interest;
    `reach_labeling`/`reach_formula` the equivalent single-atom reachability
    objective on the same state space.
    """

    m1: Mdp
    m2: Mdp
    labeling: Labeling
    target_formula: Formula
    reach_labeling: Labeling
    reach_formula: Formula
    p: float
    shape: Shape

    def mdp(self, index: int) -> Mdp:
        if index not in (1, 2):
            raise ValueError("pair index must be 1 or 2")
        return self.m1 if index == 1 else self.m2


def _check_p(p: float, allow_zero: bool = False) -> None:
    low_ok = p >= 0 if allow_zero else p > 0
    if not (low_ok and p < 1):
        rng = "[0, 1)" if allow_zero else "(0, 1)"
        raise InvalidPError(f"p={p!r} outside {rng}")


def _check_shape(shape: Shape) -> None:
    k, l, u, v, m, n = shape
    if not (0 <= k < l):
        raise InvalidShapeError(f"need 0 <= k < l, got k={k}, l={l}")
    if not (0 <= u < v):
        raise InvalidShapeError(f"need 0 <= u < v, got u={u}, v={v}")
    if not (0 <= m < n):
        raise InvalidShapeError(f"need 0 <= m < n, got m={m}, n={n}")


def simple_pair(p: float) -> CounterexamplePair:
    """Three-state pair: decision state g, absorbing h (good) and q (bad).

    In M1, action a1 reaches h with probability p (a2 reaches q); M2 swaps
    the actions.  The objective is to eventually reach h.
    """
    _check_p(p)
    states = ("g", "h", "q")
    actions = ("a1", "a2")

    def build(h_action: str) -> Mdp:
        other = "a2" if h_action == "a1" else "a1"
        rows = {
            ("g", h_action): [("h", p), ("g", 1.0 - p)],
            ("g", other): [("q", p), ("g", 1.0 - p)],
        }
        for s in ("h", "q"):
            for a in actions:
                rows[(s, a)] = [(s, 1.0)]
        return make_mdp(states, actions, rows, "g")

    m1 = build("a1")
    m2 = build("a2")
    reach = parse("F h", ("h",))
    labeling = make_labeling(m1, ("h",), {"h": ["h"]})
    return CounterexamplePair(m1, m2, labeling, reach, labeling, reach,
                              p, (0, 1, 0, 1, 0, 1))


def counterexample_pair(shape: Shape, p: float) -> CounterexamplePair:
    """Chain-shaped pair: grey chain g_0..g_{l-1} with the decision at the
    last grey state, an h-chain cycling h_u..h_{v-1} and a q-chain cycling
    q_m..q_{n-1}.  The objective is to eventually reach h_0.
    """
    _check_shape(shape)
    _check_p(p)
    k, l, u, v, m, n = shape
    greys = [f"g{i}" for i in range(l)]
    hs = [f"h{i}" for i in range(v)]
    qs = [f"q{i}" for i in range(n)]
    states = tuple(greys + hs + qs)
    actions = ("a1", "a2")

    def build(h_action: str) -> Mdp:
        other = "a2" if h_action == "a1" else "a1"
        rows = {}
        for i in range(l - 1):
            for a in actions:
                rows[(greys[i], a)] = [(greys[i + 1], 1.0)]
        decision = greys[l - 1]
        rows[(decision, h_action)] = [("h0", p), (greys[k], 1.0 - p)]
        rows[(decision, other)] = [("q0", p), (greys[k], 1.0 - p)]
        for i in range(v):
            target = hs[i + 1] if i + 1 < v else hs[u]
            for a in actions:
                rows[(hs[i], a)] = [(target, 1.0)]
        for i in range(n):
            target = qs[i + 1] if i + 1 < n else qs[m]
            for a in actions:
                rows[(qs[i], a)] = [(target, 1.0)]
        return make_mdp(states, actions, rows, "g0")

    m1 = build("a1")
    m2 = build("a2")
    reach = parse("F h0", ("h0",))
    labeling = make_labeling(m1, ("h0",), {"h0": ["h0"]})
    return CounterexamplePair(m1, m2, labeling, reach, labeling, reach, p, shape)


def instantiate_from_witness(wit: Witness, f: Formula, p: float) -> CounterexamplePair:
    """The pair whose runs realize the witness words, labeled so that
    satisfying f coincides with reaching h_0.

    An accepting witness spells the committed lasso along the grey/h chains
    and the flipped continuation along the q chain; a rejecting witness
    mirrors the two cycling regions.  For every policy the value for f under
    this labeling equals the value for the h_0 reachability objective.
    """
    check_witness(wit, f)
    _check_p(p)
    if wit.kind == UNCOMMITTABLE_ACCEPTING:
        shape = (len(wit.w_a), len(wit.w_a) + len(wit.w_b),
                 0, len(wit.w_b),
                 len(wit.w_c), len(wit.w_c) + len(wit.w_d))
        grey_word = wit.w_a + wit.w_b
        h_word = wit.w_b
        q_word = wit.w_c + wit.w_d
    else:
        shape = (len(wit.w_a), len(wit.w_a) + len(wit.w_b),
                 len(wit.w_c), len(wit.w_c) + len(wit.w_d),
                 0, len(wit.w_b))
        grey_word = wit.w_a + wit.w_b
        h_word = wit.w_c + wit.w_d
        q_word = wit.w_b

    base = counterexample_pair(shape, p)
    by_name: dict[str, Letter] = {}
    for j, letter in enumerate(grey_word):
        by_name[f"g{j}"] = letter
    for j, letter in enumerate(h_word):
        by_name[f"h{j}"] = letter
    for j, letter in enumerate(q_word):
        by_name[f"q{j}"] = letter
    labeling = make_labeling(base.m1, f.alphabet, by_name)
    return CounterexamplePair(base.m1, base.m2, labeling, f,
                              base.reach_labeling, base.reach_formula, p, shape)


GRID_SIZE = 5
GRID_TRAPS = ((0, 4), (2, 0), (2, 3), (3, 3))
GRID_ACTIONS = ("up", "down", "left", "right")
_MOVES = {"up": (0, 1), "down": (0, -1), "left": (-1, 0), "right": (1, 0)}


def gridworld(p: float):
    """5x5 sticky gridworld: start (0,0), goal (4,4), four absorbing traps.

    White cells move as intended with probability 1-p (staying in place if
    the move leaves the grid) and stay with probability p.  Returns the MDP,
    the goal labeling, and the objective of eventually reaching the goal.
    """
    _check_p(p, allow_zero=True)

    def name(x: int, y: int) -> str:
        return f"{x}_{y}"

    cells = [(x, y) for y in range(GRID_SIZE) for x in range(GRID_SIZE)]
    states = tuple(name(x, y) for x, y in cells)
    traps = set(GRID_TRAPS)
    rows = {}
    for x, y in cells:
        for action in GRID_ACTIONS:
            if (x, y) in traps:
                rows[(name(x, y), action)] = [(name(x, y), 1.0)]
                continue
            dx, dy = _MOVES[action]
            tx, ty = x + dx, y + dy
            if not (0 <= tx < GRID_SIZE and 0 <= ty < GRID_SIZE):
                tx, ty = x, y
            if (tx, ty) == (x, y):
                rows[(name(x, y), action)] = [(name(x, y), 1.0)]
            elif p == 0.0:
                rows[(name(x, y), action)] = [(name(tx, ty), 1.0)]
            else:
                rows[(name(x, y), action)] = [(name(tx, ty), 1.0 - p),
                                              (name(x, y), p)]
    mdp = make_mdp(states, GRID_ACTIONS, rows, name(0, 0))
    labeling = make_labeling(mdp, ("goal",), {name(4, 4): ["goal"]})
    return mdp, labeling, parse("F goal", ("goal",))
