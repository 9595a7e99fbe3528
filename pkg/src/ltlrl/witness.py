"""Extraction of uncommittable words from a non-finitary formula's DRA.

An accepted lasso is uncommittable when, after any number of cycle
repetitions, a finite continuation and a new cycle flip the verdict; dually
for rejected lassos.  The four finite words are read off DRA paths: a path to
a qualifying cycle, the cycle itself, a path from the cycle's end state to an
oppositely-classified cycle, and that second cycle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import (
    Dra, _accepting_cycle_states, _backward_closure, _dra_successor_sets,
    _rejecting_cycle_components, classify, dra_for, evaluate_lasso,
)
from .exceptions import FinitaryFormulaError, InvalidWitnessError
from .formulas import Formula, LassoWord, Letter, all_letters

UNCOMMITTABLE_ACCEPTING = "uncommittable-accepting"
UNCOMMITTABLE_REJECTING = "uncommittable-rejecting"

CHECK_REPEATS = 6  # cycle repetitions i = 0..5 re-verified on every witness


@dataclass(frozen=True)
class Witness:
    """Words w_a, w_b, w_c, w_d witnessing an uncommittable verdict."""

    kind: str
    w_a: tuple[Letter, ...]
    w_b: tuple[Letter, ...]
    w_c: tuple[Letter, ...]
    w_d: tuple[Letter, ...]

    def __post_init__(self):
        if self.kind not in (UNCOMMITTABLE_ACCEPTING, UNCOMMITTABLE_REJECTING):
            raise InvalidWitnessError(f"unknown witness kind {self.kind!r}")
        if len(self.w_b) < 1 or len(self.w_d) < 1:
            raise InvalidWitnessError("witness cycles must be nonempty")

    def committed_word(self) -> LassoWord:
        return LassoWord(self.w_a, self.w_b)

    def flipped_word(self, repeats: int) -> LassoWord:
        return LassoWord(self.w_a + self.w_b * repeats + self.w_c, self.w_d)


def check_witness(wit: Witness, f: Formula, repeats: int = CHECK_REPEATS) -> None:
    """Re-verify the defining property by exact lasso evaluation."""
    want = wit.kind == UNCOMMITTABLE_ACCEPTING
    if evaluate_lasso(f, wit.committed_word()) != want:
        raise InvalidWitnessError(
            f"{wit.kind} witness has the wrong verdict on its committed word")
    for i in range(repeats):
        if evaluate_lasso(f, wit.flipped_word(i)) == want:
            raise InvalidWitnessError(
                f"{wit.kind} witness fails to flip after {i} cycle repetitions")


def _bfs_to(dra: Dra, start: int, targets: set):
    """Shortest letter path from start to the target set; letters explored in
    bitmask order so ties resolve deterministically."""
    if start in targets:
        return (), start
    letters = all_letters(dra.alphabet)
    parents = {start: None}
    queue = [start]
    while queue:
        state = queue.pop(0)
        for letter in letters:
            succ = dra.step(state, letter)
            if succ in parents:
                continue
            parents[succ] = (state, letter)
            if succ in targets:
                path = []
                cur = succ
                while parents[cur] is not None:
                    prev, via = parents[cur]
                    path.append(via)
                    cur = prev
                return tuple(reversed(path)), succ
            queue.append(succ)
    return None


def _accepting_walk(dra: Dra, anchor: int, bad: frozenset, good: frozenset):
    """Shortest closed walk from anchor avoiding B and touching G, or None.

    Search runs over (state, touched-G) pairs, so the walk revisits a state
    at most once; at least one step is always taken.
    """
    if anchor in bad:
        return None
    letters = all_letters(dra.alphabet)
    start = (anchor, anchor in good)
    parents = {start: None}
    queue = [start]
    while queue:
        node = queue.pop(0)
        state, flag = node
        for letter in letters:
            succ = dra.step(state, letter)
            if succ in bad:
                continue
            succ_node = (succ, flag or succ in good)
            if succ_node == (anchor, True):
                path = [letter]
                cur = node
                while parents[cur] is not None:
                    prev, via = parents[cur]
                    path.append(via)
                    cur = prev
                return tuple(reversed(path))
            if succ_node not in parents:
                parents[succ_node] = (node, letter)
                queue.append(succ_node)
    return None


def _component_tour(dra: Dra, anchor: int, comp: set):
    """Closed walk from anchor visiting every state of the component.

    The component is strongly connected, so consecutive shortest paths
    between its states (in id order) concatenate into a cycle.
    """
    letters = all_letters(dra.alphabet)
    if comp == {anchor}:
        for letter in letters:
            if dra.step(anchor, letter) == anchor:
                return (letter,)
        raise AssertionError("single-state component without a self-loop")

    def path_within(src: int, dst: int):
        if src == dst:
            return ()
        parents = {src: None}
        queue = [src]
        while queue:
            state = queue.pop(0)
            for letter in letters:
                succ = dra.step(state, letter)
                if succ not in comp or succ in parents:
                    continue
                parents[succ] = (state, letter)
                if succ == dst:
                    path = []
                    cur = succ
                    while parents[cur] is not None:
                        prev, via = parents[cur]
                        path.append(via)
                        cur = prev
                    return tuple(reversed(path))
                queue.append(succ)
        raise AssertionError("component is not strongly connected")

    stops = [anchor] + sorted(comp - {anchor}) + [anchor]
    walk: tuple = ()
    for src, dst in zip(stops, stops[1:]):
        walk += path_within(src, dst)
    return walk


def find_uncommittable(f: Formula) -> Witness:
    """Uncommittable witness for a non-finitary formula.

    Formulas outside guarantee yield an accepting witness (accepting cycle
    first, rejecting cycle after the continuation); formulas outside safety
    only yield the mirrored rejecting witness.  Path choices are
    deterministic: breadth-first by construction id with letters in bitmask
    order.
    """
    report = classify(f)
    if report.in_finitary:
        raise FinitaryFormulaError(
            f"{f} is decidable within a finite horizon; no uncommittable word exists")

    dra = dra_for(f)
    succ = _dra_successor_sets(dra)
    acc = _accepting_cycle_states(dra, succ)
    rej_comps = _rejecting_cycle_components(dra, succ)
    rej = set()
    for comp in rej_comps:
        rej |= comp
    comp_of = {s: comp for comp in rej_comps for s in comp}

    if not report.in_guarantee:
        candidates = acc & _backward_closure(rej, succ)
        w_a, anchor = _bfs_to(dra, dra.initial, candidates)
        w_b = None
        for bad, good in dra.pairs:
            w_b = _accepting_walk(dra, anchor, bad, good)
            if w_b is not None:
                break
        w_c, landing = _bfs_to(dra, anchor, rej)
        w_d = _component_tour(dra, landing, comp_of[landing])
        wit = Witness(UNCOMMITTABLE_ACCEPTING, w_a, w_b, w_c, w_d)
    else:
        candidates = rej & _backward_closure(acc, succ)
        w_a, anchor = _bfs_to(dra, dra.initial, candidates)
        w_b = _component_tour(dra, anchor, comp_of[anchor])
        w_c, landing = _bfs_to(dra, anchor, acc)
        w_d = None
        for bad, good in dra.pairs:
            w_d = _accepting_walk(dra, landing, bad, good)
            if w_d is not None:
                break
        wit = Witness(UNCOMMITTABLE_REJECTING, w_a, w_b, w_c, w_d)

    check_witness(wit, f)
    return wit
