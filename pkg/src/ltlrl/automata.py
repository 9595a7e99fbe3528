"""Omega-automata for LTL: tableau NBA, Safra determinization, finitary DFA.

The pipeline is formula -> NNF -> nondeterministic Buchi automaton (tableau
with one acceptance obligation per Until, folded into a single Buchi set by a
round-robin counter) -> deterministic Rabin automaton (Safra trees).  The DRA
drives exact word evaluation, the temporal-hierarchy classification and every
downstream product construction.  Finite-horizon formulas additionally compile
to an acyclic DFA over progression formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exceptions import AutomatonTooLargeError, NotFinitaryError
from .formulas import (
    And, Atom, FalseConst, Formula, LassoWord, Letter, Next, Node, Not, Or,
    Release, TrueConst, Until, all_letters, canonical, check_letter, is_nnf,
    letter_mask, node_to_text, progress, to_nnf,
)

DEFAULT_STATE_CAP = 4096


@dataclass(frozen=True)
class Nba:
    """Nondeterministic Buchi automaton over letters 2^alphabet."""

    n_states: int
    alphabet: tuple[str, ...]
    transitions: dict  # (state, Letter) -> frozenset of states
    initial: frozenset
    accepting: frozenset
    tags: tuple[str, ...] = ()

    def successors(self, state: int, letter: Letter) -> frozenset:
        return self.transitions.get((state, letter), frozenset())


@dataclass(frozen=True)
class Dra:
    """Deterministic Rabin automaton; total transition function.

    A run is accepting if some pair (B, G) has B visited finitely often and
    G visited infinitely often.  An empty pair list denotes the empty
    language.
    """

    n_states: int
    alphabet: tuple[str, ...]
    transition: dict  # (state, Letter) -> state
    initial: int
    pairs: tuple  # of (frozenset B, frozenset G)
    tags: tuple[str, ...] = ()

    def step(self, state: int, letter: Letter) -> int:
        return self.transition[(state, letter)]


@dataclass(frozen=True)
class Dfa:
    """Acyclic DFA over progression formulas; cycles only at the two sinks."""

    states: tuple  # formula nodes tagging each state
    alphabet: tuple[str, ...]
    transition: dict  # (state index, Letter) -> state index
    initial: int
    accepting: frozenset  # index of the True sink, if reachable
    rejecting: frozenset  # index of the False sink, if reachable

    def step(self, state: int, letter: Letter) -> int:
        return self.transition[(state, letter)]


@dataclass(frozen=True)
class ClassReport:
    """Membership in the three bottom levels of the temporal hierarchy."""

    in_guarantee: bool
    in_safety: bool
    in_finitary: bool
    horizon: int | None = None


# ---------------------------------------------------------------------------
# Tableau construction: NNF formula -> NBA

def _expand_obligations(obls: frozenset, letter: Letter):
    """All ways to discharge the obligations for one step.

    Returns deduplicated (next-obligations, deferred-untils) pairs; a branch
    dies when a literal contradicts the letter.
    """
    results = {}

    def go(todo: list, processed: set, nxt: set, deferred: set):
        while todo:
            phi = todo.pop()
            if phi in processed:
                continue
            processed.add(phi)
            if isinstance(phi, TrueConst):
                continue
            if isinstance(phi, FalseConst):
                return
            if isinstance(phi, Atom):
                if phi.name in letter:
                    continue
                return
            if isinstance(phi, Not):  # NNF: child is an atom
                if phi.child.name not in letter:
                    continue
                return
            if isinstance(phi, And):
                todo.append(phi.left)
                todo.append(phi.right)
                continue
            if isinstance(phi, Or):
                go(todo + [phi.left], set(processed), set(nxt), set(deferred))
                go(todo + [phi.right], set(processed), set(nxt), set(deferred))
                return
            if isinstance(phi, Next):
                nxt.add(phi.child)
                continue
            if isinstance(phi, Until):  # q | (p & X(p U q))
                go(todo + [phi.right], set(processed), set(nxt), set(deferred))
                go(todo + [phi.left], set(processed), nxt | {phi}, deferred | {phi})
                return
            if isinstance(phi, Release):  # q & (p | X(p R q))
                go(todo + [phi.left, phi.right], set(processed), set(nxt), set(deferred))
                go(todo + [phi.right], set(processed), nxt | {phi}, set(deferred))
                return
            raise TypeError(f"not an NNF node: {phi!r}")
        results[(frozenset(nxt), frozenset(deferred))] = None

    go(list(obls), set(), set(), set())
    return list(results)


def _until_subformulas(node: Node) -> list:
    found = {}

    def walk(n):
        if isinstance(n, Until):
            found.setdefault(n, None)
        if isinstance(n, (Not, Next)):
            walk(n.child)
        elif isinstance(n, (And, Or, Until, Release)):
            walk(n.left)
            walk(n.right)

    walk(node)
    return sorted(found, key=repr)


def ltl_to_nba(f: Formula, cap: int = DEFAULT_STATE_CAP) -> Nba:
    """Tableau NBA with L(nba) = models of f; f is normalized to NNF first."""
    root = f.root if is_nnf(f.root) else to_nnf(f).root
    untils = _until_subformulas(root)
    k = len(untils)
    letters = all_letters(f.alphabet)

    expand_cache: dict = {}

    def expand(obls, letter):
        key = (obls, letter)
        if key not in expand_cache:
            expand_cache[key] = _expand_obligations(obls, letter)
        return expand_cache[key]

    initial_core = frozenset([root])
    start = (initial_core, 0)
    ids = {start: 0}
    order = [start]
    transitions: dict = {}
    frontier = [start]
    while frontier:
        obls, level = state = frontier.pop(0)
        sid = ids[state]
        base = 0 if level == k else level
        for letter in letters:
            succs = set()
            for nxt, deferred in expand(obls, letter):
                j = base
                while j < k and untils[j] not in deferred:
                    j += 1
                succ = (nxt, j)
                if succ not in ids:
                    if len(ids) >= cap:
                        raise AutomatonTooLargeError("NBA", cap)
                    ids[succ] = len(ids)
                    order.append(succ)
                    frontier.append(succ)
                succs.add(ids[succ])
            transitions[(sid, letter)] = frozenset(succs)

    accepting = frozenset(ids[s] for s in order if s[1] == k)
    tags = tuple(
        "{" + ", ".join(sorted(node_to_text(o) for o in obls)) + "}@" + str(level)
        for obls, level in order
    )
    return Nba(len(order), f.alphabet, transitions, frozenset([0]), accepting, tags)


# ---------------------------------------------------------------------------
# Safra determinization: NBA -> DRA

def _safra_successor(tree, letter: Letter, nba: Nba):
    """One Safra-tree transition: unmark, spawn, subset move, merges."""
    if tree is None:
        return None

    def clone(t):
        return [t[0], set(t[1]), False, [clone(c) for c in t[3]]]

    root = clone(tree)

    originals: list = []

    def preorder(n):
        originals.append(n)
        for c in n[3]:
            preorder(c)

    preorder(root)
    used = {n[0] for n in originals}

    # spawn a youngest child holding the accepting part of each label
    for n in originals:
        core = n[1] & nba.accepting
        if core:
            name = 1
            while name in used:
                name += 1
            used.add(name)
            n[3].append([name, set(core), False, []])

    def subset_move(n):
        moved = set()
        for q in n[1]:
            moved |= nba.successors(q, letter)
        n[1] = moved
        for c in n[3]:
            subset_move(c)

    subset_move(root)

    # keep each NBA state only in the oldest sibling containing it
    def strip(n, gone):
        n[1] -= gone
        for c in n[3]:
            strip(c, gone)

    def horizontal(n):
        claimed: set = set()
        for c in n[3]:
            strip(c, claimed)
            horizontal(c)
            claimed |= c[1]

    horizontal(root)

    if not root[1]:
        return None

    def prune(n):
        n[3] = [c for c in n[3] if c[1]]
        for c in n[3]:
            prune(c)

    prune(root)

    # a node fully covered by its children drops them and gets marked
    def vertical(n):
        if n[3]:
            union = set()
            for c in n[3]:
                union |= c[1]
            if union == n[1]:
                n[3] = []
                n[2] = True
                return
        for c in n[3]:
            vertical(c)

    vertical(root)

    def freeze(n):
        return (n[0], frozenset(n[1]), n[2], tuple(freeze(c) for c in n[3]))

    return freeze(root)


def _tree_names(tree, marked_only=False) -> set:
    if tree is None:
        return set()
    out = set()
    stack = [tree]
    while stack:
        name, _, marked, children = stack.pop()
        if not marked_only or marked:
            out.add(name)
        stack.extend(children)
    return out


def _tree_tag(tree) -> str:
    if tree is None:
        return "empty"
    name, label, marked, children = tree
    body = ",".join(str(q) for q in sorted(label))
    mark = "!" if marked else ""
    kids = "".join(_tree_tag(c) for c in children)
    return f"{name}{mark}{{{body}}}{kids}"


def nba_to_dra(nba: Nba, cap: int = DEFAULT_STATE_CAP) -> Dra:
    """Safra determinization; one Rabin pair per Safra node name.

    B_i collects macrostates where name i is absent, G_i those where it is
    marked.  Pairs that no reachable cycle can satisfy are dropped (they
    cannot change the language).
    """
    letters = all_letters(nba.alphabet)
    init_tree = (1, nba.initial, False, ()) if nba.initial else None
    ids = {init_tree: 0}
    order = [init_tree]
    transition: dict = {}
    frontier = [init_tree]
    while frontier:
        tree = frontier.pop(0)
        sid = ids[tree]
        for letter in letters:
            succ = _safra_successor(tree, letter, nba)
            if succ not in ids:
                if len(ids) >= cap:
                    raise AutomatonTooLargeError("DRA", cap)
                ids[succ] = len(ids)
                order.append(succ)
                frontier.append(succ)
            transition[(sid, letter)] = ids[succ]

    all_names = set()
    for tree in order:
        all_names |= _tree_names(tree)

    pairs = []
    for name in sorted(all_names):
        bad = frozenset(i for i, t in enumerate(order) if name not in _tree_names(t))
        good = frozenset(i for i, t in enumerate(order) if name in _tree_names(t, marked_only=True))
        if good:
            pairs.append((bad, good))

    dra = Dra(len(order), nba.alphabet, transition, 0, tuple(pairs),
              tuple(_tree_tag(t) for t in order))
    useful = tuple(p for p in dra.pairs if _pair_has_accepting_cycle(dra, p))
    if len(useful) != len(dra.pairs):
        dra = Dra(dra.n_states, dra.alphabet, dra.transition, dra.initial,
                  useful, dra.tags)
    return dra


# ---------------------------------------------------------------------------
# Graph analysis on the DRA

def _dra_successor_sets(dra: Dra) -> list:
    succ = [set() for _ in range(dra.n_states)]
    for (s, _), t in dra.transition.items():
        succ[s].add(t)
    return succ


def _cyclic_sccs(nodes, succ_map):
    """Tarjan SCCs restricted to `nodes`; only components containing a cycle."""
    nodes = set(nodes)
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    sccs = []
    counter = [0]

    def strongconnect(v):
        work = [(v, iter(sorted(succ_map[v] & nodes)))]
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(succ_map[w] & nodes))))
                    advanced = True
                    break
                if w in on_stack:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == node:
                        break
                sccs.append(comp)

    for v in sorted(nodes):
        if v not in index:
            strongconnect(v)

    out = []
    for comp in sccs:
        if len(comp) > 1:
            out.append(comp)
        else:
            (v,) = comp
            if v in succ_map[v]:
                out.append(comp)
    return out


def _accepting_cycle_states(dra: Dra, succ) -> set:
    """States lying on some cycle accepted by at least one Rabin pair."""
    out: set = set()
    nodes = set(range(dra.n_states))
    for bad, good in dra.pairs:
        for comp in _cyclic_sccs(nodes - bad, succ):
            if comp & good:
                out |= comp
    return out


def _pair_has_accepting_cycle(dra: Dra, pair) -> bool:
    bad, good = pair
    succ = _dra_successor_sets(dra)
    nodes = set(range(dra.n_states)) - bad
    return any(comp & good for comp in _cyclic_sccs(nodes, succ))


def _rejecting_cycle_components(dra: Dra, succ) -> list:
    """Disjoint state sets whose full tours are cycles failing every pair.

    A cycle is rejecting iff for every pair it either touches B_i or misses
    G_i.  Within an SCC, any pair with G_i present but B_i absent forces a
    rejecting cycle to avoid G_i entirely, so those states are carved out and
    the remainder is re-decomposed until every surviving component supports a
    full tour that fails all pairs.
    """
    out: list = []
    work = [set(range(dra.n_states))]
    while work:
        nodes = work.pop()
        for comp in _cyclic_sccs(nodes, succ):
            forced = set()
            for bad, good in dra.pairs:
                if comp & good and not comp & bad:
                    forced |= comp & good
            if forced:
                work.append(comp - forced)
            else:
                out.append(comp)
    return out


def _rejecting_cycle_states(dra: Dra, succ) -> set:
    out: set = set()
    for comp in _rejecting_cycle_components(dra, succ):
        out |= comp
    return out


def _backward_closure(targets: set, succ) -> set:
    n = len(succ)
    pred = [set() for _ in range(n)]
    for s in range(n):
        for t in succ[s]:
            pred[t].add(s)
    seen = set(targets)
    frontier = list(targets)
    while frontier:
        v = frontier.pop()
        for u in pred[v]:
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    return seen


# ---------------------------------------------------------------------------
# Cached pipeline and lasso evaluation

@lru_cache(maxsize=None)
def _pipeline(f: Formula, cap: int):
    nba = ltl_to_nba(f, cap)
    dra = nba_to_dra(nba, cap)
    return nba, dra


def nba_for(f: Formula, cap: int = DEFAULT_STATE_CAP) -> Nba:
    return _pipeline(f, cap)[0]


def dra_for(f: Formula, cap: int = DEFAULT_STATE_CAP) -> Dra:
    return _pipeline(f, cap)[1]


def dra_accepts_lasso(dra: Dra, word: LassoWord) -> bool:
    """Run the lasso until the (state, cycle-position) pair repeats and check
    the Rabin condition on the states of the repeating cycle."""
    state = dra.initial
    for letter in word.prefix:
        state = dra.step(state, letter)
    seen: dict = {}
    trace: list = []
    pos = 0
    while (state, pos) not in seen:
        seen[(state, pos)] = len(trace)
        trace.append(state)
        state = dra.step(state, word.cycle[pos])
        pos = (pos + 1) % len(word.cycle)
    cycle_states = set(trace[seen[(state, pos)]:])
    return any(not (cycle_states & bad) and (cycle_states & good)
               for bad, good in dra.pairs)


def nba_accepts_lasso(nba: Nba, word: LassoWord) -> bool:
    """Independent membership check: search the NBA x lasso product for a
    reachable cycle through an accepting state."""
    n_prefix = len(word.prefix)
    n_pos = n_prefix + len(word.cycle)

    def succ_pos(i):
        return i + 1 if i + 1 < n_pos else n_prefix

    nodes = set()
    edges: dict = {}
    frontier = [(q, 0) for q in sorted(nba.initial)]
    nodes.update(frontier)
    while frontier:
        q, i = frontier.pop()
        nxt = []
        for q2 in nba.successors(q, word.letter_at(i)):
            node = (q2, succ_pos(i))
            nxt.append(node)
            if node not in nodes:
                nodes.add(node)
                frontier.append(node)
        edges[(q, i)] = nxt

    node_ids = {v: i for i, v in enumerate(sorted(nodes))}
    succ = [set() for _ in node_ids]
    for v, outs in edges.items():
        succ[node_ids[v]] = {node_ids[w] for w in outs}
    accepting_ids = {i for v, i in node_ids.items() if v[0] in nba.accepting}
    for comp in _cyclic_sccs(set(node_ids.values()), succ):
        if comp & accepting_ids:
            return True
    return False


def evaluate_lasso(f: Formula, word: LassoWord,
                   cap: int = DEFAULT_STATE_CAP) -> bool:
    """Whether the ultimately periodic word satisfies f, via the formula's DRA."""
    for letter in word.prefix + word.cycle:
        check_letter(f.alphabet, letter)
    return dra_accepts_lasso(dra_for(f, cap), word)


# ---------------------------------------------------------------------------
# Hierarchy classification

def classify(f: Formula, cap: int = DEFAULT_STATE_CAP) -> ClassReport:
    """Guarantee/safety/finitary membership from the DRA's cycle structure.

    The formula is in guarantee iff no reachable state on an accepting cycle
    can reach a rejecting cycle, and in safety iff no reachable state on a
    rejecting cycle can reach an accepting cycle.
    """
    dra = dra_for(f, cap)
    succ = _dra_successor_sets(dra)
    acc = _accepting_cycle_states(dra, succ)
    rej = _rejecting_cycle_states(dra, succ)
    in_guarantee = not (acc & _backward_closure(rej, succ))
    in_safety = not (rej & _backward_closure(acc, succ))
    in_finitary = in_guarantee and in_safety
    horizon = _decision_dfa(f, cap)[1] if in_finitary else None
    report = ClassReport(in_guarantee, in_safety, in_finitary, horizon)
    assert report.in_finitary == (report.in_guarantee and report.in_safety)
    return report


# ---------------------------------------------------------------------------
# Finitary DFA via progression

def _progression_dfa(f: Formula, cap: int):
    letters = all_letters(f.alphabet)
    start = canonical(f.root)
    ids = {start: 0}
    order = [start]
    transition: dict = {}
    frontier = [start]
    while frontier:
        node = frontier.pop(0)
        sid = ids[node]
        for letter in letters:
            if isinstance(node, (TrueConst, FalseConst)):
                transition[(sid, letter)] = sid
                continue
            succ = progress(f.with_root(node), letter).root
            if succ not in ids:
                if len(ids) >= cap:
                    raise AutomatonTooLargeError("DFA", cap)
                ids[succ] = len(ids)
                order.append(succ)
                frontier.append(succ)
            transition[(sid, letter)] = ids[succ]

    accepting = frozenset(i for i, n in enumerate(order) if isinstance(n, TrueConst))
    rejecting = frozenset(i for i, n in enumerate(order) if isinstance(n, FalseConst))
    sinks = accepting | rejecting

    # longest distance to a sink; a cycle outside the sinks means no horizon
    dist: dict = {}
    visiting: set = set()

    def depth(sid: int) -> int:
        if sid in sinks:
            return 0
        if sid in dist:
            return dist[sid]
        if sid in visiting:
            raise NotFinitaryError(
                f"progression of {node_to_text(order[sid])!r} cycles without reaching a sink")
        visiting.add(sid)
        d = 1 + max(depth(transition[(sid, letter)]) for letter in letters)
        visiting.discard(sid)
        dist[sid] = d
        return d

    horizon = depth(0)
    dfa = Dfa(tuple(order), f.alphabet, transition, 0, accepting, rejecting)
    return dfa, horizon


def _dra_quotient_dfa(f: Formula, cap: int):
    """Decision DFA read off the DRA's commitment structure.

    A DRA state that can only reach accepting (rejecting) cycles has every
    continuation accepted (rejected); those states collapse into the two
    sinks.  For a finitary formula the undecided remainder is acyclic: an
    undecided cycle would be an accepting cycle that reaches a rejecting one
    or vice versa, contradicting finitary membership.
    """
    dra = dra_for(f, cap)
    succ = _dra_successor_sets(dra)
    can_acc = _backward_closure(_accepting_cycle_states(dra, succ), succ)
    can_rej = _backward_closure(_rejecting_cycle_states(dra, succ), succ)
    letters = all_letters(f.alphabet)

    def tag(q: int):
        if q in can_acc and q not in can_rej:
            return "accept"
        if q in can_rej and q not in can_acc:
            return "reject"
        return f"undecided:{q}"

    start = tag(dra.initial)
    ids = {start: 0}
    order = [start]
    by_tag = {start: dra.initial}
    transition: dict = {}
    frontier = [start]
    while frontier:
        label = frontier.pop(0)
        sid = ids[label]
        for letter in letters:
            if label in ("accept", "reject"):
                transition[(sid, letter)] = sid
                continue
            succ_tag = tag(dra.step(by_tag[label], letter))
            if succ_tag not in ids:
                ids[succ_tag] = len(ids)
                order.append(succ_tag)
                by_tag[succ_tag] = dra.step(by_tag[label], letter)
                frontier.append(succ_tag)
            transition[(sid, letter)] = ids[succ_tag]

    accepting = frozenset(i for i, t in enumerate(order) if t == "accept")
    rejecting = frozenset(i for i, t in enumerate(order) if t == "reject")
    sinks = accepting | rejecting

    dist: dict = {}
    visiting: set = set()

    def depth(sid: int) -> int:
        if sid in sinks:
            return 0
        if sid in dist:
            return dist[sid]
        if sid in visiting:
            raise NotFinitaryError(f"{f} has undecided cycles; no finite horizon")
        visiting.add(sid)
        d = 1 + max(depth(transition[(sid, letter)]) for letter in letters)
        visiting.discard(sid)
        dist[sid] = d
        return d

    horizon = depth(0)
    return Dfa(tuple(order), f.alphabet, transition, 0, accepting, rejecting), horizon


@lru_cache(maxsize=None)
def _decision_dfa(f: Formula, cap: int):
    """Progression DFA when its state space closes syntactically, otherwise
    the commitment-quotient of the DRA (semantically constant subformulas can
    keep a purely syntactic progression from ever reaching its sinks)."""
    try:
        return _progression_dfa(f, cap)
    except NotFinitaryError:
        return _dra_quotient_dfa(f, cap)


def build_dfa_finitary(f: Formula, cap: int = DEFAULT_STATE_CAP):
    """DFA over progression formulas plus its horizon.

    Requires a finitary formula: every word reaches the True or False sink
    within `horizon` letters, and the sink matches the formula's verdict.
    """
    if not classify(f, cap).in_finitary:
        raise NotFinitaryError(f"{f} is not decidable within a finite horizon")
    return _decision_dfa(f, cap)


def dfa_verdict(dfa: Dfa, letters) -> bool:
    """Consume letters until a sink decides; letters must suffice to decide."""
    state = dfa.initial
    for letter in letters:
        if state in dfa.accepting:
            return True
        if state in dfa.rejecting:
            return False
        state = dfa.step(state, letter)
    if state in dfa.accepting:
        return True
    if state in dfa.rejecting:
        return False
    raise ValueError("prefix too short to decide the formula")


# ---------------------------------------------------------------------------
# Text serialization (debugging)

def dump_nba(nba: Nba) -> str:
    lines = [f"nba states={nba.n_states} alphabet={','.join(nba.alphabet)}"]
    lines.append("initial " + ",".join(str(s) for s in sorted(nba.initial)))
    lines.append("accepting " + ",".join(str(s) for s in sorted(nba.accepting)))
    for (s, letter), targets in sorted(
            nba.transitions.items(),
            key=lambda kv: (kv[0][0], letter_mask(nba.alphabet, kv[0][1]))):
        mask = letter_mask(nba.alphabet, letter)
        for t in sorted(targets):
            lines.append(f"{s}\t{mask}\t{t}")
    return "\n".join(lines) + "\n"


def dump_dra(dra: Dra) -> str:
    lines = [f"dra states={dra.n_states} alphabet={','.join(dra.alphabet)}"]
    lines.append(f"initial {dra.initial}")
    for i, (bad, good) in enumerate(dra.pairs):
        b = ",".join(str(s) for s in sorted(bad))
        g = ",".join(str(s) for s in sorted(good))
        lines.append(f"pair {i} B={b} G={g}")
    for (s, letter), t in sorted(
            dra.transition.items(),
            key=lambda kv: (kv[0][0], letter_mask(dra.alphabet, kv[0][1]))):
        lines.append(f"{s}\t{letter_mask(dra.alphabet, letter)}\t{t}")
    return "\n".join(lines) + "\n"


def dump_dfa(dfa: Dfa) -> str:
    lines = [f"dfa states={len(dfa.states)} alphabet={','.join(dfa.alphabet)}"]
    lines.append(f"initial {dfa.initial}")
    lines.append("accepting " + ",".join(str(s) for s in sorted(dfa.accepting)))
    lines.append("rejecting " + ",".join(str(s) for s in sorted(dfa.rejecting)))
    for (s, letter), t in sorted(
            dfa.transition.items(),
            key=lambda kv: (kv[0][0], letter_mask(dfa.alphabet, kv[0][1]))):
        lines.append(f"{s}\t{letter_mask(dfa.alphabet, letter)}\t{t}")
    return "\n".join(lines) + "\n"
