"""LTL syntax: abstract syntax trees, parsing, normal forms and progression.

Formulas are interpreted over infinite words whose letters are subsets of a
fixed, ordered atom alphabet.  The surface grammar (ASCII) is::

    formula := iff
    iff     := implies ("<->" iff)?          # sugar, desugared at parse time
    implies := until ("->" implies)?         # sugar, desugared at parse time
    until   := or ("U" until)?               # right-associative
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := ("!" | "X" | "F" | "G") unary | primary
    primary := "(" formula ")" | "true" | "false" | atom

Atoms match ``[a-zA-Z_][a-zA-Z0-9_]*``; the names ``X F G U true false`` are
reserved.  Whitespace is insignificant.  Binding strength is
``! X F G  >  &  >  |  >  U``.  The release operator has no surface syntax;
it only appears in negation normal form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .exceptions import FormulaSyntaxError, UnknownAtomError

Letter = frozenset  # subset of the atom alphabet that holds at one step

MAX_ALPHABET = 8


# ---------------------------------------------------------------------------
# AST nodes

@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class Atom(Node):
    name: str


@dataclass(frozen=True)
class TrueConst(Node):
    pass


@dataclass(frozen=True)
class FalseConst(Node):
    pass


@dataclass(frozen=True)
class Not(Node):
    child: Node


@dataclass(frozen=True)
class And(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Or(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Next(Node):
    child: Node


@dataclass(frozen=True)
class Always(Node):
    child: Node


@dataclass(frozen=True)
class Eventually(Node):
    child: Node


@dataclass(frozen=True)
class Until(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Release(Node):
    left: Node
    right: Node


TRUE = TrueConst()
FALSE = FalseConst()


@dataclass(frozen=True)
class Formula:
    """An LTL formula together with its declared atom alphabet."""

    root: Node
    alphabet: tuple[str, ...]

    def __post_init__(self):
        if len(self.alphabet) > MAX_ALPHABET:
            raise ValueError(f"alphabet capped at {MAX_ALPHABET} atoms")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet contains duplicate atom names")
        missing = atoms_of(self.root) - set(self.alphabet)
        if missing:
            raise UnknownAtomError(sorted(missing)[0])

    def __str__(self) -> str:
        return node_to_text(self.root)

    def with_root(self, root: Node) -> "Formula":
        return Formula(root, self.alphabet)


def atoms_of(node: Node) -> set[str]:
    if isinstance(node, Atom):
        return {node.name}
    if isinstance(node, (TrueConst, FalseConst)):
        return set()
    if isinstance(node, (Not, Next, Always, Eventually)):
        return atoms_of(node.child)
    return atoms_of(node.left) | atoms_of(node.right)


# ---------------------------------------------------------------------------
# Letters and lasso words

@lru_cache(maxsize=None)
def all_letters(alphabet: tuple[str, ...]) -> tuple[Letter, ...]:
    """Every subset of the alphabet, ordered by bitmask."""
    out = []
    for mask in range(1 << len(alphabet)):
        out.append(frozenset(a for i, a in enumerate(alphabet) if mask >> i & 1))
    return tuple(out)


def letter_mask(alphabet: tuple[str, ...], letter: Letter) -> int:
    return sum(1 << i for i, a in enumerate(alphabet) if a in letter)


def check_letter(alphabet: tuple[str, ...], letter: Letter) -> None:
    extra = set(letter) - set(alphabet)
    if extra:
        raise UnknownAtomError(sorted(extra)[0])


@dataclass(frozen=True)
class LassoWord:
    """The ultimately periodic infinite word ``prefix . cycle^omega``."""

    prefix: tuple[Letter, ...]
    cycle: tuple[Letter, ...]

    def __post_init__(self):
        if len(self.cycle) < 1:
            raise ValueError("lasso cycle must be nonempty")

    def letter_at(self, i: int) -> Letter:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def first(self, n: int) -> tuple[Letter, ...]:
        return tuple(self.letter_at(i) for i in range(n))

    def prepend(self, letter: Letter) -> "LassoWord":
        return LassoWord((letter,) + self.prefix, self.cycle)


def lasso(prefix, cycle) -> LassoWord:
    """Build a lasso word from iterables of atom collections."""
    return LassoWord(tuple(frozenset(l) for l in prefix),
                     tuple(frozenset(l) for l in cycle))


# ---------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<lpar>\()|(?P<rpar>\))|(?P<iff><->)|(?P<imp>->)|(?P<and>&)"
    r"|(?P<or>\|)|(?P<not>!)|(?P<ident>[a-zA-Z_][a-zA-Z0-9_]*))"
)

_RESERVED = {"X", "F", "G", "U", "true", "false"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise FormulaSyntaxError(f"unexpected character {stripped[0]!r}", at, "a token")
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "ident" and value in _RESERVED:
            kind = value
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens, alphabet):
        self.tokens = tokens
        self.i = 0
        self.alphabet = alphabet

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, expected: str):
        kind, value, pos = self.tokens[self.i]
        shown = "end of input" if kind == "eof" else repr(value)
        raise FormulaSyntaxError(f"unexpected {shown}", pos, expected)

    def parse_formula(self) -> Node:
        return self.parse_iff()

    def parse_iff(self) -> Node:
        left = self.parse_implies()
        if self.peek() == "iff":
            self.advance()
            right = self.parse_iff()
            return And(Or(Not(left), right), Or(Not(right), left))
        return left

    def parse_implies(self) -> Node:
        left = self.parse_until()
        if self.peek() == "imp":
            self.advance()
            right = self.parse_implies()
            return Or(Not(left), right)
        return left

    def parse_until(self) -> Node:
        left = self.parse_or()
        if self.peek() == "U":
            self.advance()
            right = self.parse_until()
            return Until(left, right)
        return left

    def parse_or(self) -> Node:
        node = self.parse_and()
        while self.peek() == "or":
            self.advance()
            node = Or(node, self.parse_and())
        return node

    def parse_and(self) -> Node:
        node = self.parse_unary()
        while self.peek() == "and":
            self.advance()
            node = And(node, self.parse_unary())
        return node

    def parse_unary(self) -> Node:
        kind = self.peek()
        if kind == "not":
            self.advance()
            return Not(self.parse_unary())
        if kind == "X":
            self.advance()
            return Next(self.parse_unary())
        if kind == "F":
            self.advance()
            return Eventually(self.parse_unary())
        if kind == "G":
            self.advance()
            return Always(self.parse_unary())
        return self.parse_primary()

    def parse_primary(self) -> Node:
        kind, value, pos = self.tokens[self.i]
        if kind == "lpar":
            self.advance()
            node = self.parse_formula()
            if self.peek() != "rpar":
                self.error("')'")
            self.advance()
            return node
        if kind == "true":
            self.advance()
            return TRUE
        if kind == "false":
            self.advance()
            return FALSE
        if kind == "ident":
            self.advance()
            if value not in self.alphabet:
                raise UnknownAtomError(value)
            return Atom(value)
        self.error("a formula")


def parse(text: str, alphabet) -> Formula:
    """Parse formula text over the given (ordered) atom alphabet."""
    alphabet = tuple(alphabet)
    parser = _Parser(_tokenize(text), alphabet)
    root = parser.parse_formula()
    if parser.peek() != "eof":
        parser.error("end of input")
    return Formula(root, alphabet)


def identifiers_in(text: str) -> list[str]:
    """Non-reserved identifiers appearing in formula text, in first-seen order."""
    seen: list[str] = []
    for kind, value, _ in _tokenize(text):
        if kind == "ident" and value not in seen:
            seen.append(value)
    return seen


# ---------------------------------------------------------------------------
# Printing

_LEVEL_UNTIL, _LEVEL_OR, _LEVEL_AND, _LEVEL_UNARY, _LEVEL_ATOM = 1, 2, 3, 4, 5


def _level(node: Node) -> int:
    if isinstance(node, (Atom, TrueConst, FalseConst)):
        return _LEVEL_ATOM
    if isinstance(node, (Not, Next, Always, Eventually)):
        return _LEVEL_UNARY
    if isinstance(node, And):
        return _LEVEL_AND
    if isinstance(node, Or):
        return _LEVEL_OR
    return _LEVEL_UNTIL


def _wrap(node: Node, min_level: int) -> str:
    text = node_to_text(node)
    return f"({text})" if _level(node) < min_level else text


def node_to_text(node: Node) -> str:
    """Render a node with minimal parentheses; re-parses to an equal tree.

    Release has no surface syntax and is rendered as ``R`` for debugging only.
    """
    if isinstance(node, Atom):
        return node.name
    if isinstance(node, TrueConst):
        return "true"
    if isinstance(node, FalseConst):
        return "false"
    if isinstance(node, Not):
        return "!" + _wrap(node.child, _LEVEL_UNARY)
    if isinstance(node, Next):
        return "X " + _wrap(node.child, _LEVEL_UNARY)
    if isinstance(node, Eventually):
        return "F " + _wrap(node.child, _LEVEL_UNARY)
    if isinstance(node, Always):
        return "G " + _wrap(node.child, _LEVEL_UNARY)
    if isinstance(node, And):
        # left-associative: a same-level right child needs parentheses
        return f"{_wrap(node.left, _LEVEL_AND)} & {_wrap(node.right, _LEVEL_AND + 1)}"
    if isinstance(node, Or):
        return f"{_wrap(node.left, _LEVEL_OR)} | {_wrap(node.right, _LEVEL_OR + 1)}"
    if isinstance(node, Until):
        # right-associative: parenthesize a left operand at the same level
        return f"{_wrap(node.left, _LEVEL_OR)} U {_wrap(node.right, _LEVEL_UNTIL)}"
    if isinstance(node, Release):
        return f"{_wrap(node.left, _LEVEL_OR)} R {_wrap(node.right, _LEVEL_UNTIL)}"
    raise TypeError(f"not a formula node: {node!r}")


# ---------------------------------------------------------------------------
# Negation normal form

def to_nnf(f: Formula) -> Formula:
    """Push negations to atoms; G becomes false-Release, F becomes true-Until."""
    return f.with_root(_nnf(f.root, negate=False))


def _nnf(node: Node, negate: bool) -> Node:
    if isinstance(node, Atom):
        return Not(node) if negate else node
    if isinstance(node, TrueConst):
        return FALSE if negate else TRUE
    if isinstance(node, FalseConst):
        return TRUE if negate else FALSE
    if isinstance(node, Not):
        return _nnf(node.child, not negate)
    if isinstance(node, And):
        ctor = Or if negate else And
        return ctor(_nnf(node.left, negate), _nnf(node.right, negate))
    if isinstance(node, Or):
        ctor = And if negate else Or
        return ctor(_nnf(node.left, negate), _nnf(node.right, negate))
    if isinstance(node, Next):
        return Next(_nnf(node.child, negate))
    if isinstance(node, Eventually):  # F p == true U p ; !F p == false R !p
        if negate:
            return Release(FALSE, _nnf(node.child, True))
        return Until(TRUE, _nnf(node.child, False))
    if isinstance(node, Always):  # G p == false R p ; !G p == true U !p
        if negate:
            return Until(TRUE, _nnf(node.child, True))
        return Release(FALSE, _nnf(node.child, False))
    if isinstance(node, Until):
        ctor = Release if negate else Until
        return ctor(_nnf(node.left, negate), _nnf(node.right, negate))
    if isinstance(node, Release):
        ctor = Until if negate else Release
        return ctor(_nnf(node.left, negate), _nnf(node.right, negate))
    raise TypeError(f"not a formula node: {node!r}")


def is_nnf(node: Node) -> bool:
    """True for the tableau core: negations only on atoms, no F/G sugar."""
    if isinstance(node, Not):
        return isinstance(node.child, Atom)
    if isinstance(node, (Atom, TrueConst, FalseConst)):
        return True
    if isinstance(node, (Always, Eventually)):
        return False
    if isinstance(node, Next):
        return is_nnf(node.child)
    return is_nnf(node.left) and is_nnf(node.right)


# ---------------------------------------------------------------------------
# Syntactic canonicalization (used by progression)

def _sort_key(node: Node) -> str:
    return repr(node)


def _flatten(node: Node, op) -> Iterator[Node]:
    if isinstance(node, op):
        yield from _flatten(node.left, op)
        yield from _flatten(node.right, op)
    else:
        yield node


def canonical(node: Node) -> Node:
    """Constant folding, And/Or flattening with deduplication, sorted children.

    Purely syntactic: structurally identical output for logically identical
    expansions, no semantic equivalence checking.
    """
    if isinstance(node, (Atom, TrueConst, FalseConst)):
        return node
    if isinstance(node, Not):
        child = canonical(node.child)
        if isinstance(child, TrueConst):
            return FALSE
        if isinstance(child, FalseConst):
            return TRUE
        if isinstance(child, Not):
            return child.child
        return Not(child)
    if isinstance(node, (And, Or)):
        op = type(node)
        unit, absorb = (TRUE, FALSE) if op is And else (FALSE, TRUE)
        parts: dict[Node, None] = {}
        for raw in _flatten(node, op):
            part = canonical(raw)
            if isinstance(part, type(absorb)):
                return absorb
            if isinstance(part, type(unit)):
                continue
            for sub in _flatten(part, op):
                parts.setdefault(sub, None)
        if not parts:
            return unit
        ordered = sorted(parts, key=_sort_key)
        out = ordered[-1]
        for part in reversed(ordered[:-1]):
            out = op(part, out)
        return out
    if isinstance(node, (Next, Eventually, Always)):
        child = canonical(node.child)
        if isinstance(child, (TrueConst, FalseConst)):
            return child
        return type(node)(child)
    if isinstance(node, Until):
        left, right = canonical(node.left), canonical(node.right)
        if isinstance(right, (TrueConst, FalseConst)):
            return right
        if isinstance(left, FalseConst):
            return right
        return Until(left, right)
    if isinstance(node, Release):
        left, right = canonical(node.left), canonical(node.right)
        if isinstance(right, (TrueConst, FalseConst)):
            return right
        if isinstance(left, TrueConst):
            return right
        return Release(left, right)
    raise TypeError(f"not a formula node: {node!r}")


# ---------------------------------------------------------------------------
# Progression

def progress(f: Formula, letter: Letter) -> Formula:
    """One-step progression: ``letter . w`` satisfies f iff w satisfies the result."""
    check_letter(f.alphabet, letter)
    return f.with_root(canonical(_progress(f.root, letter)))


def _progress(node: Node, l: Letter) -> Node:
    if isinstance(node, Atom):
        return TRUE if node.name in l else FALSE
    if isinstance(node, (TrueConst, FalseConst)):
        return node
    if isinstance(node, Not):
        return Not(_progress(node.child, l))
    if isinstance(node, And):
        return And(_progress(node.left, l), _progress(node.right, l))
    if isinstance(node, Or):
        return Or(_progress(node.left, l), _progress(node.right, l))
    if isinstance(node, Next):
        return node.child
    if isinstance(node, Eventually):  # F p == p | X F p
        return Or(_progress(node.child, l), node)
    if isinstance(node, Always):  # G p == p & X G p
        return And(_progress(node.child, l), node)
    if isinstance(node, Until):  # p U q == q | (p & X(p U q))
        return Or(_progress(node.right, l), And(_progress(node.left, l), node))
    if isinstance(node, Release):  # p R q == q & (p | X(p R q))
        return And(_progress(node.right, l), Or(_progress(node.left, l), node))
    raise TypeError(f"not a formula node: {node!r}")
