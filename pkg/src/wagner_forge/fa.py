"""Finite-word automata: NFAs, complete DFAs and the usual regular operations.

Words are plain strings whose characters are letters of the automaton's
alphabet. Stored NFAs never carry epsilon transitions; every constructor
eliminates them on the spot.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

BINARY: tuple[str, ...] = ("0", "1")


class AlphabetError(ValueError):
    """Raised on alphabet mismatches or letters outside the alphabet."""


def check_alphabet(alphabet: Iterable[str]) -> tuple[str, ...]:
    letters = tuple(alphabet)
    if not letters:
        raise AlphabetError("alphabet must be nonempty")
    if len(set(letters)) != len(letters):
        raise AlphabetError(f"duplicate letters in alphabet {letters!r}")
    for a in letters:
        if not isinstance(a, str) or len(a) != 1:
            raise AlphabetError(f"letters must be single characters, got {a!r}")
    return letters


def same_alphabet(*automata) -> tuple[str, ...]:
    alphabet = automata[0].alphabet
    for other in automata[1:]:
        if other.alphabet != alphabet:
            raise AlphabetError(f"alphabet mismatch: {alphabet!r} vs {other.alphabet!r}")
    return alphabet


def letter_indices(alphabet: tuple[str, ...], word: str) -> list[int]:
    idx = {a: i for i, a in enumerate(alphabet)}
    try:
        return [idx[a] for a in word]
    except KeyError as exc:
        raise AlphabetError(f"letter {exc.args[0]!r} not in alphabet {alphabet!r}") from None


@dataclass(frozen=True)
class NFA:
    """Epsilon-free nondeterministic automaton; ``delta[state][letter_index]``."""

    alphabet: tuple[str, ...]
    delta: tuple[tuple[frozenset[int], ...], ...]
    initial: int
    finals: frozenset[int]

    def __post_init__(self):
        check_alphabet(self.alphabet)
        n = len(self.delta)
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} out of range")
        if any(not 0 <= f < n for f in self.finals):
            raise ValueError("final state out of range")
        for row in self.delta:
            if len(row) != len(self.alphabet):
                raise ValueError("transition row does not match alphabet size")
            for targets in row:
                if any(not 0 <= q < n for q in targets):
                    raise ValueError("transition target out of range")

    @property
    def n(self) -> int:
        return len(self.delta)

    @classmethod
    def from_transitions(cls, n, alphabet, transitions, initial, finals) -> "NFA":
        alphabet = check_alphabet(alphabet)
        idx = {a: i for i, a in enumerate(alphabet)}
        table = [[set() for _ in alphabet] for _ in range(n)]
        for p, a, q in transitions:
            if a not in idx:
                raise AlphabetError(f"letter {a!r} not in alphabet {alphabet!r}")
            table[p][idx[a]].add(q)
        return cls(alphabet, _freeze(table), initial, frozenset(finals))

    def transitions(self) -> Iterator[tuple[int, str, int]]:
        for p, row in enumerate(self.delta):
            for i, targets in enumerate(row):
                for q in sorted(targets):
                    yield p, self.alphabet[i], q


@dataclass(frozen=True)
class DFA:
    """Complete deterministic automaton; ``delta[state][letter_index]``."""

    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    initial: int
    finals: frozenset[int]

    def __post_init__(self):
        check_alphabet(self.alphabet)
        n = len(self.delta)
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} out of range")
        if any(not 0 <= f < n for f in self.finals):
            raise ValueError("final state out of range")
        for row in self.delta:
            if len(row) != len(self.alphabet):
                raise ValueError("DFA must be complete: one successor per letter")
            if any(not 0 <= q < n for q in row):
                raise ValueError("transition target out of range")

    @property
    def n(self) -> int:
        return len(self.delta)

    def run(self, word: str, state: int | None = None) -> int:
        q = self.initial if state is None else state
        for i in letter_indices(self.alphabet, word):
            q = self.delta[q][i]
        return q

    def transitions(self) -> Iterator[tuple[int, str, int]]:
        for p, row in enumerate(self.delta):
            for i, q in enumerate(row):
                yield p, self.alphabet[i], q


Automaton = Union[NFA, DFA]


def _freeze(table) -> tuple[tuple[frozenset[int], ...], ...]:
    return tuple(tuple(frozenset(t) for t in row) for row in table)


def as_nfa(a: Automaton) -> NFA:
    if isinstance(a, NFA):
        return a
    return NFA(a.alphabet, tuple(tuple(frozenset([q]) for q in row) for row in a.delta), a.initial, a.finals)


# --- constructors -----------------------------------------------------------

def nfa_empty(alphabet=BINARY) -> NFA:
    alphabet = check_alphabet(alphabet)
    return NFA(alphabet, _freeze([[()] * len(alphabet)]), 0, frozenset())


def nfa_epsilon(alphabet=BINARY) -> NFA:
    alphabet = check_alphabet(alphabet)
    return NFA(alphabet, _freeze([[()] * len(alphabet)]), 0, frozenset([0]))


def nfa_letter(a: str, alphabet=BINARY) -> NFA:
    alphabet = check_alphabet(alphabet)
    return NFA.from_transitions(2, alphabet, [(0, a, 1)], 0, [1])


def nfa_word(word: str, alphabet=BINARY) -> NFA:
    alphabet = check_alphabet(alphabet)
    trans = [(i, a, i + 1) for i, a in enumerate(word)]
    return NFA.from_transitions(len(word) + 1, alphabet, trans, 0, [len(word)])


def nfa_union(a: Automaton, b: Automaton) -> NFA:
    """Fresh initial state copying the outgoing edges of both initials."""
    alphabet = same_alphabet(a, b)
    a, b = as_nfa(a), as_nfa(b)
    off = 1 + a.n
    table = [[set() for _ in alphabet] for _ in range(1 + a.n + b.n)]
    for p, row in enumerate(a.delta):
        for i, ts in enumerate(row):
            table[1 + p][i] |= {1 + q for q in ts}
    for p, row in enumerate(b.delta):
        for i, ts in enumerate(row):
            table[off + p][i] |= {off + q for q in ts}
    for i in range(len(alphabet)):
        table[0][i] = table[1 + a.initial][i] | table[off + b.initial][i]
    finals = {1 + f for f in a.finals} | {off + f for f in b.finals}
    if a.initial in a.finals or b.initial in b.finals:
        finals.add(0)
    return NFA(alphabet, _freeze(table), 0, frozenset(finals))


def nfa_concat(a: Automaton, b: Automaton) -> NFA:
    """Every final state of ``a`` also behaves like the initial state of ``b``."""
    alphabet = same_alphabet(a, b)
    a, b = as_nfa(a), as_nfa(b)
    off = a.n
    table = [[set() for _ in alphabet] for _ in range(a.n + b.n)]
    for p, row in enumerate(a.delta):
        for i, ts in enumerate(row):
            table[p][i] |= set(ts)
    for p, row in enumerate(b.delta):
        for i, ts in enumerate(row):
            table[off + p][i] |= {off + q for q in ts}
    for f in a.finals:
        for i in range(len(alphabet)):
            table[f][i] |= table[off + b.initial][i]
    finals = {off + f for f in b.finals}
    if b.initial in b.finals:
        finals |= set(a.finals)
    return NFA(alphabet, _freeze(table), a.initial, frozenset(finals))


def nfa_star(a: Automaton) -> NFA:
    """Fresh accepting initial state with no incoming edges; finals loop back."""
    alphabet = a.alphabet
    a = as_nfa(a)
    table = [[set() for _ in alphabet] for _ in range(1 + a.n)]
    for p, row in enumerate(a.delta):
        for i, ts in enumerate(row):
            table[1 + p][i] |= {1 + q for q in ts}
    start = [set(table[1 + a.initial][i]) for i in range(len(alphabet))]
    for i in range(len(alphabet)):
        table[0][i] = set(start[i])
        for f in a.finals:
            table[1 + f][i] |= start[i]
    finals = {0} | {1 + f for f in a.finals}
    return NFA(alphabet, _freeze(table), 0, frozenset(finals))


def nfa_build(op: str, *args, alphabet=BINARY) -> NFA:
    """Dispatch on ``empty | epsilon | letter | union | concat | star``."""
    if op == "empty":
        return nfa_empty(alphabet)
    if op == "epsilon":
        return nfa_epsilon(alphabet)
    if op == "letter":
        (a,) = args
        return nfa_letter(a, alphabet)
    if op == "union":
        return nfa_union(*args)
    if op == "concat":
        return nfa_concat(*args)
    if op == "star":
        return nfa_star(*args)
    raise ValueError(f"unknown NFA operation {op!r}")


# --- membership -------------------------------------------------------------

def accepts(a: Automaton, word: str) -> bool:
    letters = letter_indices(a.alphabet, word)
    if isinstance(a, DFA):
        q = a.initial
        for i in letters:
            q = a.delta[q][i]
        return q in a.finals
    current = {a.initial}
    for i in letters:
        current = set().union(*(a.delta[q][i] for q in current)) if current else set()
    return bool(current & a.finals)


def all_words(alphabet, max_len: int) -> Iterator[str]:
    """Length-lexicographic enumeration of all words up to ``max_len``."""
    for length in range(max_len + 1):
        for letters in itertools.product(alphabet, repeat=length):
            yield "".join(letters)


def enumerate_words(a: Automaton, max_len: int) -> list[str]:
    return [w for w in all_words(a.alphabet, max_len) if accepts(a, w)]


# --- structure --------------------------------------------------------------

def _forward(a: NFA) -> set[int]:
    seen = {a.initial}
    todo = deque(seen)
    while todo:
        p = todo.popleft()
        for ts in a.delta[p]:
            for q in ts:
                if q not in seen:
                    seen.add(q)
                    todo.append(q)
    return seen


def is_empty(a: Automaton) -> bool:
    return not (_forward(as_nfa(a)) & a.finals)


def trim(a: Automaton) -> NFA:
    """Drop states that are unreachable or cannot reach a final state.

    The initial state is always kept, so the empty language trims to a single
    non-accepting state.
    """
    a = as_nfa(a)
    fwd = _forward(a)
    back: dict[int, set[int]] = {p: set() for p in range(a.n)}
    for p, row in enumerate(a.delta):
        for ts in row:
            for q in ts:
                back[q].add(p)
    co = set(a.finals)
    todo = deque(co)
    while todo:
        q = todo.popleft()
        for p in back[q]:
            if p not in co:
                co.add(p)
                todo.append(p)
    keep = sorted((fwd & co) | {a.initial}, key=lambda s: (s != a.initial, s))
    ren = {s: i for i, s in enumerate(keep)}
    table = [[{ren[q] for q in a.delta[p][i] if q in ren} for i in range(len(a.alphabet))] for p in keep]
    finals = frozenset(ren[f] for f in a.finals if f in ren)
    return NFA(a.alphabet, _freeze(table), 0, finals)


def determinize(a: Automaton) -> DFA:
    """Subset construction over reachable subsets; the empty subset is the dead state."""
    if isinstance(a, DFA):
        return a
    k = len(a.alphabet)
    start = frozenset([a.initial])
    ids = {start: 0}
    order = [start]
    rows: list[list[int]] = []
    i = 0
    while i < len(order):
        s = order[i]
        row = []
        for x in range(k):
            t = frozenset().union(*(a.delta[q][x] for q in s)) if s else frozenset()
            if t not in ids:
                ids[t] = len(order)
                order.append(t)
            row.append(ids[t])
        rows.append(row)
        i += 1
    finals = frozenset(j for j, s in enumerate(order) if s & a.finals)
    return DFA(a.alphabet, tuple(tuple(r) for r in rows), 0, finals)


def canonical(d: DFA) -> DFA:
    """Renumber reachable states in BFS order from the initial state."""
    ren = {d.initial: 0}
    order = [d.initial]
    i = 0
    while i < len(order):
        for q in d.delta[order[i]]:
            if q not in ren:
                ren[q] = len(order)
                order.append(q)
        i += 1
    delta = tuple(tuple(ren[q] for q in d.delta[p]) for p in order)
    return DFA(d.alphabet, delta, 0, frozenset(ren[f] for f in d.finals if f in ren))


def minimize(d: DFA) -> DFA:
    """Moore partition refinement on the reachable part, canonically numbered."""
    d = canonical(d)
    block = [1 if q in d.finals else 0 for q in range(d.n)]
    while True:
        sigs = {}
        new = []
        for q in range(d.n):
            sig = (block[q],) + tuple(block[t] for t in d.delta[q])
            new.append(sigs.setdefault(sig, len(sigs)))
        stable = len(sigs) == len(set(block))
        block = new
        if stable:
            break
    reps: dict[int, int] = {}
    for q in range(d.n):
        reps.setdefault(block[q], q)
    delta = [None] * len(reps)
    for b, q in reps.items():
        delta[b] = tuple(block[t] for t in d.delta[q])
    finals = frozenset(block[f] for f in d.finals)
    return canonical(DFA(d.alphabet, tuple(delta), block[d.initial], finals))


def determinize_minimize(a: Automaton) -> DFA:
    return minimize(determinize(a))


def dfa_complement(a: DFA) -> DFA:
    a = determinize(a)
    return DFA(a.alphabet, a.delta, a.initial, frozenset(range(a.n)) - a.finals)


def _product(a: DFA, b: DFA, accept) -> DFA:
    same_alphabet(a, b)
    a, b = determinize(a), determinize(b)
    start = (a.initial, b.initial)
    ids = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        p, q = order[i]
        row = []
        for x in range(len(a.alphabet)):
            t = (a.delta[p][x], b.delta[q][x])
            if t not in ids:
                ids[t] = len(order)
                order.append(t)
            row.append(ids[t])
        rows.append(tuple(row))
        i += 1
    finals = frozenset(j for j, (p, q) in enumerate(order) if accept(p in a.finals, q in b.finals))
    return DFA(a.alphabet, tuple(rows), 0, finals)


def dfa_intersect(a: DFA, b: DFA) -> DFA:
    return minimize(_product(a, b, lambda x, y: x and y))


def dfa_union(a: DFA, b: DFA) -> DFA:
    return minimize(_product(a, b, lambda x, y: x or y))


def dfa_boolean(op: str, *args: DFA) -> DFA:
    """Dispatch on ``complement | intersect | union`` (products are minimized)."""
    if op == "complement":
        (a,) = args
        return dfa_complement(a)
    if op == "intersect":
        return dfa_intersect(*args)
    if op == "union":
        return dfa_union(*args)
    raise ValueError(f"unknown DFA operation {op!r}")


def dfa_equivalent(a: Automaton, b: Automaton) -> bool:
    """Exact language equality via emptiness of the symmetric difference."""
    sym = _product(determinize(a), determinize(b), lambda x, y: x != y)
    return is_empty(sym)


def isomorphic(a: DFA, b: DFA) -> bool:
    return canonical(a) == canonical(b)
