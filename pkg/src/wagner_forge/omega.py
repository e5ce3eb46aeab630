"""Automata on infinite words.

Two machine kinds live here:

* :class:`NBW`, a nondeterministic Buchi automaton, used for omega-powers;
* :class:`DWA`, a complete deterministic weak automaton. Every loop SCC of a
  DWA is uniformly accepting or rejecting, and a run accepts iff the SCC it
  is eventually trapped in is accepting.

Infinite words are probed through :class:`Lasso` values ``u v v v ...``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator

from . import fa
from .fa import BINARY, DFA, NFA, Automaton, check_alphabet, letter_indices, same_alphabet
from .graph import is_loop, shortest_path, tarjan_scc


class WeaknessError(RuntimeError):
    """A DWA-producing operation broke SCC-uniform acceptance."""

    def __init__(self, message: str, witness: list[int] | None = None):
        super().__init__(message)
        self.witness = witness or []


@dataclass(frozen=True)
class Lasso:
    """The ultimately periodic word ``u v^omega``."""

    u: str
    v: str

    def __post_init__(self):
        if not self.v:
            raise ValueError("lasso cycle must be nonempty")

    def __str__(self):
        return f"{self.u}({self.v})^w"

    def prefix(self, n: int) -> str:
        out = self.u[:n]
        while len(out) < n:
            out += self.v
        return out[:n]

    def letter(self, i: int) -> str:
        if i < len(self.u):
            return self.u[i]
        return self.v[(i - len(self.u)) % len(self.v)]

    def to_dict(self) -> dict:
        return {"u": self.u, "v": self.v}

    @classmethod
    def from_dict(cls, d: dict) -> "Lasso":
        return cls(d["u"], d["v"])


def all_lassos(alphabet=BINARY, max_u: int = 4, max_v: int = 4) -> Iterator[Lasso]:
    """Every lasso with ``|u| <= max_u`` and ``1 <= |v| <= max_v``."""
    for u in fa.all_words(alphabet, max_u):
        for length in range(1, max_v + 1):
            for v in itertools.product(alphabet, repeat=length):
                yield Lasso(u, "".join(v))


@dataclass(frozen=True)
class NBW:
    """Nondeterministic Buchi automaton; ``delta[state][letter_index]``."""

    alphabet: tuple[str, ...]
    delta: tuple[tuple[frozenset[int], ...], ...]
    initial: int
    accepting: frozenset[int]

    def __post_init__(self):
        check_alphabet(self.alphabet)
        n = len(self.delta)
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        if any(not 0 <= q < n for q in self.accepting):
            raise ValueError("accepting state out of range")
        for row in self.delta:
            if len(row) != len(self.alphabet) or any(not 0 <= q < n for ts in row for q in ts):
                raise ValueError("malformed transition row")

    @property
    def n(self) -> int:
        return len(self.delta)

    @classmethod
    def from_transitions(cls, n, alphabet, transitions, initial, accepting) -> "NBW":
        nfa = NFA.from_transitions(n, alphabet, transitions, initial, [])
        return cls(nfa.alphabet, nfa.delta, initial, frozenset(accepting))

    def transitions(self) -> Iterator[tuple[int, str, int]]:
        for p, row in enumerate(self.delta):
            for i, targets in enumerate(row):
                for q in sorted(targets):
                    yield p, self.alphabet[i], q


@dataclass(frozen=True)
class DWA:
    """Complete deterministic weak automaton with a per-state acceptance bit."""

    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    initial: int
    accepting: frozenset[int]

    def __post_init__(self):
        # Shares validation with DFA (completeness included).
        DFA(self.alphabet, self.delta, self.initial, self.accepting)

    @property
    def n(self) -> int:
        return len(self.delta)

    def run(self, word: str, state: int | None = None) -> int:
        q = self.initial if state is None else state
        for i in letter_indices(self.alphabet, word):
            q = self.delta[q][i]
        return q

    def rooted(self, state: int) -> "DWA":
        return DWA(self.alphabet, self.delta, state, self.accepting)

    def transitions(self) -> Iterator[tuple[int, str, int]]:
        for p, row in enumerate(self.delta):
            for i, q in enumerate(row):
                yield p, self.alphabet[i], q


# --- SCC structure of DWAs ---------------------------------------------------

@dataclass(frozen=True)
class SCCInfo:
    comps: list[list[int]]
    comp_of: list[int]
    loops: list[bool]


def dwa_sccs(w: DWA, reachable_only: bool = True) -> SCCInfo:
    succ = lambda q: w.delta[q]  # noqa: E731
    comps, comp_of = tarjan_scc(w.n, succ, [w.initial] if reachable_only else None)
    return SCCInfo(comps, comp_of, [is_loop(c, succ) for c in comps])


def weakness_violation(w: DWA) -> list[int] | None:
    """States of a mixed-polarity loop SCC, or None when ``w`` is weak."""
    info = dwa_sccs(w, reachable_only=False)
    for comp, loop in zip(info.comps, info.loops):
        if loop and len({q in w.accepting for q in comp}) > 1:
            return sorted(comp)
    return None


def is_weak(w: DWA) -> bool:
    return weakness_violation(w) is None


def check_weak(w: DWA) -> DWA:
    bad = weakness_violation(w)
    if bad is not None:
        raise WeaknessError(f"SCC {bad} mixes accepting and rejecting states", bad)
    return w


def dwa_universal(alphabet=BINARY) -> DWA:
    alphabet = check_alphabet(alphabet)
    return DWA(alphabet, ((0,) * len(alphabet),), 0, frozenset([0]))


def dwa_empty(alphabet=BINARY) -> DWA:
    alphabet = check_alphabet(alphabet)
    return DWA(alphabet, ((0,) * len(alphabet),), 0, frozenset())


def dwa_from_transitions(n, alphabet, transitions, initial, accepting) -> DWA:
    alphabet = check_alphabet(alphabet)
    idx = {a: i for i, a in enumerate(alphabet)}
    table = [[None] * len(alphabet) for _ in range(n)]
    for p, a, q in transitions:
        if table[p][idx[a]] is not None:
            raise ValueError(f"state {p} has two successors on {a!r}")
        table[p][idx[a]] = q
    if any(t is None for row in table for t in row):
        raise ValueError("DWA transition function must be total")
    return check_weak(DWA(alphabet, tuple(tuple(r) for r in table), initial, frozenset(accepting)))


# --- generic lasso search over explicit product graphs -----------------------

class _Explored:
    """Reachable part of an implicitly given labelled graph."""

    def __init__(self, start: Hashable, labelled_succ, limit: int | None = None, on_limit=None):
        self.nodes: list[Hashable] = [start]
        self.ids = {start: 0}
        self.edges: list[list[tuple[str, int]]] = []
        i = 0
        while i < len(self.nodes):
            out = []
            for label, target in labelled_succ(self.nodes[i]):
                j = self.ids.get(target)
                if j is None:
                    j = len(self.nodes)
                    self.ids[target] = j
                    self.nodes.append(target)
                    if limit is not None and j >= limit:
                        on_limit(j)
                out.append((label, j))
            self.edges.append(out)
            i += 1

    def succ(self, i: int):
        return [j for _, j in self.edges[i]]

    def find_lasso(self, good: Callable[[Hashable], bool], scc_ok: Callable[[list[Hashable]], bool]) -> Lasso | None:
        """Lasso through a ``good`` node of a loop SCC accepted by ``scc_ok``."""
        comps, comp_of = tarjan_scc(len(self.nodes), self.succ, [0])
        for comp in comps:
            if not is_loop(comp, self.succ):
                continue
            members = [self.nodes[i] for i in comp]
            if not scc_ok(members):
                continue
            goods = [i for i in comp if good(self.nodes[i])]
            if not goods:
                continue
            g = goods[0]
            labelled = lambda i: self.edges[i]  # noqa: E731
            prefix, _ = shortest_path(0, lambda i: i == g, labelled)
            cid = comp_of[g]
            cycle, _ = shortest_path(g, lambda i: i == g, labelled, allowed=lambda i: comp_of[i] == cid, nonempty=True)
            return Lasso(prefix, cycle)
        return None


# --- omega-power -------------------------------------------------------------

def normalize_for_power(lang: Automaton) -> NFA:
    """Trim NFA for ``lang \\ {eps}`` whose initial state has no incoming edges."""
    a = fa.trim(lang)
    k = len(a.alphabet)
    table = [[set(a.delta[a.initial][i]) for i in range(k)]]
    table += [[{1 + q for q in ts} for ts in row] for row in a.delta]
    for i in range(k):
        table[0][i] = {1 + q for q in table[0][i]}
    finals = frozenset(1 + f for f in a.finals)
    return fa.trim(NFA(a.alphabet, tuple(tuple(frozenset(t) for t in r) for r in table), 0, finals))


def nbw_empty(alphabet=BINARY) -> NBW:
    alphabet = check_alphabet(alphabet)
    return NBW(alphabet, (tuple(frozenset() for _ in alphabet),), 0, frozenset())


def omega_power_nbw(lang: Automaton) -> NBW:
    """Buchi automaton for ``(L \\ {eps})^omega``.

    States are pairs (state of the normalized NFA, flag); the flag is raised
    exactly when a factor has just been completed and the run restarts.
    """
    a = normalize_for_power(lang)
    if not a.finals:
        return nbw_empty(a.alphabet)
    k = len(a.alphabet)
    q0 = a.initial
    table = [[set() for _ in range(k)] for _ in range(2 * a.n)]
    for p in range(a.n):
        for i in range(k):
            for q in a.delta[p][i]:
                for b in (0, 1):
                    table[2 * p + b][i].add(2 * q)
                    if q in a.finals:
                        table[2 * p + b][i].add(2 * q0 + 1)
    raw = NBW(a.alphabet, tuple(tuple(frozenset(t) for t in r) for r in table), 2 * q0,
              frozenset(2 * p + 1 for p in range(a.n)))
    return nbw_reachable(raw)


def nbw_reachable(b: NBW) -> NBW:
    order = [b.initial]
    ren = {b.initial: 0}
    i = 0
    while i < len(order):
        for ts in b.delta[order[i]]:
            for q in sorted(ts):
                if q not in ren:
                    ren[q] = len(order)
                    order.append(q)
        i += 1
    delta = tuple(tuple(frozenset(ren[q] for q in ts) for ts in b.delta[p]) for p in order)
    return NBW(b.alphabet, delta, 0, frozenset(ren[q] for q in b.accepting if q in ren))


# --- lasso membership --------------------------------------------------------

def _succ_masks(delta) -> list[list[int]]:
    k = len(delta[0]) if delta else 0
    return [[sum(1 << q for q in delta[p][i]) for p in range(len(delta))] for i in range(k)]


def _step(mask: int, table: list[int]) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= table[low.bit_length() - 1]
        mask ^= low
    return out


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def nbw_accepts_lasso(b: NBW, lasso: Lasso) -> bool:
    """Search for an accepting cycle in the product of ``b`` with the lasso.

    Every cycle of the product passes position ``|u|``, so the search runs on
    the graph whose edges are whole traversals of ``v`` between two visits of
    that position, each edge marked by whether it meets an accepting state.
    """
    succ = _succ_masks(b.delta)
    acc = sum(1 << q for q in b.accepting)
    head = 1 << b.initial
    for x in letter_indices(b.alphabet, lasso.u):
        head = _step(head, succ[x])
    if not head:
        return False
    vs = letter_indices(b.alphabet, lasso.v)
    plain = [0] * b.n
    marked = [0] * b.n
    for p in range(b.n):
        cur, hit = 1 << p, 0
        for x in vs:
            nxt = _step(cur, succ[x])
            hit = _step(hit, succ[x]) | (nxt & acc)
            cur = nxt
        plain[p], marked[p] = cur, hit
    star = [_closure(1 << p, plain) for p in range(b.n)]
    live = _closure(head, plain)
    for p in _bits(live):
        for q in _bits(marked[p]):
            if star[q] >> p & 1:
                return True
    return False


def _closure(mask: int, edges: list[int]) -> int:
    seen = mask
    frontier = mask
    while frontier:
        nxt = _step(frontier, edges) & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def factor_graph(lang: Automaton, lasso: Lasso) -> dict[int, set[int]]:
    """Edges ``i -> j`` between lasso positions cut by one nonempty factor in ``lang``.

    Positions are ``0 .. |u|+|v|-1``; reading past the end wraps to ``|u|``.
    """
    a = fa.as_nfa(lang)
    succ = _succ_masks(a.delta)
    fin = sum(1 << f for f in a.finals)
    word = letter_indices(a.alphabet, lasso.u + lasso.v)
    size, base = len(word), len(lasso.u)
    nxt = lambda pos: pos + 1 if pos + 1 < size else base  # noqa: E731
    edges: dict[int, set[int]] = {i: set() for i in range(size)}
    for i in range(size):
        pos, cur = i, 1 << a.initial
        seen = set()
        while True:
            cur = _step(cur, succ[word[pos]])
            pos = nxt(pos)
            if not cur or (pos, cur) in seen:
                break
            seen.add((pos, cur))
            if cur & fin:
                edges[i].add(pos)
    return edges


def lasso_in_omega_power_oracle(lang: Automaton, lasso: Lasso) -> bool:
    """Decide ``lasso in L^omega`` straight from the definition.

    The word splits into infinitely many nonempty factors of ``lang`` iff
    position 0 reaches a cycle of the factor graph.
    """
    edges = factor_graph(lang, lasso)
    live = set()
    todo = deque([0])
    live.add(0)
    while todo:
        i = todo.popleft()
        for j in edges[i]:
            if j not in live:
                live.add(j)
                todo.append(j)
    for j in live:
        seen = set()
        todo = deque(edges[j])
        while todo:
            x = todo.popleft()
            if x == j:
                return True
            if x not in seen:
                seen.add(x)
                todo.extend(edges[x])
    return False


def dwa_accepts_lasso(w: DWA, lasso: Lasso) -> bool:
    q = w.run(lasso.u)
    seen = set()
    while q not in seen:
        seen.add(q)
        q = w.run(lasso.v, q)
    # q now sits on the repeating v-boundary cycle, inside one loop SCC.
    return q in w.accepting


def deinterleave_lasso(lasso: Lasso, offset: int) -> Lasso:
    """Lasso for the letters of ``lasso`` at positions ``offset, offset+2, ...``."""
    if offset not in (0, 1):
        raise ValueError("offset must be 0 or 1")
    u, v = lasso.u, lasso.v
    if len(u) % 2:
        u, v = u + v[0], v[1:] + v[0]
    if len(v) % 2:
        v = v + v
    return Lasso(u[offset::2], v[offset::2])


# --- boolean algebra on DWAs ------------------------------------------------

def dwa_complement(w: DWA) -> DWA:
    return check_weak(DWA(w.alphabet, w.delta, w.initial, frozenset(range(w.n)) - w.accepting))


def _dwa_product(a: DWA, b: DWA, combine) -> DWA:
    same_alphabet(a, b)
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
    acc = frozenset(j for j, (p, q) in enumerate(order) if combine(p in a.accepting, q in b.accepting))
    return check_weak(DWA(a.alphabet, tuple(rows), 0, acc))


def dwa_intersect(a: DWA, b: DWA) -> DWA:
    return _dwa_product(a, b, lambda x, y: x and y)


def dwa_union(a: DWA, b: DWA) -> DWA:
    return _dwa_product(a, b, lambda x, y: x or y)


def dwa_boolean(op: str, *args: DWA) -> DWA:
    """Dispatch on ``complement | intersect | union``."""
    if op == "complement":
        (a,) = args
        return dwa_complement(a)
    if op == "intersect":
        return dwa_intersect(*args)
    if op == "union":
        return dwa_union(*args)
    raise ValueError(f"unknown DWA operation {op!r}")


def dwa_witness(w: DWA) -> Lasso | None:
    """An accepted lasso, or None when the language is empty."""
    g = _Explored(w.initial, lambda q: [(w.alphabet[i], t) for i, t in enumerate(w.delta[q])])
    return g.find_lasso(lambda q: True, lambda members: members[0] in w.accepting)


def dwa_is_empty(w: DWA) -> bool:
    return dwa_witness(w) is None


def dwa_difference_witness(a: DWA, b: DWA) -> Lasso | None:
    """A lasso in ``L(a) \\ L(b)``, if any."""
    return dwa_witness(dwa_intersect(a, dwa_complement(b)))


def dwa_subseteq(a: DWA, b: DWA) -> bool:
    return dwa_difference_witness(a, b) is None


def dwa_equiv(a: DWA, b: DWA) -> bool:
    return dwa_subseteq(a, b) and dwa_subseteq(b, a)


# --- NBW against DWA ----------------------------------------------------------

def nbw_dwa_meet(b: NBW, w: DWA, polarity: bool) -> Lasso | None:
    """Lasso accepted by ``b`` whose run in ``w`` ends in an SCC of bit ``polarity``."""
    same_alphabet(b, w)

    def labelled(node):
        p, q = node
        for i, a in enumerate(b.alphabet):
            t = w.delta[q][i]
            for r in sorted(b.delta[p][i]):
                yield a, (r, t)

    g = _Explored((b.initial, w.initial), labelled)
    return g.find_lasso(lambda node: node[0] in b.accepting,
                        lambda members: (members[0][1] in w.accepting) == polarity)


def nbw_subseteq_dwa(b: NBW, w: DWA) -> bool:
    return nbw_dwa_meet(b, w, polarity=False) is None


def nbw_witness(b: NBW) -> Lasso | None:
    return nbw_dwa_meet(b, dwa_universal(b.alphabet), polarity=True)


def nbw_is_empty(b: NBW) -> bool:
    return nbw_witness(b) is None
