"""Level-ranking complementation of Buchi automata.

Macro-states are pairs ``(ranking, owing)``: ``ranking[q]`` is the rank of
state ``q`` on the current level (``-1`` when absent), accepting states only
carry even ranks, and ``owing`` is the set of even-ranked states that still
have to reach an odd rank. A macro-state is accepting when ``owing`` is empty.
Ranks are bounded by ``2 * |states|``.

This is exponential, so every entry point takes a state gate and an
exploration cap and raises :class:`ResourceGated` beyond them.
"""

from __future__ import annotations

import itertools

from .fa import same_alphabet
from .graph import is_loop, tarjan_scc
from .omega import DWA, NBW, Lasso, _Explored, nbw_empty, nbw_reachable

DEFAULT_GATE = 10
DEFAULT_CAP = 50_000
DEFAULT_MONOID_CAP = 50_000


class ResourceGated(Exception):
    """The instance is too large for exact complementation."""


Macro = tuple[tuple[int, ...], frozenset[int]]


def _check_gate(b: NBW, gate: int) -> None:
    if b.n > gate:
        raise ResourceGated(f"NBW has {b.n} states, gate is {gate}")


def nbw_prune(b: NBW) -> NBW:
    """Drop states from which no accepting cycle is reachable (same language)."""
    succ = lambda q: sorted(set().union(*b.delta[q]))  # noqa: E731
    comps, comp_of = tarjan_scc(b.n, succ)
    live = [False] * b.n
    for comp in comps:  # successors first
        if any(q in b.accepting for q in comp) and is_loop(comp, succ):
            good = True
        else:
            good = any(live[t] for q in comp for t in succ(q))
        for q in comp:
            live[q] = good
    if not live[b.initial]:
        return nbw_empty(b.alphabet)
    delta = tuple(tuple(frozenset(t for t in ts if live[t]) for ts in row) for row in b.delta)
    return nbw_reachable(NBW(b.alphabet, delta, b.initial, b.accepting))


def initial_macro(b: NBW) -> Macro:
    ranking = [-1] * b.n
    ranking[b.initial] = 2 * b.n
    return tuple(ranking), frozenset()


def macro_successors(b: NBW, macro: Macro, letter: int):
    ranking, owing = macro
    bound: dict[int, int] = {}
    for p, r in enumerate(ranking):
        if r < 0:
            continue
        for q in b.delta[p][letter]:
            bound[q] = min(bound.get(q, r), r)
    targets = sorted(bound)
    choices = []
    for q in targets:
        step = 2 if q in b.accepting else 1
        choices.append(range(0, bound[q] + 1, step))
    owing_next = set()
    for p in owing:
        owing_next |= b.delta[p][letter]
    for ranks in itertools.product(*choices):
        nxt = [-1] * b.n
        for q, r in zip(targets, ranks):
            nxt[q] = r
        even = {q for q, r in zip(targets, ranks) if r % 2 == 0}
        new_owing = (owing_next & even) if owing else even
        yield tuple(nxt), frozenset(new_owing)


def nbw_complement_rank(b: NBW, gate: int = DEFAULT_GATE, cap: int = DEFAULT_CAP) -> NBW:
    """Explicit NBW for the complement of ``b`` (reachable macro-states only)."""
    b = nbw_prune(b)
    _check_gate(b, gate)

    edges = 0

    def labelled(macro):
        nonlocal edges
        for i, a in enumerate(b.alphabet):
            succ = list(macro_successors(b, macro, i))
            edges += len(succ)
            if edges > 10 * cap:
                raise ResourceGated(f"complement exceeded {10 * cap} transitions")
            for m in succ:
                yield a, m

    def overflow(count):
        raise ResourceGated(f"complement exceeded {cap} macro-states")

    g = _Explored(initial_macro(b), labelled, limit=cap, on_limit=overflow)
    k = len(b.alphabet)
    delta = []
    for out in g.edges:
        row = [set() for _ in range(k)]
        for a, j in out:
            row[b.alphabet.index(a)].add(j)
        delta.append(tuple(frozenset(r) for r in row))
    accepting = frozenset(i for i, (_, owing) in enumerate(g.nodes) if not owing)
    return NBW(b.alphabet, tuple(delta), 0, accepting)


def dwa_minus_nbw_witness(w: DWA, b: NBW, gate: int = DEFAULT_GATE, cap: int = DEFAULT_CAP) -> Lasso | None:
    """A lasso accepted by ``w`` and rejected by ``b``; None proves ``L(w) <= L(b)``.

    The complement of ``b`` is explored on the fly in product with ``w``.
    """
    same_alphabet(w, b)
    b = nbw_prune(b)
    _check_gate(b, gate)

    cache: dict = {}
    edges = 0

    def labelled(node):
        nonlocal edges
        q, macro = node
        for i, a in enumerate(b.alphabet):
            key = (macro, i)
            if key not in cache:
                cache[key] = list(macro_successors(b, macro, i))
            succ = cache[key]
            edges += len(succ)
            if edges > 10 * cap:
                raise ResourceGated(f"product exceeded {10 * cap} transitions")
            t = w.delta[q][i]
            for m in succ:
                yield a, (t, m)

    def overflow(count):
        raise ResourceGated(f"product exceeded {cap} states")

    g = _Explored((w.initial, initial_macro(b)), labelled, limit=cap, on_limit=overflow)
    return g.find_lasso(lambda node: not node[1][1], lambda members: members[0][0] in w.accepting)


def dwa_subseteq_nbw(w: DWA, b: NBW, gate: int = DEFAULT_GATE, cap: int = DEFAULT_CAP) -> bool:
    return dwa_minus_nbw_witness(w, b, gate, cap) is None


# --- transition-profile (Ramsey) check --------------------------------------------
#
# The profile of a nonempty word x records, for every NBW state p, the states
# reachable from p on x (``plain``) and those reachable through an accepting
# state (``marked``), together with the DWA's state map on x. Every omega-word
# factors as u v1 v2 ... with [u] = s, [v_i] = e, e idempotent and s e = s, and
# both automata decide the word from (s, e) alone: the DWA by the bit of
# s(initial), the NBW by a marked e-loop on some state reachable under s.

def _compose(x, y):
    (xp, xm, xf), (yp, ym, yf) = x, y
    plain, marked = [], []
    for p in range(len(xp)):
        pl = mk = 0
        bits, hit = xp[p], xm[p]
        while bits:
            low = bits & -bits
            q = low.bit_length() - 1
            pl |= yp[q]
            mk |= yp[q] if hit & low else ym[q]
            bits ^= low
        plain.append(pl)
        marked.append(mk)
    return tuple(plain), tuple(marked), tuple(yf[q] for q in xf)


def dwa_minus_nbw_profiles(w: DWA, b: NBW, cap: int = DEFAULT_MONOID_CAP) -> Lasso | None:
    """Same contract as :func:`dwa_minus_nbw_witness`, via transition profiles."""
    same_alphabet(w, b)
    b = nbw_prune(b)
    letters = []
    for i in range(len(b.alphabet)):
        plain = tuple(sum(1 << q for q in b.delta[p][i]) for p in range(b.n))
        marked = tuple(sum(1 << q for q in b.delta[p][i] if q in b.accepting) for p in range(b.n))
        letters.append((plain, marked, tuple(w.delta[q][i] for q in range(w.n))))
    words: dict = {}
    order = []
    for i, g in enumerate(letters):
        if g not in words:
            words[g] = b.alphabet[i]
            order.append(g)
    k = 0
    while k < len(order):
        x = order[k]
        for i, g in enumerate(letters):
            y = _compose(x, g)
            if y not in words:
                words[y] = words[x] + b.alphabet[i]
                order.append(y)
                if len(order) > cap:
                    raise ResourceGated(f"transition monoid exceeded {cap} elements")
        k += 1
    idem = [e for e in order if _compose(e, e) == e]
    for s in order:
        if s[2][w.initial] not in w.accepting:
            continue
        reach = [p for p in range(b.n) if s[0][b.initial] & (1 << p)]
        for e in idem:
            if _compose(s, e) != s:
                continue
            if not any(e[1][p] & (1 << p) for p in reach):
                return Lasso(words[s], words[e])
    return None
