"""Difference hierarchy over open subsets of Cantor space, as weak automata.

An open set is stored as a saturated good-prefix DFA ``W``: the set is
``W . 2^omega`` and every extension of an accepted prefix is accepted.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from . import fa
from .fa import BINARY, DFA, Automaton
from .omega import (
    DWA,
    check_weak,
    dwa_complement,
    dwa_equiv,
    dwa_intersect,
    dwa_subseteq,
    dwa_union,
)


# --- open sets -----------------------------------------------------------------

@dataclass(frozen=True)
class OpenSet:
    prefixes: DFA

    @property
    def alphabet(self):
        return self.prefixes.alphabet

    def to_dwa(self) -> DWA:
        d = self.prefixes
        return check_weak(DWA(d.alphabet, d.delta, d.initial, d.finals))


def saturate(d: Automaton) -> DFA:
    """Make accepting states absorbing, then minimize."""
    d = fa.determinize(d)
    sink = d.n
    k = len(d.alphabet)
    delta = [tuple(sink if p in d.finals else q for q in row) for p, row in enumerate(d.delta)]
    delta.append((sink,) * k)
    return fa.minimize(DFA(d.alphabet, tuple(delta), d.initial, d.finals | {sink}))


def open_set(good_prefixes: Automaton) -> OpenSet:
    return OpenSet(saturate(good_prefixes))


def cylinders(words: Sequence[str], alphabet=BINARY) -> OpenSet:
    """The open set ``U_{w in words} N_w``."""
    lang = fa.nfa_empty(alphabet)
    for w in words:
        lang = fa.nfa_union(lang, fa.nfa_word(w, alphabet))
    return open_set(lang)


def open_union(a: OpenSet, b: OpenSet) -> OpenSet:
    return OpenSet(saturate(fa.dfa_union(a.prefixes, b.prefixes)))


def open_intersect(a: OpenSet, b: OpenSet) -> OpenSet:
    return OpenSet(saturate(fa.dfa_intersect(a.prefixes, b.prefixes)))


def open_subseteq(a: OpenSet, b: OpenSet) -> bool:
    return dwa_subseteq(a.to_dwa(), b.to_dwa())


class NotIncreasing(ValueError):
    """An open family that is not increasing under inclusion."""


def check_increasing(family: Sequence[OpenSet]) -> tuple[OpenSet, ...]:
    family = tuple(family)
    for i in range(len(family) - 1):
        if not open_subseteq(family[i], family[i + 1]):
            raise NotIncreasing(f"member {i} is not contained in member {i + 1}")
    return family


# --- clopen sets ---------------------------------------------------------------

@dataclass(frozen=True)
class ClopenSet:
    """Union of the cylinders ``N_w`` over the accepted words ``w`` of length ``depth``."""

    depth: int
    accepted: frozenset[str]
    alphabet: tuple[str, ...] = BINARY

    def __post_init__(self):
        for w in self.accepted:
            if len(w) != self.depth or any(a not in self.alphabet for a in w):
                raise ValueError(f"prefix {w!r} does not have length {self.depth} over {self.alphabet}")

    def contains_prefix(self, word: str) -> bool:
        return word[: self.depth] in self.accepted

    def complement(self) -> "ClopenSet":
        every = {"".join(t) for t in itertools.product(self.alphabet, repeat=self.depth)}
        return ClopenSet(self.depth, frozenset(every - self.accepted), self.alphabet)


# --- difference sets ---------------------------------------------------------

def difference_dwa(family: Sequence[OpenSet], alphabet=BINARY) -> DWA:
    """DWA for ``D_k(family)``.

    A state records every detector; its bit says that some detector has fired
    and the smallest fired index has parity different from ``k``.
    """
    family = check_increasing(family)
    k = len(family)
    if k == 0:
        return DWA(tuple(alphabet), ((0,) * len(alphabet),), 0, frozenset())
    alphabet = fa.same_alphabet(*[o.prefixes for o in family])
    dets = [o.prefixes for o in family]
    start = tuple(d.initial for d in dets)
    ids = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        cur = order[i]
        row = []
        for x in range(len(alphabet)):
            t = tuple(d.delta[s][x] for d, s in zip(dets, cur))
            if t not in ids:
                ids[t] = len(order)
                order.append(t)
            row.append(ids[t])
        rows.append(tuple(row))
        i += 1

    def bit(state) -> bool:
        for eta, (d, s) in enumerate(zip(dets, state)):
            if s in d.finals:
                return eta % 2 != k % 2
        return False

    acc = frozenset(j for j, st in enumerate(order) if bit(st))
    return check_weak(DWA(alphabet, tuple(rows), 0, acc))


def difference_member(family: Sequence[OpenSet], prefix_fires: Sequence[bool]) -> bool:
    """Membership from the limit firing pattern: ``prefix_fires[eta]`` iff x in O_eta."""
    k = len(family)
    for eta, fired in enumerate(prefix_fires):
        if fired:
            return eta % 2 != k % 2
    return False


def oplus_dwa(a: DWA, b: DWA, c: ClopenSet) -> DWA:
    """DWA for ``(L(a) & C) | (L(b) \\ C)``: branch on the depth-m prefix."""
    alphabet = fa.same_alphabet(a, b)
    k = len(alphabet)
    m = c.depth
    tree = ["".join(t) for length in range(m) for t in itertools.product(alphabet, repeat=length)]
    tid = {w: i for i, w in enumerate(tree)}
    off_a = len(tree)
    off_b = off_a + a.n
    delta = []
    for w in tree:
        row = []
        for x in range(k):
            nxt = w + alphabet[x]
            if len(nxt) < m:
                row.append(tid[nxt])
            elif nxt in c.accepted:
                row.append(off_a + a.run(nxt))
            else:
                row.append(off_b + b.run(nxt))
        delta.append(tuple(row))
    delta += [tuple(off_a + q for q in r) for r in a.delta]
    delta += [tuple(off_b + q for q in r) for r in b.delta]
    acc = {off_a + q for q in a.accepting} | {off_b + q for q in b.accepting}
    if m == 0:
        initial = off_a + a.initial if "" in c.accepted else off_b + b.initial
    else:
        initial = 0
    return _trimmed(DWA(alphabet, tuple(delta), initial, frozenset(acc)))


def _trimmed(w: DWA) -> DWA:
    ren = {w.initial: 0}
    order = [w.initial]
    i = 0
    while i < len(order):
        for q in w.delta[order[i]]:
            if q not in ren:
                ren[q] = len(order)
                order.append(q)
        i += 1
    delta = tuple(tuple(ren[q] for q in w.delta[p]) for p in order)
    return check_weak(DWA(w.alphabet, delta, 0, frozenset(ren[q] for q in w.accepting if q in ren)))


# --- difference-set identities ---------------------------------------------------

@dataclass(frozen=True)
class Witness:
    variant: str
    family: tuple[OpenSet, ...]
    lhs: DWA
    rhs: DWA
    verdict: bool


def _codiff(family) -> DWA:
    return dwa_complement(difference_dwa(family))


def witness_a(U: Sequence[OpenSet], V: OpenSet) -> Witness:
    """``(X \\ D_k(U)) & V == D_{k+1}(O)`` with ``O_eta = U_eta & V`` and ``O_k = V``."""
    U = check_increasing(U)
    lhs = dwa_intersect(_codiff(U), V.to_dwa())
    O = tuple(open_intersect(u, V) for u in U) + (V,)
    rhs = difference_dwa(O)
    return Witness("a", O, lhs, rhs, dwa_equiv(lhs, rhs))


def witness_b(U: Sequence[OpenSet], V: OpenSet) -> Witness:
    """``(X \\ D_2k(U)) \\ V == X \\ D_{2k+1}(O)`` with ``O_0 = V``, ``O_{eta+1} = V | U_eta``."""
    U = check_increasing(U)
    if len(U) % 2:
        raise ValueError("variant b needs a family of even length")
    lhs = dwa_intersect(_codiff(U), dwa_complement(V.to_dwa()))
    O = (V,) + tuple(open_union(V, u) for u in U)
    rhs = _codiff(O)
    return Witness("b", O, lhs, rhs, dwa_equiv(lhs, rhs))


def family_c(U: Sequence[OpenSet], V: Sequence[OpenSet]) -> tuple[OpenSet, ...]:
    """The length ``2k+2`` family merging ``U`` (length 2k) with the pair ``V``."""
    k = len(U) // 2
    V0, V1 = V
    if k == 0:
        return (V0, V1)
    I, J = open_intersect, open_union
    O: list[OpenSet] = [I(V0, U[0]), I(V1, U[1])]
    for j in range(1, k):
        O.append(J(J(I(V0, U[2 * j]), U[2 * j - 2]), I(V1, U[2 * j - 1])))
        O.append(J(I(V1, U[2 * j + 1]), U[2 * j - 1]))
    O.append(J(J(V0, U[2 * k - 2]), I(V1, U[2 * k - 1])))
    O.append(J(V1, U[2 * k - 1]))
    return tuple(O)


def witness_c(U: Sequence[OpenSet], V: Sequence[OpenSet]) -> Witness:
    """``(X \\ D_2k(U)) & (X \\ D_2(V)) == X \\ D_{2k+2}(O)``."""
    U = check_increasing(U)
    V = check_increasing(V)
    if len(U) % 2 or len(V) != 2:
        raise ValueError("variant c needs U of even length and V of length 2")
    lhs = dwa_intersect(_codiff(U), _codiff(V))
    O = check_increasing(family_c(U, V))
    rhs = _codiff(O)
    return Witness("c", O, lhs, rhs, dwa_equiv(lhs, rhs))


def witness_d(U0: Sequence[OpenSet], A: OpenSet, U1: Sequence[OpenSet], Vb: OpenSet, C: ClopenSet) -> Witness:
    """Clopen gluing of ``D = E0 & A`` and ``F = E1 \\ Vb``.

    With ``E_i = X \\ D_2k(U_i)`` and ``B = X \\ Vb``, checks both
    ``((A&C)|(B\\C)) & E0 == ((E0&A)&C) | ((E0&B)\\C)`` and
    ``(D&C)|(F\\C) == ((A&C)|(B\\C)) & ((E0&C)|(E1\\C))``, where D and F are
    built through the families of variants a and b.
    """
    wa = witness_a(U0, A)
    wb = witness_b(U1, Vb)
    E0, E1 = _codiff(check_increasing(U0)), _codiff(check_increasing(U1))
    Ad, Bd = A.to_dwa(), dwa_complement(Vb.to_dwa())
    glued = oplus_dwa(Ad, Bd, C)
    first = dwa_equiv(dwa_intersect(glued, E0),
                      oplus_dwa(dwa_intersect(E0, Ad), dwa_intersect(E0, Bd), C))
    D = wa.rhs
    F = wb.rhs
    lhs = oplus_dwa(D, F, C)
    rhs = dwa_intersect(glued, oplus_dwa(E0, E1, C))
    verdict = first and wa.verdict and wb.verdict and dwa_equiv(lhs, rhs)
    return Witness("d", wa.family + wb.family, lhs, rhs, verdict)


def identity_witness(variant: str, *args) -> Witness:
    builders = {"a": witness_a, "b": witness_b, "c": witness_c, "d": witness_d}
    if variant not in builders:
        raise ValueError(f"unknown variant {variant!r}")
    return builders[variant](*args)


# --- random instances ----------------------------------------------------------

def random_open(rng: random.Random, depth: int = 3, alphabet=BINARY) -> OpenSet:
    """Either a union of cylinders of length <= depth (clopen), or a saturated
    random DFA with at most ``depth`` live states whose edges rarely enter the
    accepting sink, which yields genuinely non-clopen open sets."""
    if rng.random() < 0.3:
        words = []
        for _ in range(rng.randint(0, 3)):
            length = rng.randint(1, depth)
            words.append("".join(rng.choice(alphabet) for _ in range(length)))
        return cylinders(words, alphabet)
    n = rng.randint(1, depth)
    delta = tuple(tuple(n if rng.random() < 0.25 else rng.randrange(n) for _ in alphabet) for _ in range(n))
    delta += ((n,) * len(alphabet),)
    return open_set(DFA(tuple(alphabet), delta, 0, frozenset([n])))


def _reach_open(delta, targets, alphabet) -> OpenSet:
    return open_set(DFA(tuple(alphabet), delta, 0, frozenset(targets)))


def random_family(rng: random.Random, k: int, depth: int = 3, alphabet=BINARY) -> tuple[OpenSet, ...]:
    """Random increasing family ``O_eta = O_{eta-1} | fresh_eta``.

    Half of the time the fresh sets are independent random opens. Otherwise
    they share one random ladder DFA (each state loops on one letter and
    moves forward on the other) whose states carry random levels, and
    ``fresh_eta`` is "some state of level eta is reached". Ladders produce
    long alternations, so families complete for ``D_k`` actually occur.
    """
    out: list[OpenSet] = []
    if rng.random() < 0.5:
        for _ in range(k):
            fresh = random_open(rng, depth, alphabet)
            out.append(open_union(out[-1], fresh) if out else fresh)
        return tuple(out)
    n = rng.randint(k + 1, k + depth + 1)
    rows = []
    for q in range(n):
        row = [min(n - 1, q + rng.randint(1, 2)) for _ in alphabet]
        row[rng.randrange(len(alphabet))] = q
        rows.append(tuple(row))
    delta = tuple(rows)
    # level k means "no level"; levels mostly decrease along the ladder
    level = [k]
    for _ in range(n - 1):
        if rng.random() < 0.25:
            level.append(rng.randrange(k + 1))
        else:
            level.append(max(0, level[-1] - (rng.random() < 0.6)))
    for eta in range(k):
        fresh = _reach_open(delta, [q for q in range(n) if level[q] == eta], alphabet)
        out.append(open_union(out[-1], fresh) if out else fresh)
    return tuple(out)


def random_clopen(rng: random.Random, depth: int = 2, alphabet=BINARY) -> ClopenSet:
    m = rng.randint(0, depth)
    words = ["".join(t) for t in itertools.product(alphabet, repeat=m)]
    return ClopenSet(m, frozenset(w for w in words if rng.random() < 0.5), tuple(alphabet))


def random_witness(variant: str, rng: random.Random, max_k: int = 3, depth: int = 3) -> Witness:
    """One random instance of the given variant with its parameter ``k`` in ``0..max_k``.

    Variant a takes a family of length k; variants b, c and d take families of
    length 2k.
    """
    k = rng.randint(0, max_k)
    if variant == "a":
        return witness_a(random_family(rng, k, depth), random_open(rng, depth))
    if variant == "b":
        return witness_b(random_family(rng, 2 * k, depth), random_open(rng, depth))
    if variant == "c":
        return witness_c(random_family(rng, 2 * k, depth), random_family(rng, 2, depth))
    if variant == "d":
        return witness_d(random_family(rng, 2 * k, depth), random_open(rng, depth),
                         random_family(rng, 2 * k, depth), random_open(rng, depth), random_clopen(rng))
    raise ValueError(f"unknown variant {variant!r}")


# --- the key set identity ------------------------------------------------------

def key_fact_holds(c0: frozenset, c1: frozenset, d0: frozenset, d1: frozenset) -> bool:
    return ((c1 - c0) | (d1 - d0)) == ((c1 | d1) - (c0 & d0))


def key_fact_check(trials: int = 1000, universe_size: int = 6, seed: int = 0) -> bool:
    """Random quadruples with ``C1 <= D0`` and ``D1 <= C0``; True iff the identity always holds."""
    if universe_size > 12:
        raise ValueError("universe_size must be at most 12")
    rng = random.Random(seed)
    universe = range(universe_size)
    sub = lambda base: frozenset(x for x in base if rng.random() < 0.5)  # noqa: E731
    for _ in range(trials):
        c0, d0 = sub(universe), sub(universe)
        c1, d1 = sub(d0), sub(c0)
        if not key_fact_holds(c0, c1, d0, d1):
            return False
    return True


def key_fact_counterexample(universe_size: int = 4):
    """Exhaustive search, side conditions dropped; first failing quadruple or None."""
    subsets = [frozenset(x for x in range(universe_size) if mask >> x & 1) for mask in range(1 << universe_size)]
    for c0, c1, d0, d1 in itertools.product(subsets, repeat=4):
        if not key_fact_holds(c0, c1, d0, d1):
            return c0, c1, d0, d1
    return None
