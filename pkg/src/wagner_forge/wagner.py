"""Wagner classes of Delta^0_2 omega-regular sets given as weak deterministic automata.

A set recognized by a reduced DWA is classified by the longest chains of
loop SCCs ``S1 ->* S2 ->* ...`` with strictly alternating polarity:

    m_rej = m_acc + 1   ->  D_{m_acc}
    m_acc = m_rej + 1   ->  D_{m_rej} check
    m_acc = m_rej = m   ->  D_{m-1} (+) D_{m-1} check
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .graph import is_loop, shortest_path, tarjan_scc
from .omega import DWA, Lasso, check_weak, dwa_accepts_lasso, dwa_equiv, dwa_sccs

SHAPES = ("D", "Dcheck", "DoplusDcheck")


class ClassificationError(RuntimeError):
    """Internal inconsistency: a chain profile or reduction broke its invariant."""


@dataclass(frozen=True)
class WagnerClass:
    shape: str
    level: int

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}")
        if self.level < 0:
            raise ValueError("level must be a natural number")

    @property
    def name(self) -> str:
        if self.shape == "D":
            return f"D{self.level}"
        if self.shape == "Dcheck":
            return f"D{self.level}check"
        return f"D{self.level}+D{self.level}check"

    def __str__(self):
        return self.name

    @classmethod
    def parse(cls, text: str) -> "WagnerClass":
        t = text.strip().replace(" ", "")
        m = re.fullmatch(r"D(\d+)\+D(\d+)check", t)
        if m:
            if m.group(1) != m.group(2):
                raise ValueError(f"mismatched levels in {text!r}")
            return cls("DoplusDcheck", int(m.group(1)))
        m = re.fullmatch(r"D(\d+)(check)?", t)
        if m:
            return cls("Dcheck" if m.group(2) else "D", int(m.group(1)))
        raise ValueError(f"cannot parse Wagner class {text!r}")

    @property
    def self_dual(self) -> bool:
        return self.shape == "DoplusDcheck"

    def dual(self) -> "WagnerClass":
        swap = {"D": "Dcheck", "Dcheck": "D", "DoplusDcheck": "DoplusDcheck"}
        return WagnerClass(swap[self.shape], self.level)

    @property
    def height(self) -> int:
        return 2 * self.level + (1 if self.self_dual else 0)

    def __le__(self, other: "WagnerClass") -> bool:
        # D_n and its dual are incomparable; everything else is ordered by height.
        return self == other or self.height < other.height

    def __lt__(self, other: "WagnerClass") -> bool:
        return self != other and self <= other


@dataclass(frozen=True)
class ChainProfile:
    m_acc: int
    m_rej: int
    witness_acc: list[list[int]] = field(default_factory=list)
    witness_rej: list[list[int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"m_acc": self.m_acc, "m_rej": self.m_rej,
                "witness_acc": self.witness_acc, "witness_rej": self.witness_rej}


@dataclass(frozen=True)
class Classification:
    wagner_class: WagnerClass
    profile: ChainProfile
    reduced: DWA

    def certificate(self) -> dict:
        return {"class": self.wagner_class.name, **self.profile.to_dict()}


# --- reduction ---------------------------------------------------------------

def _renumber(w: DWA) -> DWA:
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
    return DWA(w.alphabet, delta, 0, frozenset(ren[q] for q in w.accepting if q in ren))


def distinguishable_pairs(w: DWA) -> set[tuple[int, int]]:
    """Pairs of states with different residual languages.

    In the self-product, a pair is distinguishable iff it reaches a loop SCC
    whose two projections carry different acceptance bits.
    """
    n, k = w.n, len(w.alphabet)
    succ = lambda v: [w.delta[v // n][x] * n + w.delta[v % n][x] for x in range(k)]  # noqa: E731
    comps, _ = tarjan_scc(n * n, succ)
    bad = set()
    for comp in comps:
        v = comp[0]
        if (v // n in w.accepting) != (v % n in w.accepting) and is_loop(comp, succ):
            bad.update(comp)
    pred: list[list[int]] = [[] for _ in range(n * n)]
    for v in range(n * n):
        for t in succ(v):
            pred[t].append(v)
    todo = list(bad)
    while todo:
        v = todo.pop()
        for p in pred[v]:
            if p not in bad:
                bad.add(p)
                todo.append(p)
    return {(v // n, v % n) for v in bad}


def _covering_walk(w: DWA, comp: list[int], comp_of: list[int]) -> tuple[str, str]:
    labelled = lambda q: [(w.alphabet[i], t) for i, t in enumerate(w.delta[q])]  # noqa: E731
    cid = comp_of[comp[0]]
    inside = lambda q: comp_of[q] == cid  # noqa: E731
    start = min(comp)
    spoke, _ = shortest_path(w.initial, lambda q: q == start, labelled)
    walk, here = "", start
    for target in sorted(comp)[1:] + [start]:
        piece, here = shortest_path(here, lambda q, t=target: q == t, labelled, allowed=inside,
                                    nonempty=(target == here))
        walk += piece
    return spoke, walk


def reduce_dwa(w: DWA) -> DWA:
    """Quotient of the reachable part of ``w`` by residual-language equivalence.

    The quotient bit of each loop SCC is read off one lasso covering that SCC,
    evaluated on ``w``; transient states get bit 0.
    """
    w = _renumber(check_weak(w))
    dist = distinguishable_pairs(w)
    cls = [-1] * w.n
    reps: list[int] = []
    for p in range(w.n):
        for c, r in enumerate(reps):
            if (p, r) not in dist:
                cls[p] = c
                break
        else:
            cls[p] = len(reps)
            reps.append(p)
    delta = tuple(tuple(cls[t] for t in w.delta[r]) for r in reps)
    skeleton = DWA(w.alphabet, delta, cls[w.initial], frozenset())
    info = dwa_sccs(skeleton)
    acc = set()
    for comp, loop in zip(info.comps, info.loops):
        if not loop:
            continue
        spoke, walk = _covering_walk(skeleton, comp, info.comp_of)
        if dwa_accepts_lasso(w, Lasso(spoke, walk)):
            acc.update(comp)
    reduced = _renumber(DWA(w.alphabet, delta, cls[w.initial], frozenset(acc)))
    check_weak(reduced)
    if not dwa_equiv(reduced, w):
        raise ClassificationError("quotient is not language-equivalent to its input")
    return reduced


# --- chains ------------------------------------------------------------------

def chain_profile(w: DWA) -> ChainProfile:
    """Longest polarity-alternating chains of reachable loop SCCs."""
    info = dwa_sccs(w)
    comps, comp_of, loops = info.comps, info.comp_of, info.loops
    pol = [comp[0] in w.accepting for comp in comps]
    succs = [sorted({comp_of[t] for q in comp for t in w.delta[q]} - {c}) for c, comp in enumerate(comps)]
    # down[c][p]: best chain starting at polarity p within the SCCs reachable from c.
    down: list[dict[bool, list[int]]] = [dict() for _ in comps]
    for c in range(len(comps)):  # Tarjan order: successors come first
        below: dict[bool, list[int]] = {True: [], False: []}
        for d in succs[c]:
            for p in (True, False):
                if len(down[d][p]) > len(below[p]):
                    below[p] = down[d][p]
        best = dict(below)
        if loops[c]:
            chain = [c] + below[not pol[c]]
            if len(chain) > len(best[pol[c]]):
                best[pol[c]] = chain
        down[c] = best
    top = comp_of[w.initial]
    wit = lambda chain: [sorted(comps[c]) for c in chain]  # noqa: E731
    prof = ChainProfile(len(down[top][True]), len(down[top][False]),
                        wit(down[top][True]), wit(down[top][False]))
    if abs(prof.m_acc - prof.m_rej) > 1:
        raise ClassificationError(f"chain profile ({prof.m_acc}, {prof.m_rej}) breaks |m_acc - m_rej| <= 1")
    return prof


def class_from_profile(m_acc: int, m_rej: int) -> WagnerClass:
    if m_rej == m_acc + 1:
        return WagnerClass("D", m_acc)
    if m_acc == m_rej + 1:
        return WagnerClass("Dcheck", m_rej)
    if m_acc == m_rej and m_acc >= 1:
        return WagnerClass("DoplusDcheck", m_acc - 1)
    raise ClassificationError(f"no Wagner class for chain profile ({m_acc}, {m_rej})")


def classify_full(w: DWA) -> Classification:
    reduced = reduce_dwa(w)
    prof = chain_profile(reduced)
    return Classification(class_from_profile(prof.m_acc, prof.m_rej), prof, reduced)


def classify(w: DWA) -> WagnerClass:
    return classify_full(w).wagner_class


def is_complete_for(w: DWA, target: WagnerClass) -> bool:
    """For non-self-dual classes: member of the class and not of its dual."""
    return classify(w) == target
