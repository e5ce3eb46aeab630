"""Regular languages whose omega-powers hit prescribed Wagner classes.

Languages are built from a handful of base languages by the wrappers
``wrap_i : L -> L_i`` (i in 0, 1, 2). ``L_i`` keeps the even-length words whose
even-position letters spell a word of ``L*`` and whose odd-position letters
satisfy a fixed condition. On the omega-word side ``wrap_i`` becomes an
interleaved product with a fixed weak automaton, which gives a DWA for every
recipe without determinizing any Buchi automaton.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from . import fa
from .diffalg import ClopenSet, cylinders, difference_dwa, open_set, oplus_dwa
from .fa import BINARY, DFA, NFA, Automaton
from .omega import (
    DWA,
    all_lassos,
    check_weak,
    dwa_accepts_lasso,
    dwa_complement,
    dwa_empty,
    dwa_from_transitions,
    dwa_universal,
    lasso_in_omega_power_oracle,
    nbw_dwa_meet,
    omega_power_nbw,
)
from .wagner import WagnerClass, reduce_dwa

BASE_IDS = ("D0", "D0check", "D1ex", "D1checkEx", "D2checkEx", "Delta01", "Sigma1oplusPi1")
CONDITION_KINDS = ("neq_10inf", "eq_0inf", "zeroinf_or_two_ones")
WRAP_KIND = {0: "neq_10inf", 1: "eq_0inf", 2: "zeroinf_or_two_ones"}
DEFAULT_MAX_DEPTH = 3

SIGMA1_OPLUS_PI1_POWER = "{0^w} | U_q N_{0^(2q+2)1} | (N_1 \\ {10^w})"


class ScopeGated(Exception):
    """The request lies outside what can be built (scope or resource budget)."""


class UnsupportedClass(ScopeGated):
    """No construction is known for this class."""


def _dfa(table: dict[int, tuple[int, int]], finals) -> DFA:
    delta = tuple(table[p] for p in range(len(table)))
    return DFA(BINARY, delta, 0, frozenset(finals))


# --- base languages ---------------------------------------------------------------

def _base_dfa(base_id: str) -> Automaton:
    if base_id == "D0":
        return fa.nfa_empty()
    if base_id == "D0check":
        return _dfa({0: (0, 0)}, [0])
    if base_id == "D1ex":
        # 0 is a prefix, or some 10^p1 is
        return _dfa({0: (2, 1), 1: (1, 2), 2: (2, 2)}, [2])
    if base_id == "D1checkEx":
        return fa.nfa_word("0")
    if base_id == "D2checkEx":
        # w is a prefix of 0^w, or some 0^p10^q1 is a prefix of w
        return _dfa({0: (0, 1), 1: (1, 2), 2: (2, 2)}, [0, 2])
    if base_id == "Delta01":
        # 0 or 11 is a prefix
        return _dfa({0: (2, 1), 1: (3, 2), 2: (2, 2), 3: (3, 3)}, [2])
    if base_id == "Sigma1oplusPi1":
        # {00, 001} plus words with a prefix 10^p1
        return _dfa({0: (1, 5), 1: (2, 4), 2: (4, 3), 3: (4, 4), 4: (4, 4), 5: (5, 6), 6: (6, 6)}, [2, 3, 6])
    raise ValueError(f"unknown base language {base_id!r}")


def base_language(base_id: str) -> NFA:
    return fa.trim(_base_dfa(base_id))


# --- finite-word conditions on the odd track --------------------------------------

def condition_dfa(wrap: int) -> DFA:
    """Finite-word predicate imposed on the odd-position letters by ``wrap``."""
    if wrap == 0:
        return _dfa({0: (2, 1), 1: (1, 2), 2: (2, 2)}, [2])
    if wrap == 1:
        return _dfa({0: (0, 1), 1: (1, 1)}, [0])
    if wrap == 2:
        return _dfa({0: (0, 1), 1: (1, 2), 2: (2, 2)}, [0, 2])
    raise ValueError(f"wrap index must be 0, 1 or 2, got {wrap!r}")


def interleave_language(lang: Automaton, wrap: int) -> NFA:
    """NFA for ``L_wrap``: a parity-tracked product of ``L*`` and the odd-track condition."""
    star = fa.determinize_minimize(fa.nfa_star(lang))
    cond = condition_dfa(wrap)
    start = (0, star.initial, cond.initial)
    ids = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        phase, s, c = order[i]
        row = []
        for x in range(2):
            t = (1, star.delta[s][x], c) if phase == 0 else (0, s, cond.delta[c][x])
            if t not in ids:
                ids[t] = len(order)
                order.append(t)
            row.append(ids[t])
        rows.append(tuple(row))
        i += 1
    finals = frozenset(j for j, (phase, s, c) in enumerate(order)
                       if phase == 0 and s in star.finals and c in cond.finals)
    return fa.trim(fa.minimize(DFA(star.alphabet, tuple(rows), 0, finals)))


# --- recipes -----------------------------------------------------------------------

@dataclass(frozen=True)
class ConstructionRecipe:
    target: WagnerClass | None
    steps: tuple[str, ...]

    def __post_init__(self):
        if not self.steps or not self.steps[0].startswith("base:"):
            raise ValueError("a recipe starts with a base step")
        if self.steps[0][5:] not in BASE_IDS:
            raise ValueError(f"unknown base {self.steps[0]!r}")
        for s in self.steps[1:]:
            if s not in ("wrap:0", "wrap:1", "wrap:2"):
                raise ValueError(f"bad recipe step {s!r}")

    @property
    def base(self) -> str:
        return self.steps[0][5:]

    @property
    def wraps(self) -> tuple[int, ...]:
        return tuple(int(s[5:]) for s in self.steps[1:])

    @property
    def depth(self) -> int:
        return len(self.steps) - 1

    def to_dict(self) -> dict:
        return {"target": self.target.name if self.target else None, "steps": list(self.steps)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "ConstructionRecipe":
        target = WagnerClass.parse(d["target"]) if d.get("target") else None
        return cls(target, tuple(d["steps"]))

    @classmethod
    def of(cls, base: str, *wraps: int, target: WagnerClass | None = None) -> "ConstructionRecipe":
        return cls(target, (f"base:{base}",) + tuple(f"wrap:{i}" for i in wraps))


def _steps_for(c: WagnerClass) -> tuple[str, list[int]]:
    n = c.level
    if c.shape == "DoplusDcheck":
        if n == 0:
            return "Delta01", []
        if n % 2 == 0:
            raise UnsupportedClass(f"{c.name}: no regular omega-power construction is known "
                                   "for D_{2n+2} (+) D_{2n+2} check")
        base, wraps = _steps_for(WagnerClass("DoplusDcheck", n - 2)) if n >= 3 else ("Sigma1oplusPi1", [])
        return base, wraps + ([2] if n >= 3 else [])
    if c.shape == "D":
        if n == 0:
            return "D0", []
        base, wraps = _steps_for(WagnerClass("Dcheck", n - 1))
        return base, wraps + [0]
    if n == 0:
        return "D0check", []
    if n % 2 == 0:
        base, wraps = _steps_for(WagnerClass("Dcheck", n - 2))
        return base, wraps + [2]
    base, wraps = _steps_for(WagnerClass("Dcheck", n - 1))
    return base, wraps + [1]


def recipe_for_class(c: WagnerClass, max_depth: int = DEFAULT_MAX_DEPTH) -> ConstructionRecipe:
    base, wraps = _steps_for(c)
    recipe = ConstructionRecipe.of(base, *wraps, target=c)
    if recipe.depth > max_depth:
        raise ScopeGated(f"{c.name} needs {recipe.depth} wraps, budget is {max_depth}")
    return recipe


@lru_cache(maxsize=None)
def _language(steps: tuple[str, ...]) -> NFA:
    if len(steps) == 1:
        return base_language(steps[0][5:])
    return interleave_language(_language(steps[:-1]), int(steps[-1][5:]))


def replay_language(recipe: ConstructionRecipe) -> NFA:
    return _language(recipe.steps)


def build_for_class(c: WagnerClass, max_depth: int = DEFAULT_MAX_DEPTH) -> tuple[ConstructionRecipe, NFA]:
    recipe = recipe_for_class(c, max_depth)
    return recipe, replay_language(recipe)


def supported_classes(max_level: int) -> list[WagnerClass]:
    """Every class up to ``max_level`` that has a construction, in diagram order."""
    out = []
    for n in range(max_level + 1):
        out += [WagnerClass("D", n), WagnerClass("Dcheck", n)]
        if n == 0 or n % 2 == 1:
            out.append(WagnerClass("DoplusDcheck", n))
    return out


# --- the omega side ----------------------------------------------------------------

def condition_dwa(kind: str) -> DWA:
    """Hand-built minimal DWAs for the three odd-track omega conditions."""
    if kind == "neq_10inf":
        # every word except 10^w
        return dwa_from_transitions(3, BINARY, [(0, "0", 2), (0, "1", 1), (1, "0", 1), (1, "1", 2),
                                               (2, "0", 2), (2, "1", 2)], 0, [0, 2])
    if kind == "eq_0inf":
        return dwa_from_transitions(2, BINARY, [(0, "0", 0), (0, "1", 1), (1, "0", 1), (1, "1", 1)], 0, [0])
    if kind == "zeroinf_or_two_ones":
        return dwa_from_transitions(3, BINARY, [(0, "0", 0), (0, "1", 1), (1, "0", 1), (1, "1", 2),
                                               (2, "0", 2), (2, "1", 2)], 0, [0, 2])
    raise ValueError(f"unknown condition kind {kind!r}")


def interleaved_product_dwa(even: DWA, odd: DWA) -> DWA:
    """DWA for ``{alpha | (alpha)_0 in L(even) and (alpha)_1 in L(odd)}``."""
    fa.same_alphabet(even, odd)
    start = (0, even.initial, odd.initial)
    ids = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        phase, a, b = order[i]
        row = []
        for x in range(len(even.alphabet)):
            t = (1, even.delta[a][x], b) if phase == 0 else (0, a, odd.delta[b][x])
            if t not in ids:
                ids[t] = len(order)
                order.append(t)
            row.append(ids[t])
        rows.append(tuple(row))
        i += 1
    acc = frozenset(j for j, (_, a, b) in enumerate(order) if a in even.accepting and b in odd.accepting)
    return check_weak(DWA(even.alphabet, tuple(rows), 0, acc))


def _raw_base_power_dwa(base_id: str) -> DWA:
    """DWAs for the base omega-powers, assembled from open-set descriptions."""
    word, star, cat, union = fa.nfa_word, fa.nfa_star, fa.nfa_concat, fa.nfa_union
    if base_id == "D0":
        return dwa_empty()
    if base_id == "D0check":
        return dwa_universal()
    if base_id == "D1ex":
        # open: good prefixes 0 and 10^p1
        return open_set(union(word("0"), cat(cat(word("1"), star(word("0"))), word("1")))).to_dwa()
    if base_id == "D1checkEx":
        # closed: complement of the open set with good prefixes 0^p1
        return dwa_complement(open_set(cat(star(word("0")), word("1"))).to_dwa())
    if base_id == "D2checkEx":
        two_ones = open_set(cat(cat(cat(star(word("0")), word("1")), star(word("0"))), word("1")))
        not_zero = open_set(cat(star(word("0")), word("1")))
        return dwa_complement(difference_dwa([two_ones, not_zero]))
    if base_id == "Delta01":
        return oplus_dwa(dwa_universal(), dwa_empty(), ClopenSet(2, frozenset({"00", "01", "11"})))
    if base_id == "Sigma1oplusPi1":
        no_10inf = open_set(union(word("0"), cat(cat(word("1"), star(word("0"))), word("1")))).to_dwa()
        odd_zero_block = open_set(cat(cat(word("0"), star(word("00"))), word("1"))).to_dwa()
        return oplus_dwa(no_10inf, dwa_complement(odd_zero_block), ClopenSet(1, frozenset({"1"})))
    raise ValueError(f"unknown base language {base_id!r}")


class ValidationError(RuntimeError):
    """A base DWA disagrees with the omega-power of its language."""


@lru_cache(maxsize=None)
def base_power_dwa(base_id: str) -> DWA:
    """Reduced DWA for the omega-power of a base language, validated before use.

    Validation: exact inclusion of the omega-power NBW in the DWA, and lasso
    agreement with the decomposition oracle on all lassos with |u|, |v| <= 4.
    """
    w = reduce_dwa(_raw_base_power_dwa(base_id))
    lang = base_language(base_id)
    bad = nbw_dwa_meet(omega_power_nbw(lang), w, polarity=False)
    if bad is not None:
        raise ValidationError(f"{base_id}: {bad} is in the omega-power but rejected by the DWA")
    for lasso in all_lassos(BINARY, 4, 4):
        if lasso_in_omega_power_oracle(lang, lasso) != dwa_accepts_lasso(w, lasso):
            raise ValidationError(f"{base_id}: DWA and oracle disagree on {lasso}")
    return w


@lru_cache(maxsize=None)
def _characterization(steps: tuple[str, ...]) -> DWA:
    if len(steps) == 1:
        return base_power_dwa(steps[0][5:])
    prev = _characterization(steps[:-1])
    wrap = int(steps[-1][5:])
    return reduce_dwa(interleaved_product_dwa(prev, condition_dwa(WRAP_KIND[wrap])))


def characterization_dwa(recipe: ConstructionRecipe) -> DWA:
    """DWA for the omega-power of the recipe's language, built on the omega side only."""
    return _characterization(recipe.steps)
