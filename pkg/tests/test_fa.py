import random
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wagner_forge import fa
from wagner_forge.constructions import base_language
from wagner_forge.fa import (
    BINARY,
    DFA,
    NFA,
    AlphabetError,
    accepts,
    all_words,
    determinize_minimize,
    dfa_boolean,
    dfa_equivalent,
    enumerate_words,
    is_empty,
    isomorphic,
    nfa_build,
    trim,
)

from oracles import random_nfa, random_regex, regex_nfa, regex_text


def words(max_len):
    return list(all_words(BINARY, max_len))


def test_star_of_letter():
    a = nfa_build("star", nfa_build("letter", "0"))
    assert [accepts(a, w) for w in ["", "0", "00", "01"]] == [True, True, True, False]


def test_union_with_concat_short_words():
    a = nfa_build("union", nfa_build("letter", "0"),
                  nfa_build("concat", nfa_build("letter", "1"), nfa_build("letter", "1")))
    assert enumerate_words(a, 2) == ["0", "11"]


def test_star_of_short_d1_pieces():
    short = enumerate_words(base_language("D1ex"), 2)
    pieces = fa.nfa_word(short[0])
    for w in short[1:]:
        pieces = fa.nfa_union(pieces, fa.nfa_word(w))
    assert accepts(fa.nfa_star(pieces), "0101")
    assert _decomposes("0101", set(short))


def _decomposes(w, pieces):
    if not w:
        return True
    return any(w.startswith(p) and _decomposes(w[len(p):], pieces) for p in pieces if p)


def test_single_word_dfa_has_three_states():
    d = determinize_minimize(fa.nfa_word("0"))
    assert d.n == 3


def test_two_ones_detector_matches_predicate():
    # {w | some 10^p1 is a prefix of w}
    n = fa.nfa_concat(fa.nfa_concat(fa.nfa_concat(fa.nfa_word("1"), fa.nfa_star(fa.nfa_word("0"))),
                                    fa.nfa_word("1")), fa.nfa_star(fa.nfa_union(fa.nfa_word("0"), fa.nfa_word("1"))))
    d = determinize_minimize(n)
    for w in words(8):
        assert accepts(d, w) == bool(re.fullmatch(r"10*1[01]*", w))


def test_minimize_idempotent():
    rng = random.Random(3)
    for _ in range(30):
        d = determinize_minimize(random_nfa(rng))
        assert isomorphic(determinize_minimize(d), d)


def test_boolean_examples():
    rng = random.Random(5)
    for _ in range(20):
        a = determinize_minimize(random_nfa(rng))
        assert dfa_equivalent(dfa_boolean("complement", dfa_boolean("complement", a)), a)
        u = dfa_boolean("union", a, dfa_boolean("complement", a))
        assert all(accepts(u, w) for w in words(6))
    zero_star = determinize_minimize(fa.nfa_star(fa.nfa_word("0")))
    starts0 = determinize_minimize(fa.nfa_concat(fa.nfa_word("0"), fa.nfa_star(fa.nfa_union(fa.nfa_word("0"), fa.nfa_word("1")))))
    both = dfa_boolean("intersect", zero_star, starts0)
    assert accepts(both, "0") and accepts(both, "00") and not accepts(both, "")


def test_d1_base_language_spot_values():
    lang = base_language("D1ex")
    assert accepts(lang, "0") and not accepts(lang, "1") and accepts(lang, "1001")
    assert not is_empty(lang)


def test_epsilon_membership_is_initial_finality():
    rng = random.Random(7)
    for _ in range(50):
        a = random_nfa(rng)
        assert accepts(a, "") == (a.initial in a.finals)


def test_enumerate_star():
    assert enumerate_words(fa.nfa_star(fa.nfa_word("0")), 3) == ["", "0", "00", "000"]


def test_empty_language():
    assert is_empty(nfa_build("empty"))


def test_trim_preserves_language():
    rng = random.Random(11)
    for _ in range(40):
        a = random_nfa(rng)
        t = trim(a)
        assert all(accepts(a, w) == accepts(t, w) for w in words(6))


def test_alphabet_errors():
    with pytest.raises(AlphabetError):
        fa.check_alphabet(["0", "0"])
    with pytest.raises(AlphabetError):
        accepts(fa.nfa_word("0"), "2")
    with pytest.raises(AlphabetError):
        fa.nfa_union(fa.nfa_word("0"), fa.nfa_word("a", alphabet=("a", "b")))


def test_dfa_must_be_complete():
    with pytest.raises(ValueError):
        DFA(BINARY, ((0,),), 0, frozenset())


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_regex_ops_agree_with_re(seed):
    e = random_regex(random.Random(seed))
    a = regex_nfa(e)
    d = determinize_minimize(a)
    rx = re.compile(regex_text(e))
    for w in words(6):
        expected = bool(rx.fullmatch(w))
        assert accepts(a, w) == expected
        assert accepts(d, w) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_minimal_dfa_is_canonical(seed):
    rng = random.Random(seed)
    a = random_nfa(rng, 4)
    d1 = determinize_minimize(a)
    # union with itself: same language, different raw automaton
    d2 = determinize_minimize(fa.nfa_union(a, a))
    assert isomorphic(d1, d2)
    assert isinstance(d1, DFA) and isinstance(a, NFA)
