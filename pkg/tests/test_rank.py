import random

import pytest

from wagner_forge import fa
from wagner_forge.constructions import base_language, build_for_class, characterization_dwa
from wagner_forge.fa import BINARY
from wagner_forge.omega import (
    DWA,
    NBW,
    Lasso,
    all_lassos,
    dwa_accepts_lasso,
    dwa_sccs,
    dwa_universal,
    is_weak,
    nbw_accepts_lasso,
    nbw_empty,
    omega_power_nbw,
)
from wagner_forge.rank import (
    ResourceGated,
    dwa_minus_nbw_profiles,
    dwa_minus_nbw_witness,
    dwa_subseteq_nbw,
    nbw_complement_rank,
    nbw_prune,
)
from wagner_forge.wagner import WagnerClass

from oracles import probe_lassos, random_dwa, random_nfa


def random_nbw(rng, n_max=3):
    n = rng.randint(1, n_max)
    trans = [(p, a, q) for p in range(n) for a in BINARY for q in range(n) if rng.random() < 0.35]
    base = fa.NFA.from_transitions(n, BINARY, trans, 0, [])
    return NBW(BINARY, base.delta, 0, frozenset(q for q in range(n) if rng.random() < 0.4))


def test_complement_of_empty_accepts_everything():
    c = nbw_complement_rank(nbw_empty())
    assert nbw_accepts_lasso(c, Lasso("", "0"))


def test_complement_of_zero_power():
    b = omega_power_nbw(fa.nfa_word("0"))
    c = nbw_complement_rank(b)
    assert nbw_accepts_lasso(c, Lasso("1", "0"))
    assert not nbw_accepts_lasso(c, Lasso("", "0"))


def test_complement_partitions_lassos():
    rng = random.Random(2)
    for _ in range(10):
        b = random_nbw(rng)
        c = nbw_complement_rank(b)
        for x in all_lassos(BINARY, 3, 3):
            assert nbw_accepts_lasso(b, x) != nbw_accepts_lasso(c, x)


def test_prune_keeps_language():
    rng = random.Random(6)
    for _ in range(40):
        b = random_nbw(rng, 4)
        p = nbw_prune(b)
        assert p.n <= b.n
        for x in probe_lassos():
            assert nbw_accepts_lasso(b, x) == nbw_accepts_lasso(p, x)


def test_gate_and_cap():
    b = omega_power_nbw(build_for_class(WagnerClass.parse("D2"))[1])
    assert b.n > 10
    with pytest.raises(ResourceGated):
        nbw_complement_rank(b, gate=10)
    with pytest.raises(ResourceGated):
        dwa_minus_nbw_witness(dwa_universal(), b, gate=10)
    with pytest.raises(ResourceGated):
        dwa_minus_nbw_profiles(dwa_universal(), b, cap=5)


def _check_witness(w, b, witness):
    assert dwa_accepts_lasso(w, witness) and not nbw_accepts_lasso(b, witness)


def test_engines_agree_on_random_instances():
    rng = random.Random(9)
    seen = {True: 0, False: 0}
    for _ in range(150):
        w = random_dwa(rng, 3)
        b = random_nbw(rng, 3)
        r1 = dwa_minus_nbw_witness(w, b)
        r2 = dwa_minus_nbw_profiles(w, b)
        assert (r1 is None) == (r2 is None)
        for r in (r1, r2):
            if r is not None:
                _check_witness(w, b, r)
        if r1 is None:
            for x in probe_lassos():
                assert not dwa_accepts_lasso(w, x) or nbw_accepts_lasso(b, x)
        seen[r1 is None] += 1
    assert min(seen.values()) > 0


def test_engines_on_power_automata():
    rng = random.Random(10)
    for _ in range(40):
        lang = random_nfa(rng, 3)
        b = omega_power_nbw(lang)
        w = random_dwa(rng, 3)
        try:
            r1 = dwa_minus_nbw_witness(w, b, cap=20_000)
        except ResourceGated:
            continue
        r2 = dwa_minus_nbw_profiles(w, b)
        assert (r1 is None) == (r2 is None)


@pytest.mark.parametrize("name", ["D0", "D0check", "D1", "D1check", "D0+D0check", "D1+D1check", "D2", "D2check"])
def test_reverse_inclusion_exact_for_small_classes(name):
    recipe, lang = build_for_class(WagnerClass.parse(name))
    b = omega_power_nbw(lang)
    w = characterization_dwa(recipe)
    assert dwa_minus_nbw_profiles(w, b) is None


def test_profiles_find_bit_flip_mutants():
    recipe, lang = build_for_class(WagnerClass.parse("D2check"))
    b = omega_power_nbw(lang)
    w = characterization_dwa(recipe)
    found = 0
    for comp in dwa_sccs(w).comps:
        m = DWA(w.alphabet, w.delta, w.initial, w.accepting ^ set(comp))
        assert is_weak(m)
        witness = dwa_minus_nbw_profiles(m, b)
        if witness is not None:
            _check_witness(m, b, witness)
            found += 1
    assert found > 0
    assert dwa_subseteq_nbw(w, omega_power_nbw(base_language("D0check")))
