import random

import pytest

from wagner_forge.diffalg import (
    ClopenSet,
    NotIncreasing,
    check_increasing,
    cylinders,
    difference_dwa,
    difference_member,
    key_fact_check,
    key_fact_counterexample,
    key_fact_holds,
    identity_witness,
    open_intersect,
    oplus_dwa,
    random_family,
    random_open,
    random_witness,
    witness_a,
)
from wagner_forge.constructions import condition_dwa
from wagner_forge.fa import BINARY, accepts
from wagner_forge.omega import (
    Lasso,
    all_lassos,
    dwa_accepts_lasso,
    dwa_complement,
    dwa_empty,
    dwa_equiv,
    dwa_universal,
    is_weak,
)
from wagner_forge.wagner import WagnerClass, classify

from oracles import probe_lassos, random_dwa


def fires(open_set, lasso: Lasso, horizon: int = 40) -> bool:
    """Some prefix of the lasso is a good prefix (saturated DFA, so a long prefix suffices)."""
    return accepts(open_set.prefixes, lasso.prefix(horizon))


def test_single_open():
    w = difference_dwa([cylinders(["0"])])
    assert dwa_accepts_lasso(w, Lasso("0", "0")) and not dwa_accepts_lasso(w, Lasso("1", "0"))


def test_two_set_difference():
    w = difference_dwa([cylinders(["1"]), cylinders(["0", "1"])])
    assert dwa_equiv(w, cylinders(["0"]).to_dwa())


def test_empty_family_is_empty_set():
    assert dwa_equiv(difference_dwa([]), dwa_empty())


def test_non_increasing_rejected():
    with pytest.raises(NotIncreasing):
        difference_dwa([cylinders(["0"]), cylinders(["1"])])
    with pytest.raises(NotIncreasing):
        check_increasing([cylinders(["0", "1"]), cylinders(["1"])])


def test_difference_against_membership_formula():
    rng = random.Random(3)
    for _ in range(60):
        family = random_family(rng, rng.randint(0, 4))
        w = difference_dwa(family)
        assert is_weak(w)
        for x in all_lassos(BINARY, 4, 4):
            expected = difference_member(family, [fires(o, x) for o in family])
            assert dwa_accepts_lasso(w, x) == expected


def test_oplus_examples():
    n0 = ClopenSet(1, frozenset({"0"}))
    assert dwa_equiv(oplus_dwa(dwa_universal(), dwa_empty(), n0), cylinders(["0"]).to_dwa())
    full = ClopenSet(0, frozenset({""}))
    a = condition_dwa("eq_0inf")
    assert dwa_equiv(oplus_dwa(a, dwa_universal(), full), a)
    glued = oplus_dwa(condition_dwa("neq_10inf"), condition_dwa("eq_0inf"), ClopenSet(1, frozenset({"1"})))
    assert classify(glued).name == "D1+D1check"


def test_oplus_pointwise():
    rng = random.Random(4)
    for _ in range(40):
        a, b = random_dwa(rng), random_dwa(rng)
        c = ClopenSet(2, frozenset(w for w in ("00", "01", "10", "11") if rng.random() < 0.5))
        g = oplus_dwa(a, b, c)
        for x in probe_lassos():
            inside = c.contains_prefix(x.prefix(2))
            assert dwa_accepts_lasso(g, x) == dwa_accepts_lasso(a if inside else b, x)


def test_oplus_stays_in_glued_class():
    rng = random.Random(5)
    for _ in range(100):
        a, b = random_dwa(rng), random_dwa(rng)
        ca, cb = classify(a), classify(b)
        if ca.shape != "D" or cb != ca.dual():
            continue
        g = oplus_dwa(a, b, ClopenSet(1, frozenset({"0"})))
        assert classify(g) <= WagnerClass("DoplusDcheck", ca.level)


def test_clopen_validation():
    with pytest.raises(ValueError):
        ClopenSet(2, frozenset({"0"}))
    c = ClopenSet(1, frozenset({"0"}))
    assert c.complement().accepted == frozenset({"1"})


# --- identities -------------------------------------------------------------------

def test_variant_a_example():
    w = identity_witness("a", [cylinders(["1"])], cylinders(["0", "11"]))
    assert w.verdict
    assert dwa_equiv(w.lhs, cylinders(["0"]).to_dwa())


def test_variant_b_degenerate():
    w = identity_witness("b", [], cylinders(["0"]))
    assert w.verdict
    assert dwa_equiv(w.rhs, dwa_complement(cylinders(["0"]).to_dwa()))


@pytest.mark.parametrize("variant", "abcd")
def test_random_instances(variant):
    rng = random.Random(f"t:{variant}")
    for _ in range(100):
        assert random_witness(variant, rng).verdict


def test_wrong_family_is_detected():
    # dropping the last member of the variant-a family must break the identity somewhere
    rng = random.Random(8)
    broken = 0
    for _ in range(50):
        U = random_family(rng, rng.randint(1, 3))
        V = random_open(rng)
        good = witness_a(U, V)
        assert good.verdict
        wrong = difference_dwa(tuple(open_intersect(u, V) for u in U))
        broken += not dwa_equiv(good.lhs, wrong)
    assert broken > 0


def test_malformed_variant():
    with pytest.raises(ValueError):
        identity_witness("e")
    with pytest.raises(ValueError):
        identity_witness("b", [cylinders(["0"])], cylinders(["1"]))


# --- the key fact -------------------------------------------------------------------

def test_key_fact_random():
    assert key_fact_check(1000, 6, seed=0)


def test_key_fact_all_empty():
    e = frozenset()
    assert key_fact_holds(e, e, e, e)


def test_key_fact_needs_side_conditions():
    cex = key_fact_counterexample(4)
    assert cex is not None
    c0, c1, d0, d1 = cex
    assert not key_fact_holds(c0, c1, d0, d1)
    assert not (c1 <= d0 and d1 <= c0)


def test_key_fact_universe_bound():
    with pytest.raises(ValueError):
        key_fact_check(1, 13)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_random_families_reach_their_level(k):
    # the sweeps are only meaningful if random families are not mostly degenerate
    rng = random.Random(k)
    hits = sum(classify(difference_dwa(random_family(rng, k))) == WagnerClass("D", k) for _ in range(100))
    assert hits >= 5
