"""One test per acceptance criterion; each prints a one-line verdict."""

import itertools
import random
import time

from wagner_forge.cli import main
from wagner_forge.constructions import (
    BASE_IDS,
    ConstructionRecipe,
    base_power_dwa,
    characterization_dwa,
    condition_dwa,
    replay_language,
)
from wagner_forge.diffalg import difference_dwa, random_family
from wagner_forge.fa import BINARY
from wagner_forge.omega import (
    all_lassos,
    dwa_accepts_lasso,
    dwa_complement,
    dwa_equiv,
    dwa_from_transitions,
    lasso_in_omega_power_oracle,
    nbw_accepts_lasso,
    omega_power_nbw,
)
from wagner_forge.verify import calibration_rows, key_fact_suite, identity_suite, verify_class
from wagner_forge.wagner import WagnerClass, chain_profile, classify, reduce_dwa

from oracles import pad_dwa, random_dwa, random_nfa

W = WagnerClass.parse
LASSOS = list(all_lassos(BINARY, 4, 4))


def check_rows(names):
    rows = [verify_class(W(n), lasso_bounds=(4, 4)) for n in names]
    for r in rows:
        print(f"  {r.target}: {r.status} verdict={r.verdict} forward_exact={r.forward_exact} "
              f"reverse={r.reverse_mode} oracle={r.oracle_agree}/{r.oracle_total}")
    return rows


def test_criterion_1_class_instances():
    t0 = time.perf_counter()
    rows = check_rows(["D0", "D0check", "D1", "D1check", "D2", "D2check", "D3", "D3check"])
    elapsed = time.perf_counter() - t0
    bad = [r.target for r in rows if r.status != "pass" or r.verdict != r.target or not r.forward_exact]
    exact = sum(r.reverse_mode == "exact" for r in rows)
    print(f"8 classes, {len(bad)} mismatches, {exact} exact reverse, {elapsed:.0f}s")
    assert not bad and elapsed <= 300


def test_criterion_2_self_dual_instances():
    rows = check_rows(["D0+D0check", "D1+D1check", "D3+D3check"])
    bad = [r.target for r in rows if r.status != "pass" or r.verdict != r.target or not r.forward_exact]
    assert all(r.reverse_mode == "exact" for r in rows if r.target != "D3+D3check")
    print(f"3 self-dual classes, {len(bad)} mismatches")
    assert not bad


def _hand_dwas():
    # independently typed tables; state order is arbitrary on purpose
    not_10inf = dwa_from_transitions(4, BINARY, [(0, "0", 3), (0, "1", 1), (1, "0", 2), (1, "1", 3),
                                                 (2, "0", 2), (2, "1", 3), (3, "0", 3), (3, "1", 3)], 0, [3])
    zero_inf = dwa_from_transitions(2, BINARY, [(0, "0", 0), (0, "1", 1), (1, "0", 1), (1, "1", 1)], 0, [0])
    two_ones = dwa_from_transitions(3, BINARY, [(0, "0", 0), (0, "1", 1), (1, "0", 1), (1, "1", 2),
                                                (2, "0", 2), (2, "1", 2)], 0, [0, 2])
    return {"D1ex": (not_10inf, "D1"), "D1checkEx": (zero_inf, "D1check"), "D2checkEx": (two_ones, "D2check")}


def test_criterion_3_calibration():
    failures = []
    for base, (hand, expected) in _hand_dwas().items():
        built = characterization_dwa(ConstructionRecipe.of(base))
        if classify(built).name != expected or not dwa_equiv(hand, built) or not dwa_equiv(hand, base_power_dwa(base)):
            failures.append(base)
    failures += [c["base"] for c in calibration_rows() if c["status"] != "pass"]
    print(f"3 fundamental omega-powers, {len(failures)} failures")
    assert not failures


def test_criterion_4_characterizations():
    t0 = time.perf_counter()
    recipes = [ConstructionRecipe.of(base, *wraps) for base in BASE_IDS
               for n in range(4) for wraps in itertools.product((0, 1, 2), repeat=n)]
    agree = total = 0
    for r in recipes:
        lang = replay_language(r)
        w = characterization_dwa(r)
        for x in LASSOS:
            total += 1
            agree += lasso_in_omega_power_oracle(lang, x) == dwa_accepts_lasso(w, x)
    elapsed = time.perf_counter() - t0
    print(f"{len(recipes)} recipes x {len(LASSOS)} lassos: {agree}/{total} agree, {elapsed:.0f}s")
    assert agree == total and elapsed <= 600


def test_criterion_5_identities():
    suite = identity_suite(100, seed=0)
    key = key_fact_suite(seed=0)
    counts = " ".join(f"{v}={d['passed']}/{d['trials']}" for v, d in sorted(suite.items()))
    print(f"identities {counts}; key fact holds={key['holds']} "
          f"counterexample={key['counterexample_without_side_conditions'] is not None}")
    assert all(d["passed"] == 100 for d in suite.values())
    assert key["status"] == "pass"


def test_criterion_6_omega_power_soundness():
    rng = random.Random(2024)
    agree = total = 0
    for _ in range(500):
        lang = random_nfa(rng, rng.randint(1, 5))
        b = omega_power_nbw(lang)
        for x in LASSOS:
            total += 1
            agree += nbw_accepts_lasso(b, x) == lasso_in_omega_power_oracle(lang, x)
    print(f"500 NFAs x {len(LASSOS)} lassos: {agree}/{total} agree")
    assert agree == total


def test_criterion_7_classifier_properties():
    rng = random.Random(7)
    violations = {"duality": 0, "reduction": 0, "arithmetic": 0, "diffalg": 0}
    for _ in range(200):
        w = random_dwa(rng, rng.randint(1, 8))
        c = classify(w)
        violations["duality"] += classify(dwa_complement(w)) != c.dual()
        padded = pad_dwa(w, rng)
        violations["reduction"] += not (classify(reduce_dwa(w)) == classify(padded) == c)
        p = chain_profile(reduce_dwa(w))
        violations["arithmetic"] += abs(p.m_acc - p.m_rej) > 1
        k = rng.randint(0, 4)
        violations["diffalg"] += not classify(difference_dwa(random_family(rng, k))) <= W(f"D{k}")
    print("200 each: " + " ".join(f"{k}={v}" for k, v in violations.items()))
    assert not any(violations.values())


def test_criterion_8_determinism(tmp_path, capsys):
    outputs = []
    for run in ("a", "b"):
        code = main(["verify", "--seed", "7", "--quiet", "--out", str(tmp_path / run)])
        outputs.append(capsys.readouterr().out)
        assert code == 0
    same = {name: (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
            for name in ("report.json", "report.tsv", "report.png")}
    print(f"two seeded runs: stdout identical={outputs[0] == outputs[1]} "
          + " ".join(f"{k}={v}" for k, v in same.items()))
    assert outputs[0] == outputs[1] and all(same.values())
