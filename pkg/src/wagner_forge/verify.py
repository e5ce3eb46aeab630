"""The verification matrix behind ``wagner-forge verify``.

Each supported class is built, its omega-power NBW is checked against the
characterization DWA in both directions, and the DWA is classified. The
report is deterministic for fixed flags; wall-clock times are kept apart in
:attr:`VerificationReport.timings`.
"""

from __future__ import annotations

import json
import os
import random
import time
from dataclasses import asdict, dataclass, field

from . import __version__
from .constructions import (
    DEFAULT_MAX_DEPTH,
    SIGMA1_OPLUS_PI1_POWER,
    ScopeGated,
    base_power_dwa,
    build_for_class,
    characterization_dwa,
    condition_dwa,
    supported_classes,
)
from .diffalg import key_fact_check, key_fact_counterexample, random_witness
from .fa import trim
from .omega import (
    all_lassos,
    dwa_accepts_lasso,
    dwa_equiv,
    lasso_in_omega_power_oracle,
    nbw_dwa_meet,
    omega_power_nbw,
)
from .rank import DEFAULT_CAP, DEFAULT_GATE, DEFAULT_MONOID_CAP, ResourceGated, dwa_minus_nbw_profiles, dwa_minus_nbw_witness
from .wagner import WagnerClass, classify_full

BUDGET_ENV = "WAGNER_FORGE_BUDGET_MS"

# base language -> (expected class, condition DWA built by hand for the same set)
CALIBRATION = {
    "D1ex": ("D1", "neq_10inf"),
    "D1checkEx": ("D1check", "eq_0inf"),
    "D2checkEx": ("D2check", "zeroinf_or_two_ones"),
}


@dataclass
class ClassRow:
    target: str
    status: str  # pass | fail | gated
    recipe: list[str] = field(default_factory=list)
    language_states: int = 0
    nbw_states: int = 0
    dwa_states: int = 0
    verdict: str | None = None
    m_acc: int = 0
    m_rej: int = 0
    forward_exact: bool | None = None
    forward_witness: str | None = None
    reverse_mode: str | None = None  # "exact" or "bounded(Bu,Bv)"
    reverse_engines: dict[str, str] = field(default_factory=dict)
    reverse_witness: str | None = None
    oracle_agree: int = 0
    oracle_total: int = 0
    oracle_mismatch: str | None = None
    note: str | None = None


@dataclass
class VerificationReport:
    version: str
    flags: dict
    rows: list[ClassRow]
    calibration: list[dict]
    identities: dict
    key_fact: dict
    notes: list[str]
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        statuses = [r.status for r in self.rows] + [c["status"] for c in self.calibration]
        statuses += [v["status"] for v in self.identities.values()] + [self.key_fact["status"]]
        if "fail" in statuses:
            return 1
        if "gated" in statuses:
            return 2
        return 0

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "flags": self.flags,
            "rows": [asdict(r) for r in self.rows],
            "calibration": self.calibration,
            "identities": self.identities,
            "key_fact": self.key_fact,
            "notes": self.notes,
            "exit_code": self.exit_code,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    def to_tsv(self) -> str:
        cols = ["target", "status", "verdict", "language_states", "nbw_states", "dwa_states",
                "forward_exact", "reverse_mode", "oracle_agree", "oracle_total", "recipe"]
        lines = ["\t".join(cols)]
        for r in self.rows:
            d = asdict(r)
            d["recipe"] = " ".join(r.recipe)
            lines.append("\t".join("" if d[c] is None else str(d[c]) for c in cols))
        return "\n".join(lines) + "\n"

    def failures(self) -> list[str]:
        out = []
        for r in self.rows:
            if r.status == "fail":
                why = r.forward_witness or r.reverse_witness or r.oracle_mismatch or r.note
                out.append(f"{r.target}: {why}")
        for c in self.calibration:
            if c["status"] == "fail":
                out.append(f"calibration {c['base']}: {c}")
        for v, d in self.identities.items():
            if d["status"] == "fail":
                out.append(f"identity variant {v}: {d['first_failure']}")
        if self.key_fact["status"] == "fail":
            out.append(f"key fact: {self.key_fact}")
        return out


def _reverse(row: ClassRow, dwa, nbw, gate: int, cap: int, monoid_cap: int) -> bool | None:
    """Decide ``L(dwa) <= L(nbw)`` exactly if some engine finishes.

    Returns the verdict, or None when every engine was gated. Two engines that
    both finish must agree.
    """
    verdicts = {}
    for name, run in (("rank", lambda: dwa_minus_nbw_witness(dwa, nbw, gate, cap)),
                      ("profiles", lambda: dwa_minus_nbw_profiles(dwa, nbw, monoid_cap))):
        try:
            witness = run()
        except ResourceGated as exc:
            row.reverse_engines[name] = f"gated: {exc}"
            continue
        verdicts[name] = witness
        row.reverse_engines[name] = "holds" if witness is None else f"fails at {witness}"
        if witness is not None and row.reverse_witness is None:
            row.reverse_witness = str(witness)
    if not verdicts:
        return None
    results = {w is None for w in verdicts.values()}
    if len(results) > 1:
        row.note = "reverse-inclusion engines disagree"
        return False
    return results.pop()


def verify_class(c: WagnerClass, lasso_bounds=(4, 4), gate: int = DEFAULT_GATE, cap: int = DEFAULT_CAP,
                 monoid_cap: int = DEFAULT_MONOID_CAP, max_depth: int = DEFAULT_MAX_DEPTH) -> ClassRow:
    try:
        recipe, lang = build_for_class(c, max_depth)
    except ScopeGated as exc:
        return ClassRow(c.name, "gated", note=str(exc))
    nbw = omega_power_nbw(lang)
    dwa = characterization_dwa(recipe)
    result = classify_full(dwa)
    row = ClassRow(c.name, "pass", list(recipe.steps), trim(lang).n, nbw.n, dwa.n,
                   result.wagner_class.name, result.profile.m_acc, result.profile.m_rej)
    bad = nbw_dwa_meet(nbw, dwa, polarity=False)
    row.forward_exact = bad is None
    row.forward_witness = None if bad is None else str(bad)
    reverse = _reverse(row, dwa, nbw, gate, cap, monoid_cap)
    bu, bv = lasso_bounds
    row.reverse_mode = "exact" if reverse is not None else f"bounded({bu},{bv})"
    for lasso in all_lassos(lang.alphabet, bu, bv):
        row.oracle_total += 1
        if lasso_in_omega_power_oracle(lang, lasso) == dwa_accepts_lasso(dwa, lasso):
            row.oracle_agree += 1
        elif row.oracle_mismatch is None:
            row.oracle_mismatch = str(lasso)
    ok = (result.wagner_class == c and row.forward_exact and reverse is not False
          and row.oracle_agree == row.oracle_total)
    row.status = "pass" if ok else "fail"
    return row


def calibration_rows() -> list[dict]:
    rows = []
    for base, (expected, kind) in CALIBRATION.items():
        dwa = base_power_dwa(base)
        verdict = classify_full(dwa).wagner_class.name
        equiv = dwa_equiv(dwa, condition_dwa(kind))
        rows.append({"base": base, "expected": expected, "verdict": verdict, "hand_dwa": kind,
                     "equivalent": equiv, "status": "pass" if equiv and verdict == expected else "fail"})
    return rows


def identity_suite(trials: int, seed: int, max_k: int = 3, depth: int = 3) -> dict:
    out = {}
    for variant in "abcd":
        rng = random.Random(f"{seed}:{variant}")
        passed, first = 0, None
        for t in range(trials):
            w = random_witness(variant, rng, max_k=max_k, depth=depth)
            if w.verdict:
                passed += 1
            elif first is None:
                first = f"trial {t}, k={len(w.family)}"
        out[variant] = {"trials": trials, "passed": passed, "first_failure": first,
                        "status": "pass" if passed == trials else "fail"}
    return out


def key_fact_suite(seed: int, trials: int = 1000, universe_size: int = 6) -> dict:
    holds = key_fact_check(trials, universe_size, seed)
    cex = key_fact_counterexample(4)
    return {"trials": trials, "universe_size": universe_size, "holds": holds,
            "counterexample_without_side_conditions": None if cex is None else [sorted(s) for s in cex],
            "status": "pass" if holds and cex is not None else "fail"}


def _budget_ms() -> float | None:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return None
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be a number of milliseconds, got {raw!r}") from None


def run_verification(max_level: int = 2, lasso_bounds=(4, 4), seed: int = 0, trials: int = 100,
                     gate: int = DEFAULT_GATE, cap: int = DEFAULT_CAP, monoid_cap: int = DEFAULT_MONOID_CAP,
                     max_depth: int = DEFAULT_MAX_DEPTH, progress=None) -> VerificationReport:
    if max_level < 0 or trials < 1 or min(lasso_bounds) < 1 or gate < 1:
        raise ValueError("budgets must be positive")
    budget = _budget_ms()
    t0 = time.perf_counter()
    flags = {"max_level": max_level, "lasso_bounds": list(lasso_bounds), "seed": seed, "trials": trials,
             "gate_states": gate, "rank_cap": cap, "monoid_cap": monoid_cap, "max_depth": max_depth}
    timings: dict[str, float] = {}

    def over_budget() -> bool:
        return budget is not None and (time.perf_counter() - t0) * 1000 > budget

    rows = []
    for c in supported_classes(max_level):
        if over_budget():
            rows.append(ClassRow(c.name, "gated", note=f"{BUDGET_ENV} exhausted"))
            continue
        t = time.perf_counter()
        rows.append(verify_class(c, lasso_bounds, gate, cap, monoid_cap, max_depth))
        timings[c.name] = round(time.perf_counter() - t, 3)
        if progress:
            progress(rows[-1])
    t = time.perf_counter()
    calibration = calibration_rows()
    timings["calibration"] = round(time.perf_counter() - t, 3)
    if over_budget():
        gated = {"status": "gated", "note": f"{BUDGET_ENV} exhausted"}
        identities = {v: dict(gated) for v in "abcd"}
        key_fact = dict(gated)
    else:
        t = time.perf_counter()
        identities = identity_suite(trials, seed)
        timings["identities"] = round(time.perf_counter() - t, 3)
        key_fact = key_fact_suite(seed)
    notes = [f"Sigma1oplusPi1 omega-power derived from the decomposition oracle as {SIGMA1_OPLUS_PI1_POWER}; "
             "reading its first union as an intersection would give the empty set, which misses 0^w",
             "reverse_mode bounded(Bu,Bv) is lasso evidence only, not a proof"]
    timings["total"] = round(time.perf_counter() - t0, 3)
    return VerificationReport(__version__, flags, rows, calibration, identities, key_fact, notes, timings)
