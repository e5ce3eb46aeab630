"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 scope or resource gate,
3 malformed input, 4 structural invariant violation (non-weak DWA).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .constructions import (
    DEFAULT_MAX_DEPTH,
    BASE_IDS,
    ScopeGated,
    UnsupportedClass,
    base_power_dwa,
    build_for_class,
    characterization_dwa,
    supported_classes,
)
from .fa import DFA, NFA
from .omega import DWA, NBW, WeaknessError, all_lassos, dwa_accepts_lasso, lasso_in_omega_power_oracle, nbw_dwa_meet, omega_power_nbw
from .rank import DEFAULT_CAP, DEFAULT_GATE, DEFAULT_MONOID_CAP, ResourceGated, dwa_minus_nbw_profiles, dwa_minus_nbw_witness
from .serialize import MalformedInput, dumps, load, save, to_dot
from .wagner import WagnerClass, classify_full

EXIT_OK, EXIT_MISMATCH, EXIT_GATED, EXIT_MALFORMED, EXIT_STRUCTURE = 0, 1, 2, 3, 4


def _err(msg: str) -> None:
    print(f"wagner-forge: {msg}", file=sys.stderr)


def cmd_build(args) -> int:
    try:
        target = WagnerClass.parse(args.target)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_MALFORMED
    try:
        recipe, lang = build_for_class(target, args.max_depth)
    except UnsupportedClass as exc:
        _err(f"unsupported: {exc} (open problem: the even levels of the self-dual classes)")
        return EXIT_GATED
    except ScopeGated as exc:
        _err(f"gated: {exc}; raise --max-depth to build it")
        return EXIT_GATED
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    dwa = characterization_dwa(recipe)
    (out / "recipe.json").write_text(json.dumps(recipe.to_dict(), indent=1) + "\n")
    save(lang, out / "language.json")
    save(omega_power_nbw(lang), out / "nbw.json")
    save(dwa, out / "dwa.json")
    print(f"{target.name}\t{' '.join(recipe.steps)}\t{out}")
    return EXIT_OK


def _candidate_dwas(max_depth: int):
    seen = set()
    for base in BASE_IDS:
        seen.add((f"base:{base}",))
        yield f"base:{base}", base_power_dwa(base)
    for c in supported_classes(2 * max_depth + 1):
        try:
            recipe, _ = build_for_class(c, max_depth)
        except ScopeGated:
            continue
        if recipe.steps not in seen:
            seen.add(recipe.steps)
            yield " ".join(recipe.steps), characterization_dwa(recipe)


def _dwa_for_language(lang: NFA, args) -> tuple[DWA, str] | None:
    """A known DWA provably equal to the omega-power of ``lang``."""
    nbw = omega_power_nbw(lang)
    probes = list(all_lassos(lang.alphabet, 3, 3))
    member = [lasso_in_omega_power_oracle(lang, x) for x in probes]
    for name, dwa in sorted(_candidate_dwas(args.max_depth), key=lambda t: t[1].n):
        if any(dwa_accepts_lasso(dwa, x) != m for x, m in zip(probes, member)):
            continue
        if nbw_dwa_meet(nbw, dwa, polarity=False) is not None:
            continue
        for engine in (lambda: dwa_minus_nbw_profiles(dwa, nbw, args.monoid_cap),
                       lambda: dwa_minus_nbw_witness(dwa, nbw, args.gate_states, args.rank_cap)):
            try:
                if engine() is None:
                    return dwa, name
                break
            except ResourceGated:
                continue
    return None


def cmd_classify(args) -> int:
    try:
        a = load(args.path)
    except FileNotFoundError as exc:
        _err(str(exc))
        return EXIT_MALFORMED
    except MalformedInput as exc:
        _err(f"malformed input: {exc}")
        return EXIT_MALFORMED
    except WeaknessError as exc:
        _err(f"not a weak automaton: {exc}")
        return EXIT_STRUCTURE
    source = "dwa"
    if isinstance(a, (NFA, DFA)):
        found = _dwa_for_language(a, args)
        if found is None:
            _err("no DWA known to equal this omega-power within the depth and complementation budgets")
            return EXIT_GATED
        a, source = found
    elif isinstance(a, NBW):
        _err("classification needs a DWA (or a finite-word language); NBWs are not determinized")
        return EXIT_GATED
    result = classify_full(a)
    print(result.wagner_class.name)
    print(json.dumps({**result.certificate(), "source": source}, sort_keys=True))
    return EXIT_OK


def cmd_export(args) -> int:
    try:
        a = load(args.path)
    except FileNotFoundError as exc:
        _err(str(exc))
        return EXIT_MALFORMED
    except MalformedInput as exc:
        _err(f"malformed input: {exc}")
        return EXIT_MALFORMED
    except WeaknessError as exc:
        _err(f"not a weak automaton: {exc}")
        return EXIT_STRUCTURE
    sys.stdout.write(to_dot(a) if args.dot else dumps(a) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_verification

    def progress(row):
        if not args.quiet:
            print(f"[verify] {row.target}: {row.status} ({row.reverse_mode})", file=sys.stderr)

    try:
        report = run_verification(args.max_level, tuple(args.lasso_bounds), args.seed, args.trials,
                                  args.gate_states, args.rank_cap, args.monoid_cap, args.max_depth, progress)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_MALFORMED
    sys.stdout.write(report.to_tsv())
    for v, d in sorted(report.identities.items()):
        print(f"identity-{v}\t{d['status']}\t{d.get('passed', '')}/{d.get('trials', '')}")
    print(f"key-fact\t{report.key_fact['status']}")
    for c in report.calibration:
        print(f"calibration-{c['base']}\t{c['status']}\t{c['verdict']}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(report.to_json())
        (out / "report.tsv").write_text(report.to_tsv())
        (out / "timings.json").write_text(json.dumps(report.timings, indent=1, sort_keys=True) + "\n")
        from .plotting import plot_report

        plot_report(report, out / "report.png")
    for line in report.failures():
        _err(f"FAIL {line}")
    if not args.quiet:
        print(f"[verify] total {report.timings.get('total', 0):.1f}s", file=sys.stderr)
    return report.exit_code


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wagner-forge", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def budgets(sp):
        sp.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH, help="maximal number of wraps")
        sp.add_argument("--gate-states", type=_positive, default=DEFAULT_GATE,
                        help="largest NBW handed to rank complementation")
        sp.add_argument("--rank-cap", type=_positive, default=DEFAULT_CAP, help="macro-state cap for rank complementation")
        sp.add_argument("--monoid-cap", type=_positive, default=DEFAULT_MONOID_CAP, help="cap on the transition monoid")

    b = sub.add_parser("build", help="build the language and automata for a Wagner class")
    b.add_argument("target", help='class name such as "D3", "D2check", "D1+D1check"')
    b.add_argument("--out", default=".", help="output directory")
    b.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("classify", help="classify a DWA, or the omega-power of an NFA")
    c.add_argument("path")
    budgets(c)
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="run the verification matrix")
    v.add_argument("--max-level", type=int, default=2)
    v.add_argument("--lasso-bounds", type=_positive, nargs=2, default=[4, 4], metavar=("BU", "BV"))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=_positive, default=100, help="random instances per identity variant")
    v.add_argument("--out", help="directory for report.json, report.tsv, report.png, timings.json")
    v.add_argument("--quiet", action="store_true")
    budgets(v)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="print an automaton as DOT or normalized JSON")
    e.add_argument("path")
    e.add_argument("--dot", action="store_true")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
