"""JSON and DOT encodings for every automaton kind.

JSON schema::

    {"kind": "nfa" | "dfa" | "nbw" | "dwa",
     "alphabet": ["0", "1"],
     "states": 3,
     "initial": 0,
     "transitions": [{"from": 0, "letter": "0", "to": 1}, ...],
     "accepting": [1]}
"""

from __future__ import annotations

import json
from typing import Any, Union

from .fa import DFA, NFA
from .graph import is_loop, tarjan_scc
from .omega import DWA, NBW, WeaknessError, check_weak

AnyAutomaton = Union[NFA, DFA, NBW, DWA]


class MalformedInput(ValueError):
    """Input that does not follow the automaton schema."""


def kind_of(a: AnyAutomaton) -> str:
    for kind, cls in (("nfa", NFA), ("dfa", DFA), ("nbw", NBW), ("dwa", DWA)):
        if isinstance(a, cls):
            return kind
    raise TypeError(f"not an automaton: {type(a).__name__}")


def _accepting(a: AnyAutomaton):
    return a.accepting if isinstance(a, (NBW, DWA)) else a.finals


def to_dict(a: AnyAutomaton) -> dict[str, Any]:
    return {
        "kind": kind_of(a),
        "alphabet": list(a.alphabet),
        "states": a.n,
        "initial": a.initial,
        "transitions": [{"from": p, "letter": x, "to": q} for p, x, q in a.transitions()],
        "accepting": sorted(_accepting(a)),
    }


def dumps(a: AnyAutomaton) -> str:
    return json.dumps(to_dict(a), indent=1)


def from_dict(d: Any) -> AnyAutomaton:
    """Decode one automaton; WeaknessError passes through for non-weak DWAs."""
    try:
        kind = d["kind"]
        alphabet = tuple(d["alphabet"])
        n = int(d["states"])
        initial = int(d["initial"])
        trans = [(int(t["from"]), t["letter"], int(t["to"])) for t in d["transitions"]]
        accepting = [int(q) for q in d["accepting"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad automaton object: {exc}") from None
    if n < 1:
        raise MalformedInput("an automaton needs at least one state")
    try:
        if kind in ("nfa", "nbw"):
            base = NFA.from_transitions(n, alphabet, trans, initial, [])
            if kind == "nfa":
                return NFA(base.alphabet, base.delta, initial, frozenset(accepting))
            return NBW(base.alphabet, base.delta, initial, frozenset(accepting))
        if kind in ("dfa", "dwa"):
            idx = {x: i for i, x in enumerate(alphabet)}
            table = [[None] * len(alphabet) for _ in range(n)]
            for p, x, q in trans:
                if x not in idx or not 0 <= p < n or table[p][idx[x]] is not None:
                    raise MalformedInput(f"bad deterministic transition {p} -{x}-> {q}")
                table[p][idx[x]] = q
            if any(t is None for row in table for t in row):
                raise MalformedInput("deterministic automaton must be complete")
            delta = tuple(tuple(r) for r in table)
            if kind == "dfa":
                return DFA(alphabet, delta, initial, frozenset(accepting))
            return check_weak(DWA(alphabet, delta, initial, frozenset(accepting)))
    except WeaknessError:
        raise
    except (ValueError, IndexError) as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(str(exc)) from None
    raise MalformedInput(f"unknown kind {kind!r}")


def loads(text: str) -> AnyAutomaton:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None
    return from_dict(d)


def load(path) -> AnyAutomaton:
    with open(path) as fh:
        return loads(fh.read())


def save(a: AnyAutomaton, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(a) + "\n")


# --- DOT -------------------------------------------------------------------------

ACC_COLOR = "palegreen"
REJ_COLOR = "lightcoral"


def to_dot(a: AnyAutomaton, name: str = "A") -> str:
    """Graphviz text; DWA loop SCCs are filled by polarity."""
    acc = _accepting(a)
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    fill: dict[int, str] = {}
    if isinstance(a, DWA):
        succ = lambda q: a.delta[q]  # noqa: E731
        comps, _ = tarjan_scc(a.n, succ)
        for comp in comps:
            if is_loop(comp, succ):
                color = ACC_COLOR if comp[0] in acc else REJ_COLOR
                for q in comp:
                    fill[q] = color
    for q in range(a.n):
        attrs = [f'shape={"doublecircle" if q in acc else "circle"}']
        if q in fill:
            attrs.append(f"style=filled, fillcolor={fill[q]}")
        lines.append(f"  {q} [{', '.join(attrs)}];")
    lines.append(f"  __start -> {a.initial};")
    edges: dict[tuple[int, int], list[str]] = {}
    for p, x, q in a.transitions():
        edges.setdefault((p, q), []).append(x)
    for (p, q), letters in sorted(edges.items()):
        lines.append(f'  {p} -> {q} [label="{",".join(letters)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
